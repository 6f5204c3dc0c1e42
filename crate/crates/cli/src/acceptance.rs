//! The acceptance suite behind `validate`.
//!
//! Every criterion yields a pass flag, a one-line summary and named metrics.
//! The report holds no timings or worker counts, so a fixed seed gives the
//! same bytes under any parallelism.

use std::collections::BTreeMap;

use hybridfso::ber::series::{series_integer_power, GeneralizedPowerSeries};
use hybridfso::ber::{
    dpsk_ber_gg_exact, dpsk_ber_ne_asymptotic, dpsk_ber_ne_asymptotic_quadrature,
    dpsk_ber_quadrature,
};
use hybridfso::channels::{
    gg_pe_cdf, ChannelParams, GammaGammaPointingParams, GgCdfMethod, NegExpParams, RayleighParams,
};
use hybridfso::montecarlo::{
    ks_distance_bounds, sample_sorted, simulate_af_relay, simulate_link, Gamma1Mode, SimConfig,
};
use hybridfso::outage::{outage, OutageForm, OutageRequest};
use hybridfso::relay::{af_relay_cdf, af_relay_cdf_quadrature, LinkConfig};
use hybridfso::specfun::{bessel_k, gamma, meijer_g, MeijerGSpec, SeriesAccuracy};
use hybridfso::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::spec::{db_to_linear, Regime, MODERATE, STRONG};

pub const CRITERIA: u8 = 12;
pub const KS_SAMPLES: u64 = 1_000_000;
const KS_STRIDE: usize = 250;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub summary: String,
    pub metrics: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub trials: u64,
    pub criteria: Vec<CriterionReport>,
    pub notes: Vec<String>,
    pub all_pass: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "Meijer-G identity suite",
        2 => "Gamma-Gamma CDF: series vs Meijer-G",
        3 => "sampler KS certification",
        4 => "AF relay CDF vs quadrature and Monte Carlo",
        5 => "outage analytic vs Monte Carlo",
        6 => "relay-count gaps are constant",
        7 => "antenna count barely matters at high SNR",
        8 => "moderate vs strong BER gap",
        9 => "BER route agreement",
        10 => "negative exponential asymptotic validity",
        11 => "series integer power vs brute force",
        12 => "worker-count determinism",
        _ => "unknown",
    }
}

#[derive(Default)]
struct Outcome {
    pass: bool,
    summary: String,
    metrics: BTreeMap<String, f64>,
}

impl Outcome {
    fn metric(&mut self, k: impl Into<String>, v: f64) {
        self.metrics.insert(k.into(), v);
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Binomial z-score of an empirical rate against the model probability.
fn binomial_z(p_hat: f64, p: f64, n: u64) -> f64 {
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    if sigma == 0.0 {
        return if p_hat == p { 0.0 } else { f64::INFINITY };
    }
    (p_hat - p).abs() / sigma
}

/// Average SNR (dB) at which a decreasing curve crosses `target`.
pub fn db_crossing(
    f: impl Fn(f64) -> Result<f64>,
    target: f64,
    lo: f64,
    hi: f64,
    tol_db: f64,
) -> Result<Option<f64>> {
    let (mut lo, mut hi) = (lo, hi);
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if !(flo >= target && fhi <= target) {
        return Ok(None);
    }
    while hi - lo > tol_db {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

fn cfg(n: u32, m: u32) -> LinkConfig {
    LinkConfig {
        n_antennas: n,
        n_relays: m,
        ..LinkConfig::default()
    }
}

fn outage_db(cfg: &LinkConfig, regime: Regime, db: f64, form: OutageForm) -> Result<f64> {
    let avg = db_to_linear(db);
    let req = OutageRequest::new(
        *cfg,
        regime.fso(cfg.fso_mean_snr(avg))?,
        RayleighParams::new(avg)?,
        form,
    );
    outage(&req, cfg.gamma_th)
}

fn gg(regime: (f64, f64, f64), mean: f64) -> Result<GammaGammaPointingParams> {
    GammaGammaPointingParams::new(regime.0, regime.1, regime.2, mean)
}

pub struct Suite {
    pub seed: u64,
    /// Monte Carlo trials per comparison; KS uses min(trials, 10⁶) samples
    pub trials: u64,
    pub workers: usize,
}

impl Suite {
    pub fn new(seed: u64, trials: u64, workers: usize) -> Self {
        Self {
            seed,
            trials,
            workers,
        }
    }

    fn sim(&self, stream: u64, trials: u64, mode: Gamma1Mode) -> Result<SimConfig> {
        SimConfig::new(
            trials,
            self.seed
                .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            mode,
            self.workers,
        )
    }

    pub fn run_criterion(&self, id: u8) -> CriterionReport {
        let r = match id {
            1 => self.c1(),
            2 => self.c2(),
            3 => self.c3(),
            4 => self.c4(),
            5 => self.c5(),
            6 => self.c6(),
            7 => self.c7(),
            8 => self.c8(),
            9 => self.c9(),
            10 => self.c10(),
            11 => self.c11(),
            12 => self.c12(),
            _ => Ok(Outcome {
                summary: format!("no criterion {id}"),
                ..Outcome::default()
            }),
        };
        let o = r.unwrap_or_else(|e| Outcome {
            pass: false,
            summary: format!("evaluation failed: {e}"),
            ..Outcome::default()
        });
        CriterionReport {
            id,
            title: title(id),
            pass: o.pass,
            summary: o.summary,
            metrics: o.metrics,
        }
    }

    pub fn run_all(&self) -> Report {
        let criteria: Vec<CriterionReport> =
            (1..=CRITERIA).map(|i| self.run_criterion(i)).collect();
        let all_pass = criteria.iter().all(|c| c.pass);
        Report {
            seed: self.seed,
            trials: self.trials,
            criteria,
            notes: self.notes(),
            all_pass,
        }
    }

    fn c1(&self) -> Result<Outcome> {
        let acc = SeriesAccuracy::default();
        let mut worst = 0.0f64;
        for z in [1e-3, 0.1, 1.0, 10.0] {
            let e = meijer_g(&MeijerGSpec::new(1, 0, vec![], vec![0.0], z)?, &acc)?;
            worst = worst.max(rel(e, (-z).exp()));
            let k = meijer_g(&MeijerGSpec::new(2, 0, vec![], vec![1.0, 0.0], z)?, &acc)?;
            let s = 2.0 * z.sqrt();
            worst = worst.max(rel(k, s * bessel_k(1.0, s)?));
        }
        let mut o = Outcome {
            pass: worst <= 1e-10,
            ..Outcome::default()
        };
        o.summary = format!("max relative error {worst:.3e} (limit 1e-10)");
        o.metric("max_rel", worst);
        Ok(o)
    }

    fn c2(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let mut worst = 0.0f64;
        for (name, r) in [("moderate", MODERATE), ("strong", STRONG)] {
            let p = gg(r, 1.0)?;
            let mut w = 0.0f64;
            for x in log_space(1e-3, 10.0, 50) {
                let m = gg_pe_cdf(&p, x, GgCdfMethod::MeijerG)?;
                let s = gg_pe_cdf(&p, x, GgCdfMethod::Series)?;
                w = w.max(rel(s, m));
            }
            o.metric(format!("max_rel_{name}"), w);
            worst = worst.max(w);
        }
        o.pass = worst <= 1e-6;
        o.summary = format!("max relative gap {worst:.3e} over 50 points per regime (limit 1e-6)");
        Ok(o)
    }

    fn c3(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let samples = self.trials.min(KS_SAMPLES);
        let laws = [
            (
                "gg_moderate",
                ChannelParams::GammaGamma(gg(MODERATE, 10.0)?),
            ),
            ("gg_strong", ChannelParams::GammaGamma(gg(STRONG, 10.0)?)),
            (
                "negexp",
                ChannelParams::NegExp(NegExpParams::new(1.0, 10.0)?),
            ),
            (
                "rayleigh",
                ChannelParams::Rayleigh(RayleighParams::new(10.0)?),
            ),
        ];
        let mut worst = 0.0f64;
        for (i, (name, law)) in laws.iter().enumerate() {
            let s = sample_sorted(
                law,
                samples,
                self.sim(300 + i as u64, 2, Gamma1Mode::Shared)?.seed,
                self.workers,
            )?;
            let (lo, hi) = ks_distance_bounds(&s, KS_STRIDE, |g| law.cdf(g))?;
            o.metric(format!("ks_lower_{name}"), lo);
            o.metric(format!("ks_upper_{name}"), hi);
            worst = worst.max(hi);
        }
        o.pass = worst < 0.003;
        o.summary =
            format!("largest KS upper bound {worst:.3e} at {samples} samples (limit 0.003)");
        Ok(o)
    }

    fn c4(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let c = cfg(2, 1);
        let rf1 = RayleighParams::new(100.0)?;
        let hops = [
            (
                "gamma_gamma",
                ChannelParams::GammaGamma(gg(MODERATE, 100.0)?),
            ),
            (
                "negexp",
                ChannelParams::NegExp(NegExpParams::new(1.0, 100.0)?),
            ),
            (
                "rayleigh",
                ChannelParams::Rayleigh(RayleighParams::new(100.0)?),
            ),
        ];
        let pts = log_space(0.5, 200.0, 10);
        let (mut worst_rel, mut worst_z) = (0.0f64, 0.0f64);
        for (i, (name, hop)) in hops.iter().enumerate() {
            let mut w = 0.0f64;
            for &g in &pts {
                w = w.max(rel(
                    af_relay_cdf(&c, hop, &rf1, g)?,
                    af_relay_cdf_quadrature(&c, hop, &rf1, g)?,
                ));
            }
            let z = af_mc_max_z(
                &c,
                &c,
                hop,
                &rf1,
                &pts,
                &self.sim(400 + i as u64, self.trials, Gamma1Mode::Shared)?,
            )?;
            o.metric(format!("max_rel_quadrature_{name}"), w);
            o.metric(format!("max_mc_sigma_{name}"), z);
            worst_rel = worst_rel.max(w);
            worst_z = worst_z.max(z);
        }
        o.pass = worst_rel <= 1e-5 && worst_z <= 3.0;
        o.summary = format!(
            "closed form vs quadrature {worst_rel:.3e} (limit 1e-5); vs Monte Carlo {worst_z:.2} sigma (limit 3) over 10 points per kernel"
        );
        Ok(o)
    }

    fn c5(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let c = cfg(2, 2);
        let mut worst = 0.0f64;
        let mut worst_at = String::new();
        for (i, regime) in [Regime::Moderate, Regime::Strong, Regime::Saturate]
            .into_iter()
            .enumerate()
        {
            for (j, db) in [15.0, 20.0, 25.0, 30.0].into_iter().enumerate() {
                let avg = db_to_linear(db);
                let (fso, rf) = (regime.fso(c.fso_mean_snr(avg))?, RayleighParams::new(avg)?);
                let p = outage(
                    &OutageRequest::new(c, fso, rf, OutageForm::Exact),
                    c.gamma_th,
                )?;
                let sim = self.sim(
                    500 + 10 * i as u64 + j as u64,
                    self.trials,
                    Gamma1Mode::Independent,
                )?;
                let r = simulate_link(&c, &fso, &rf, &sim)?;
                let z = binomial_z(r.outage_rate, p, r.trials_used);
                o.metric(format!("sigma_{}_{db}db", regime.name()), z);
                if z > worst {
                    worst = z;
                    worst_at = format!("{} {db} dB", regime.name());
                }
                if db == 20.0 {
                    let shared = simulate_link(
                        &c,
                        &fso,
                        &rf,
                        &SimConfig {
                            mode: Gamma1Mode::Shared,
                            ..sim
                        },
                    )?;
                    o.metric(
                        format!("shared_mode_sigma_{}_20db", regime.name()),
                        binomial_z(shared.outage_rate, p, shared.trials_used),
                    );
                }
            }
        }
        o.pass = worst <= 3.0;
        o.summary = format!("worst deviation {worst:.2} sigma at {worst_at} (limit 3)");
        Ok(o)
    }

    fn c6(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let mut monotone = true;
        for db in (0..=8).map(|k| 5.0 * k as f64) {
            let p: Vec<f64> = (1..=3)
                .map(|m| outage_db(&cfg(2, m), Regime::Moderate, db, OutageForm::Exact))
                .collect::<Result<_>>()?;
            monotone &= p[0] < p[1] && p[1] < p[2];
        }
        let mut x = [[f64::NAN; 2]; 3];
        for m in 1..=3u32 {
            for (k, target) in [1e-2, 1e-3].into_iter().enumerate() {
                let c = cfg(2, m);
                let f = |db: f64| outage_db(&c, Regime::Moderate, db, OutageForm::Exact);
                x[m as usize - 1][k] =
                    db_crossing(f, target, -10.0, 80.0, 1e-4)?.unwrap_or(f64::NAN);
            }
        }
        let mut worst = 0.0f64;
        let mut parts = Vec::new();
        for m in 0..2 {
            let g2 = x[m + 1][0] - x[m][0];
            let g3 = x[m + 1][1] - x[m][1];
            let d = (g2 - g3).abs();
            o.metric(format!("gap_m{}_m{}_at_1e-2_db", m + 1, m + 2), g2);
            o.metric(format!("gap_m{}_m{}_at_1e-3_db", m + 1, m + 2), g3);
            parts.push(format!("M{}->M{}: {g2:.2} vs {g3:.2} dB", m + 1, m + 2));
            worst = if d.is_nan() {
                f64::INFINITY
            } else {
                worst.max(d)
            };
        }
        o.metric("max_gap_change_db", worst);
        o.pass = monotone && worst < 1.0;
        o.summary = format!(
            "outage increasing in M: {monotone}; gaps at 1e-2 vs 1e-3 {}; largest change {worst:.2} dB (limit 1)",
            parts.join(", ")
        );
        Ok(o)
    }

    fn c7(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let mut worst = 0.0f64;
        for db0 in [25.0, 30.0, 35.0, 40.0] {
            let target = outage_db(&cfg(2, 2), Regime::Moderate, db0, OutageForm::Exact)?;
            let mut xs = Vec::new();
            for n in 1..=4 {
                let c = cfg(n, 2);
                let f = |db: f64| outage_db(&c, Regime::Moderate, db, OutageForm::Exact);
                xs.push(db_crossing(f, target, 0.0, 80.0, 1e-4)?.unwrap_or(f64::NAN));
            }
            let band = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - xs.iter().cloned().fold(f64::INFINITY, f64::min);
            let band = if band.is_nan() { f64::INFINITY } else { band };
            o.metric(format!("band_db_at_level_of_{db0}db"), band);
            worst = worst.max(band);
        }
        o.pass = worst < 1.0;
        o.summary = format!(
            "widest N=1..4 horizontal band {worst:.3} dB at levels reached from 25-40 dB (limit 1)"
        );
        Ok(o)
    }

    fn c8(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let c = cfg(2, 2);
        let ber = |r: (f64, f64, f64), db: f64| -> Result<f64> {
            let avg = db_to_linear(db);
            Ok(
                dpsk_ber_gg_exact(&c, &gg(r, c.fso_mean_snr(avg))?, &RayleighParams::new(avg)?)?
                    .value,
            )
        };
        let mut gaps = Vec::new();
        for (target, want) in [(1e-4, 2.0), (1e-3, 1.5)] {
            // below ~8 dB the closed form leans on slow quadrature fallbacks; both targets sit well above
            let xm =
                db_crossing(|d| ber(MODERATE, d), target, 10.0, 50.0, 1e-3)?.unwrap_or(f64::NAN);
            let xs = db_crossing(|d| ber(STRONG, d), target, 10.0, 50.0, 1e-3)?.unwrap_or(f64::NAN);
            let gap = xs - xm;
            o.metric(format!("gap_db_at_{target:e}"), gap);
            gaps.push((target, gap, (gap - want).abs() <= 0.75));
        }
        o.pass = gaps.iter().all(|g| g.2);
        o.summary = format!(
            "strong minus moderate: {:.2} dB at 1e-4 (want 2 +/- 0.75), {:.2} dB at 1e-3 (want 1.5 +/- 0.75)",
            gaps[0].1, gaps[1].1
        );
        Ok(o)
    }

    fn c9(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let c = cfg(2, 2);
        let (mut worst_rel, mut fallbacks) = (0.0f64, 0usize);
        for (name, r) in [("moderate", MODERATE), ("strong", STRONG)] {
            for db in [10.0, 20.0, 30.0] {
                let avg = db_to_linear(db);
                let (p, rf) = (gg(r, c.fso_mean_snr(avg))?, RayleighParams::new(avg)?);
                let cf = dpsk_ber_gg_exact(&c, &p, &rf)?;
                let req =
                    OutageRequest::new(c, ChannelParams::GammaGamma(p), rf, OutageForm::Exact);
                let q = dpsk_ber_quadrature(|g| outage(&req, g))?;
                o.metric(format!("rel_{name}_{db}db"), rel(cf.value, q));
                worst_rel = worst_rel.max(rel(cf.value, q));
                fallbacks += cf.fallbacks;
            }
        }
        for db in [5.0, 15.0, 25.0] {
            let avg = db_to_linear(db);
            let (p, rf) = (
                NegExpParams::new(1.0, c.fso_mean_snr(avg))?,
                RayleighParams::new(avg)?,
            );
            let cf = dpsk_ber_ne_asymptotic(&c, &p, &rf)?;
            let q = dpsk_ber_ne_asymptotic_quadrature(&c, &p, &rf)?;
            o.metric(format!("rel_saturate_{db}db"), rel(cf.value, q));
            worst_rel = worst_rel.max(rel(cf.value, q));
            fallbacks += cf.fallbacks;
        }
        let mut worst_z = 0.0f64;
        for (i, (regime, db)) in [
            (Regime::Moderate, 20.0),
            (Regime::Strong, 20.0),
            (Regime::Saturate, 15.0),
        ]
        .into_iter()
        .enumerate()
        {
            let avg = db_to_linear(db);
            let (fso, rf) = (regime.fso(c.fso_mean_snr(avg))?, RayleighParams::new(avg)?);
            let req = OutageRequest::new(c, fso, rf, OutageForm::Exact);
            let q = dpsk_ber_quadrature(|g| outage(&req, g))?;
            let r = simulate_link(
                &c,
                &fso,
                &rf,
                &self.sim(900 + i as u64, self.trials, Gamma1Mode::Independent)?,
            )?;
            let z = (r.ber_estimate - q).abs() / (r.ber_ci95 / 1.96);
            o.metric(format!("mc_sigma_{}_{db}db", regime.name()), z);
            worst_z = worst_z.max(z);
        }
        o.metric("fallbacks", fallbacks as f64);
        o.pass = worst_rel <= 1e-4 && worst_z <= 3.0;
        o.summary = format!(
            "closed forms vs quadrature {worst_rel:.3e} (limit 1e-4, {fallbacks} quadrature fallbacks); Monte Carlo {worst_z:.2} sigma (limit 3)"
        );
        Ok(o)
    }

    fn c10(&self) -> Result<Outcome> {
        let mut o = Outcome::default();
        let c = cfg(2, 2);
        let (mut w_ber, mut w_out, mut w_mc) = (0.0f64, 0.0f64, 0.0f64);
        let mut worst_at = 0.0;
        for (i, db) in [5.0, 10.0, 15.0, 20.0, 25.0, 30.0].into_iter().enumerate() {
            let avg = db_to_linear(db);
            let (p, rf) = (
                NegExpParams::new(1.0, c.fso_mean_snr(avg))?,
                RayleighParams::new(avg)?,
            );
            let fso = ChannelParams::NegExp(p);
            let asym = dpsk_ber_ne_asymptotic(&c, &p, &rf)?.value;
            let req = OutageRequest::new(c, fso, rf, OutageForm::Exact);
            let exact = dpsk_ber_quadrature(|g| outage(&req, g))?;
            let out_exact = outage(&req, c.gamma_th)?;
            let out_asym = outage(
                &OutageRequest::new(c, fso, rf, OutageForm::Asymptotic),
                c.gamma_th,
            )?;
            let sim = self.sim(
                1000 + i as u64,
                (self.trials / 10).max(2),
                Gamma1Mode::Independent,
            )?;
            let mc = simulate_link(&c, &fso, &rf, &sim)?.ber_estimate;
            let (rb, ro, rm) = (rel(asym, exact), rel(out_asym, out_exact), rel(asym, mc));
            o.metric(format!("rel_ber_vs_exact_{db}db"), rb);
            o.metric(format!("rel_outage_vs_exact_{db}db"), ro);
            o.metric(format!("rel_ber_vs_mc_{db}db"), rm);
            if rb > w_ber {
                worst_at = db;
            }
            w_ber = w_ber.max(rb);
            w_out = w_out.max(ro);
            w_mc = w_mc.max(rm);
        }
        o.pass = w_ber <= 0.1 && w_out <= 0.1 && w_mc <= 0.1;
        o.summary = format!(
            "lambda=1, 5-30 dB: asymptotic BER vs exact {w_ber:.3} (worst at {worst_at} dB), vs Monte Carlo {w_mc:.3}; asymptotic outage vs exact {w_out:.3} (limit 0.1)"
        );
        Ok(o)
    }

    fn c11(&self) -> Result<Outcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x11);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let bases = [
                0.0,
                rng.random_range(0.05..0.95),
                rng.random_range(0.55..1.45),
            ];
            let terms: Vec<(f64, f64)> = (0..8)
                .map(|_| {
                    (
                        bases[rng.random_range(0..3)] + rng.random_range(0..4) as f64,
                        rng.random_range(-1.0..1.0),
                    )
                })
                .collect();
            let s = GeneralizedPowerSeries::new(terms)?;
            let mut brute = GeneralizedPowerSeries::one();
            for t in 0..=4 {
                let fast = series_integer_power(&s, t, 64);
                let diff = GeneralizedPowerSeries::new(
                    fast.terms()
                        .iter()
                        .copied()
                        .chain(brute.terms().iter().map(|&(e, c)| (e, -c))),
                )?;
                worst = worst.max(diff.terms().iter().map(|t| t.1.abs()).fold(0.0, f64::max));
                brute = brute.mul(&s);
            }
        }
        let mut o = Outcome {
            pass: worst <= 1e-12,
            ..Outcome::default()
        };
        o.summary = format!("max coefficient error {worst:.3e} over 50 random 8-term series, t = 0..4 (limit 1e-12)");
        o.metric("max_abs", worst);
        Ok(o)
    }

    fn c12(&self) -> Result<Outcome> {
        let c = cfg(2, 2);
        let avg = db_to_linear(20.0);
        let (fso, rf) = (Regime::Moderate.fso(avg)?, RayleighParams::new(avg)?);
        let base = self.sim(1200, self.trials.min(1 << 18), Gamma1Mode::Independent)?;
        let mut runs = Vec::new();
        for w in [1, 4, 16] {
            let r = simulate_link(&c, &fso, &rf, &SimConfig { workers: w, ..base })?;
            let s = sample_sorted(&fso, base.trials.min(1 << 16), base.seed, w)?;
            runs.push((
                serde_json::to_string(&r).expect("serializes"),
                s.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            ));
        }
        let same = runs.windows(2).all(|p| p[0] == p[1]);
        let mut o = Outcome {
            pass: same,
            ..Outcome::default()
        };
        o.summary =
            format!("link simulation and sampler bit-identical under 1, 4 and 16 workers: {same}");
        Ok(o)
    }

    /// Readings the code had to choose between, with the numbers for both.
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        let literal = || -> Result<(f64, f64, f64)> {
            let p = gg(MODERATE, 10.0)?;
            let (x2, z) = (p.xi2(), p.abk());
            let norm = x2 / (gamma(p.alpha)? * gamma(p.beta)?);
            let acc = SeriesAccuracy::default();
            let lit = norm
                * meijer_g(
                    &MeijerGSpec::new(3, 1, vec![1.0, x2 + 1.0], vec![x2, p.alpha, p.beta], z)?,
                    &acc,
                )?;
            Ok((
                gg_pe_cdf(&p, 10.0, GgCdfMethod::MeijerG)?,
                gg_pe_cdf(&p, 10.0, GgCdfMethod::Series)?,
                lit,
            ))
        };
        match literal() {
            Ok((used, series, lit)) => notes.push(format!(
                "CDF kernel reading at gamma = mean, moderate preset: G^{{3,1}}_{{2,4}} (used) = {used:.12e}, series = {series:.12e}, literal G^{{3,1}}_{{2,3}} without the 0 lower parameter = {lit:.12e}"
            )),
            Err(e) => notes.push(format!("CDF kernel reading check failed: {e}")),
        }
        notes.push(
            "Monte Carlo comparisons use independent first-hop draws per AF branch to match the product-form analysis; shared-draw deviations are listed under criterion 5".into(),
        );
        notes
    }
}

/// Largest binomial z-score of the simulated AF CDF (run with `mc_cfg`)
/// against the closed form (evaluated with `analytic_cfg`).
pub fn af_mc_max_z(
    analytic_cfg: &LinkConfig,
    mc_cfg: &LinkConfig,
    second_hop: &ChannelParams,
    rf1: &RayleighParams,
    points: &[f64],
    sim: &SimConfig,
) -> Result<f64> {
    let mc = simulate_af_relay(mc_cfg, second_hop, rf1, points, sim)?;
    let mut worst = 0.0f64;
    for (&g, &(p_hat, _)) in points.iter().zip(&mc) {
        worst = worst.max(binomial_z(
            p_hat,
            af_relay_cdf(analytic_cfg, second_hop, rf1, g)?,
            sim.trials,
        ));
    }
    Ok(worst)
}
