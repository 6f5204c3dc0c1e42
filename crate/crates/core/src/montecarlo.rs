//! Trial simulator of the full chain.
//!
//! Every trial draws from its own ChaCha8 stream (stream index = trial index),
//! trials are grouped in fixed blocks and block accumulators are merged
//! pairwise in block order, so results depend only on (seed, trials, mode,
//! parameters) and never on the worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{ChannelParams, ChannelSampler, RayleighParams};
use crate::error::{domain, Error, Result};
use crate::relay::LinkConfig;

const BLOCK: u64 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gamma1Mode {
    /// both AF branches see the same first-hop SNR (the physical system)
    Shared,
    /// each AF branch gets its own first-hop draw (matches the product-form analysis)
    Independent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub mode: Gamma1Mode,
    pub workers: usize,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64, mode: Gamma1Mode, workers: usize) -> Result<Self> {
        let s = Self {
            trials,
            seed,
            mode,
            workers,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 2 || self.workers < 1 {
            return domain(format!(
                "need trials >= 2 and workers >= 1, got {} and {}",
                self.trials, self.workers
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub outage_rate: f64,
    pub outage_ci95: f64,
    /// semi-analytic estimate ½E[e^{-γ_eq}]
    pub ber_estimate: f64,
    pub ber_ci95: f64,
    pub trials_used: u64,
    pub outage_count: u64,
    /// bit-flip counting estimate on the same trials, for variance comparison
    pub bit_error_rate: f64,
    pub bit_error_ci95: f64,
}

impl SimResult {
    /// Binomial standard error of the outage rate.
    pub fn outage_sigma(&self) -> f64 {
        self.outage_ci95 / 1.96
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    n: u64,
    hits: u64,
    sum: f64,
    sq: f64,
    bits: u64,
}

impl Acc {
    fn merge(a: Acc, b: Acc) -> Acc {
        Acc {
            n: a.n + b.n,
            hits: a.hits + b.hits,
            sum: a.sum + b.sum,
            sq: a.sq + b.sq,
            bits: a.bits + b.bits,
        }
    }
}

fn pairwise(v: &[Acc]) -> Acc {
    match v.len() {
        0 => Acc::default(),
        1 => v[0],
        n => Acc::merge(pairwise(&v[..n / 2]), pairwise(&v[n / 2..])),
    }
}

fn base_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[inline]
fn trial_rng(base: &ChaCha8Rng, index: u64) -> ChaCha8Rng {
    let mut r = base.clone();
    r.set_stream(index);
    r
}

fn run_blocks<T, F>(trials: u64, workers: usize, block: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    let nblocks = trials.div_ceil(BLOCK);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Domain(e.to_string()))?;
    Ok(pool.install(|| {
        (0..nblocks)
            .into_par_iter()
            .map(|b| block(b * BLOCK, ((b + 1) * BLOCK).min(trials)))
            .collect()
    }))
}

#[inline]
fn sc_draw<R: Rng>(rng: &mut R, n: u32, mean: f64) -> f64 {
    let mut m = 0.0f64;
    for _ in 0..n {
        let e: f64 = Exp1.sample(rng);
        m = m.max(e);
    }
    mean * m
}

fn ci95(p: f64, n: u64) -> f64 {
    1.96 * (p * (1.0 - p) / n as f64).sqrt()
}

/// Monte Carlo estimate of outage and DPSK BER at `cfg.gamma_th`.
pub fn simulate_link(
    cfg: &LinkConfig,
    fso: &ChannelParams,
    rf: &RayleighParams,
    sim: &SimConfig,
) -> Result<SimResult> {
    cfg.validate()?;
    sim.validate()?;
    let fso_s = ChannelSampler::new(fso)?;
    let rf_s = ChannelSampler::new(&ChannelParams::Rayleigh(*rf))?;
    let base = base_rng(sim.seed);
    let (n, m, c, th) = (cfg.n_antennas, cfg.n_relays, cfg.fixed_gain_c, cfg.gamma_th);
    let g1 = rf.mean_snr;
    let shared = sim.mode == Gamma1Mode::Shared;
    let blocks = run_blocks(sim.trials, sim.workers, |lo, hi| {
        let mut acc = Acc::default();
        for i in lo..hi {
            let mut r = trial_rng(&base, i);
            let first_f = sc_draw(&mut r, n, g1);
            let first_r = if shared {
                first_f
            } else {
                sc_draw(&mut r, n, g1)
            };
            let g2f = fso_s.sample(&mut r);
            let g2r = rf_s.sample(&mut r);
            let af_f = first_f * g2f / (c + g2f);
            let af_r = first_r * g2r / (c + g2r);
            let mut eq = af_f.max(af_r);
            for _ in 1..m {
                let hop = fso_s.sample(&mut r).max(rf_s.sample(&mut r));
                eq = eq.min(hop);
            }
            let pe = 0.5 * (-eq).exp();
            let u: f64 = r.random();
            acc.n += 1;
            acc.hits += (eq < th) as u64;
            acc.sum += pe;
            acc.sq += pe * pe;
            acc.bits += (u < pe) as u64;
        }
        acc
    })?;
    let a = pairwise(&blocks);
    let nf = a.n as f64;
    let p = a.hits as f64 / nf;
    let mean = a.sum / nf;
    let var = ((a.sq - a.sum * mean) / (nf - 1.0)).max(0.0);
    let bits = a.bits as f64 / nf;
    Ok(SimResult {
        outage_rate: p,
        outage_ci95: ci95(p, a.n),
        ber_estimate: mean,
        ber_ci95: 1.96 * (var / nf).sqrt(),
        trials_used: a.n,
        outage_count: a.hits,
        bit_error_rate: bits,
        bit_error_ci95: ci95(bits, a.n),
    })
}

/// Monte Carlo of P(γ₁γ₂/(C+γ₂) ≤ γ) for the AF stage alone: (rate, binomial σ).
/// Empirical CDF of the AF-stage SNR at each threshold, with binomial σ.
pub fn simulate_af_relay(
    cfg: &LinkConfig,
    second_hop: &ChannelParams,
    rf1: &RayleighParams,
    gammas: &[f64],
    sim: &SimConfig,
) -> Result<Vec<(f64, f64)>> {
    cfg.validate()?;
    sim.validate()?;
    let s2 = ChannelSampler::new(second_hop)?;
    let base = base_rng(sim.seed);
    let (n, c, g1) = (cfg.n_antennas, cfg.fixed_gain_c, rf1.mean_snr);
    let blocks = run_blocks(sim.trials, sim.workers, |lo, hi| {
        let mut hits = vec![0u64; gammas.len()];
        for i in lo..hi {
            let mut r = trial_rng(&base, i);
            let a = sc_draw(&mut r, n, g1);
            let b = s2.sample(&mut r);
            let snr = a * b / (c + b);
            for (h, &g) in hits.iter_mut().zip(gammas) {
                *h += (snr <= g) as u64;
            }
        }
        hits
    })?;
    let nf = sim.trials as f64;
    Ok((0..gammas.len())
        .map(|j| {
            let p = blocks.iter().map(|b| b[j]).sum::<u64>() as f64 / nf;
            (p, (p * (1.0 - p) / nf).sqrt())
        })
        .collect())
}

/// `count` SNR draws, sorted ascending.
pub fn sample_sorted(p: &ChannelParams, count: u64, seed: u64, workers: usize) -> Result<Vec<f64>> {
    if count == 0 || workers == 0 {
        return domain("need count >= 1 and workers >= 1");
    }
    let sampler = ChannelSampler::new(p)?;
    let s = &sampler;
    let base = base_rng(seed);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Domain(e.to_string()))?;
    let nblocks = count.div_ceil(BLOCK);
    let base = &base;
    let mut v: Vec<f64> = pool.install(|| {
        (0..nblocks)
            .into_par_iter()
            .flat_map_iter(|b| {
                // one stream per block; draws inside a block are sequential
                let mut r = trial_rng(base, b);
                let len = ((b + 1) * BLOCK).min(count) - b * BLOCK;
                (0..len).map(move |_| s.sample(&mut r)).collect::<Vec<_>>()
            })
            .collect()
    });
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Fraction of `samples` (sorted) that are <= gamma.
pub fn empirical_cdf(samples: &[f64], gamma: f64) -> f64 {
    if samples.is_empty() {
        return f64::NAN;
    }
    samples.partition_point(|&x| x <= gamma) as f64 / samples.len() as f64
}

/// Kolmogorov-Smirnov distance between sorted samples and a CDF.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x)?;
        d = d
            .max((f - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - f).abs());
    }
    Ok(d)
}

/// Bracket on the KS distance using the CDF only at every `stride`-th sample.
///
/// Between two grid samples both the CDF and the empirical CDF are monotone,
/// so the deviation there is bounded by the values at the ends.
pub fn ks_distance_bounds(
    sorted: &[f64],
    stride: usize,
    cdf: impl Fn(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    if sorted.is_empty() || stride == 0 {
        return domain("KS bounds need samples and a positive stride");
    }
    let n = sorted.len();
    let nf = n as f64;
    let mut idx: Vec<usize> = (0..n).step_by(stride).collect();
    if *idx.last().unwrap() != n - 1 {
        idx.push(n - 1);
    }
    let f: Vec<f64> = idx.iter().map(|&i| cdf(sorted[i])).collect::<Result<_>>()?;
    let mut lo = 0.0f64;
    // below the first sample F_n = 0, above the last F_n = 1
    let mut hi = f[0].max(1.0 - f[f.len() - 1]);
    for (j, (&i, &fi)) in idx.iter().zip(&f).enumerate() {
        lo = lo.max(fi - i as f64 / nf).max((i + 1) as f64 / nf - fi);
        if let (Some(&i2), Some(&f2)) = (idx.get(j + 1), f.get(j + 1)) {
            hi = hi.max(i2 as f64 / nf - fi).max(f2 - (i + 1) as f64 / nf);
        }
    }
    Ok((lo, hi.max(lo)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{GammaGammaPointingParams, NegExpParams};

    fn moderate(mean: f64) -> ChannelParams {
        ChannelParams::GammaGamma(GammaGammaPointingParams::new(4.0, 1.9, 10.45, mean).unwrap())
    }

    #[test]
    fn deterministic_and_worker_independent() {
        let cfg = LinkConfig::default();
        let rf = RayleighParams::new(30.0).unwrap();
        let a = simulate_link(
            &cfg,
            &moderate(30.0),
            &rf,
            &SimConfig::new(100_000, 7, Gamma1Mode::Independent, 1).unwrap(),
        )
        .unwrap();
        let b = simulate_link(
            &cfg,
            &moderate(30.0),
            &rf,
            &SimConfig::new(100_000, 7, Gamma1Mode::Independent, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
        let c = simulate_link(
            &cfg,
            &moderate(30.0),
            &rf,
            &SimConfig::new(100_000, 8, Gamma1Mode::Independent, 1).unwrap(),
        )
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn threshold_limit() {
        let g = 100.0;
        let cfg = LinkConfig {
            gamma_th: 1e-9 * g,
            ..LinkConfig::default()
        };
        let rf = RayleighParams::new(g).unwrap();
        let r = simulate_link(
            &cfg,
            &moderate(g),
            &rf,
            &SimConfig::new(1_000_000, 1, Gamma1Mode::Shared, 1).unwrap(),
        )
        .unwrap();
        assert!(r.outage_rate < 1e-4);
    }

    #[test]
    fn semi_analytic_has_smaller_variance_than_bit_counting() {
        let cfg = LinkConfig::default();
        let rf = RayleighParams::new(10.0).unwrap();
        let r = simulate_link(
            &cfg,
            &moderate(10.0),
            &rf,
            &SimConfig::new(200_000, 3, Gamma1Mode::Shared, 1).unwrap(),
        )
        .unwrap();
        assert!(r.ber_ci95 < r.bit_error_ci95);
        assert!((r.ber_estimate - r.bit_error_rate).abs() < 3.0 * r.bit_error_ci95);
    }

    #[test]
    fn empirical_cdf_examples() {
        let s: Vec<f64> = (1..=101).map(|i| i as f64).collect();
        assert_eq!(empirical_cdf(&s, 0.5), 0.0);
        assert_eq!(empirical_cdf(&s, 200.0), 1.0);
        assert!((empirical_cdf(&s, 51.0) - 0.5).abs() <= 1.0 / 101.0);
    }

    #[test]
    fn ne_samples_match_cdf() {
        let p = ChannelParams::NegExp(NegExpParams::new(2.0, 5.0).unwrap());
        let s = sample_sorted(&p, 200_000, 9, 2).unwrap();
        let d = ks_distance(&s, |g| p.cdf(g)).unwrap();
        assert!(d < 0.005, "{d}");
        for stride in [1, 7, 100] {
            let (lo, hi) = ks_distance_bounds(&s, stride, |g| p.cdf(g)).unwrap();
            assert!(lo <= d + 1e-15 && d <= hi + 1e-15, "{lo} {d} {hi}");
            assert!(hi - lo <= 2.0 * stride as f64 / s.len() as f64 + 0.002);
        }
        let (lo, hi) = ks_distance_bounds(&s, 1, |g| p.cdf(g)).unwrap();
        assert!((lo - d).abs() < 1e-15 && (hi - d).abs() < 1e-15);
    }

    #[test]
    fn af_relay_mc_matches_closed_form() {
        let cfg = LinkConfig {
            n_antennas: 1,
            ..LinkConfig::default()
        };
        let rf = RayleighParams::new(10.0).unwrap();
        let second = ChannelParams::Rayleigh(rf);
        let sim = SimConfig::new(1_000_000, 5, Gamma1Mode::Shared, 1).unwrap();
        let pts = [0.3, 1.0, 5.0];
        let mc = simulate_af_relay(&cfg, &second, &rf, &pts, &sim).unwrap();
        for (&g, &(p, s)) in pts.iter().zip(&mc) {
            let exact = crate::relay::af_relay_cdf(&cfg, &second, &rf, g).unwrap();
            assert!((p - exact).abs() < 3.0 * s, "{p} vs {exact} (sigma {s})");
        }
    }
}
