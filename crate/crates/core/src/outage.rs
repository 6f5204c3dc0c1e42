//! End-to-end outage probability of the relay chain.
//!
//! P_out(γ) = 1 - (1 - A_F A_R)(1 - F_F F_R)^{M-1}, with A_F, A_R the AF
//! end-to-end CDFs over the FSO and RF second hops and F_F, F_R the per-hop
//! CDFs of the M-1 identical DF stages.

use serde::{Deserialize, Serialize};

use crate::ber::series::{series_integer_power, GeneralizedPowerSeries};
use crate::channels::{
    gg_pe_cdf, ne_cdf, rayleigh_cdf, series_cdf_coeffs, ChannelParams, GgCdfMethod, NeCdfMethod,
    RayleighParams, DEFAULT_SERIES_TERMS,
};
use crate::error::{domain, Result};
use crate::numeric::{alt_sign, binomial, CompensatedSum};
use crate::relay::{AfRelay, LinkConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutageForm {
    /// factored product form
    Exact,
    /// fully binomial-expanded form
    Expanded,
    /// expanded, with F_F^t from the power series (Gamma-Gamma only)
    Series,
    /// expanded, with F_F ≈ θ√γ (Negative Exponential only)
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutageRequest {
    pub cfg: LinkConfig,
    pub fso: ChannelParams,
    pub rf: RayleighParams,
    pub form: OutageForm,
}

impl OutageRequest {
    pub fn new(cfg: LinkConfig, fso: ChannelParams, rf: RayleighParams, form: OutageForm) -> Self {
        Self { cfg, fso, rf, form }
    }
}

/// Pieces shared by all forms at one γ.
struct Stage {
    af_f: AfRelay,
    af_r: AfRelay,
}

impl Stage {
    fn new(req: &OutageRequest) -> Result<Self> {
        let second_rf = ChannelParams::Rayleigh(req.rf);
        Ok(Self {
            af_f: AfRelay::new(&req.cfg, &req.fso, &req.rf)?,
            af_r: AfRelay::new(&req.cfg, &second_rf, &req.rf)?,
        })
    }
}

fn factored(m: u32, a_f: f64, a_r: f64, f_f: f64, f_r: f64) -> f64 {
    let l = (-a_f * a_r).ln_1p() + (m - 1) as f64 * (-f_f * f_r).ln_1p();
    (-l.exp_m1()).clamp(0.0, 1.0)
}

/// 1 - Σ_{t,u} C(M-1,t)C(t,u)(-1)^{t+u} e^{-uγ/γ̄} [F_F^t] (S_F + S_R - S_F S_R),
/// with S = Σ_k c_k e^{-(k+1)γ/γ̄} T_k written out term by term.
/// `fso_pow(t)` returns summands whose total is F_F^t.
fn expanded(
    req: &OutageRequest,
    st: &Stage,
    gamma: f64,
    fso_pow: impl Fn(u32) -> Vec<f64>,
) -> Result<f64> {
    let m1 = req.cfg.n_relays - 1;
    let gr = req.rf.mean_snr;
    let n = st.af_f.coeffs.len();
    let mut tf = Vec::with_capacity(n);
    let mut tr = Vec::with_capacity(n);
    for k in 0..n {
        tf.push(st.af_f.kernel.eval(st.af_f.slope[k] * gamma)?.0);
        tr.push(st.af_r.kernel.eval(st.af_r.slope[k] * gamma)?.0);
    }
    let c = &st.af_f.coeffs;
    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    for t in 0..=m1 {
        let pows = fso_pow(t);
        for u in 0..=t {
            let w = binomial(m1, t) * binomial(t, u) * alt_sign(t + u);
            for &p in &pows {
                let wp = w * p;
                for k in 0..n {
                    let e = (-((k + 1 + u as usize) as f64) * gamma / gr).exp();
                    sum.add(-wp * c[k] * e * tf[k]);
                    sum.add(-wp * c[k] * e * tr[k]);
                    for g in 0..n {
                        let e2 = (-((k + g + 2 + u as usize) as f64) * gamma / gr).exp();
                        sum.add(wp * c[k] * c[g] * e2 * tf[k] * tr[g]);
                    }
                }
            }
        }
    }
    Ok(sum.value())
}

/// Outage with a Gamma-Gamma + pointing-error FSO law.
pub fn outage_gg(req: &OutageRequest, gamma_th: f64) -> Result<f64> {
    let ChannelParams::GammaGamma(p) = req.fso else {
        return domain("outage_gg needs Gamma-Gamma FSO parameters");
    };
    check(req, gamma_th)?;
    let st = Stage::new(req)?;
    let f_r = rayleigh_cdf(&req.rf, gamma_th);
    match req.form {
        OutageForm::Exact => {
            let f_f = gg_pe_cdf(&p, gamma_th, GgCdfMethod::MeijerG)?;
            Ok(factored(
                req.cfg.n_relays,
                st.af_f.cdf(gamma_th)?,
                st.af_r.cdf(gamma_th)?,
                f_f,
                f_r,
            ))
        }
        OutageForm::Expanded => {
            let f_f = gg_pe_cdf(&p, gamma_th, GgCdfMethod::MeijerG)?;
            Ok(expanded(req, &st, gamma_th, |t| vec![f_f.powi(t as i32)])?.clamp(0.0, 1.0))
        }
        OutageForm::Series => {
            let coeffs = series_cdf_coeffs(&p, DEFAULT_SERIES_TERMS)?;
            let base = GeneralizedPowerSeries::new(coeffs.terms())?;
            let y = (gamma_th / p.mean_snr).sqrt();
            // make sure the single-power series itself is within its convergence range
            coeffs.eval(y)?;
            Ok(expanded(req, &st, gamma_th, |t| {
                vec![series_integer_power(&base, t, DEFAULT_SERIES_TERMS).eval(y)]
            })?
            .clamp(0.0, 1.0))
        }
        OutageForm::Asymptotic => {
            domain("the asymptotic outage form applies to Negative Exponential turbulence only")
        }
    }
}

/// Outage with a Negative Exponential FSO law.
pub fn outage_ne(req: &OutageRequest, gamma_th: f64) -> Result<f64> {
    Ok(outage_ne_raw(req, gamma_th)?.clamp(0.0, 1.0))
}

/// As `outage_ne`, but the asymptotic form is left unclamped so it is the
/// exact integrand of the closed-form asymptotic BER.
pub(crate) fn outage_ne_raw(req: &OutageRequest, gamma_th: f64) -> Result<f64> {
    let ChannelParams::NegExp(p) = req.fso else {
        return domain("outage_ne needs Negative Exponential FSO parameters");
    };
    check(req, gamma_th)?;
    let st = Stage::new(req)?;
    let f_r = rayleigh_cdf(&req.rf, gamma_th);
    match req.form {
        OutageForm::Exact => {
            let f_f = ne_cdf(&p, gamma_th, NeCdfMethod::Exact);
            Ok(factored(
                req.cfg.n_relays,
                st.af_f.cdf(gamma_th)?,
                st.af_r.cdf(gamma_th)?,
                f_f,
                f_r,
            ))
        }
        OutageForm::Expanded => {
            let r = p.lambda * (gamma_th / p.mean_snr).sqrt();
            // F^t = Σ_v C(t,v)(-1)^v e^{-vλ√(γ/γ̄)}
            expanded(req, &st, gamma_th, |t| {
                (0..=t)
                    .map(|v| binomial(t, v) * alt_sign(v) * (-(v as f64) * r).exp())
                    .collect()
            })
        }
        OutageForm::Asymptotic => {
            let x = p.theta() * gamma_th.sqrt();
            expanded(req, &st, gamma_th, |t| vec![x.powi(t as i32)])
        }
        OutageForm::Series => {
            domain("the series outage form applies to Gamma-Gamma turbulence only")
        }
    }
}

/// Dispatch on the FSO law.
pub fn outage(req: &OutageRequest, gamma_th: f64) -> Result<f64> {
    match req.fso {
        ChannelParams::GammaGamma(_) => outage_gg(req, gamma_th),
        ChannelParams::NegExp(_) => outage_ne(req, gamma_th),
        ChannelParams::Rayleigh(_) => {
            domain("the FSO link needs a Gamma-Gamma or Negative Exponential law")
        }
    }
}

fn check(req: &OutageRequest, gamma_th: f64) -> Result<()> {
    req.cfg.validate()?;
    if !(gamma_th > 0.0) || !gamma_th.is_finite() {
        return domain(format!("gamma_th must be positive, got {gamma_th}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{GammaGammaPointingParams, NegExpParams};

    fn db(x: f64) -> f64 {
        10f64.powf(x / 10.0)
    }

    fn gg_req(
        regime: (f64, f64, f64),
        avg_db: f64,
        n: u32,
        m: u32,
        form: OutageForm,
    ) -> OutageRequest {
        let g = db(avg_db);
        let (a, b, xi) = regime;
        OutageRequest {
            cfg: LinkConfig {
                n_antennas: n,
                n_relays: m,
                ..LinkConfig::default()
            },
            fso: ChannelParams::GammaGamma(GammaGammaPointingParams::new(a, b, xi, g).unwrap()),
            rf: RayleighParams::new(g).unwrap(),
            form,
        }
    }

    fn ne_req(lambda: f64, avg_db: f64, n: u32, m: u32, form: OutageForm) -> OutageRequest {
        let g = db(avg_db);
        OutageRequest {
            cfg: LinkConfig {
                n_antennas: n,
                n_relays: m,
                ..LinkConfig::default()
            },
            fso: ChannelParams::NegExp(NegExpParams::new(lambda, g).unwrap()),
            rf: RayleighParams::new(g).unwrap(),
            form,
        }
    }

    const MODERATE: (f64, f64, f64) = (4.0, 1.9, 10.45);
    const STRONG: (f64, f64, f64) = (4.2, 1.4, 2.45);

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn factored_and_expanded_agree() {
        for regime in [MODERATE, STRONG] {
            for m in 1..=3 {
                for n in 1..=3 {
                    for avg in [5.0, 15.0, 25.0] {
                        // the expanded sum cancels down from O(1), so below ~1e-6 the
                        // agreement is limited to ~1e-16 absolute
                        let e =
                            outage_gg(&gg_req(regime, avg, n, m, OutageForm::Exact), 10.0).unwrap();
                        let x = outage_gg(&gg_req(regime, avg, n, m, OutageForm::Expanded), 10.0)
                            .unwrap();
                        assert!(
                            (x - e).abs() <= 1e-9 * e + 1e-15,
                            "GG N={n} M={m} {avg} dB: {x} vs {e}"
                        );
                        let e =
                            outage_ne(&ne_req(1.0, avg, n, m, OutageForm::Exact), 10.0).unwrap();
                        let x =
                            outage_ne(&ne_req(1.0, avg, n, m, OutageForm::Expanded), 10.0).unwrap();
                        assert!(
                            (x - e).abs() <= 1e-9 * e + 1e-15,
                            "NE N={n} M={m} {avg} dB: {x} vs {e}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn series_form_agrees_with_exact() {
        for regime in [MODERATE, STRONG] {
            for m in 1..=3 {
                for avg in [10.0, 20.0, 30.0] {
                    let e = outage_gg(&gg_req(regime, avg, 2, m, OutageForm::Exact), 10.0).unwrap();
                    let s =
                        outage_gg(&gg_req(regime, avg, 2, m, OutageForm::Series), 10.0).unwrap();
                    assert!(rel(s, e) < 1e-5, "M={m} {avg} dB: {s} vs {e}");
                }
            }
        }
    }

    #[test]
    fn single_relay_is_af_stage_only() {
        let req = gg_req(MODERATE, 20.0, 2, 1, OutageForm::Exact);
        let af_f = crate::relay::af_relay_cdf(&req.cfg, &req.fso, &req.rf, 10.0).unwrap();
        let af_r =
            crate::relay::af_relay_cdf(&req.cfg, &ChannelParams::Rayleigh(req.rf), &req.rf, 10.0)
                .unwrap();
        let p = outage_gg(&req, 10.0).unwrap();
        assert!(rel(p, af_f * af_r) < 1e-13);
    }

    #[test]
    fn monotone_in_average_snr_threshold_and_relays() {
        for regime in [MODERATE, STRONG] {
            let mut prev = 1.0;
            for i in 0..16 {
                let avg = 10.0 + 2.0 * i as f64;
                let p = outage_gg(&gg_req(regime, avg, 2, 2, OutageForm::Exact), 10.0).unwrap();
                assert!(p < prev, "{avg} dB");
                let p3 = outage_gg(&gg_req(regime, avg, 2, 3, OutageForm::Exact), 10.0).unwrap();
                assert!(p3 > p);
                let hi = outage_gg(&gg_req(regime, avg, 2, 2, OutageForm::Exact), 20.0).unwrap();
                assert!(hi > p);
                prev = p;
            }
        }
        let mut prev = 1.0;
        for i in 0..16 {
            let p = outage_ne(
                &ne_req(1.0, 10.0 + 2.0 * i as f64, 2, 2, OutageForm::Exact),
                10.0,
            )
            .unwrap();
            assert!(p < prev);
            prev = p;
        }
    }

    #[test]
    fn threshold_limit() {
        let req = ne_req(1.0, 20.0, 2, 2, OutageForm::Exact);
        assert!(outage_ne(&req, 1e-6 * db(20.0)).unwrap() < 1e-3);
    }

    #[test]
    fn ne_asymptotic_approaches_exact() {
        let mut prev_gap = f64::INFINITY;
        for avg in [20.0, 30.0, 40.0, 50.0] {
            let e = outage_ne(&ne_req(1.0, avg, 2, 2, OutageForm::Exact), 10.0).unwrap();
            let a = outage_ne(&ne_req(1.0, avg, 2, 2, OutageForm::Asymptotic), 10.0).unwrap();
            let gap = rel(a, e);
            assert!(gap < prev_gap, "{avg} dB: gap {gap}");
            prev_gap = gap;
        }
        assert!(prev_gap < 0.02);
    }

    #[test]
    fn wrong_form_for_family_is_rejected() {
        assert!(outage_gg(&gg_req(MODERATE, 20.0, 2, 2, OutageForm::Asymptotic), 10.0).is_err());
        assert!(outage_ne(&ne_req(1.0, 20.0, 2, 2, OutageForm::Series), 10.0).is_err());
        assert!(outage_gg(&ne_req(1.0, 20.0, 2, 2, OutageForm::Exact), 10.0).is_err());
        assert!(outage_gg(&gg_req(MODERATE, 20.0, 2, 2, OutageForm::Exact), 0.0).is_err());
    }
}
