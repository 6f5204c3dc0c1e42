//! DPSK bit-error rate of the relay chain.
//!
//! BER = ½ ∫₀^∞ e^{-γ} P_out(γ) dγ. Besides direct quadrature, two closed
//! forms are provided: exact for Gamma-Gamma with pointing error (F_F^t taken
//! from the power series) and asymptotic for Negative Exponential (F_F ≈ θ√γ).
//! Every term is a Laplace transform of one Meijer-G kernel or of a product of
//! two, the latter being the bivariate integral E(c; x, y).

pub mod series;

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::channels::{
    series_cdf_coeffs, ChannelParams, GammaGammaPointingParams, NegExpParams, RayleighParams,
    DEFAULT_SERIES_TERMS,
};
use crate::error::{Error, Result};
use crate::numeric::{alt_sign, binomial, CompensatedSum};
use crate::quadrature::{integrate_breaks, integrate_to_infinity, QuadTolerance};
use crate::relay::{AfKernel, AfRelay, LinkConfig};
use crate::specfun::{
    bivariate_meijer_g_detailed, ln_gamma, meijer_g, meijer_g_detailed, MeijerGSpec, SeriesAccuracy,
};
use series::{series_integer_power, GeneralizedPowerSeries};

/// Upper integration limit; the neglected tail is below e^{-60}/2.
pub const BER_UPPER: f64 = 60.0;

const BREAKS: [f64; 13] = [
    0.0, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 15.0, 25.0, 40.0, BER_UPPER,
];

/// ½ ∫₀^60 e^{-γ} P_out(γ) dγ by adaptive Gauss-Kronrod.
pub fn dpsk_ber_quadrature(outage_fn: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let failure = RefCell::new(None);
    let f = |g: f64| {
        if g <= 0.0 {
            return 0.0;
        }
        match outage_fn(g) {
            Ok(p) => (-g).exp() * p,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let tol = QuadTolerance {
        abs: 1e-18,
        rel: 1e-9,
        max_intervals: 3000,
    };
    let r = integrate_breaks(f, &BREAKS, &tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok((0.5 * r?.value).clamp(0.0, 0.5))
}

/// Closed-form BER with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormBer {
    pub value: f64,
    /// kernel integrals that were computed by quadrature because the series route failed
    pub fallbacks: usize,
    /// (t, u, exponent) groups evaluated
    pub terms: usize,
    /// groups dropped as negligible
    pub pruned: usize,
    /// ½(1 + Σ|term|); the value carries absolute rounding error of order magnitude·ε
    pub magnitude: f64,
}

/// Terms whose magnitude bound is below this are dropped.
const PRUNE: f64 = 1e-20;
/// Accepted relative error of a series-route kernel integral before falling back.
const FALLBACK_REL: f64 = 1e-6;

struct Engine<'a> {
    af_f: &'a AfRelay,
    af_r: &'a AfRelay,
    acc: SeriesAccuracy,
    fallbacks: usize,
}

/// Copy of `spec` with one extra leading upper parameter: the Laplace image
/// ∫ t^{c-1} e^{-σt} G(ωt) dt = σ^{-c} G^{m,n+1}_{p+1,q}(ω/σ | 1-c, a; b).
fn laplace_spec(spec: &MeijerGSpec, c: f64, z: f64) -> Result<MeijerGSpec> {
    let mut a = Vec::with_capacity(spec.a.len() + 1);
    a.push(1.0 - c);
    a.extend_from_slice(&spec.a);
    Ok(MeijerGSpec::new(spec.m, spec.n + 1, a, spec.b.clone(), z)?)
}

impl Engine<'_> {
    /// ∫ γ^ℶ e^{-σγ} G(ωγ) dγ for one kernel.
    fn laplace(&mut self, spec: &MeijerGSpec, ell: f64, sigma: f64, omega: f64) -> Result<f64> {
        let c = 1.0 + ell;
        let scale = sigma.powf(-c);
        let ls = laplace_spec(spec, c, omega / sigma)?;
        if let Ok(v) = meijer_g_detailed(&ls, &self.acc) {
            if v.error_estimate <= FALLBACK_REL * v.value.abs() {
                return Ok(scale * v.value);
            }
        }
        self.fallbacks += 1;
        let s = spec.clone();
        let acc = self.acc;
        quad_laplace(
            |g| meijer_g(&s.with_z(omega * g), &acc).map_err(Error::from),
            ell,
            sigma,
        )
    }

    /// ∫ γ^ℶ e^{-σγ} G₁(ω₁γ) G₂(ω₂γ) dγ.
    fn laplace2(
        &mut self,
        s1: &MeijerGSpec,
        w1: f64,
        s2: &MeijerGSpec,
        w2: f64,
        ell: f64,
        sigma: f64,
    ) -> Result<f64> {
        let c = 1.0 + ell;
        if let Ok(v) = bivariate_meijer_g_detailed(c, s1, s2, w1 / sigma, w2 / sigma, &self.acc) {
            if v.error_estimate <= FALLBACK_REL * v.value.abs() {
                return Ok(sigma.powf(-c) * v.value);
            }
        }
        self.fallbacks += 1;
        let (a, b) = (s1.clone(), s2.clone());
        let acc = self.acc;
        quad_laplace(
            |g| Ok(meijer_g(&a.with_z(w1 * g), &acc)? * meijer_g(&b.with_z(w2 * g), &acc)?),
            ell,
            sigma,
        )
    }

    /// ∫ γ^ℶ e^{-σγ} T_F(s_k γ) dγ
    fn t_fso(&mut self, k: usize, ell: f64, sigma: f64) -> Result<f64> {
        let s = self.af_f.slope[k];
        match &self.af_f.kernel {
            AfKernel::GammaGamma { scale, spec } => {
                let base = gamma_integral(ell, sigma)?;
                Ok(base - scale * self.laplace(spec, ell, sigma, s)?)
            }
            AfKernel::NegExp { scale, spec } => Ok(scale * self.laplace(spec, ell, sigma, s)?),
            AfKernel::Rayleigh { spec } => self.laplace(spec, ell, sigma, s),
        }
    }

    /// ∫ γ^ℶ e^{-σγ} T_R(s_g γ) dγ
    fn t_rf(&mut self, g: usize, ell: f64, sigma: f64) -> Result<f64> {
        let spec = self.af_r.kernel.spec().clone();
        self.laplace(&spec, ell, sigma, self.af_r.slope[g])
    }

    /// ∫ γ^ℶ e^{-σγ} T_F(s_k γ) T_R(s_g γ) dγ
    fn t_both(&mut self, k: usize, g: usize, ell: f64, sigma: f64) -> Result<f64> {
        let sr = self.af_r.kernel.spec().clone();
        let wr = self.af_r.slope[g];
        let wf = self.af_f.slope[k];
        match &self.af_f.kernel {
            AfKernel::GammaGamma { scale, spec } => {
                let rf_only = self.laplace(&sr, ell, sigma, wr)?;
                Ok(rf_only - scale * self.laplace2(&sr, wr, spec, wf, ell, sigma)?)
            }
            AfKernel::NegExp { scale, spec } => {
                Ok(scale * self.laplace2(&sr, wr, spec, wf, ell, sigma)?)
            }
            AfKernel::Rayleigh { spec } => self.laplace2(&sr, wr, spec, wf, ell, sigma),
        }
    }
}

/// Γ(1+ℶ) σ^{-1-ℶ}
fn gamma_integral(ell: f64, sigma: f64) -> Result<f64> {
    let lg = ln_gamma(1.0 + ell)?;
    Ok((lg.ln_abs - (1.0 + ell) * sigma.ln()).exp())
}

fn quad_laplace(f: impl Fn(f64) -> Result<f64>, ell: f64, sigma: f64) -> Result<f64> {
    let failure = RefCell::new(None);
    let g = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        match f(x) {
            Ok(v) => v * (ell * x.ln() - sigma * x).exp(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let tol = QuadTolerance {
        abs: 1e-300,
        rel: 1e-10,
        max_intervals: 4000,
    };
    // rescale so the exponential decays over unit length
    let r = integrate_to_infinity(|u| g(u / sigma) / sigma, 0.0, &tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r?.value)
}

/// Assembles ½ - ½ Σ_{t,u} C(M-1,t)C(t,u)(-1)^{t+u} Σ_i d_i [Σ_k c_k I_F + Σ_g c_g I_R - Σ_{k,g} c_k c_g I_FR],
/// where F_F^t = Σ_i d_i γ^{ℶ_i} is supplied per t by `fso_pow`.
fn assemble(
    cfg: &LinkConfig,
    fso: &ChannelParams,
    rf: &RayleighParams,
    fso_pow: impl Fn(u32) -> Result<Vec<(f64, f64)>>,
) -> Result<ClosedFormBer> {
    cfg.validate()?;
    let af_f = AfRelay::new(cfg, fso, rf)?;
    let af_r = AfRelay::new(cfg, &ChannelParams::Rayleigh(*rf), rf)?;
    let mut eng = Engine {
        af_f: &af_f,
        af_r: &af_r,
        acc: SeriesAccuracy::default(),
        fallbacks: 0,
    };
    let m1 = cfg.n_relays - 1;
    let n = af_f.coeffs.len();
    let c = af_f.coeffs.clone();
    let c_abs: f64 = c.iter().map(|x| x.abs()).sum();
    let gr = rf.mean_snr;
    let sigma0 = 1.0 + 1.0 / gr;
    let mut total = CompensatedSum::new();
    let mut mag = 1.0;
    let mut add = |x: f64| {
        total.add(x);
        mag += x.abs();
    };
    let (mut terms, mut pruned) = (0, 0);
    for t in 0..=m1 {
        let pows = fso_pow(t)?;
        for u in 0..=t {
            let w = binomial(m1, t) * binomial(t, u) * alt_sign(t + u);
            for &(ell, d) in &pows {
                let bound =
                    (w * d).abs() * gamma_integral(ell, sigma0)? * (1.0 + c_abs).powi(2) * 4.0;
                if bound < PRUNE {
                    pruned += 1;
                    continue;
                }
                terms += 1;
                let wd = w * d;
                for k in 0..n {
                    let sk = 1.0 + (k + 1 + u as usize) as f64 / gr;
                    add(wd * c[k] * eng.t_fso(k, ell, sk)?);
                    add(wd * c[k] * eng.t_rf(k, ell, sk)?);
                    for g in 0..n {
                        let skg = 1.0 + (k + g + 2 + u as usize) as f64 / gr;
                        add(-wd * c[k] * c[g] * eng.t_both(k, g, ell, skg)?);
                    }
                }
            }
        }
    }
    let value = 0.5 - 0.5 * total.value();
    Ok(ClosedFormBer {
        value: value.clamp(0.0, 0.5),
        fallbacks: eng.fallbacks,
        terms,
        pruned,
        magnitude: 0.5 * mag,
    })
}

/// Exact DPSK BER for a Gamma-Gamma + pointing-error FSO law.
pub fn dpsk_ber_gg_exact(
    cfg: &LinkConfig,
    fso: &GammaGammaPointingParams,
    rf: &RayleighParams,
) -> Result<ClosedFormBer> {
    let coeffs = series_cdf_coeffs(fso, DEFAULT_SERIES_TERMS)?;
    let base = GeneralizedPowerSeries::new(coeffs.terms())?;
    let gf = fso.mean_snr;
    // y^e = (γ/γ̄)^{e/2}
    let pow = |t: u32| -> Result<Vec<(f64, f64)>> {
        let s = series_integer_power(&base, t, DEFAULT_SERIES_TERMS);
        Ok(s.terms()
            .iter()
            .map(|&(e, d)| (e / 2.0, d * gf.powf(-e / 2.0)))
            .filter(|(_, d)| *d != 0.0)
            .collect())
    };
    assemble(cfg, &ChannelParams::GammaGamma(*fso), rf, pow)
}

/// Asymptotic DPSK BER for a Negative Exponential FSO law (F_F ≈ θ√γ).
pub fn dpsk_ber_ne_asymptotic(
    cfg: &LinkConfig,
    fso: &NegExpParams,
    rf: &RayleighParams,
) -> Result<ClosedFormBer> {
    let theta = fso.theta();
    assemble(cfg, &ChannelParams::NegExp(*fso), rf, |t| {
        Ok(vec![(t as f64 / 2.0, theta.powi(t as i32))])
    })
}

/// Quadrature of the unclamped asymptotic NE outage; the same function the
/// asymptotic closed form integrates.
pub fn dpsk_ber_ne_asymptotic_quadrature(
    cfg: &LinkConfig,
    fso: &NegExpParams,
    rf: &RayleighParams,
) -> Result<f64> {
    let req = crate::outage::OutageRequest::new(
        *cfg,
        ChannelParams::NegExp(*fso),
        *rf,
        crate::outage::OutageForm::Asymptotic,
    );
    let failure = RefCell::new(None);
    let f = |g: f64| {
        if g <= 0.0 {
            return 0.0;
        }
        match crate::outage::outage_ne_raw(&req, g) {
            Ok(p) => (-g).exp() * p,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let tol = QuadTolerance {
        abs: 1e-18,
        rel: 1e-10,
        max_intervals: 3000,
    };
    let r = integrate_breaks(f, &BREAKS, &tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(0.5 * r?.value)
}
