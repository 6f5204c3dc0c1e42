//! Per-stage CDFs of the relay chain: selection combining at the first relay,
//! fixed-gain AF to the second relay, and FSO/RF selection at DF relays.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::channels::{ChannelParams, RayleighParams};
use crate::error::{domain, Result};
use crate::numeric::{alt_sign, binomial, CompensatedSum};
use crate::quadrature::{integrate_to_infinity, QuadTolerance};
use crate::specfun::{gamma as gamma_fn, meijer_g, MeijerGSpec, SeriesAccuracy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkConfig {
    /// receive antennas at the first relay (N)
    pub n_antennas: u32,
    /// relays in the chain (M)
    pub n_relays: u32,
    /// fixed-gain constant C of the AF relay
    pub fixed_gain_c: f64,
    /// optical-to-electrical conversion efficiency
    pub eta: f64,
    /// outage threshold, linear
    pub gamma_th: f64,
}

impl Default for LinkConfig {
    fn default() -> Self {
        Self {
            n_antennas: 2,
            n_relays: 2,
            fixed_gain_c: 1.0,
            eta: 1.0,
            gamma_th: 10.0,
        }
    }
}

impl LinkConfig {
    pub fn new(
        n_antennas: u32,
        n_relays: u32,
        fixed_gain_c: f64,
        eta: f64,
        gamma_th: f64,
    ) -> Result<Self> {
        let c = Self {
            n_antennas,
            n_relays,
            fixed_gain_c,
            eta,
            gamma_th,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_antennas < 1 || self.n_relays < 1 {
            return domain(format!(
                "need N >= 1 and M >= 1, got N={} M={}",
                self.n_antennas, self.n_relays
            ));
        }
        if !(self.fixed_gain_c > 0.0) || !(self.eta > 0.0) || !(self.gamma_th > 0.0) {
            return domain(format!(
                "need C, eta, gamma_th > 0, got C={} eta={} gamma_th={}",
                self.fixed_gain_c, self.eta, self.gamma_th
            ));
        }
        Ok(())
    }

    /// Mean electrical SNR of an FSO hop: the detector squares ηI, so η enters as η².
    pub fn fso_mean_snr(&self, avg_snr: f64) -> f64 {
        self.eta * self.eta * avg_snr
    }
}

/// (1 - e^{-γ/γ̄})^N
pub fn sc_cdf(p: &RayleighParams, n: u32, gamma: f64) -> f64 {
    (-(-gamma.max(0.0) / p.mean_snr).exp_m1()).powi(n as i32)
}

pub fn sc_pdf(p: &RayleighParams, n: u32, gamma: f64) -> f64 {
    if gamma < 0.0 {
        return 0.0;
    }
    let x = gamma / p.mean_snr;
    let q = -(-x).exp_m1();
    (n as f64 / p.mean_snr * q.powi(n as i32 - 1) * (-x).exp()).max(0.0)
}

/// Coefficients c_k = C(N-1,k)(-1)^k N/(k+1), k = 0..N-1; they sum to one.
pub fn sc_coefficients(n: u32) -> Vec<f64> {
    (0..n)
        .map(|k| binomial(n - 1, k) * alt_sign(k) * n as f64 / (k + 1) as f64)
        .collect()
}

/// Opportunistic FSO/RF selection: CDF of the larger of two independent SNRs.
pub fn opportunistic_cdf(f_fso: f64, f_rf: f64) -> f64 {
    (f_fso * f_rf).clamp(0.0, 1.0)
}

/// Second-hop kernel of the AF closed form, as a function of w = slope·γ.
#[derive(Debug, Clone)]
pub enum AfKernel {
    /// 1 - T(w) = scale · G(w)
    GammaGamma { scale: f64, spec: MeijerGSpec },
    /// T(w) = scale · G(w)
    NegExp { scale: f64, spec: MeijerGSpec },
    /// T(w) = G(w)
    Rayleigh { spec: MeijerGSpec },
}

impl AfKernel {
    pub fn spec(&self) -> &MeijerGSpec {
        match self {
            AfKernel::GammaGamma { spec, .. }
            | AfKernel::NegExp { spec, .. }
            | AfKernel::Rayleigh { spec } => spec,
        }
    }

    /// (T(w), 1 - T(w))
    pub fn eval(&self, w: f64) -> Result<(f64, f64)> {
        let acc = SeriesAccuracy::default();
        if w == 0.0 {
            return Ok((1.0, 0.0));
        }
        Ok(match self {
            AfKernel::GammaGamma { scale, spec } => {
                let g = scale * meijer_g(&spec.with_z(w), &acc)?;
                (1.0 - g, g)
            }
            AfKernel::NegExp { scale, spec } => {
                let t = scale * meijer_g(&spec.with_z(w), &acc)?;
                (t, 1.0 - t)
            }
            AfKernel::Rayleigh { spec } => {
                let t = meijer_g(&spec.with_z(w), &acc)?;
                (t, 1.0 - t)
            }
        })
    }
}

/// Fixed-gain AF end-to-end SNR γ₁γ₂/(C+γ₂), γ₁ the N-branch SC output.
///
/// 1 - F(γ) = Σ_k c_k e^{-(k+1)γ/γ̄₁} T(slope_k γ).
#[derive(Debug, Clone)]
pub struct AfRelay {
    pub kernel: AfKernel,
    pub coeffs: Vec<f64>,
    /// (k+1)/γ̄₁
    pub decay: Vec<f64>,
    /// kernel argument per unit γ
    pub slope: Vec<f64>,
}

impl AfRelay {
    pub fn new(cfg: &LinkConfig, second_hop: &ChannelParams, rf1: &RayleighParams) -> Result<Self> {
        cfg.validate()?;
        let n = cfg.n_antennas;
        let g1 = rf1.mean_snr;
        let c = cfg.fixed_gain_c;
        let coeffs = sc_coefficients(n);
        let decay: Vec<f64> = (0..n).map(|k| (k + 1) as f64 / g1).collect();
        let (kernel, per_k) = match *second_hop {
            ChannelParams::GammaGamma(p) => {
                p.validate()?;
                let (a, b, x2) = (p.alpha, p.beta, p.xi2());
                let scale = x2 * 2f64.powf(a + b - 3.0)
                    / (std::f64::consts::PI * gamma_fn(a)? * gamma_fn(b)?);
                let spec = MeijerGSpec::new(
                    6,
                    1,
                    vec![1.0, x2 / 2.0 + 1.0],
                    vec![
                        a / 2.0,
                        (a + 1.0) / 2.0,
                        b / 2.0,
                        (b + 1.0) / 2.0,
                        1.0,
                        x2 / 2.0,
                        0.0,
                    ],
                    1.0,
                )?;
                let abk = p.abk();
                (
                    AfKernel::GammaGamma { scale, spec },
                    abk * abk * c / (16.0 * p.mean_snr * g1),
                )
            }
            ChannelParams::NegExp(p) => {
                let spec = MeijerGSpec::new(3, 0, vec![], vec![1.0, 0.0, 0.5], 1.0)?;
                let scale = 1.0 / std::f64::consts::PI.sqrt();
                (
                    AfKernel::NegExp { scale, spec },
                    p.lambda * p.lambda * c / (4.0 * p.mean_snr * g1),
                )
            }
            ChannelParams::Rayleigh(p) => {
                let spec = MeijerGSpec::new(2, 0, vec![], vec![1.0, 0.0], 1.0)?;
                (AfKernel::Rayleigh { spec }, c / (p.mean_snr * g1))
            }
        };
        let slope = (0..n).map(|k| (k + 1) as f64 * per_k).collect();
        Ok(Self {
            kernel,
            coeffs,
            decay,
            slope,
        })
    }

    /// Closed-form CDF, summed as Σ c_k [1 - e^{-d_k γ} + e^{-d_k γ}(1 - T_k)].
    pub fn cdf(&self, gamma: f64) -> Result<f64> {
        if gamma < 0.0 || gamma.is_nan() {
            return domain(format!("AF CDF needs gamma >= 0, got {gamma}"));
        }
        if gamma == 0.0 {
            return Ok(0.0);
        }
        let mut s = CompensatedSum::new();
        for k in 0..self.coeffs.len() {
            let (_, one_minus_t) = self.kernel.eval(self.slope[k] * gamma)?;
            let x = -self.decay[k] * gamma;
            s.add(self.coeffs[k] * -x.exp_m1());
            s.add(self.coeffs[k] * x.exp() * one_minus_t);
        }
        Ok(s.value().clamp(0.0, 1.0))
    }
}

/// CDF of the AF end-to-end SNR; the branch follows the second-hop law.
pub fn af_relay_cdf(
    cfg: &LinkConfig,
    second_hop: &ChannelParams,
    rf1: &RayleighParams,
    gamma: f64,
) -> Result<f64> {
    AfRelay::new(cfg, second_hop, rf1)?.cdf(gamma)
}

/// Direct quadrature of F(γ) = F₁(γ) + ∫₀^∞ f₁(x+γ) F₂(Cγ/x) dx.
pub fn af_relay_cdf_quadrature(
    cfg: &LinkConfig,
    second_hop: &ChannelParams,
    rf1: &RayleighParams,
    gamma: f64,
) -> Result<f64> {
    cfg.validate()?;
    if gamma <= 0.0 {
        return Ok(0.0);
    }
    let n = cfg.n_antennas;
    let cg = cfg.fixed_gain_c * gamma;
    let tol = QuadTolerance {
        abs: 1e-14,
        rel: 1e-10,
        max_intervals: 4000,
    };
    let failure = RefCell::new(None);
    let integrand = |x: f64| {
        if x <= 0.0 {
            return sc_pdf(rf1, n, gamma);
        }
        match second_hop.cdf(cg / x) {
            Ok(f) => sc_pdf(rf1, n, x + gamma) * f,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let r = integrate_to_infinity(integrand, 0.0, &tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let r = r?;
    Ok((sc_cdf(rf1, n, gamma) + r.value).clamp(0.0, 1.0))
}
