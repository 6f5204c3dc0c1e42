//! Fading laws: Gamma-Gamma with pointing error (FSO), Negative Exponential
//! (saturated FSO) and Rayleigh (RF), as SNR distributions.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::{ln_gamma, meijer_g, MeijerGSpec, SeriesAccuracy};

/// Gamma-Gamma turbulence with zero-boresight pointing error. The pointing-loss
/// ceiling is normalized to one, so `kappa` carries the mean correction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaGammaPointingParams {
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub mean_snr: f64,
}

impl GammaGammaPointingParams {
    pub fn new(alpha: f64, beta: f64, xi: f64, mean_snr: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            xi,
            mean_snr,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("xi", self.xi),
            ("mean_snr", self.mean_snr),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return domain(format!(
                    "Gamma-Gamma parameter {name} = {v} must be positive"
                ));
            }
        }
        Ok(())
    }

    pub fn xi2(&self) -> f64 {
        self.xi * self.xi
    }

    pub fn kappa(&self) -> f64 {
        let x2 = self.xi2();
        x2 / (x2 + 1.0)
    }

    /// α β κ, the scale of the Meijer-G argument.
    pub fn abk(&self) -> f64 {
        self.alpha * self.beta * self.kappa()
    }

    /// ξ² / (Γ(α) Γ(β))
    fn norm(&self) -> Result<f64> {
        let ga = ln_gamma(self.alpha)?;
        let gb = ln_gamma(self.beta)?;
        Ok(self.xi2() * (-ga.ln_abs - gb.ln_abs).exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegExpParams {
    pub lambda: f64,
    pub mean_snr: f64,
}

impl NegExpParams {
    pub fn new(lambda: f64, mean_snr: f64) -> Result<Self> {
        if !(lambda > 0.0) || !(mean_snr > 0.0) {
            return domain(format!(
                "Negative Exponential needs lambda > 0 and mean_snr > 0, got {lambda}, {mean_snr}"
            ));
        }
        Ok(Self { lambda, mean_snr })
    }

    /// Slope of the small-SNR asymptote F ≈ θ √γ.
    pub fn theta(&self) -> f64 {
        self.lambda / self.mean_snr.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayleighParams {
    pub mean_snr: f64,
}

impl RayleighParams {
    pub fn new(mean_snr: f64) -> Result<Self> {
        if !(mean_snr > 0.0) {
            return domain(format!(
                "Rayleigh mean_snr must be positive, got {mean_snr}"
            ));
        }
        Ok(Self { mean_snr })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ChannelParams {
    GammaGamma(GammaGammaPointingParams),
    NegExp(NegExpParams),
    Rayleigh(RayleighParams),
}

impl ChannelParams {
    pub fn mean_snr(&self) -> f64 {
        match self {
            ChannelParams::GammaGamma(p) => p.mean_snr,
            ChannelParams::NegExp(p) => p.mean_snr,
            ChannelParams::Rayleigh(p) => p.mean_snr,
        }
    }

    /// Same law with a different average SNR.
    pub fn with_mean_snr(&self, mean_snr: f64) -> Self {
        match *self {
            ChannelParams::GammaGamma(p) => {
                ChannelParams::GammaGamma(GammaGammaPointingParams { mean_snr, ..p })
            }
            ChannelParams::NegExp(p) => ChannelParams::NegExp(NegExpParams { mean_snr, ..p }),
            ChannelParams::Rayleigh(_) => ChannelParams::Rayleigh(RayleighParams { mean_snr }),
        }
    }

    pub fn cdf(&self, gamma: f64) -> Result<f64> {
        match self {
            ChannelParams::GammaGamma(p) => gg_pe_cdf(p, gamma, GgCdfMethod::MeijerG),
            ChannelParams::NegExp(p) => Ok(ne_cdf(p, gamma, NeCdfMethod::Exact)),
            ChannelParams::Rayleigh(p) => Ok(rayleigh_cdf(p, gamma)),
        }
    }

    /// 1 - F(γ), accurate in the upper tail.
    pub fn survival(&self, gamma: f64) -> Result<f64> {
        match self {
            ChannelParams::GammaGamma(p) => gg_pe_sf(p, gamma),
            ChannelParams::NegExp(p) => {
                Ok((-p.lambda * (gamma.max(0.0) / p.mean_snr).sqrt()).exp())
            }
            ChannelParams::Rayleigh(p) => Ok((-gamma.max(0.0) / p.mean_snr).exp()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GgCdfMethod {
    MeijerG,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NeCdfMethod {
    Exact,
    Asymptotic,
}

/// Beyond this Meijer-G argument the survival function is below e^{-200}.
const SF_CUTOFF_Z: f64 = 1e4;

fn gg_z(p: &GammaGammaPointingParams, gamma: f64) -> f64 {
    p.abk() * (gamma / p.mean_snr).sqrt()
}

/// SNR density, via G^{3,0}_{1,3}.
pub fn gg_pe_pdf(p: &GammaGammaPointingParams, gamma: f64) -> Result<f64> {
    p.validate()?;
    if !(gamma > 0.0) {
        return domain(format!("pdf needs gamma > 0, got {gamma}"));
    }
    let z = gg_z(p, gamma);
    if z > SF_CUTOFF_Z {
        return Ok(0.0);
    }
    let x2 = p.xi2();
    let g = meijer_g(
        &MeijerGSpec::new(3, 0, vec![x2 + 1.0], vec![x2, p.alpha, p.beta], z)?,
        &SeriesAccuracy::default(),
    )?;
    Ok((p.norm()? * g / (2.0 * gamma)).max(0.0))
}

/// Survival function 1 - F(γ) via G^{4,0}_{2,4}.
pub fn gg_pe_sf(p: &GammaGammaPointingParams, gamma: f64) -> Result<f64> {
    p.validate()?;
    if gamma <= 0.0 {
        return Ok(1.0);
    }
    let z = gg_z(p, gamma);
    if z > SF_CUTOFF_Z {
        return Ok(0.0);
    }
    let x2 = p.xi2();
    let spec = MeijerGSpec::new(4, 0, vec![1.0, x2 + 1.0], vec![0.0, x2, p.alpha, p.beta], z)?;
    let g = meijer_g(&spec, &SeriesAccuracy::default())?;
    Ok((p.norm()? * g).clamp(0.0, 1.0))
}

/// SNR CDF, from G^{3,1}_{2,4} or from the power series in √(γ/γ̄).
pub fn gg_pe_cdf(p: &GammaGammaPointingParams, gamma: f64, method: GgCdfMethod) -> Result<f64> {
    p.validate()?;
    if gamma < 0.0 || gamma.is_nan() {
        return domain(format!("CDF needs gamma >= 0, got {gamma}"));
    }
    if gamma == 0.0 {
        return Ok(0.0);
    }
    match method {
        GgCdfMethod::MeijerG => {
            let z = gg_z(p, gamma);
            if z > SF_CUTOFF_Z {
                return Ok(1.0);
            }
            let x2 = p.xi2();
            let spec =
                MeijerGSpec::new(3, 1, vec![1.0, x2 + 1.0], vec![x2, p.alpha, p.beta, 0.0], z)?;
            let f = p.norm()? * meijer_g(&spec, &SeriesAccuracy::default())?;
            if f <= 0.5 {
                Ok(f.max(0.0))
            } else {
                Ok(1.0 - gg_pe_sf(p, gamma)?)
            }
        }
        GgCdfMethod::Series => {
            let c = series_cdf_coeffs(p, DEFAULT_SERIES_TERMS)?;
            Ok(c.eval((gamma / p.mean_snr).sqrt())?.clamp(0.0, 1.0))
        }
    }
}

pub const DEFAULT_SERIES_TERMS: usize = 64;

/// Coefficients of F(γ) = X₀ y^{ξ²} + Σ Yₙ y^{n+α} + Σ Zₙ y^{n+β}, y = √(γ/γ̄).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesCdfCoeffs {
    pub x0: f64,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub xi2: f64,
    pub alpha: f64,
    pub beta: f64,
}

fn near_integer(d: f64) -> bool {
    (d - d.round()).abs() < 1e-6
}

/// Closed-form coefficients. With Γ(ξ²-α)/Γ(ξ²+1-α) = 1/(ξ²-α) and
/// (α-ξ²)ₙ/(1-ξ²+α)ₙ = (α-ξ²)/(α-ξ²+n) the Y family simplifies to
/// Yₙ = ξ² Γ(β-α) (αβκ)^{n+α} / [(n+α)(ξ²-α-n) Γ(α)Γ(β) (1-β+α)ₙ n!],
/// and symmetrically for Z.
pub fn series_cdf_coeffs(p: &GammaGammaPointingParams, n_max: usize) -> Result<SeriesCdfCoeffs> {
    p.validate()?;
    if n_max < 20 {
        return domain(format!(
            "series needs at least 20 terms per family, got {n_max}"
        ));
    }
    let (a, b, x2) = (p.alpha, p.beta, p.xi2());
    if near_integer(a - b) || near_integer(x2 - a) || near_integer(x2 - b) {
        return Err(Error::DegenerateSeries(format!(
            "integer-spaced exponents among xi^2={x2}, alpha={a}, beta={b}"
        )));
    }
    let abk = p.abk();
    let lab = abk.ln();
    let lga = ln_gamma(a)?;
    let lgb = ln_gamma(b)?;
    let l0 = x2.ln() - lga.ln_abs - lgb.ln_abs;

    let g1 = ln_gamma(a - x2)?;
    let g2 = ln_gamma(b - x2)?;
    let x0 = g1.sign * g2.sign * (g1.ln_abs + g2.ln_abs - lga.ln_abs - lgb.ln_abs + x2 * lab).exp();

    let family = |s: f64, o: f64| -> Result<Vec<f64>> {
        // s is the family exponent, o the other turbulence shape
        let gd = ln_gamma(o - s)?;
        let mut out = Vec::with_capacity(n_max);
        let mut poch = 1.0f64; // (1-o+s)_n n!
        let mut lpow = s * lab;
        for n in 0..n_max {
            let nf = n as f64;
            if n > 0 {
                poch *= (1.0 - o + s + nf - 1.0) * nf;
                lpow += lab;
            }
            let mag = (l0 + gd.ln_abs + lpow).exp();
            out.push(gd.sign * mag / ((nf + s) * (x2 - s - nf) * poch));
        }
        Ok(out)
    };
    Ok(SeriesCdfCoeffs {
        x0,
        y: family(a, b)?,
        z: family(b, a)?,
        xi2: x2,
        alpha: a,
        beta: b,
    })
}

impl SeriesCdfCoeffs {
    /// (exponent, coefficient) pairs in powers of y.
    pub fn terms(&self) -> Vec<(f64, f64)> {
        let mut t = Vec::with_capacity(1 + self.y.len() + self.z.len());
        t.push((self.xi2, self.x0));
        t.extend(
            self.y
                .iter()
                .enumerate()
                .map(|(n, c)| (n as f64 + self.alpha, *c)),
        );
        t.extend(
            self.z
                .iter()
                .enumerate()
                .map(|(n, c)| (n as f64 + self.beta, *c)),
        );
        t
    }

    /// Σ at y = √(γ/γ̄); errors when the truncated tail is not negligible.
    pub fn eval(&self, y: f64) -> Result<f64> {
        if y == 0.0 {
            return Ok(0.0);
        }
        let ly = y.ln();
        let mut sum = self.x0 * (self.xi2 * ly).exp();
        let mut abs = sum.abs();
        let mut tail = 0.0f64;
        for (fam, s) in [(&self.y, self.alpha), (&self.z, self.beta)] {
            let mut last = 0.0;
            for (n, c) in fam.iter().enumerate() {
                let t = c * ((n as f64 + s) * ly).exp();
                sum += t;
                abs += t.abs();
                last = t.abs();
            }
            tail = tail.max(last);
        }
        if !sum.is_finite() || tail > 1e-15 * sum.abs().max(abs * f64::EPSILON) {
            return Err(Error::SeriesNonConvergence {
                y,
                terms: self.y.len(),
            });
        }
        Ok(sum)
    }
}

/// Exact: 1 - exp(-λ√(γ/γ̄)); asymptotic: θ√γ clamped to [0, 1].
pub fn ne_cdf(p: &NegExpParams, gamma: f64, method: NeCdfMethod) -> f64 {
    let g = gamma.max(0.0);
    match method {
        NeCdfMethod::Exact => -(-p.lambda * (g / p.mean_snr).sqrt()).exp_m1(),
        NeCdfMethod::Asymptotic => (p.theta() * g.sqrt()).clamp(0.0, 1.0),
    }
}

pub fn rayleigh_cdf(p: &RayleighParams, gamma: f64) -> f64 {
    -(-gamma.max(0.0) / p.mean_snr).exp_m1()
}

/// Rytov variance to Gamma-Gamma shapes (plane wave, zero inner scale).
pub fn turbulence_params_from_rytov(rytov_var: f64) -> Result<(f64, f64)> {
    if !(rytov_var > 0.0) || !rytov_var.is_finite() {
        return domain(format!("Rytov variance must be positive, got {rytov_var}"));
    }
    let s125 = rytov_var.powf(1.2);
    let a = 1.0 / (0.49 * rytov_var / (1.0 + 1.11 * s125).powf(7.0 / 6.0)).exp_m1();
    let b = 1.0 / (0.51 * rytov_var / (1.0 + 0.69 * s125).powf(5.0 / 6.0)).exp_m1();
    Ok((a, b))
}

/// Pre-built sampler for one fading law.
#[derive(Debug, Clone)]
pub enum ChannelSampler {
    GammaGamma {
        ga: Gamma<f64>,
        gb: Gamma<f64>,
        inv_xi2: f64,
        inv_kappa: f64,
        mean: f64,
    },
    NegExp {
        inv_lambda: f64,
        mean: f64,
    },
    Rayleigh {
        mean: f64,
    },
}

impl ChannelSampler {
    pub fn new(p: &ChannelParams) -> Result<Self> {
        Ok(match *p {
            ChannelParams::GammaGamma(g) => {
                g.validate()?;
                let ga =
                    Gamma::new(g.alpha, 1.0 / g.alpha).map_err(|e| Error::Domain(e.to_string()))?;
                let gb =
                    Gamma::new(g.beta, 1.0 / g.beta).map_err(|e| Error::Domain(e.to_string()))?;
                ChannelSampler::GammaGamma {
                    ga,
                    gb,
                    inv_xi2: 1.0 / g.xi2(),
                    inv_kappa: 1.0 / g.kappa(),
                    mean: g.mean_snr,
                }
            }
            ChannelParams::NegExp(n) => ChannelSampler::NegExp {
                inv_lambda: 1.0 / n.lambda,
                mean: n.mean_snr,
            },
            ChannelParams::Rayleigh(r) => ChannelSampler::Rayleigh { mean: r.mean_snr },
        })
    }

    /// One instantaneous SNR draw.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            ChannelSampler::GammaGamma {
                ga,
                gb,
                inv_xi2,
                inv_kappa,
                mean,
            } => {
                let ia = ga.sample(rng) * gb.sample(rng);
                // U in (0, 1]
                let u: f64 = 1.0 - rng.random::<f64>();
                let ip = u.powf(*inv_xi2);
                let h = ia * ip * inv_kappa;
                mean * h * h
            }
            ChannelSampler::NegExp { inv_lambda, mean } => {
                let e: f64 = Exp1.sample(rng);
                let i = e * inv_lambda;
                mean * i * i
            }
            ChannelSampler::Rayleigh { mean } => {
                let e: f64 = Exp1.sample(rng);
                mean * e
            }
        }
    }
}

/// One SNR draw from `p` using the caller's stream.
pub fn sample_snr<R: Rng + ?Sized>(p: &ChannelParams, rng: &mut R) -> Result<f64> {
    Ok(ChannelSampler::new(p)?.sample(rng))
}
