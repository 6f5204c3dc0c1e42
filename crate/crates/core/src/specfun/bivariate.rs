//! Laplace-type bivariate Meijer-G integral
//!
//! E(c; x, y) = ∫₀^∞ t^{c-1} e^{-t} G_1(x t) G_2(y t) dt,
//!
//! which is the extended bivariate Meijer-G function with a single outer
//! parameter. It is evaluated as a double Slater series: both kernels are
//! expanded in generalized power series of t and integrated term by term,
//! giving Σ r_i r_j Γ(c + e_i + e_j).

use super::meijer::{
    perturbation_eps, perturbation_offsets, residues, richardson_error, series_sign,
};
use super::{ln_gamma_unchecked, MeijerGSpec, MeijerGValue, Route, SeriesAccuracy, SpecFunError};

const MAX_ORDER: usize = 120;

/// Four-level Richardson weights removing the ε², ε⁴ and ε⁶ terms.
const RICHARDSON4: [f64; 4] = [8.0 / 5.0, -4.0 / 5.0, 8.0 / 35.0, -1.0 / 35.0];

struct Kernel {
    m: usize,
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    z: f64,
}

/// Power-series coefficients (excluding the prefactor) of one residue family, in powers of t.
fn family_coeffs(upper: &[f64], lower: &[f64], x: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut c = 1.0;
    out.push(c);
    for k in 1..len {
        let kf = (k - 1) as f64;
        let mut r = x / (kf + 1.0);
        for u in upper {
            r *= u + kf;
        }
        for l in lower {
            r /= l + kf;
        }
        c *= r;
        out.push(c);
    }
    out
}

struct DoubleSum {
    value: f64,
    abs_sum: f64,
}

fn double_sum(
    outer: f64,
    k1: &Kernel,
    b1: &[f64],
    k2: &Kernel,
    b2: &[f64],
    acc: &SeriesAccuracy,
) -> Result<DoubleSum, SpecFunError> {
    let r1 = residues(k1.m, k1.n, &k1.a, b1)?;
    let r2 = residues(k2.m, k2.n, &k2.a, b2)?;
    let x1 = series_sign(k1.m, k1.n, k1.a.len()) * k1.z;
    let x2 = series_sign(k2.m, k2.n, k2.a.len()) * k2.z;
    let len = MAX_ORDER.min(acc.max_terms) + 1;
    let c1: Vec<Vec<f64>> = r1
        .iter()
        .map(|r| family_coeffs(&r.upper, &r.lower, x1, len))
        .collect();
    let c2: Vec<Vec<f64>> = r2
        .iter()
        .map(|r| family_coeffs(&r.upper, &r.lower, x2, len))
        .collect();
    let (l1, l2) = (k1.z.ln(), k2.z.ln());
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    for (ra, ca) in r1.iter().zip(&c1) {
        for (rb, cb) in r2.iter().zip(&c2) {
            let beta = outer + ra.exponent + rb.exponent;
            let lg = ln_gamma_unchecked(beta);
            if !lg.ln_abs.is_finite() || beta <= 0.0 {
                return Err(SpecFunError::InvalidSpec(format!(
                    "Laplace integral diverges at exponent {beta}"
                )));
            }
            let pref =
                (ra.ln_pref + rb.ln_pref + ra.exponent * l1 + rb.exponent * l2 + lg.ln_abs).exp();
            if !pref.is_finite() {
                return Err(SpecFunError::NonConvergence {
                    what: "bivariate_meijer_g prefactor",
                    terms: 0,
                });
            }
            let sign = ra.sign * rb.sign * lg.sign;
            let mut poch = 1.0;
            let mut sum = 0.0;
            let mut sabs = 0.0;
            let mut quiet = 0;
            let mut done = false;
            for s in 0..len {
                if s > 0 {
                    poch *= beta + (s - 1) as f64;
                }
                let mut conv = 0.0;
                let mut conv_abs = 0.0;
                for k in 0..=s {
                    let v = ca[k] * cb[s - k];
                    conv += v;
                    conv_abs += v.abs();
                }
                let t = poch * conv;
                let ta = poch.abs() * conv_abs;
                sum += t;
                sabs += ta;
                if !sabs.is_finite() {
                    break;
                }
                if ta <= 0.01 * acc.rel_tol * sum.abs().max(f64::EPSILON * sabs) {
                    quiet += 1;
                } else {
                    quiet = 0;
                }
                if quiet >= 3 {
                    done = true;
                    break;
                }
            }
            if !done {
                return Err(SpecFunError::NonConvergence {
                    what: "bivariate_meijer_g",
                    terms: len,
                });
            }
            value += sign * pref * sum;
            abs_sum += pref * sabs;
        }
    }
    Ok(DoubleSum { value, abs_sum })
}

/// E(outer; z1, z2) with kernels G_1 = `inner1` at z1 and G_2 = `inner2` at z2
/// (the arguments stored in the two specs are ignored).
pub fn bivariate_meijer_g(
    outer: f64,
    inner1: &MeijerGSpec,
    inner2: &MeijerGSpec,
    z1: f64,
    z2: f64,
    acc: &SeriesAccuracy,
) -> Result<f64, SpecFunError> {
    bivariate_meijer_g_detailed(outer, inner1, inner2, z1, z2, acc).map(|v| v.value)
}

pub fn bivariate_meijer_g_detailed(
    outer: f64,
    inner1: &MeijerGSpec,
    inner2: &MeijerGSpec,
    z1: f64,
    z2: f64,
    acc: &SeriesAccuracy,
) -> Result<MeijerGValue, SpecFunError> {
    let s1 = inner1.with_z(z1);
    let s2 = inner2.with_z(z2);
    s1.validate()?;
    s2.validate()?;
    let (s1, s2) = (s1.reduced(), s2.reduced());
    for s in [&s1, &s2] {
        if s.p() >= s.q() {
            return Err(SpecFunError::InvalidSpec(
                "bivariate kernels need p < q".into(),
            ));
        }
    }
    let k1 = Kernel {
        m: s1.m,
        n: s1.n,
        a: s1.a.clone(),
        b: s1.b.clone(),
        z: s1.z,
    };
    let k2 = Kernel {
        m: s2.m,
        n: s2.n,
        a: s2.a.clone(),
        b: s2.b.clone(),
        z: s2.z,
    };
    let (v1, o1) = perturbation_offsets(k1.m, &k1.b);
    let (v2, o2) = perturbation_offsets(k2.m, &k2.b);
    let order = o1 + o2;
    if order == 0 {
        let d = double_sum(outer, &k1, &k1.b, &k2, &k2.b, acc)?;
        let err = 64.0 * f64::EPSILON * d.abs_sum + acc.rel_tol * d.value.abs();
        return Ok(MeijerGValue {
            value: d.value,
            error_estimate: err,
            route: Route::Direct,
            perturbed: false,
        });
    }
    // The expansion in ε carries powers of ε ln z, so small arguments need a
    // smaller shift; larger shifts lose less to cancellation otherwise.
    let lz = k1.z.ln().abs().max(k2.z.ln().abs());
    let eps = 3.0 * perturbation_eps(order) * (4.0 / lz).min(1.0);
    let mut avgs = [0.0; 4];
    let mut max_abs = 0.0f64;
    for (k, avg) in avgs.iter_mut().enumerate() {
        let scale = eps * (k + 1) as f64;
        let mut sum = 0.0;
        for sgn in [1.0, -1.0] {
            let b1: Vec<f64> =
                k1.b.iter()
                    .zip(&v1)
                    .map(|(x, o)| x + sgn * scale * o)
                    .collect();
            let b2: Vec<f64> =
                k2.b.iter()
                    .zip(&v2)
                    .map(|(x, o)| x + sgn * scale * o)
                    .collect();
            let d = double_sum(outer, &k1, &b1, &k2, &b2, acc)?;
            sum += d.value;
            max_abs = max_abs.max(d.abs_sum);
        }
        *avg = 0.5 * sum;
    }
    let value: f64 = avgs
        .iter()
        .zip(RICHARDSON4.iter())
        .map(|(a, w)| a * w)
        .sum();
    let err =
        richardson_error(avgs[0], value, max_abs) + acc.rel_tol * (value.abs() + 0.01 * max_abs);
    Ok(MeijerGValue {
        value,
        error_estimate: err,
        route: Route::Direct,
        perturbed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::super::meijer_g;
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn g2() -> MeijerGSpec {
        MeijerGSpec::new(2, 0, vec![], vec![1.0, 0.0], 1.0).unwrap()
    }

    fn g3() -> MeijerGSpec {
        MeijerGSpec::new(3, 0, vec![], vec![1.0, 0.0, 0.5], 1.0).unwrap()
    }

    fn g6() -> MeijerGSpec {
        let xi2 = 10.45f64 * 10.45;
        MeijerGSpec::new(
            6,
            1,
            vec![1.0, xi2 / 2.0 + 1.0],
            vec![2.0, 2.5, 0.95, 1.45, 1.0, xi2 / 2.0, 0.0],
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn quadrature_references() {
        let acc = SeriesAccuracy::default();
        let cases = [
            (1.0, 0.02, 0.05, 1.000_601_827_392_044_1),
            (1.5, 0.3, 0.8, 0.157_575_584_511_570_63),
            (2.0, 1.2, 0.1, 0.148_054_909_422_891),
        ];
        for (c, x, y, want) in cases {
            let got = bivariate_meijer_g(c, &g2(), &g3(), x, y, &acc).unwrap();
            assert!(rel(got, want) < 1e-7, "G2xG3 c={c}: {got} vs {want}");
        }
        let cases = [
            (1.0, 0.02, 0.05, 0.002_005_369_768_383_346_8),
            (1.95, 0.3, 0.8, 0.004_811_384_227_702_942_5),
        ];
        for (c, x, y, want) in cases {
            let got = bivariate_meijer_g(c, &g2(), &g6(), x, y, &acc).unwrap();
            assert!(rel(got, want) < 1e-7, "G2xG6 c={c}: {got} vs {want}");
        }
    }

    #[test]
    fn small_arguments() {
        // mpmath quadrature at 30 digits
        let acc = SeriesAccuracy::default();
        let got = bivariate_meijer_g(1.0, &g2(), &g3(), 1e-7, 2e-7, &acc).unwrap();
        assert!(rel(got, 1.769_971_423_674_894_2) < 1e-10, "{got}");
        let got = bivariate_meijer_g(1.5, &g2(), &g3(), 1e-6, 3e-9, &acc).unwrap();
        assert!(rel(got, 1.570_421_925_726_327_1) < 1e-10, "{got}");
        let got = bivariate_meijer_g(1.5, &g2(), &g6(), 1e-6, 1e-5, &acc).unwrap();
        assert!(rel(got, 4.482_820_393_378_572e-6) < 1e-9, "{got}");
    }

    #[test]
    fn exponential_second_kernel_collapses() {
        // G_2 = G^{1,0}_{0,1}(y t | 0) = e^{-y t}; E = (1+y)^{-c} G^{m,n+1}_{p+1,q}(x/(1+y) | 1-c, a; b)
        let acc = SeriesAccuracy::default();
        let e = MeijerGSpec::new(1, 0, vec![], vec![0.0], 1.0).unwrap();
        for &(c, x, y) in &[(1.0, 0.4, 0.3), (2.5, 1.5, 1e-3), (1.2, 0.05, 1e-9)] {
            let got = bivariate_meijer_g(c, &g2(), &e, x, y, &acc).unwrap();
            let single =
                MeijerGSpec::new(2, 1, vec![1.0 - c], vec![1.0, 0.0], x / (1.0 + y)).unwrap();
            let want = (1.0 + y).powf(-c) * meijer_g(&single, &acc).unwrap();
            assert!(rel(got, want) < 1e-7, "c={c} x={x} y={y}: {got} vs {want}");
        }
    }
}
