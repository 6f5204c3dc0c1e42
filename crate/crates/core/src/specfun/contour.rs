//! Mellin-Barnes integral along a vertical line, by the trapezoid rule.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{ln_gamma_complex, ln_gamma_unchecked, MeijerGSpec, SeriesAccuracy, SpecFunError};

const EPS: f64 = f64::EPSILON;

pub(crate) struct Estimate {
    pub value: f64,
    pub err: f64,
}

struct Integrand<'a> {
    s: &'a MeijerGSpec,
    lnz: f64,
}

impl Integrand<'_> {
    fn ln_phi_real(&self, c: f64) -> f64 {
        let s = self.s;
        let mut acc = c * self.lnz;
        for (j, &bj) in s.b.iter().enumerate() {
            if j < s.m {
                acc += ln_gamma_unchecked(bj - c).ln_abs;
            } else {
                acc -= ln_gamma_unchecked(1.0 - bj + c).ln_abs;
            }
        }
        for (j, &aj) in s.a.iter().enumerate() {
            if j < s.n {
                acc += ln_gamma_unchecked(1.0 - aj + c).ln_abs;
            } else {
                acc -= ln_gamma_unchecked(aj - c).ln_abs;
            }
        }
        if acc.is_nan() {
            f64::INFINITY
        } else {
            acc
        }
    }

    fn eval(&self, sv: Complex64) -> Complex64 {
        let s = self.s;
        let one = Complex64::new(1.0, 0.0);
        let mut acc = sv * self.lnz;
        for (j, &bj) in s.b.iter().enumerate() {
            if j < s.m {
                acc += ln_gamma_complex(Complex64::new(bj, 0.0) - sv);
            } else {
                acc -= ln_gamma_complex(one * (1.0 - bj) + sv);
            }
        }
        for (j, &aj) in s.a.iter().enumerate() {
            if j < s.n {
                acc += ln_gamma_complex(one * (1.0 - aj) + sv);
            } else {
                acc -= ln_gamma_complex(Complex64::new(aj, 0.0) - sv);
            }
        }
        acc.exp()
    }
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
        if hi - lo < 1e-6 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// G = (1/π) ∫₀^∞ Re[Φ(c+it) z^{c+it}] dt with c between the two pole sequences.
pub(crate) fn mellin_barnes(
    s: &MeijerGSpec,
    acc: &SeriesAccuracy,
) -> Result<Estimate, SpecFunError> {
    let (m, n, p, q) = (s.m, s.n, s.p(), s.q());
    let delta = (m + n) as f64 - (p + q) as f64 / 2.0;
    if delta <= 0.0 {
        return Err(SpecFunError::InvalidSpec(
            "contour integral does not converge for these orders".into(),
        ));
    }
    let left =
        s.a.iter()
            .take(n)
            .map(|a| a - 1.0)
            .fold(f64::NEG_INFINITY, f64::max);
    let right = s.b.iter().take(m).copied().fold(f64::INFINITY, f64::min);
    if left >= right {
        return Err(SpecFunError::Collision(
            "no straight contour separates the pole sequences".into(),
        ));
    }
    let lnz = s.z.ln();
    let ig = Integrand { s, lnz };
    let reach = 40.0 + 4.0 * lnz.abs();
    let (lo, hi) = match (left.is_finite(), right.is_finite()) {
        (true, true) => {
            let margin = (0.25 * (right - left)).min(0.5);
            (left + margin, right - margin)
        }
        (true, false) => (left + 0.5, left + 0.5 + reach),
        (false, true) => (right - 0.5 - reach, right - 0.5),
        (false, false) => (-reach, reach),
    };
    let g = |c: f64| ig.ln_phi_real(c);
    let c = if hi - lo < 1e-9 {
        0.5 * (lo + hi)
    } else {
        let steps = 64;
        let mut best = (lo, g(lo));
        for k in 1..=steps {
            let x = lo + (hi - lo) * k as f64 / steps as f64;
            let v = g(x);
            if v < best.1 {
                best = (x, v);
            }
        }
        let w = (hi - lo) / steps as f64;
        golden_min(&g, (best.0 - w).max(lo), (best.0 + w).min(hi))
    };
    let d = (c - left).min(right - c).min(2.0);
    let mut h = (2.0 * PI * d / 40.0).min(0.25);

    let f = |t: f64| ig.eval(Complex64::new(c, t));
    let f0 = f(0.0);
    let mut sum = 0.5 * f0.re;
    let mut abs = 0.5 * f0.norm();
    let mut peak = f0.norm();
    let mut quiet = 0;
    let mut k = 1usize;
    loop {
        let v = f(k as f64 * h);
        sum += v.re;
        abs += v.norm();
        peak = peak.max(v.norm());
        if v.norm() <= 1e-19 * peak {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= 4 && k as f64 * h > 1.0 {
            break;
        }
        k += 1;
        if k > 400_000 || !sum.is_finite() {
            return Err(SpecFunError::NonConvergence {
                what: "meijer_g contour",
                terms: k,
            });
        }
    }
    let nodes = k;
    let mut total = h * sum;
    let mut abs_total = h * abs;
    let mut count = nodes;
    let mut diff = f64::INFINITY;
    for _ in 0..8 {
        let mut mid = 0.0;
        let mut mid_abs = 0.0;
        for j in 0..count {
            let v = f((j as f64 + 0.5) * h);
            mid += v.re;
            mid_abs += v.norm();
        }
        let refined = 0.5 * total + 0.5 * h * mid;
        abs_total = 0.5 * abs_total + 0.5 * h * mid_abs;
        diff = (refined - total).abs();
        total = refined;
        h *= 0.5;
        count *= 2;
        if diff <= (acc.rel_tol * total.abs()).max(16.0 * EPS * abs_total) {
            break;
        }
    }
    let err = diff * diff / abs_total.max(f64::MIN_POSITIVE) + 8.0 * EPS * abs_total;
    Ok(Estimate {
        value: total / PI,
        err: err / PI,
    })
}
