//! Sums Σ c_i x^{e_i} with real, non-negative exponents, and their integer powers.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Exponents closer than this (relative to max(1, |e|)) are merged.
const EXP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedPowerSeries {
    terms: Vec<(f64, f64)>,
}

fn same_exponent(a: f64, b: f64) -> bool {
    (a - b).abs() <= EXP_TOL * a.abs().max(b.abs()).max(1.0)
}

impl GeneralizedPowerSeries {
    /// Sorts by exponent and merges equal exponents. Exponents must be finite and >= 0.
    pub fn new(terms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut v: Vec<(f64, f64)> = terms.into_iter().collect();
        for &(e, c) in &v {
            if !(e >= 0.0) || !e.is_finite() || !c.is_finite() {
                return domain(format!(
                    "power series term ({e}, {c}) needs a finite non-negative exponent"
                ));
            }
        }
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if same_exponent(last.0, e) => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        Ok(Self { terms: out })
    }

    pub fn one() -> Self {
        Self {
            terms: vec![(0.0, 1.0)],
        }
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at x >= 0 (0^0 = 1).
    pub fn eval(&self, x: f64) -> f64 {
        if x == 0.0 {
            return self.terms.iter().filter(|t| t.0 == 0.0).map(|t| t.1).sum();
        }
        let lx = x.ln();
        self.terms.iter().map(|&(e, c)| c * (e * lx).exp()).sum()
    }

    /// Full Cauchy product, no truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.len() * other.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &other.terms {
                v.push((e1 + e2, c1 * c2));
            }
        }
        Self::new(v).expect("sums of valid exponents stay valid")
    }

    /// Splits into lattice families: base exponent plus dense coefficients on base + n.
    fn families(&self) -> Vec<(f64, Vec<f64>)> {
        let mut fams: Vec<(f64, Vec<f64>)> = Vec::new();
        for &(e, c) in &self.terms {
            if c == 0.0 {
                continue;
            }
            let slot = fams.iter_mut().find(|(b, _)| {
                let d = e - b;
                d > -0.5 && same_exponent(d, d.round()) && d.round() >= 0.0
            });
            match slot {
                Some((b, coeffs)) => {
                    let n = (e - *b).round() as usize;
                    if coeffs.len() <= n {
                        coeffs.resize(n + 1, 0.0);
                    }
                    coeffs[n] += c;
                }
                None => fams.push((e, vec![c])),
            }
        }
        fams
    }
}

fn dense_mul(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let len = len.min(a.len() + b.len() - 1);
    let mut out = vec![0.0; len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Compositions of t into `parts` non-negative parts.
fn compositions(t: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if t == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![t]];
    }
    let mut out = Vec::new();
    for first in 0..=t {
        for mut rest in compositions(t - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// s^t, keeping `n_max` coefficients in every lattice family of the result.
///
/// s is split into families x^{e_f} P_f(x) with integer-step P_f; the power
/// is the multinomial sum over family multiplicities, with every product
/// truncated to n_max coefficients.
pub fn series_integer_power(
    s: &GeneralizedPowerSeries,
    t: u32,
    n_max: usize,
) -> GeneralizedPowerSeries {
    if t == 0 {
        return GeneralizedPowerSeries::one();
    }
    let fams = s.families();
    if fams.is_empty() || n_max == 0 {
        return GeneralizedPowerSeries { terms: vec![] };
    }
    // P_f^k by repeated truncated products; the division-based power
    // recurrence amplifies rounding when P_f[0] is small next to later terms
    let mut pow_cache: Vec<Vec<Vec<f64>>> = Vec::with_capacity(fams.len());
    for (_, p) in &fams {
        let p: Vec<f64> = p.iter().copied().take(n_max).collect();
        let mut pows = vec![vec![1.0]];
        for k in 1..=t as usize {
            let next = dense_mul(&pows[k - 1], &p, n_max);
            pows.push(next);
        }
        pow_cache.push(pows);
    }
    let lt = ln_factorial(t);
    let mut out = Vec::new();
    for ks in compositions(t, fams.len()) {
        let multinom = (lt - ks.iter().map(|&k| ln_factorial(k)).sum::<f64>())
            .exp()
            .round();
        let base: f64 = ks.iter().zip(&fams).map(|(&k, (e, _))| k as f64 * e).sum();
        let mut acc = vec![multinom];
        for (f, &k) in ks.iter().enumerate() {
            if k > 0 {
                acc = dense_mul(&acc, &pow_cache[f][k as usize], n_max);
            }
        }
        out.extend(
            acc.into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0.0)
                .map(|(n, c)| (base + n as f64, c)),
        );
    }
    let merged = GeneralizedPowerSeries::new(out).expect("valid exponents");
    // merging coincident families can extend a lattice; keep n_max per family
    let fams = merged.families();
    let mut terms = Vec::new();
    for (b, coeffs) in fams {
        terms.extend(
            coeffs
                .into_iter()
                .take(n_max)
                .enumerate()
                .filter(|(_, c)| *c != 0.0)
                .map(|(n, c)| (b + n as f64, c)),
        );
    }
    GeneralizedPowerSeries::new(terms).expect("valid exponents")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_power(s: &GeneralizedPowerSeries, t: u32) -> GeneralizedPowerSeries {
        let mut r = GeneralizedPowerSeries::one();
        for _ in 0..t {
            r = r.mul(s);
        }
        r
    }

    fn max_abs_diff(a: &GeneralizedPowerSeries, b: &GeneralizedPowerSeries) -> f64 {
        let neg = GeneralizedPowerSeries::new(b.terms().iter().map(|&(e, c)| (e, -c))).unwrap();
        let d = GeneralizedPowerSeries::new(a.terms().iter().chain(neg.terms()).copied()).unwrap();
        d.terms().iter().map(|t| t.1.abs()).fold(0.0, f64::max)
    }

    fn random_series(rng: &mut ChaCha8Rng) -> GeneralizedPowerSeries {
        let bases = [
            0.0,
            rng.random_range(0.05..0.95),
            rng.random_range(0.05..0.95) + 0.5,
        ];
        let terms: Vec<(f64, f64)> = (0..8)
            .map(|_| {
                let e = bases[rng.random_range(0..3)] + rng.random_range(0..4) as f64;
                (e, rng.random_range(-1.0..1.0))
            })
            .collect();
        GeneralizedPowerSeries::new(terms).unwrap()
    }

    #[test]
    fn trivial_powers() {
        let s = GeneralizedPowerSeries::new([(0.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(series_integer_power(&s, 0, 10).terms(), &[(0.0, 1.0)]);
        let sq = series_integer_power(&s, 2, 10);
        assert_eq!(sq.terms(), &[(0.0, 1.0), (1.0, 2.0), (2.0, 1.0)]);
    }

    #[test]
    fn matches_brute_force_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let s = random_series(&mut rng);
            for t in 0..=4 {
                let fast = series_integer_power(&s, t, 64);
                let slow = brute_power(&s, t);
                assert!(max_abs_diff(&fast, &slow) <= 1e-12, "t={t}");
            }
        }
    }

    #[test]
    fn power_is_additive_in_exponent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_series(&mut rng);
        let n = 64;
        let lhs = series_integer_power(&s, 5, n);
        let rhs = series_integer_power(&s, 2, n).mul(&series_integer_power(&s, 3, n));
        assert!(max_abs_diff(&lhs, &rhs) <= 1e-11);
    }

    #[test]
    fn eval_and_validation() {
        let s = GeneralizedPowerSeries::new([(0.5, 2.0), (0.0, 1.0), (0.5, 1.0)]).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s.eval(4.0) - 7.0).abs() < 1e-15);
        assert_eq!(s.eval(0.0), 1.0);
        assert!(GeneralizedPowerSeries::new([(-1.0, 1.0)]).is_err());
    }
}
