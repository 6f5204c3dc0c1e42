//! Generalized hypergeometric series pFq.

use super::{SeriesAccuracy, SpecFunError};

/// Summed series together with the sum of term magnitudes (for cancellation estimates).
#[derive(Debug, Clone, Copy)]
pub struct SeriesSum {
    pub value: f64,
    pub abs_sum: f64,
    pub terms: usize,
}

/// Σ_k ∏(a_i)_k / ∏(b_j)_k · z^k / k!.
pub fn hyp_pfq(a: &[f64], b: &[f64], z: f64, acc: &SeriesAccuracy) -> Result<f64, SpecFunError> {
    hyp_pfq_detailed(a, b, z, acc).map(|s| s.value)
}

pub fn hyp_pfq_detailed(
    a: &[f64],
    b: &[f64],
    z: f64,
    acc: &SeriesAccuracy,
) -> Result<SeriesSum, SpecFunError> {
    if let Some(&bad) = b.iter().find(|&&x| x <= 0.0 && x == x.round()) {
        return Err(SpecFunError::Pole { arg: bad });
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    if z == 0.0 {
        return Ok(SeriesSum {
            value: 1.0,
            abs_sum: 1.0,
            terms: 1,
        });
    }
    for k in 0..acc.max_terms {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for &ai in a {
            ratio *= ai + kf;
        }
        for &bj in b {
            ratio /= bj + kf;
        }
        if ratio == 0.0 {
            // a non-positive integer upper parameter terminated the series
            return Ok(SeriesSum {
                value: sum,
                abs_sum,
                terms: k + 1,
            });
        }
        term *= ratio;
        sum += term;
        abs_sum += term.abs();
        if !sum.is_finite() {
            break;
        }
        // stop well inside the tolerance so the neglected tail is below rel_tol
        if term.abs() <= 0.01 * acc.rel_tol * sum.abs().max(f64::EPSILON * abs_sum)
            && ratio.abs() < 1.0
        {
            return Ok(SeriesSum {
                value: sum,
                abs_sum,
                terms: k + 2,
            });
        }
    }
    Err(SpecFunError::NonConvergence {
        what: "hyp_pfq",
        terms: acc.max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities() {
        let acc = SeriesAccuracy::default();
        assert!((hyp_pfq(&[], &[], 1.0, &acc).unwrap() - std::f64::consts::E).abs() < 1e-14);
        assert!((hyp_pfq(&[2.0], &[], 0.5, &acc).unwrap() - 4.0).abs() < 1e-11);
        assert_eq!(hyp_pfq(&[0.3], &[1.2, -0.7], 0.0, &acc).unwrap(), 1.0);
    }

    #[test]
    fn exponential_on_range() {
        let acc = SeriesAccuracy::default();
        for i in -50..=50 {
            let z = i as f64 / 10.0;
            let v = hyp_pfq(&[], &[], z, &acc).unwrap();
            // relative for z >= 0; absolute where the alternating sum cancels
            assert!((v - z.exp()).abs() < 1e-13 * z.exp().max(1.0), "z={z}");
        }
    }

    #[test]
    fn terminating_polynomial() {
        let acc = SeriesAccuracy::default();
        // 2F1(-2, 1; 1; z) = (1 - z)^2
        let v = hyp_pfq(&[-2.0, 1.0], &[1.0], 0.3, &acc).unwrap();
        assert!((v - 0.49).abs() < 1e-15);
    }

    #[test]
    fn lower_pole_and_divergence() {
        let acc = SeriesAccuracy::default();
        assert!(matches!(
            hyp_pfq(&[1.0], &[-2.0], 0.1, &acc),
            Err(SpecFunError::Pole { .. })
        ));
        assert!(matches!(
            hyp_pfq(&[1.0, 1.0], &[], 2.0, &acc),
            Err(SpecFunError::NonConvergence { .. })
        ));
    }
}
