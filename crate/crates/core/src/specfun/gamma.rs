//! Log-gamma (real and complex) and Pochhammer symbols.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::SpecFunError;

const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Signed logarithm: the represented value is `sign * exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: f64,
}

impl SignedLog {
    pub fn value(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// sin(pi x) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    // r in [0, 2): fold onto [-0.5, 0.5] around the nearest zero/extremum
    let (s, t) = if r < 0.5 {
        (1.0, r)
    } else if r < 1.5 {
        (-1.0, r - 1.0)
    } else {
        (1.0, r - 2.0)
    };
    if t == 0.0 {
        return 0.0;
    }
    s * (PI * t).sin()
}

fn ln_gamma_positive(x: f64) -> f64 {
    let mut y = x;
    let tmp = x + LANCZOS_G;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LANCZOS_C0;
    for c in LANCZOS.iter() {
        y += 1.0;
        ser += c / y;
    }
    tmp + (SQRT_2PI * ser / x).ln()
}

/// ln|Γ(x)| with sign; infinite magnitude at the poles.
pub(crate) fn ln_gamma_unchecked(x: f64) -> SignedLog {
    if is_nonpositive_integer(x) {
        return SignedLog {
            ln_abs: f64::INFINITY,
            sign: 1.0,
        };
    }
    if x >= 0.5 {
        return SignedLog {
            ln_abs: ln_gamma_positive(x),
            sign: 1.0,
        };
    }
    // reflection: Γ(x)Γ(1-x) = π / sin(πx)
    let s = sin_pi(x);
    let lg = ln_gamma_positive(1.0 - x);
    SignedLog {
        ln_abs: LN_PI - s.abs().ln() - lg,
        sign: s.signum(),
    }
}

/// Natural log of |Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma(x: f64) -> Result<SignedLog, SpecFunError> {
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::Pole { arg: x });
    }
    if !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "ln_gamma",
            arg: x,
        });
    }
    Ok(ln_gamma_unchecked(x))
}

/// Γ(x) for real x away from the poles.
pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    ln_gamma(x).map(SignedLog::value)
}

/// 1/Γ(x), zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    let l = ln_gamma_unchecked(x);
    l.sign * (-l.ln_abs).exp()
}

fn ln_gamma_c_right(z: Complex64) -> Complex64 {
    let mut y = z;
    let tmp = z + LANCZOS_G;
    let tmp = (z + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for c in LANCZOS.iter() {
        y += 1.0;
        ser += *c / y;
    }
    tmp + (ser * SQRT_2PI / z).ln()
}

/// Complex log-gamma. Only `exp` of the result is meaningful (branch of the imaginary part is not normalized).
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_gamma_complex(z.conj()).conj();
    }
    if z.re >= 0.5 {
        return ln_gamma_c_right(z);
    }
    // reflection with ln sin(πz) written so it stays finite for large Im z:
    // sin(πz) = e^{-iπz} (1 - e^{2iπz}) i/2
    let i = Complex64::new(0.0, 1.0);
    let e2 = (i * 2.0 * PI * z).exp();
    let ln_sin = -i * PI * z
        + Complex64::new(-std::f64::consts::LN_2, PI / 2.0)
        + (Complex64::new(1.0, 0.0) - e2).ln();
    Complex64::new(LN_PI, 0.0) - ln_sin - ln_gamma_c_right(Complex64::new(1.0, 0.0) - z)
}

/// Rising factorial (x)_n = x (x+1) ... (x+n-1).
pub fn pochhammer(x: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for k in 0..n {
        acc *= x + k as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn factorial_and_half() {
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(1.9).unwrap(), 0.961_765_831_907_387_42) < 1e-13);
    }

    #[test]
    fn reference_logs() {
        let cases = [
            (0.1, 2.252_712_651_734_206, 1.0),
            (0.5, 0.572_364_942_924_700_09, 1.0),
            (2.5, 0.284_682_870_472_919_16, 1.0),
            (7.3, 7.147_892_523_022_249, 1.0),
            (50.0, 144.565_743_946_344_89, 1.0),
            (-2.5, -0.056_243_716_497_674_051, -1.0),
            (-0.3, 1.464_840_050_857_602_5, -1.0),
            (-7.7, -8.611_096_443_778_900_6, 1.0),
            (1e-3, 6.907_178_885_383_853_7, 1.0),
        ];
        for (x, l, s) in cases {
            let g = ln_gamma(x).unwrap();
            assert!(
                (g.ln_abs - l).abs() < 1e-13 * l.abs().max(1.0),
                "x={x}: {} vs {l}",
                g.ln_abs
            );
            assert_eq!(g.sign, s, "sign at {x}");
        }
    }

    #[test]
    fn poles_are_errors() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-3.0).is_err());
        assert_eq!(recip_gamma(-2.0), 0.0);
    }

    #[test]
    fn complex_reference() {
        let cases = [
            (
                Complex64::new(0.3, 2.0),
                0.057_465_337_569_588_035,
                -0.074_984_912_582_646_138,
            ),
            (
                Complex64::new(-1.7, 0.5),
                0.866_200_564_358_819_37,
                -0.162_408_861_292_879_65,
            ),
            (
                Complex64::new(5.0, 30.0),
                -3.768_008_854_854_723e-14,
                -8.814_647_705_895_515_9e-15,
            ),
            (
                Complex64::new(-4.2, -12.0),
                -1.225_489_708_353_418_8e-13,
                1.429_844_328_880_361_7e-14,
            ),
            (
                Complex64::new(0.5, 80.0),
                6.178_750_859_669_665_4e-55,
                2.508_683_238_369_232_2e-55,
            ),
        ];
        for (z, re, im) in cases {
            let g = ln_gamma_complex(z).exp();
            let want = Complex64::new(re, im);
            assert!(
                (g - want).norm() < 1e-12 * want.norm(),
                "{z}: {g} vs {want}"
            );
        }
    }

    #[test]
    fn complex_matches_real_axis() {
        for &x in &[0.2, 1.0, 3.7, 12.5, -0.4, -5.5] {
            let c = ln_gamma_complex(Complex64::new(x, 0.0)).exp().re;
            assert!(rel(c, gamma(x).unwrap()) < 1e-13, "x={x}");
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(7.1, 0), 1.0);
        assert_eq!(pochhammer(3.0, 4), 360.0);
        assert!((pochhammer(-2.5, 3) + 1.875).abs() < 1e-15);
    }
}
