//! Meijer-G evaluation for real parameters and positive real argument.
//!
//! The default route sums the Slater residue series (one pFq per pole family of
//! the first `m` lower parameters). Arguments where that sum loses too many
//! digits fall back to direct quadrature of the Mellin-Barnes contour integral.
//! Integer-spaced lower parameters are handled by symmetric perturbation with a
//! three-level Richardson extrapolation in the perturbation size.

use super::contour::mellin_barnes;
use super::{hyp_pfq_detailed, ln_gamma_unchecked, SeriesAccuracy, SpecFunError};

const EPS: f64 = f64::EPSILON;
/// Parameter spacings closer than this to an integer are treated as colliding poles.
const COLLISION_TOL: f64 = 1e-6;
/// Results whose estimated relative error exceeds this are reported as failures.
const UNUSABLE_REL: f64 = 1e-6;

/// G^{m,n}_{p,q}(z | a; b).
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    pub m: usize,
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub z: f64,
}

/// Evaluation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Slater sum or inversion depending on the argument, contour fallback.
    Auto,
    /// Slater sum of the given parameters only.
    Direct,
    /// Apply z -> 1/z with swapped parameter roles, then evaluate.
    Inverted,
    /// Mellin-Barnes quadrature only.
    Contour,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerGValue {
    pub value: f64,
    pub error_estimate: f64,
    /// The route that produced `value`.
    pub route: Route,
    /// True when colliding poles were resolved by perturbation.
    pub perturbed: bool,
}

impl MeijerGValue {
    fn rel_err(&self) -> f64 {
        if self.value == 0.0 {
            if self.error_estimate == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.error_estimate / self.value.abs()
        }
    }
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-13 * (1.0 + x.abs())
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>, z: f64) -> Result<Self, SpecFunError> {
        let s = Self { m, n, a, b, z };
        s.validate()?;
        Ok(s)
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<(), SpecFunError> {
        if self.m > self.q() || self.n > self.p() {
            return Err(SpecFunError::InvalidSpec(format!(
                "orders m={} n={} exceed parameter counts p={} q={}",
                self.m,
                self.n,
                self.p(),
                self.q()
            )));
        }
        if !(self.z > 0.0) || !self.z.is_finite() {
            return Err(SpecFunError::InvalidSpec(format!(
                "argument {} is not positive",
                self.z
            )));
        }
        if self.a.iter().chain(self.b.iter()).any(|x| !x.is_finite()) {
            return Err(SpecFunError::InvalidSpec("non-finite parameter".into()));
        }
        Ok(())
    }

    pub fn with_z(&self, z: f64) -> Self {
        Self { z, ..self.clone() }
    }

    /// Drop parameter pairs whose gamma factors cancel in the Mellin-Barnes integrand.
    pub fn reduced(&self) -> Self {
        let mut s = self.clone();
        loop {
            let mut hit = None;
            'outer: for j in s.n..s.a.len() {
                for h in 0..s.m {
                    if close(s.a[j], s.b[h]) {
                        hit = Some((j, h, true));
                        break 'outer;
                    }
                }
            }
            if hit.is_none() {
                'outer2: for j in 0..s.n {
                    for h in s.m..s.b.len() {
                        if close(s.a[j], s.b[h]) {
                            hit = Some((j, h, false));
                            break 'outer2;
                        }
                    }
                }
            }
            match hit {
                Some((j, h, first)) => {
                    s.a.remove(j);
                    s.b.remove(h);
                    if first {
                        s.m -= 1;
                    } else {
                        s.n -= 1;
                    }
                }
                None => return s,
            }
        }
    }

    /// G^{m,n}_{p,q}(z | a; b) = G^{n,m}_{q,p}(1/z | 1-b; 1-a).
    pub fn inverted(&self) -> Self {
        Self {
            m: self.n,
            n: self.m,
            a: self.b.iter().map(|x| 1.0 - x).collect(),
            b: self.a.iter().map(|x| 1.0 - x).collect(),
            z: 1.0 / self.z,
        }
    }
}

/// Value of G with the default route.
pub fn meijer_g(spec: &MeijerGSpec, acc: &SeriesAccuracy) -> Result<f64, SpecFunError> {
    meijer_g_detailed(spec, acc).map(|v| v.value)
}

pub fn meijer_g_detailed(
    spec: &MeijerGSpec,
    acc: &SeriesAccuracy,
) -> Result<MeijerGValue, SpecFunError> {
    meijer_g_route(spec, acc, Route::Auto)
}

pub fn meijer_g_route(
    spec: &MeijerGSpec,
    acc: &SeriesAccuracy,
    route: Route,
) -> Result<MeijerGValue, SpecFunError> {
    spec.validate()?;
    let r = spec.reduced();
    match route {
        Route::Direct => slater(&r, acc),
        Route::Contour => contour(&r, acc),
        Route::Inverted => {
            let inv = r.inverted();
            let mut v = if inv.p() < inv.q() || (inv.p() == inv.q() && inv.z < 1.0) {
                oriented(&inv, acc)?
            } else {
                contour(&inv, acc)?
            };
            v.route = Route::Inverted;
            Ok(v)
        }
        Route::Auto => {
            if r.p() == r.q() && r.z == 1.0 {
                let d = oriented(&r, acc)?;
                let mut i = oriented(&r.inverted(), acc)?;
                if (d.value - i.value).abs() > 1e-6 * d.value.abs().max(i.value.abs()) {
                    return Err(SpecFunError::NonConvergence {
                        what: "meijer_g at unit argument",
                        terms: acc.max_terms,
                    });
                }
                i.value = 0.5 * (d.value + i.value);
                i.error_estimate = d.error_estimate.max(i.error_estimate);
                return Ok(i);
            }
            if r.p() > r.q() || (r.p() == r.q() && r.z > 1.0) {
                let mut v = oriented(&r.inverted(), acc)?;
                if v.route == Route::Direct {
                    v.route = Route::Inverted;
                }
                Ok(v)
            } else {
                oriented(&r, acc)
            }
        }
    }
}

fn contour(s: &MeijerGSpec, acc: &SeriesAccuracy) -> Result<MeijerGValue, SpecFunError> {
    let e = mellin_barnes(s, acc)?;
    Ok(MeijerGValue {
        value: e.value,
        error_estimate: e.err,
        route: Route::Contour,
        perturbed: false,
    })
}

/// Slater sum first, contour integral when the sum is not accurate enough.
fn oriented(s: &MeijerGSpec, acc: &SeriesAccuracy) -> Result<MeijerGValue, SpecFunError> {
    let target = acc.rel_tol * 100.0;
    let sl = if s.m > 0 {
        slater(s, acc)
    } else {
        Err(SpecFunError::InvalidSpec("m = 0".into()))
    };
    if let Ok(v) = &sl {
        if v.rel_err() <= target {
            return Ok(*v);
        }
    }
    let mb = contour(s, acc);
    let best = match (sl, mb) {
        (Ok(a), Ok(b)) => {
            if a.rel_err() <= b.rel_err() {
                a
            } else {
                b
            }
        }
        (Ok(a), Err(_)) => a,
        (Err(_), Ok(b)) => b,
        (Err(e), Err(_)) => return Err(e),
    };
    if best.rel_err() > UNUSABLE_REL {
        return Err(SpecFunError::NonConvergence {
            what: "meijer_g",
            terms: acc.max_terms,
        });
    }
    Ok(best)
}

/// Sum of the Slater residue series with unperturbed parameters.
pub(crate) struct SlaterSum {
    pub value: f64,
    pub abs_sum: f64,
}

/// One residue family: `sign * exp(ln_pref) * z^{b_h} * pFq(upper; lower; x)`.
pub(crate) struct Residue {
    pub exponent: f64,
    pub ln_pref: f64,
    pub sign: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

/// Residue families of the poles of Γ(b_h - s), h < m. Families whose
/// poles are all cancelled by 1/Γ(a_j - s) are omitted.
pub(crate) fn residues(
    m: usize,
    n: usize,
    a: &[f64],
    b: &[f64],
) -> Result<Vec<Residue>, SpecFunError> {
    let (p, q) = (a.len(), b.len());
    let mut out = Vec::with_capacity(m);
    'fam: for h in 0..m {
        let bh = b[h];
        let mut ln = 0.0;
        let mut sg = 1.0;
        for (j, &bj) in b.iter().enumerate().take(m) {
            if j == h {
                continue;
            }
            let g = ln_gamma_unchecked(bj - bh);
            if !g.ln_abs.is_finite() {
                return Err(SpecFunError::Collision(format!(
                    "lower parameters {bj} and {bh}"
                )));
            }
            ln += g.ln_abs;
            sg *= g.sign;
        }
        for &aj in a.iter().take(n) {
            let g = ln_gamma_unchecked(1.0 - aj + bh);
            if !g.ln_abs.is_finite() {
                return Err(SpecFunError::InvalidSpec(format!(
                    "upper {aj} and lower {bh} poles overlap"
                )));
            }
            ln += g.ln_abs;
            sg *= g.sign;
        }
        for &bj in b.iter().skip(m) {
            let g = ln_gamma_unchecked(1.0 - bj + bh);
            if !g.ln_abs.is_finite() {
                return Err(SpecFunError::Collision(format!(
                    "lower parameters {bj} and {bh}"
                )));
            }
            ln -= g.ln_abs;
            sg *= g.sign;
        }
        for &aj in a.iter().skip(n) {
            let g = ln_gamma_unchecked(aj - bh);
            if !g.ln_abs.is_finite() {
                continue 'fam;
            }
            ln -= g.ln_abs;
            sg *= g.sign;
        }
        let upper = a.iter().map(|aj| 1.0 - aj + bh).collect();
        let lower = b
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != h)
            .map(|(_, bj)| 1.0 - bj + bh)
            .collect();
        out.push(Residue {
            exponent: bh,
            ln_pref: ln,
            sign: sg,
            upper,
            lower,
        });
    }
    debug_assert!(out.len() <= m && p + q > 0);
    Ok(out)
}

/// (-1)^{p-m-n}
pub(crate) fn series_sign(m: usize, n: usize, p: usize) -> f64 {
    if (p + m + n) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn slater_sum(
    m: usize,
    n: usize,
    a: &[f64],
    b: &[f64],
    z: f64,
    acc: &SeriesAccuracy,
) -> Result<SlaterSum, SpecFunError> {
    let x = series_sign(m, n, a.len()) * z;
    let lnz = z.ln();
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    for r in residues(m, n, a, b)? {
        let s = hyp_pfq_detailed(&r.upper, &r.lower, x, acc)?;
        let mag = (r.ln_pref + r.exponent * lnz).exp();
        if !mag.is_finite() {
            return Err(SpecFunError::NonConvergence {
                what: "meijer_g residue overflow",
                terms: s.terms,
            });
        }
        value += r.sign * mag * s.value;
        abs_sum += mag * s.abs_sum;
    }
    Ok(SlaterSum { value, abs_sum })
}

fn near_integer(d: f64) -> bool {
    (d - d.round()).abs() < COLLISION_TOL
}

/// Perturbation directions for the lower parameters and the total collision order.
pub(crate) fn perturbation_offsets(m: usize, b: &[f64]) -> (Vec<f64>, usize) {
    let q = b.len();
    let mut v = vec![0.0; q];
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if near_integer(b[i] - b[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj] = ri;
                }
            }
        }
    }
    let mut order = 0usize;
    let mut span = 0.0f64;
    for root in 0..m {
        let members: Vec<usize> = (0..m).filter(|&i| find(&mut parent, i) == root).collect();
        let g = members.len();
        if g < 2 {
            continue;
        }
        order += g - 1;
        // symmetric offsets keep the sum of the group unchanged
        for (k, &i) in members.iter().enumerate() {
            v[i] = k as f64 - (g as f64 - 1.0) / 2.0;
        }
        span = span.max((g as f64 - 1.0) / 2.0);
    }
    let mut next = span + 1.0;
    for j in m..q {
        let hits = (0..m).any(|h| {
            let d = 1.0 - b[j] + b[h];
            near_integer(d) && d.round() <= 0.0
        });
        if hits {
            v[j] = next;
            next += 1.0;
            order = order.max(1);
        }
    }
    (v, order)
}

/// Perturbation size for a given total collision order.
pub(crate) fn perturbation_eps(order: usize) -> f64 {
    1e-3 * 4f64.powi(order.saturating_sub(1) as i32)
}

/// Three-level Richardson weights eliminating the ε² and ε⁴ terms of the symmetric averages.
pub(crate) const RICHARDSON: [f64; 3] = [1.5, -0.6, 0.1];

pub(crate) fn richardson_error(avg1: f64, combined: f64, max_abs: f64) -> f64 {
    let cancel = 64.0 * EPS * max_abs * 2.2;
    let d = (avg1 - combined).abs();
    let bias = if combined != 0.0 {
        10.0 * d * d * d / (combined * combined)
    } else {
        d
    };
    cancel + bias
}

fn slater(s: &MeijerGSpec, acc: &SeriesAccuracy) -> Result<MeijerGValue, SpecFunError> {
    let (v, order) = perturbation_offsets(s.m, &s.b);
    if order == 0 {
        let r = slater_sum(s.m, s.n, &s.a, &s.b, s.z, acc)?;
        let err = 64.0 * EPS * r.abs_sum + acc.rel_tol * (r.value.abs() + 0.01 * r.abs_sum);
        return Ok(MeijerGValue {
            value: r.value,
            error_estimate: err,
            route: Route::Direct,
            perturbed: false,
        });
    }
    let eps = perturbation_eps(order);
    let mut avgs = [0.0; 3];
    let mut max_abs = 0.0f64;
    for (k, avg) in avgs.iter_mut().enumerate() {
        let scale = eps * (k + 1) as f64;
        let mut sum = 0.0;
        for sgn in [1.0, -1.0] {
            let bp: Vec<f64> =
                s.b.iter()
                    .zip(&v)
                    .map(|(x, o)| x + sgn * scale * o)
                    .collect();
            let r = slater_sum(s.m, s.n, &s.a, &bp, s.z, acc)?;
            sum += r.value;
            max_abs = max_abs.max(r.abs_sum);
        }
        *avg = 0.5 * sum;
    }
    let value: f64 = avgs.iter().zip(RICHARDSON.iter()).map(|(a, w)| a * w).sum();
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
    use super::super::bessel_k;
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn g(m: usize, n: usize, a: &[f64], b: &[f64], z: f64) -> f64 {
        meijer_g(
            &MeijerGSpec::new(m, n, a.to_vec(), b.to_vec(), z).unwrap(),
            &SeriesAccuracy::default(),
        )
        .unwrap()
    }

    #[test]
    fn exponential_identity() {
        for &z in &[0.01f64, 0.1, 1.0, 10.0] {
            let got = g(1, 0, &[], &[0.0], z);
            assert!(rel(got, (-z).exp()) < 1e-12, "z={z}: {got}");
        }
        assert!(rel(g(1, 0, &[], &[0.0], 1.0), 0.367_879_4) < 1e-6);
    }

    #[test]
    fn bessel_identity_with_collision() {
        for &z in &[1e-3f64, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let want = 2.0 * z.sqrt() * bessel_k(1.0, 2.0 * z.sqrt()).unwrap();
            let got = g(2, 0, &[], &[1.0, 0.0], z);
            assert!(rel(got, want) < 1e-10, "z={z}: {got} vs {want}");
        }
        assert!(rel(g(2, 0, &[], &[1.0, 0.0], 1.0), 0.279_731_8) < 1e-6);
    }

    #[test]
    fn bessel_identity_general_orders() {
        for &(b1, b2) in &[(0.3, 0.0), (1.7, 0.2), (0.5, 0.0), (2.5, -0.5)] {
            for &z in &[1e-3f64, 0.3, 3.0, 10.0] {
                let want =
                    2.0 * z.powf((b1 + b2) / 2.0) * bessel_k(b1 - b2, 2.0 * z.sqrt()).unwrap();
                let got = g(2, 0, &[], &[b1, b2], z);
                assert!(
                    rel(got, want) < 1e-10,
                    "b=({b1},{b2}) z={z}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn reduction_cancels_pairs() {
        let s = MeijerGSpec::new(
            7,
            2,
            vec![1.0, 0.5, 3.0, 2.5],
            vec![1.0, 2.5, 2.0, 2.5, 1.0, 1.5, 3.0, 0.5, 0.0],
            0.7,
        )
        .unwrap();
        let r = s.reduced();
        assert_eq!((r.m, r.n, r.p(), r.q()), (5, 1, 1, 6));
    }

    #[test]
    fn gg_reference_instances() {
        let (a, b, xi2) = (4.2, 1.4, 2.45f64 * 2.45);
        let cases = [
            (
                0.1,
                0.009_951_181_309_491_549_7,
                1.136_609_413_228_452_9,
                0.013_544_238_124_349_128,
            ),
            (
                1.0,
                0.185_436_987_529_381_55,
                0.961_123_607_008_562_93,
                0.205_534_596_601_290_37,
            ),
            (
                3.0,
                0.529_836_954_485_801_37,
                0.616_723_640_052_143_11,
                0.409_752_940_843_447_98,
            ),
            (
                10.0,
                0.997_310_942_184_463_05,
                0.149_249_652_353_481_43,
                0.276_339_524_548_808_32,
            ),
            (
                25.0,
                1.133_245_126_082_853_1,
                0.013_315_468_455_091_426,
                0.047_573_346_781_678_079,
            ),
        ];
        for (z, cdf, sf, pdf) in cases {
            assert!(
                rel(g(3, 1, &[1.0, xi2 + 1.0], &[xi2, a, b, 0.0], z), cdf) < 1e-10,
                "cdf z={z}"
            );
            assert!(
                rel(g(4, 0, &[1.0, xi2 + 1.0], &[0.0, xi2, a, b], z), sf) < 1e-10,
                "sf z={z}"
            );
            assert!(
                rel(g(3, 0, &[xi2 + 1.0], &[xi2, a, b], z), pdf) < 1e-10,
                "pdf z={z}"
            );
        }
    }

    #[test]
    fn relay_kernel_instances() {
        let af = |a: f64, b: f64, xi2: f64, w: f64| {
            g(
                6,
                1,
                &[1.0, xi2 / 2.0 + 1.0],
                &[
                    a / 2.0,
                    (a + 1.0) / 2.0,
                    b / 2.0,
                    (b + 1.0) / 2.0,
                    1.0,
                    xi2 / 2.0,
                    0.0,
                ],
                w,
            )
        };
        let xm = 10.45f64 * 10.45;
        let xs = 2.45f64 * 2.45;
        let cases = [
            (
                0.01,
                0.000_904_573_125_175_268_13,
                0.060_277_599_771_884_225,
            ),
            (1.0, 0.010_936_350_420_940_707, 0.385_997_960_695_347_6),
            (30.0, 0.021_174_589_350_145_022, 0.581_549_503_432_575_57),
        ];
        for (w, moderate, strong) in cases {
            assert!(rel(af(4.0, 1.9, xm, w), moderate) < 1e-9, "moderate w={w}");
            assert!(rel(af(4.2, 1.4, xs, w), strong) < 1e-9, "strong w={w}");
        }
        for (x, want) in [
            (0.001, 1.598_085_653_795_460_3),
            (0.5, 0.345_894_309_777_737_06),
            (4.0, 0.042_293_596_614_006_618),
            (40.0, 0.000_244_152_832_332_176_17),
        ] {
            assert!(
                rel(g(3, 0, &[], &[1.0, 0.0, 0.5], x), want) < 1e-10,
                "G3 x={x}"
            );
        }
    }

    #[test]
    fn laplace_kernel_instances() {
        let xm = 10.45f64 * 10.45;
        let cases = [
            (
                0.01,
                0.0,
                0.959_214_885_565_435_74,
                1.369_450_154_053_758_2,
                0.000_804_276_193_511_627_44,
            ),
            (
                0.3,
                0.5,
                0.471_975_288_063_345_3,
                0.422_151_386_783_339_33,
                0.006_352_335_831_469_458_1,
            ),
            (
                2.0,
                3.3,
                0.191_222_010_697_172_76,
                0.181_524_968_248_500_1,
                0.161_204_080_709_272_67,
            ),
        ];
        for (x, l, g2, g3, g6) in cases {
            let v = g(2, 1, &[-l], &[1.0, 0.0], x);
            assert!(rel(v, g2) < 1e-9, "G2 x={x}: {v}");
            let v = g(3, 1, &[-l], &[1.0, 0.0, 0.5], x);
            assert!(rel(v, g3) < 1e-9, "G3 x={x}: {v}");
            let b6 = [2.0, 2.5, 0.95, 1.45, 1.0, xm / 2.0, 0.0];
            let v = g(6, 2, &[-l, 1.0, xm / 2.0 + 1.0], &b6, x);
            assert!(rel(v, g6) < 1e-9, "G6 x={x}: {v}");
        }
    }

    #[test]
    fn routes_agree() {
        let acc = SeriesAccuracy::default();
        let s = MeijerGSpec::new(3, 1, vec![1.0, 7.0], vec![6.0025, 4.2, 1.4, 0.0], 2.0).unwrap();
        let d = meijer_g_route(&s, &acc, Route::Direct).unwrap().value;
        let i = meijer_g_route(&s, &acc, Route::Inverted).unwrap().value;
        let c = meijer_g_route(&s, &acc, Route::Contour).unwrap().value;
        assert!(rel(i, d) < 1e-8 && rel(c, d) < 1e-8, "{d} {i} {c}");
    }

    #[test]
    fn p_greater_than_q_uses_inversion() {
        // G^{1,1}_{1,1}(z | 0; 0) = 1/(1+z) style check: G^{1,1}_{1,1}(z|a;b) = Γ(1-a+b) z^b (1+z)^{a-b-1}
        let acc = SeriesAccuracy::default();
        for &z in &[0.2, 3.0] {
            let s = MeijerGSpec::new(1, 1, vec![0.3], vec![0.1], z).unwrap();
            let want = super::super::gamma(0.8).unwrap() * z.powf(0.1) * (1.0 + z).powf(-0.8);
            let v = meijer_g_detailed(&s, &acc).unwrap();
            assert!(rel(v.value, want) < 1e-10, "z={z}");
        }
        let s = MeijerGSpec::new(1, 2, vec![0.2, 0.4], vec![0.1], 0.5).unwrap();
        let v = meijer_g_detailed(&s, &acc).unwrap();
        // G^{1,2}_{2,1}(z|a1,a2;b) = Γ(1-a1+b)Γ(1-a2+b) z^b 2F0 -> evaluated via 1/z
        assert_eq!(v.route, Route::Inverted);
        assert!(v.value.is_finite());
    }

    #[test]
    fn invalid_specs() {
        assert!(MeijerGSpec::new(2, 0, vec![], vec![1.0], 1.0).is_err());
        assert!(MeijerGSpec::new(1, 0, vec![], vec![0.0], 0.0).is_err());
        assert!(MeijerGSpec::new(1, 0, vec![], vec![0.0], -1.0).is_err());
    }
}
