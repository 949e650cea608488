//! Tail constants: least-squares fits of n^p·s_n, extrapolation in the
//! truncation degree, the boundary-integral constant of the main theorem and
//! the Lambert-W profile bounding the remainder operator.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::operators::{assemble_commutator_kernel, build_basis, SymbolU};
use crate::specfun::lambert_w0;
use crate::spectral::{singular_values, MULTIPLICITY_COMMUTATOR};

/// √(α+1)·(1/2π)∮ √(ν² + |U'(z)|²) |dz| by the uniform angle rule.
pub fn theorem_constant(u: &SymbolU, alpha: f64, quad_points: usize) -> Result<f64> {
    if quad_points < 16 {
        return Err(domain("theorem_constant", format!("need at least 16 points, got {quad_points}")));
    }
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(domain("theorem_constant", format!("alpha must exceed -1, got {alpha}")));
    }
    let nu2 = u.nu * u.nu;
    let mean = (0..quad_points)
        .map(|k| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / quad_points as f64);
            (nu2 + u.derivative_at(z).norm_sqr()).sqrt()
        })
        .sum::<f64>()
        / quad_points as f64;
    Ok((alpha + 1.0).sqrt() * mean)
}

/// Fit of n^p s_n ≈ C + D/n over a 1-based index window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailFit {
    pub p: f64,
    pub window: (usize, usize),
    pub estimate: f64,
    pub correction: f64,
    /// Standard error of the constant from the weighted residuals.
    pub error_estimate: f64,
    /// Largest relative residual over the window.
    pub max_residual: f64,
}

/// Relative-weighted least squares of n^p s_n ≈ C + D/n for n in [n1, n2].
pub fn fit_tail(s: &[f64], p: f64, window: (usize, usize)) -> Result<TailFit> {
    let (n1, n2) = window;
    if n1 < 1 || n1 >= n2 || n2 > s.len() {
        return Err(Error::Window(format!("window [{n1}, {n2}] invalid for {} values", s.len())));
    }
    if n2 - n1 + 1 < 8 {
        return Err(Error::Window(format!("window [{n1}, {n2}] has fewer than 8 points")));
    }
    let ys: Vec<(f64, f64)> = (n1..=n2).map(|n| (n as f64, (n as f64).powf(p) * s[n - 1])).collect();
    let scale = ys.iter().map(|(_, y)| y.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(TailFit { p, window, estimate: 0.0, correction: 0.0, error_estimate: 0.0, max_residual: 0.0 });
    }
    // weights 1/y² make the residuals relative
    let (mut s00, mut s01, mut s11, mut b0, mut b1) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(n, y) in &ys {
        let w = 1.0 / y.abs().max(1e-12 * scale).powi(2);
        let x = 1.0 / n;
        s00 += w;
        s01 += w * x;
        s11 += w * x * x;
        b0 += w * y;
        b1 += w * x * y;
    }
    let det = s00 * s11 - s01 * s01;
    if det <= 0.0 || !det.is_finite() {
        return Err(Error::Window("singular normal equations".into()));
    }
    let c = (s11 * b0 - s01 * b1) / det;
    let dcoef = (s00 * b1 - s01 * b0) / det;
    let mut rss = 0.0;
    let mut max_residual: f64 = 0.0;
    for &(n, y) in &ys {
        let w = 1.0 / y.abs().max(1e-12 * scale).powi(2);
        let r = y - c - dcoef / n;
        rss += w * r * r;
        max_residual = max_residual.max((r / y.abs().max(1e-12 * scale)).abs());
    }
    let dof = (ys.len() - 2) as f64;
    let error_estimate = (rss / dof * s11 / det).sqrt();
    Ok(TailFit { p, window, estimate: c, correction: dcoef, error_estimate, max_residual })
}

/// Default fit window for degree d: multiplicity·[d/4, 3d/4], divided by
/// `split` when the operator lives on one of `split` sectors.
pub fn default_window(degree: u32, multiplicity: usize, split: u32) -> (usize, usize) {
    let m = multiplicity as f64 / split.max(1) as f64;
    let d = degree as f64;
    (((m * d / 4.0).round() as usize).max(1), (m * 3.0 * d / 4.0).round() as usize)
}

/// Linear extrapolation in 1/d through the two largest degrees; a third
/// degree, when present, gives a consistency residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Richardson {
    pub extrapolated: f64,
    pub residual: Option<f64>,
}

pub fn richardson(points: &[(u32, f64)]) -> Result<Richardson> {
    if points.len() < 2 {
        return Err(domain("richardson", "need at least two degrees"));
    }
    let mut pts = points.to_vec();
    pts.sort_by_key(|p| p.0);
    let (d1, v1) = pts[pts.len() - 2];
    let (d2, v2) = pts[pts.len() - 1];
    if d1 == d2 {
        return Err(domain("richardson", format!("repeated degree {d1}")));
    }
    let (x1, x2) = (1.0 / d1 as f64, 1.0 / d2 as f64);
    let slope = (v2 - v1) / (x2 - x1);
    let extrapolated = v2 - slope * x2;
    let residual = (pts.len() >= 3).then(|| {
        let (d0, v0) = pts[pts.len() - 3];
        (extrapolated + slope / d0 as f64 - v0).abs()
    });
    Ok(Richardson { extrapolated, residual })
}

/// One point of the remainder-operator bound profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuBound {
    pub p: f64,
    pub phi_inverse: f64,
    pub bound: f64,
    pub round_trip_error: f64,
}

/// φ(x) = (2/ln r)·x ln x, inverted by φ⁻¹(p) = exp(W(p ln r / 2)); the
/// bound shape is 1/φ⁻¹(p)².
pub fn su_bound_profile(r: f64, p_values: &[f64]) -> Result<Vec<SuBound>> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(domain("su_bound_profile", format!("r must exceed 1, got {r}")));
    }
    let lr = r.ln();
    p_values
        .iter()
        .map(|&p| {
            if !(p >= 3.0) || !p.is_finite() {
                return Err(domain("su_bound_profile", format!("p must be at least 3, got {p}")));
            }
            let x = lambert_w0(p * lr / 2.0)?.exp();
            let phi = 2.0 / lr * x * x.ln();
            Ok(SuBound { p, phi_inverse: x, bound: 1.0 / (x * x), round_trip_error: ((phi - p) / p).abs() })
        })
        .collect()
}

/// Tail fit of one truncation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyPoint {
    pub degree: u32,
    pub r0: u32,
    pub dimension: usize,
    pub fit: TailFit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolRecord {
    pub coeffs: Vec<Complex64>,
    pub nu: f64,
}

/// Convergence study of n·s_n(𝒞_u) against the theorem's constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub alpha: f64,
    pub symbol: SymbolRecord,
    pub degrees: Vec<u32>,
    pub r0s: Vec<u32>,
    pub points: Vec<StudyPoint>,
    /// Fitted constants at the largest r0, one per degree.
    pub fitted: Vec<f64>,
    pub windows: Vec<(usize, usize)>,
    pub extrapolated: f64,
    pub richardson_residual: Option<f64>,
    /// The constant as stated, without any multiplicity factor.
    pub theorem_constant: f64,
    pub multiplicity: usize,
    pub adjusted_constant: f64,
    /// extrapolated / theorem_constant.
    pub ratio: f64,
    /// extrapolated / adjusted_constant.
    pub adjusted_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_sec: Option<f64>,
}

/// Options for [`convergence_study`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyOptions {
    pub quad_points: usize,
    pub timing: bool,
}

impl Default for StudyOptions {
    fn default() -> Self {
        StudyOptions { quad_points: 512, timing: true }
    }
}

pub fn convergence_study(
    u: &SymbolU,
    alpha: f64,
    degrees: &[u32],
    r0s: &[u32],
    opts: StudyOptions,
) -> Result<TheoremReport> {
    if degrees.len() < 2 {
        return Err(domain("convergence_study", "need at least two degrees"));
    }
    if r0s.is_empty() {
        return Err(domain("convergence_study", "need at least one r0"));
    }
    let start = Instant::now();
    let mu = MULTIPLICITY_COMMUTATOR;
    let grid: Vec<(u32, u32)> = degrees.iter().flat_map(|&d| r0s.iter().map(move |&r| (d, r))).collect();
    let points: Vec<StudyPoint> = grid
        .par_iter()
        .map(|&(degree, r0)| {
            let basis = Arc::new(build_basis(alpha, degree, r0)?);
            let spectrum = singular_values(&assemble_commutator_kernel(u, &basis))?;
            let fit = fit_tail(&spectrum.values, 1.0, default_window(degree, mu, 1))?;
            Ok(StudyPoint { degree, r0, dimension: basis.dim(), fit })
        })
        .collect::<Result<_>>()?;
    let top_r0 = *r0s.iter().max().expect("nonempty");
    let main: Vec<&StudyPoint> = points.iter().filter(|p| p.r0 == top_r0).collect();
    let rich = richardson(&main.iter().map(|p| (p.degree, p.fit.estimate)).collect::<Vec<_>>())?;
    let theorem = theorem_constant(u, alpha, opts.quad_points)?;
    let adjusted = theorem * mu as f64;
    let ratio_of = |x: f64, y: f64| if y == 0.0 { if x == 0.0 { 1.0 } else { f64::INFINITY } } else { x / y };
    Ok(TheoremReport {
        alpha,
        symbol: SymbolRecord { coeffs: u.coeffs.clone(), nu: u.nu },
        degrees: degrees.to_vec(),
        r0s: r0s.to_vec(),
        fitted: main.iter().map(|p| p.fit.estimate).collect(),
        windows: main.iter().map(|p| p.fit.window).collect(),
        extrapolated: rich.extrapolated,
        richardson_residual: rich.residual,
        theorem_constant: theorem,
        multiplicity: mu,
        adjusted_constant: adjusted,
        ratio: ratio_of(rich.extrapolated, theorem),
        adjusted_ratio: ratio_of(rich.extrapolated, adjusted),
        runtime_sec: opts.timing.then(|| start.elapsed().as_secs_f64()),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::c_coeff;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theorem_constant_examples() {
        let z = SymbolU::new(vec![c(1.0, 0.0)], 0.0).unwrap();
        assert!((theorem_constant(&z, 0.0, 64).unwrap() - 1.0).abs() < 1e-12);
        let z1 = SymbolU::new(vec![c(1.0, 0.0)], 1.0).unwrap();
        assert!((theorem_constant(&z1, 1.0, 64).unwrap() - 2.0).abs() < 1e-12);
        let z2 = SymbolU::new(vec![c(0.0, 0.0), c(1.0, 0.0)], 0.0).unwrap();
        assert!((theorem_constant(&z2, 0.0, 64).unwrap() - 2.0).abs() < 1e-12);
        assert!(theorem_constant(&z2, 0.0, 8).is_err());
    }

    #[test]
    fn fit_recovers_model() {
        let s: Vec<f64> = (1..=300).map(|n| 3.0 / n as f64 + 5.0 / (n as f64).powi(2)).collect();
        let f = fit_tail(&s, 1.0, (20, 200)).unwrap();
        assert!((f.estimate - 3.0).abs() < 1e-6 && f.max_residual < 1e-10);
        let s: Vec<f64> = (1..=300).map(|n| 7.0 / (n as f64).powi(2)).collect();
        assert!((fit_tail(&s, 2.0, (10, 100)).unwrap().estimate - 7.0).abs() < 1e-8);
        let cn: Vec<f64> = (1..=1000).map(|n| c_coeff(n, 0.0)).collect();
        assert!((fit_tail(&cn, 1.0, (100, 1000)).unwrap().estimate - 1.0).abs() < 1e-3);
        assert!(fit_tail(&cn, 1.0, (10, 16)).is_err());
        assert!(fit_tail(&cn, 1.0, (10, 2000)).is_err());
        assert_eq!(fit_tail(&[0.0; 40], 1.0, (5, 30)).unwrap().estimate, 0.0);
    }

    #[test]
    fn richardson_behaviour() {
        let r = richardson(&[(48, 2.0), (96, 2.0), (192, 2.0)]).unwrap();
        assert_eq!(r.extrapolated, 2.0);
        assert_eq!(r.residual, Some(0.0));
        let line = |d: u32| 1.5 + 3.0 / d as f64;
        let r = richardson(&[(40, line(40)), (80, line(80)), (20, line(20))]).unwrap();
        assert!((r.extrapolated - 1.5).abs() < 1e-12 && r.residual.unwrap() < 1e-12);
        assert!(richardson(&[(10, 1.0)]).is_err());
    }

    #[test]
    fn su_profile() {
        let prof = su_bound_profile(1.5, &[10.0, 100.0, 1000.0]).unwrap();
        for w in prof.windows(2) {
            assert!(w[1].phi_inverse > w[0].phi_inverse);
        }
        assert!(prof.iter().all(|b| b.round_trip_error < 1e-10));
        assert!(su_bound_profile(1.0, &[10.0]).is_err());
        assert!(su_bound_profile(2.0, &[2.0]).is_err());
    }

    #[test]
    fn constant_symbol_study_is_zero() {
        let u = SymbolU::new(vec![], 0.0).unwrap();
        let r = convergence_study(&u, 0.0, &[8, 12], &[3], StudyOptions { quad_points: 32, timing: false }).unwrap();
        assert_eq!(r.extrapolated, 0.0);
        assert_eq!(r.theorem_constant, 0.0);
        assert!(r.runtime_sec.is_none());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn symbol() -> impl Strategy<Value = SymbolU> {
        (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=3), 0.0f64..2.0)
            .prop_map(|(cs, nu)| SymbolU::new(cs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(), nu).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fit_is_exact_on_its_model(
            c in 0.1f64..10.0, d in -20.0f64..20.0, p in prop::sample::select(vec![1.0, 1.5, 2.0]),
            n1 in 5usize..50, width in 10usize..200,
        ) {
            let n2 = n1 + width;
            let s: Vec<f64> = (1..=n2 + 10).map(|n| {
                let n = n as f64;
                c / n.powf(p) + d / n.powf(p + 1.0)
            }).collect();
            let fit = fit_tail(&s, p, (n1, n2)).unwrap();
            prop_assert!(fit.max_residual < 1e-10);
            prop_assert!((fit.estimate - c).abs() <= 1e-6 * c);
        }

        #[test]
        fn constant_scales_linearly(u in symbol(), a in prop::sample::select(vec![0.0, 1.0, 2.5]), lambda in 0.1f64..10.0) {
            let base = theorem_constant(&u, a, 256).unwrap();
            let scaled = theorem_constant(&u.scaled(lambda), a, 256).unwrap();
            prop_assert!((scaled - lambda * base).abs() <= 1e-12 * scaled.max(1.0));
        }

        #[test]
        fn constant_is_rotation_invariant(u in symbol(), theta in 0.0f64..6.3) {
            let base = theorem_constant(&u, 0.5, 256).unwrap();
            let turned = theorem_constant(&u.rotated(theta), 0.5, 256).unwrap();
            prop_assert!((turned - base).abs() <= 1e-12 * base.max(1.0));
        }

        #[test]
        fn richardson_keeps_constants(v in -100.0f64..100.0, d0 in 8u32..64, k in 2usize..=4) {
            let pts: Vec<(u32, f64)> = (0..k).map(|i| (d0 << i, v)).collect();
            let r = richardson(&pts).unwrap();
            prop_assert!((r.extrapolated - v).abs() <= 1e-12 * v.abs().max(1.0));
            if let Some(res) = r.residual {
                prop_assert!(res.abs() <= 1e-12 * v.abs().max(1.0));
            }
        }
    }
}
