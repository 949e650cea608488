//! Inner products of monomials z^m z̄^n against dA_α = (α+1)(1−|z|²)^α dA,
//! optionally weighted by powers of log|z|², over the disk partition regions.
//!
//! Everything reduces to radial moments (α+1)∫ t^s (ln t)^λ (1−t)^α dt in
//! t = |z|² times an angular mean of e^{ikθ}.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::RwLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::quadrature::{radial_rule, GaussRule, RuleRequest};
use crate::specfun::{digamma_diff_unchecked, ln_beta_unchecked, reg_inc_beta, trigamma_diff_unchecked};

/// The weight exponent α of dA_α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureConfig {
    pub alpha: f64,
}

impl MeasureConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(domain("MeasureConfig", format!("alpha must exceed -1, got {alpha}")));
        }
        Ok(MeasureConfig { alpha })
    }
}

/// The disk partition: D_0^N = {|z| < e^{−2π/N}}, its complement annulus, and
/// the N equal-angle sectors of the annulus (j = 1..N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    FullDisk,
    InnerDisk(u32),
    Annulus(u32),
    Sector { j: u32, n: u32 },
}

impl Region {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Region::FullDisk => Ok(()),
            Region::InnerDisk(n) | Region::Annulus(n) if n >= 1 => Ok(()),
            Region::Sector { j, n } if n >= 1 && (1..=n).contains(&j) => Ok(()),
            other => Err(domain("Region", format!("invalid region {other:?}"))),
        }
    }

    /// Split point e^{−4π/N} in the variable t = |z|².
    pub fn split_t(n: u32) -> f64 {
        (-4.0 * PI / n as f64).exp()
    }

    /// Radial range [lo, hi] in t = |z|².
    pub fn t_range(&self) -> (f64, f64) {
        match *self {
            Region::FullDisk => (0.0, 1.0),
            Region::InnerDisk(n) => (0.0, Self::split_t(n)),
            Region::Annulus(n) | Region::Sector { n, .. } => (Self::split_t(n), 1.0),
        }
    }

    pub fn full_angle(&self) -> bool {
        !matches!(self, Region::Sector { .. })
    }

    /// Angular range in radians.
    pub fn theta_range(&self) -> (f64, f64) {
        match *self {
            Region::Sector { j, n } => (2.0 * PI * (j - 1) as f64 / n as f64, 2.0 * PI * j as f64 / n as f64),
            _ => (0.0, 2.0 * PI),
        }
    }
}

/// (1/2π)∫ e^{ikθ} dθ over the region's angular range.
pub fn angular_factor(k: i64, region: Region) -> Complex64 {
    match region {
        Region::Sector { j, n } => {
            if k == 0 {
                return Complex64::new(1.0 / n as f64, 0.0);
            }
            let n = n as i64;
            // built for |k| and conjugated, so the factor for −k is exactly conj
            let ka = k.abs();
            let phase = |jj: i64| {
                let r = (ka * jj).rem_euclid(n) as f64;
                Complex64::from_polar(1.0, 2.0 * PI * r / n as f64)
            };
            let f = (phase(j as i64) - phase(j as i64 - 1)) / Complex64::new(0.0, 2.0 * PI * ka as f64);
            if k < 0 {
                f.conj()
            } else {
                f
            }
        }
        _ => {
            if k == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
    }
}

/// μ(s) = (α+1)B(s+1, α+1): ratio product from the fractional part of s.
pub fn full_moment(alpha: f64, s: f64) -> f64 {
    let whole = s.floor();
    let frac = s - whole;
    let mut v = if frac == 0.0 { 1.0 } else { (alpha + 1.0) * ln_beta_unchecked(frac + 1.0, alpha + 1.0).exp() };
    let steps = whole as u64;
    if steps > 4096 {
        return (alpha + 1.0) * ln_beta_unchecked(s + 1.0, alpha + 1.0).exp();
    }
    for i in 1..=steps {
        let x = frac + i as f64;
        v *= x / (x + alpha + 1.0);
    }
    v
}

/// Closed-form full-disk radial moment with log power 0, 1 or 2.
pub fn full_radial_moment(alpha: f64, s: f64, logpow: u32) -> f64 {
    let mu = full_moment(alpha, s);
    let d1 = digamma_diff_unchecked(s + 1.0, alpha + 1.0);
    match logpow {
        0 => mu,
        1 => mu * d1,
        _ => mu * (d1 * d1 + trigamma_diff_unchecked(s + 1.0, alpha + 1.0)),
    }
}

type MomentKey = (u64, u32, u64, u64);

/// Memoized radial moments for one α. Reads are concurrent; a miss computes
/// the value outside the lock and inserts it, so cached and fresh values are
/// the same bits.
#[derive(Debug)]
pub struct MomentTable {
    cfg: MeasureConfig,
    cache: RwLock<HashMap<MomentKey, f64>>,
}

impl MomentTable {
    pub fn new(cfg: MeasureConfig) -> Self {
        MomentTable { cfg, cache: RwLock::new(HashMap::new()) }
    }

    pub fn alpha(&self) -> f64 {
        self.cfg.alpha
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    /// (α+1)∫ t^s (ln t)^logpow (1−t)^α dt over the region's t-range.
    pub fn radial_moment(&self, s: f64, logpow: u32, region: Region) -> Result<f64> {
        if !(s >= 0.0) || logpow > 2 {
            return Err(domain("radial_moment", format!("s = {s}, logpow = {logpow}")));
        }
        region.validate()?;
        let (lo, hi) = region.t_range();
        let key = (s.to_bits(), logpow, lo.to_bits(), hi.to_bits());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = radial_moment_uncached(self.cfg.alpha, s, logpow, lo, hi)?;
        self.cache.write().unwrap().insert(key, v);
        Ok(v)
    }

    /// ⟨(log|z|²)^logpow z^m z̄^n, z^p z̄^q⟩ over the region.
    pub fn monomial_inner(&self, m: u32, n: u32, p: u32, q: u32, logpow: u32, region: Region) -> Result<Complex64> {
        let k = (m as i64 - n as i64) - (p as i64 - q as i64);
        let ang = angular_factor(k, region);
        if ang == Complex64::new(0.0, 0.0) {
            region.validate()?;
            return Ok(ang);
        }
        let s = (m + n + p + q) as f64 / 2.0;
        Ok(ang * self.radial_moment(s, logpow, region)?)
    }
}

/// Fresh (uncached) evaluation, used by [`MomentTable`] and its tests.
pub fn radial_moment_uncached(alpha: f64, s: f64, logpow: u32, lo: f64, hi: f64) -> Result<f64> {
    if lo == 0.0 && hi == 1.0 {
        return Ok(full_radial_moment(alpha, s, logpow));
    }
    if logpow == 0 {
        let mu = full_moment(alpha, s);
        return Ok(if lo == 0.0 {
            mu * reg_inc_beta(hi, s + 1.0, alpha + 1.0)?
        } else {
            mu * reg_inc_beta(1.0 - lo, alpha + 1.0, s + 1.0)?
        });
    }
    // log-weighted partial moments: Gauss rules on the (smooth) sub-range,
    // refined until two successive orders agree
    let mut degree = s.ceil() as usize + 16;
    let mut prev = f64::NAN;
    for _ in 0..6 {
        let rule = radial_rule(alpha, lo, hi, RuleRequest { degree, poly_degree: 0, s_min: s });
        let v = rule.integrate(s, logpow, |_| 1.0);
        if (v - prev).abs() <= 1e-14 * v.abs() {
            return Ok(v);
        }
        prev = v;
        degree += 32;
    }
    Ok(prev)
}

/// Independent tensor-quadrature evaluation of [`MomentTable::monomial_inner`]:
/// Gauss–Legendre in r = |z| on subintervals graded geometrically toward both
/// ends, and an angular rule (uniform on full circles, Gauss on sectors).
pub fn quad_oracle_inner(
    alpha: f64,
    (m, n, p, q): (u32, u32, u32, u32),
    logpow: u32,
    region: Region,
    nodes: usize,
) -> Result<Complex64> {
    region.validate()?;
    if nodes < 16 {
        return Err(domain("quad_oracle_inner", "at least 16 nodes are required"));
    }
    let k = (m as i64 - n as i64) - (p as i64 - q as i64);
    let power = (m + n + p + q) as i32;
    let (tlo, thi) = region.t_range();
    let (rlo, rhi) = (tlo.sqrt(), thi.sqrt());

    let mut breaks = vec![rlo, rhi];
    for level in 1..=48 {
        let h = 0.5f64.powi(level);
        if rlo == 0.0 && h < rhi {
            breaks.push(h * rhi);
        }
        if rhi == 1.0 && 1.0 - h > rlo {
            breaks.push(1.0 - h * (1.0 - rlo));
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();

    let gl = GaussRule::legendre(nodes);
    let mut radial = 0.0;
    for win in breaks.windows(2) {
        let (a, b) = (win[0], win[1]);
        let h = (b - a) / 2.0;
        let mut piece = 0.0;
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            let r = a + h * (1.0 + x);
            let t = r * r;
            let f = (alpha + 1.0) * (1.0 - t).powf(alpha) * (2.0 * r.ln()).powi(logpow as i32) * r.powi(power) * 2.0 * r;
            piece += w * f;
        }
        radial += h * piece;
    }

    let ang = if region.full_angle() {
        let count = nodes.max(k.unsigned_abs() as usize + 1);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..count {
            acc += Complex64::from_polar(1.0, k as f64 * 2.0 * PI * i as f64 / count as f64);
        }
        acc / count as f64
    } else {
        let (a, b) = region.theta_range();
        let h = (b - a) / 2.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            acc += Complex64::from_polar(*w, k as f64 * (a + h * (1.0 + x)));
        }
        acc * h / (2.0 * PI)
    };
    Ok(ang * radial)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(alpha: f64) -> MomentTable {
        MomentTable::new(MeasureConfig::new(alpha).unwrap())
    }

    #[test]
    fn radial_examples() {
        let t = table(0.0);
        assert!((t.radial_moment(0.0, 0, Region::FullDisk).unwrap() - 1.0).abs() < 1e-15);
        assert!((t.radial_moment(1.0, 0, Region::FullDisk).unwrap() - 0.5).abs() < 1e-15);
        assert!((t.radial_moment(0.0, 1, Region::FullDisk).unwrap() + 1.0).abs() < 1e-14);
        assert!((t.radial_moment(0.0, 2, Region::FullDisk).unwrap() - 2.0).abs() < 1e-13);
        assert!(t.radial_moment(-1.0, 0, Region::FullDisk).is_err());
        assert!(t.radial_moment(1.0, 0, Region::Sector { j: 5, n: 4 }).is_err());
    }

    #[test]
    fn angular_examples() {
        assert_eq!(angular_factor(0, Region::FullDisk), Complex64::new(1.0, 0.0));
        assert_eq!(angular_factor(3, Region::Annulus(4)), Complex64::new(0.0, 0.0));
        let a = angular_factor(0, Region::Sector { j: 1, n: 4 });
        assert!((a - Complex64::new(0.25, 0.0)).norm() < 1e-16);
        let total: Complex64 = (1..=5).map(|j| angular_factor(3, Region::Sector { j, n: 5 })).sum();
        assert!(total.norm() < 1e-16);
    }

    #[test]
    fn monomial_examples() {
        let t = table(0.0);
        assert!((t.monomial_inner(1, 0, 1, 0, 0, Region::FullDisk).unwrap().re - 0.5).abs() < 1e-15);
        assert_eq!(t.monomial_inner(1, 0, 0, 1, 0, Region::FullDisk).unwrap(), Complex64::new(0.0, 0.0));
        assert!((t.monomial_inner(1, 1, 0, 0, 0, Region::FullDisk).unwrap().re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cache_is_bitwise_memoization() {
        let t = table(1.5);
        let r = Region::Annulus(4);
        let first = t.radial_moment(7.5, 2, r).unwrap();
        let again = t.radial_moment(7.5, 2, r).unwrap();
        let (lo, hi) = r.t_range();
        let fresh = radial_moment_uncached(1.5, 7.5, 2, lo, hi).unwrap();
        assert_eq!(first.to_bits(), again.to_bits());
        assert_eq!(first.to_bits(), fresh.to_bits());
        assert_eq!(t.cached_len(), 1);
    }

    #[test]
    fn inner_plus_annulus_is_full() {
        for &alpha in &[0.0, 0.5, 2.5] {
            let t = table(alpha);
            for &n in &[2u32, 4, 8] {
                for &s in &[0.0, 0.5, 3.0, 11.5, 40.0] {
                    for lp in 0..3 {
                        let a = t.radial_moment(s, lp, Region::InnerDisk(n)).unwrap()
                            + t.radial_moment(s, lp, Region::Annulus(n)).unwrap();
                        let b = t.radial_moment(s, lp, Region::FullDisk).unwrap();
                        assert!((a - b).abs() < 1e-12 * b.abs().max(1e-3), "alpha={alpha} N={n} s={s} lp={lp}");
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let v = quad_oracle_inner(0.0, (1, 0, 1, 0), 0, Region::FullDisk, 128).unwrap();
        assert!((v.re - 0.5).abs() < 1e-10 && v.im.abs() < 1e-12);
        let v = quad_oracle_inner(1.5, (0, 0, 0, 0), 0, Region::FullDisk, 32).unwrap();
        assert!((v.re - 1.0).abs() < 1e-10);
        let r = Region::Sector { j: 2, n: 8 };
        let exact = table(0.5).monomial_inner(2, 1, 1, 0, 0, r).unwrap();
        let v = quad_oracle_inner(0.5, (2, 1, 1, 0), 0, r, 32).unwrap();
        assert!((v - exact).norm() <= 1e-9 * exact.norm());
        assert!(quad_oracle_inner(0.5, (0, 0, 0, 0), 0, r, 8).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn alpha() -> impl Strategy<Value = f64> {
        prop::sample::select(vec![0.0, 0.5, 1.0, 2.5])
    }

    fn region() -> impl Strategy<Value = Region> {
        (1u32..9, 0u32..4, 1u32..9).prop_map(|(n, kind, j)| match kind {
            0 => Region::FullDisk,
            1 => Region::InnerDisk(n),
            2 => Region::Annulus(n),
            _ => Region::Sector { j: 1 + (j - 1) % n, n },
        })
    }

    fn tuple() -> impl Strategy<Value = (u32, u32, u32, u32)> {
        (0u32..10, 0u32..10, 0u32..10, 0u32..10)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn hermitian_symmetry(a in alpha(), (m, n, p, q) in tuple(), lp in 0u32..3, r in region()) {
            let t = MomentTable::new(MeasureConfig::new(a).unwrap());
            let x = t.monomial_inner(m, n, p, q, lp, r).unwrap();
            let y = t.monomial_inner(p, q, m, n, lp, r).unwrap();
            prop_assert_eq!(x, y.conj());
        }

        #[test]
        fn sectors_add_up_to_annulus(
            a in alpha(), (m, n, p, q) in tuple(), lp in 0u32..3, parts in prop::sample::select(vec![2u32, 4, 8]),
        ) {
            let t = MomentTable::new(MeasureConfig::new(a).unwrap());
            let total: Complex64 = (1..=parts)
                .map(|j| t.monomial_inner(m, n, p, q, lp, Region::Sector { j, n: parts }).unwrap())
                .sum();
            let annulus = t.monomial_inner(m, n, p, q, lp, Region::Annulus(parts)).unwrap();
            prop_assert!((total - annulus).norm() <= 1e-12 * annulus.norm().max(1.0));
        }

        #[test]
        fn inner_and_annulus_make_the_disk(a in alpha(), (m, n, p, q) in tuple(), lp in 0u32..3, parts in 1u32..9) {
            let t = MomentTable::new(MeasureConfig::new(a).unwrap());
            let split = t.monomial_inner(m, n, p, q, lp, Region::InnerDisk(parts)).unwrap()
                + t.monomial_inner(m, n, p, q, lp, Region::Annulus(parts)).unwrap();
            let full = t.monomial_inner(m, n, p, q, lp, Region::FullDisk).unwrap();
            prop_assert!((split - full).norm() <= 1e-12 * full.norm().max(1.0));
        }

        #[test]
        fn closed_form_matches_quadrature(a in alpha(), (m, n, p, q) in tuple(), lp in 0u32..3, r in region()) {
            let t = MomentTable::new(MeasureConfig::new(a).unwrap());
            let closed = t.monomial_inner(m, n, p, q, lp, r).unwrap();
            let oracle = quad_oracle_inner(a, (m, n, p, q), lp, r, 40).unwrap();
            let scale = closed.norm().max(t.radial_moment((m + n + p + q) as f64 / 2.0, lp, r).unwrap().abs());
            prop_assert!((closed - oracle).norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn region_grams_are_positive_semidefinite() {
        use faer::{Mat, Side};
        let idx: Vec<(u32, u32)> = (0..=8).flat_map(|m| (0..=8).map(move |n| (m, n))).collect();
        for a in [0.0, 1.0] {
            let t = MomentTable::new(MeasureConfig::new(a).unwrap());
            for r in [Region::FullDisk, Region::InnerDisk(3), Region::Annulus(3), Region::Sector { j: 2, n: 3 }] {
                let g = Mat::<Complex64>::from_fn(idx.len(), idx.len(), |i, j| {
                    let ((p, q), (m, n)) = (idx[i], idx[j]);
                    t.monomial_inner(m, n, p, q, 0, r).unwrap()
                });
                let low = g.self_adjoint_eigenvalues(Side::Lower).unwrap().into_iter().fold(f64::INFINITY, f64::min);
                assert!(low >= -1e-12, "{r:?}: {low:e}");
            }
        }
    }
}
