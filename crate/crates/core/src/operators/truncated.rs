//! The truncated space V(d, r0): for each frequency class |k| ≤ d, the first
//! min(r0, d+1−|k|) functions z^k p_j(|z|²) (or z̄^|k| p_j) where the p_j are
//! orthonormal for (α+1) t^|k| (1−t)^α dt. The j = 0 member is the normalized
//! harmonic monomial.

use num_complex::Complex64;
use serde::Serialize;

use crate::basis::LogPolynomial;
use crate::error::{domain, Error, Result};
use crate::moments::{full_moment, MomentTable, Region};
use crate::quadrature::jacobi_recurrence;

/// Orthonormal polynomials in t for the weight (α+1) t^κ (1−t)^α on [0, 1].
#[derive(Debug, Clone)]
pub struct RadialFamily {
    pub kappa: u32,
    p0: f64,
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl RadialFamily {
    pub fn new(alpha: f64, kappa: u32, len: usize) -> Self {
        let (dx, ox) = jacobi_recurrence(alpha, kappa as f64, len.max(1));
        // map x ∈ [−1, 1] to t = (1 + x)/2
        let diag = dx.iter().map(|a| (1.0 + a) / 2.0).collect();
        let off = ox.iter().map(|b| b / 2.0).collect();
        RadialFamily { kappa, p0: 1.0 / full_moment(alpha, kappa as f64).sqrt(), diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Writes p_0(t), …, p_{out.len()−1}(t).
    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        out[0] = self.p0;
        let mut prev = 0.0;
        for j in 1..out.len() {
            let lag = if j >= 2 { self.off[j - 2] } else { 0.0 };
            let next = ((t - self.diag[j - 1]) * out[j - 1] - lag * prev) / self.off[j - 1];
            prev = out[j - 1];
            out[j] = next;
        }
    }

    /// Monomial coefficients (ascending powers of t) of p_0..p_{count−1}.
    pub fn coefficients(&self, count: usize) -> Vec<Vec<f64>> {
        let mut polys: Vec<Vec<f64>> = Vec::with_capacity(count);
        for j in 0..count {
            let next = if j == 0 {
                vec![self.p0]
            } else {
                let cur = &polys[j - 1];
                let mut v = vec![0.0; j + 1];
                for (i, c) in cur.iter().enumerate() {
                    v[i + 1] += c;
                    v[i] -= self.diag[j - 1] * c;
                }
                if j >= 2 {
                    for (i, c) in polys[j - 2].iter().enumerate() {
                        v[i] -= self.off[j - 2] * c;
                    }
                }
                v.iter().map(|c| c / self.off[j - 1]).collect()
            };
            polys.push(next);
        }
        polys
    }
}

/// Location of one frequency class inside the coordinate vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassBlock {
    pub k: i64,
    pub offset: usize,
    pub len: usize,
}

#[derive(Debug, Clone)]
pub struct BasisSet {
    pub alpha: f64,
    pub degree: u32,
    pub r0: u32,
    classes: Vec<ClassBlock>,
    families: Vec<RadialFamily>,
    dim: usize,
}

/// Parameters that identify a basis, for reports and matrix headers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisMeta {
    pub alpha: f64,
    pub degree: u32,
    pub r0: u32,
    pub dimension: usize,
}

/// Builds V(d, r0) for dA_α.
pub fn build_basis(alpha: f64, degree: u32, r0: u32) -> Result<BasisSet> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(domain("build_basis", format!("alpha must exceed -1, got {alpha}")));
    }
    if degree < 2 || r0 < 1 {
        return Err(domain("build_basis", format!("need d >= 2 and r0 >= 1, got d={degree}, r0={r0}")));
    }
    let mut classes = Vec::with_capacity(2 * degree as usize + 1);
    let mut offset = 0;
    let d = degree as i64;
    for k in -d..=d {
        let len = (r0 as i64).min(d + 1 - k.abs()) as usize;
        classes.push(ClassBlock { k, offset, len });
        offset += len;
    }
    let families = (0..=degree)
        .map(|kappa| RadialFamily::new(alpha, kappa, (r0 as usize).min((degree + 1 - kappa) as usize)))
        .collect();
    Ok(BasisSet { alpha, degree, r0, classes, families, dim: offset })
}

impl BasisSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn meta(&self) -> BasisMeta {
        BasisMeta { alpha: self.alpha, degree: self.degree, r0: self.r0, dimension: self.dim }
    }

    pub fn classes(&self) -> &[ClassBlock] {
        &self.classes
    }

    pub fn class(&self, k: i64) -> Option<&ClassBlock> {
        let d = self.degree as i64;
        if k.abs() > d {
            return None;
        }
        Some(&self.classes[(k + d) as usize])
    }

    pub fn family(&self, kappa: u32) -> &RadialFamily {
        &self.families[kappa as usize]
    }

    /// (class, radial index) of a coordinate.
    pub fn locate(&self, index: usize) -> (i64, usize) {
        let pos = self.classes.partition_point(|c| c.offset + c.len <= index);
        let c = &self.classes[pos];
        (c.k, index - c.offset)
    }

    /// Coordinates of the harmonic members e_k, ē_k.
    pub fn harmonic_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.dim];
        for c in &self.classes {
            mask[c.offset] = true;
        }
        mask
    }

    /// The basis function of class k, radial index j, as a LogPolynomial.
    pub fn element(&self, k: i64, j: usize) -> Result<LogPolynomial> {
        let block = self.class(k).ok_or_else(|| domain("BasisSet::element", format!("class {k} outside basis")))?;
        if j >= block.len {
            return Err(domain("BasisSet::element", format!("radial index {j} >= {}", block.len)));
        }
        let kappa = k.unsigned_abs() as u32;
        let coeffs = &self.family(kappa).coefficients(j + 1)[j];
        let mut f = LogPolynomial::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let i = i as u32;
            let (m, n) = if k >= 0 { (kappa + i, i) } else { (i, kappa + i) };
            f.add_term(false, m, n, Complex64::new(*c, 0.0));
        }
        Ok(f)
    }
}

/// Gram–Cholesky orthonormalization of z^{k+i} z̄^{i} (i < count) for one
/// class, from closed-form moments. Returns ascending t-coefficients of each
/// orthonormal vector. Used only as an oracle: the Gram matrices are
/// Hilbert-like and lose accuracy quickly as count and |k| grow.
pub fn cholesky_class(table: &MomentTable, k: i64, count: usize) -> Result<Vec<Vec<f64>>> {
    const PIVOT_FLOOR: f64 = 1e-13;
    let kappa = k.unsigned_abs() as f64;
    let mut gram = vec![vec![0.0; count]; count];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, g) in row.iter_mut().enumerate() {
            *g = table.radial_moment(kappa + (i + j) as f64, 0, Region::FullDisk)?;
        }
    }
    // gram = L Lᵀ
    let mut l = vec![vec![0.0; count]; count];
    for i in 0..count {
        for j in 0..=i {
            let s: f64 = (0..j).map(|p| l[i][p] * l[j][p]).sum();
            if i == j {
                let pivot = gram[i][i] - s;
                if pivot < PIVOT_FLOOR * gram[i][i] {
                    return Err(Error::IllConditioned { class: k, pivot, threshold: PIVOT_FLOOR });
                }
                l[i][i] = pivot.sqrt();
            } else {
                l[i][j] = (gram[i][j] - s) / l[j][j];
            }
        }
    }
    // rows of L⁻¹ hold the coefficients of the orthonormal vectors
    let mut inv = vec![vec![0.0; count]; count];
    for i in 0..count {
        inv[i][i] = 1.0 / l[i][i];
        for j in 0..i {
            let s: f64 = (j..i).map(|p| l[i][p] * inv[p][j]).sum();
            inv[i][j] = -s / l[i][i];
        }
    }
    Ok(inv.into_iter().enumerate().map(|(i, row)| row[..=i].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::MeasureConfig;

    #[test]
    fn small_basis_matches_norm_constants() {
        let b = build_basis(0.0, 2, 1).unwrap();
        assert_eq!(b.dim(), 5);
        let expect = [(-2i64, 3f64.sqrt()), (-1, 2f64.sqrt()), (0, 1.0), (1, 2f64.sqrt()), (2, 3f64.sqrt())];
        for (k, c) in expect {
            let f = b.element(k, 0).unwrap();
            let key = if k >= 0 { (k as u32, 0) } else { (0, (-k) as u32) };
            assert!((f.poly[&key].re - c).abs() < 1e-14, "class {k}");
        }
    }

    #[test]
    fn dimension_counts_radial_members() {
        let b = build_basis(0.5, 10, 4).unwrap();
        let expect: usize = (-10i64..=10).map(|k| 4.min(11 - k.unsigned_abs() as usize)).sum();
        assert_eq!(b.dim(), expect);
        assert_eq!(b.locate(0), (-10, 0));
        let c = *b.class(3).unwrap();
        assert_eq!(b.locate(c.offset + 2), (3, 2));
        assert!(build_basis(0.0, 1, 1).is_err());
        assert!(build_basis(-1.0, 4, 1).is_err());
    }

    #[test]
    fn class_members_are_orthonormal() {
        let b = build_basis(0.0, 6, 3).unwrap();
        let one = b.element(0, 0).unwrap();
        let second = b.element(0, 1).unwrap();
        assert!((one.poly[&(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(one.inner(&second, 0.0).norm() < 1e-12);
        assert!((second.norm(0.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recurrence_agrees_with_cholesky_oracle() {
        for &alpha in &[0.0, 0.5, 2.5] {
            let table = MomentTable::new(MeasureConfig::new(alpha).unwrap());
            for k in [-3i64, 0, 5] {
                let fam = RadialFamily::new(alpha, k.unsigned_abs() as u32, 4);
                let rec = fam.coefficients(4);
                let chol = cholesky_class(&table, k, 4).unwrap();
                for (a, b) in rec.iter().zip(&chol) {
                    for (x, y) in a.iter().zip(b) {
                        assert!((x - y).abs() < 1e-8 * x.abs().max(1.0), "alpha={alpha} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn cholesky_reports_ill_conditioning() {
        let table = MomentTable::new(MeasureConfig::new(0.0).unwrap());
        assert!(matches!(cholesky_class(&table, 150, 12), Err(Error::IllConditioned { .. })));
    }
}
