//! Singular values of assembled matrices, predicted Schmidt multisets, and the
//! Ky Fan / Weyl inequalities.

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{b_closed, c_coeff, t_coeff};
use crate::error::{domain, Error, Result};
use crate::operators::{build_basis, BasisMeta, ModelSpec, OperatorMatrix};
use crate::specfun::trigamma_diff;

/// Non-increasing singular values with a note on where they came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
    pub label: String,
    pub basis: Option<BasisMeta>,
}

impl SingularSpectrum {
    pub fn from_values(mut values: Vec<f64>, label: impl Into<String>) -> Self {
        values.iter_mut().for_each(|v| *v = v.max(0.0));
        values.sort_by(|a, b| b.total_cmp(a));
        SingularSpectrum { values, label: label.into(), basis: None }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// s_n with the 1-based index used throughout.
    pub fn s(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    /// CSV with header `index,value`, 1-based.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, v));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("index") {
                continue;
            }
            let field = line.rsplit(',').next().unwrap_or(line);
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| Error::Format { line: i + 1, detail: format!("not a number: {field:?}") })?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Format { line: i + 1, detail: format!("singular value must be finite and >= 0, got {v}") });
            }
            values.push(v);
        }
        Ok(SingularSpectrum::from_values(values, "csv"))
    }
}

fn dense_singular_values(m: &Mat<Complex64>) -> Result<Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    if m.col_iter().all(|c| c.iter().all(|z| *z == Complex64::new(0.0, 0.0))) {
        return Ok(vec![0.0; m.nrows().min(m.ncols())]);
    }
    m.singular_values().map_err(|e| Error::Linalg(format!("{e:?}")))
}

/// Full SVD spectrum of a dense matrix.
pub fn matrix_singular_values(m: &Mat<Complex64>) -> Result<Vec<f64>> {
    let mut v = dense_singular_values(m)?;
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

fn gather(m: &Mat<Complex64>, rows: &[usize], cols: &[usize]) -> Mat<Complex64> {
    Mat::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Spectrum of an assembled operator. When the harmonic/harmonic and
/// nonharmonic/nonharmonic blocks vanish identically (commutators and Q₀-type
/// operators), the two off-diagonal blocks are decomposed separately.
pub fn singular_values(m: &OperatorMatrix) -> Result<SingularSpectrum> {
    let n = m.dim();
    let mask = m.basis.harmonic_mask();
    let harm: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
    let rest: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
    let zero = Complex64::new(0.0, 0.0);
    let diag_free = harm.iter().all(|&p| harm.iter().all(|&q| m.entries[(p, q)] == zero))
        && rest.iter().all(|&p| rest.iter().all(|&q| m.entries[(p, q)] == zero));
    let values = if diag_free && !rest.is_empty() {
        let mut v = dense_singular_values(&gather(&m.entries, &rest, &harm))?;
        v.extend(dense_singular_values(&gather(&m.entries, &harm, &rest))?);
        v.resize(n, 0.0);
        v
    } else {
        dense_singular_values(&m.entries)?
    };
    let mut s = SingularSpectrum::from_values(values, m.label.clone());
    s.basis = Some(m.meta());
    Ok(s)
}

/// Family multiplicities, pinned once by brute-force SVD of small exact
/// assemblies (see `pin_multiplicity`).
pub const MULTIPLICITY_E: usize = 2;
pub const MULTIPLICITY_Q0: usize = 2;
pub const MULTIPLICITY_FRAKQ: usize = 4;
pub const MULTIPLICITY_Y: usize = 4;
pub const MULTIPLICITY_COMMUTATOR: usize = 4;

/// Operators with a closed-form Schmidt prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum PredictedOperator {
    E,
    Q0,
    FrakQ { a: Complex64 },
    Y { a: Complex64, nu: f64 },
}

impl PredictedOperator {
    pub fn model(&self) -> ModelSpec {
        match *self {
            PredictedOperator::E => ModelSpec::E,
            PredictedOperator::Q0 => ModelSpec::Q0,
            PredictedOperator::FrakQ { a } => ModelSpec::FrakQ { a },
            PredictedOperator::Y { a, nu } => ModelSpec::Y { a, nu },
        }
    }
}

/// A predicted singular-value multiset: a sequence family with a common
/// multiplicity plus finitely many head values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtPrediction {
    pub operator: PredictedOperator,
    pub alpha: f64,
    pub multiplicity: usize,
    /// (n, value) for the family members used.
    pub family: Vec<(u32, f64)>,
    pub head: Vec<f64>,
    pub source: String,
    /// True when every predicted Schmidt vector is a polynomial, so the
    /// prediction is exact on large enough truncations.
    pub exact: bool,
}

impl SchmidtPrediction {
    /// All values with multiplicity, sorted non-increasing.
    pub fn values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.head.clone();
        for &(_, x) in &self.family {
            v.extend(std::iter::repeat_n(x, self.multiplicity));
        }
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn top(&self, count: usize) -> Vec<f64> {
        let mut v = self.values();
        v.truncate(count);
        v
    }

    /// Asymptotic constant of n·s_n for the ordered multiset, given the
    /// per-family limit of n·f_n.
    pub fn ordered_constant(&self, family_limit: f64) -> f64 {
        family_limit * self.multiplicity as f64
    }
}

/// Head values of E found by residue: everything in a small exact spectrum
/// that the √b_n family does not explain.
fn e_head(alpha: f64) -> Result<Vec<f64>> {
    let basis = std::sync::Arc::new(build_basis(alpha, 12, 6)?);
    let spectrum = singular_values(&crate::operators::assemble_model(&ModelSpec::E, &basis))?;
    let mut family = Vec::new();
    for n in 2..=8u32 {
        let v = b_closed(n, alpha)?.sqrt();
        family.extend(std::iter::repeat_n(v, MULTIPLICITY_E));
    }
    let floor = family.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut used = vec![false; spectrum.len()];
    for f in &family {
        if let Some(i) = (0..spectrum.len()).find(|&i| !used[i] && (spectrum.values[i] - f).abs() <= 1e-9 * f.max(1e-300)) {
            used[i] = true;
        }
    }
    Ok(spectrum
        .values
        .iter()
        .zip(&used)
        .filter(|(v, u)| !**u && **v > floor * (1.0 + 1e-9))
        .map(|(v, _)| *v)
        .collect())
}

/// The predicted multiset for `count` leading family members.
pub fn schmidt_multiset(op: PredictedOperator, alpha: f64, count: usize) -> Result<SchmidtPrediction> {
    if count < 1 {
        return Err(domain("schmidt_multiset", "count must be at least 1"));
    }
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(domain("schmidt_multiset", format!("alpha must exceed -1, got {alpha}")));
    }
    let members = count as u32;
    let pred = match op {
        PredictedOperator::E => SchmidtPrediction {
            operator: op,
            alpha,
            multiplicity: MULTIPLICITY_E,
            family: (2..2 + members).map(|n| Ok((n, b_closed(n, alpha)?.sqrt()))).collect::<Result<_>>()?,
            head: e_head(alpha)?,
            source: "sqrt(b_n), n >= 2; head by residue at d=12, r0=6".into(),
            exact: true,
        },
        PredictedOperator::Q0 => SchmidtPrediction {
            operator: op,
            alpha,
            multiplicity: MULTIPLICITY_Q0,
            family: (0..members).map(|n| (n, c_coeff(n, alpha))).collect(),
            head: Vec::new(),
            source: "c_n, n >= 0".into(),
            exact: true,
        },
        PredictedOperator::FrakQ { a } | PredictedOperator::Y { a, nu: 0.0 } => {
            let r = a.norm();
            let (family, head) = if r == 0.0 {
                (Vec::new(), Vec::new())
            } else {
                let head = vec![std::f64::consts::SQRT_2 * r * c_coeff(0, alpha); 2];
                ((1..=members).map(|n| (n, r * c_coeff(n, alpha))).collect(), head)
            };
            SchmidtPrediction {
                operator: op,
                alpha,
                multiplicity: MULTIPLICITY_FRAKQ,
                family,
                head,
                source: "|a| c_n, n >= 1, head sqrt(2)|a| c_0 twice".into(),
                exact: true,
            }
        }
        PredictedOperator::Y { a, nu } => {
            if a.norm() == 0.0 {
                let head = vec![nu * trigamma_diff(1.0, alpha + 1.0)?.sqrt(); 2];
                SchmidtPrediction {
                    operator: op,
                    alpha,
                    multiplicity: MULTIPLICITY_Y,
                    family: (0..members).map(|n| (n, t_coeff(n, alpha, a, nu))).collect(),
                    head,
                    source: "t_n, n >= 0, head nu*sqrt(psi'(1) - psi'(alpha+2)) twice".into(),
                    exact: false,
                }
            } else {
                SchmidtPrediction {
                    operator: op,
                    alpha,
                    multiplicity: MULTIPLICITY_Y,
                    family: (0..members).map(|n| (n, t_coeff(n, alpha, a, nu))).collect(),
                    head: Vec::new(),
                    source: "t_n, n >= 0 (asymptotic only: the h-families are not orthogonal)".into(),
                    exact: false,
                }
            }
        }
    };
    Ok(pred)
}

/// Brute-force multiplicity: how many singular values of a small exact
/// assembly sit at the given family value.
pub fn pin_multiplicity(spec: &ModelSpec, alpha: f64, value: f64, degree: u32, r0: u32) -> Result<usize> {
    let basis = std::sync::Arc::new(build_basis(alpha, degree, r0)?);
    let s = singular_values(&crate::operators::assemble_model(spec, &basis))?;
    Ok(s.values.iter().filter(|v| (**v - value).abs() <= 1e-9 * value.max(1e-300)).count())
}

/// Greedy pairing of two sorted multisets, compared index by index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultisetMatch {
    pub compared: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub worst_index: usize,
}

pub fn match_multisets(measured: &[f64], predicted: &[f64], count: usize) -> Result<MultisetMatch> {
    let mut a = measured.to_vec();
    let mut b = predicted.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    if count > a.len() || count > b.len() {
        return Err(Error::Dimension(format!("cannot compare {count} values ({} measured, {} predicted)", a.len(), b.len())));
    }
    let mut out = MultisetMatch { compared: count, max_abs_error: 0.0, max_rel_error: 0.0, worst_index: 0 };
    for i in 0..count {
        let e = (a[i] - b[i]).abs();
        if e > out.max_abs_error {
            out.max_abs_error = e;
            out.worst_index = i + 1;
        }
        if b[i] > 0.0 {
            out.max_rel_error = out.max_rel_error.max(e / b[i]);
        }
    }
    Ok(out)
}

/// (Σ_{n ≤ N} s_n^p)^{1/p}.
pub fn schatten_partial(p: f64, s: &[f64], n: usize) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(domain("schatten_partial", format!("p must be at least 1, got {p}")));
    }
    if n > s.len() {
        return Err(domain("schatten_partial", format!("N = {n} exceeds spectrum length {}", s.len())));
    }
    Ok(s[..n].iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p))
}

/// Worst violations (relative to the scale of the right-hand side) of
/// s_{n+m−1}(A+B) ≤ s_n(A) + s_m(B), s_{n+m−1}(AB) ≤ s_n(A) s_m(B) and
/// s_{n+r}(A) ≤ s_n(A+B) ≤ s_{n−r}(A) with r = rank B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KyFanReport {
    pub sum: f64,
    pub product: f64,
    pub sandwich: f64,
    pub rank_b: usize,
}

impl KyFanReport {
    pub fn worst(&self) -> f64 {
        self.sum.max(self.product).max(self.sandwich)
    }
}

fn numerical_rank(s: &[f64]) -> usize {
    let top = s.first().copied().unwrap_or(0.0);
    s.iter().filter(|v| **v > 1e-12 * top.max(1e-300) && **v > 0.0).count()
}

pub fn kyfan_verify(a: &Mat<Complex64>, b: &Mat<Complex64>) -> Result<KyFanReport> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() || a.nrows() != a.ncols() {
        return Err(Error::Dimension(format!(
            "need equal square matrices, got {}x{} and {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let sa = matrix_singular_values(a)?;
    let sb = matrix_singular_values(b)?;
    let ssum = matrix_singular_values(&(a + b))?;
    let sprod = matrix_singular_values(&(a * b))?;
    let len = sa.len();
    let excess = |lhs: f64, rhs: f64, scale: f64| ((lhs - rhs) / scale.max(1.0)).max(0.0);
    let mut report = KyFanReport { sum: 0.0, product: 0.0, sandwich: 0.0, rank_b: numerical_rank(&sb) };
    for n in 1..=len {
        for m in 1..=len + 1 - n {
            let i = n + m - 2;
            report.sum = report.sum.max(excess(ssum[i], sa[n - 1] + sb[m - 1], sa[0] + sb[0]));
            report.product = report.product.max(excess(sprod[i], sa[n - 1] * sb[m - 1], sa[0] * sb[0]));
        }
    }
    let r = report.rank_b;
    for n in 1..=len {
        let scale = sa[0] + sb[0];
        if n + r <= len {
            report.sandwich = report.sandwich.max(excess(sa[n + r - 1], ssum[n - 1], scale));
        }
        if n > r {
            report.sandwich = report.sandwich.max(excess(ssum[n - 1], sa[n - r - 1], scale));
        }
    }
    Ok(report)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Mat<Complex64> {
    Mat::from_fn(rows, cols, |_, _| Complex64::new(standard_normal(rng), standard_normal(rng)))
}

/// Summary of a seeded random Ky Fan suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KyFanSuite {
    pub trials: usize,
    pub size: usize,
    pub seed: u64,
    pub max_sum: f64,
    pub max_product: f64,
    pub max_sandwich: f64,
}

impl KyFanSuite {
    pub fn worst(&self) -> f64 {
        self.max_sum.max(self.max_product).max(self.max_sandwich)
    }
}

/// Random pairs (A, B) for the sum and product inequalities and (A, rank-one R)
/// for the sandwich inequality.
pub fn kyfan_random_suite(trials: usize, size: usize, seed: u64) -> Result<KyFanSuite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = KyFanSuite { trials, size, seed, max_sum: 0.0, max_product: 0.0, max_sandwich: 0.0 };
    for _ in 0..trials {
        let a = random_matrix(&mut rng, size, size);
        let b = random_matrix(&mut rng, size, size);
        let pair = kyfan_verify(&a, &b)?;
        let u = random_matrix(&mut rng, size, 1);
        let v = random_matrix(&mut rng, 1, size);
        let rank_one = kyfan_verify(&a, &(&u * &v))?;
        out.max_sum = out.max_sum.max(pair.sum).max(rank_one.sum);
        out.max_product = out.max_product.max(pair.product).max(rank_one.product);
        out.max_sandwich = out.max_sandwich.max(pair.sandwich).max(rank_one.sandwich);
    }
    Ok(out)
}

/// Standard normal by Box–Muller.
fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::assemble_model;
    use std::sync::Arc;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn small_examples() {
        let mut d = Mat::<Complex64>::zeros(3, 3);
        d[(0, 0)] = c(3.0);
        d[(1, 1)] = c(1.0);
        d[(2, 2)] = c(2.0);
        let s = matrix_singular_values(&d).unwrap();
        for (x, y) in s.iter().zip([3.0, 2.0, 1.0]) {
            assert!((x - y).abs() < 1e-14);
        }
        let mut r = Mat::<Complex64>::zeros(2, 2);
        r[(0, 1)] = Complex64::new(3.0, 4.0);
        let s = matrix_singular_values(&r).unwrap();
        assert!((s[0] - 5.0).abs() < 1e-14 && s[1].abs() < 1e-14);
        assert_eq!(matrix_singular_values(&Mat::zeros(4, 4)).unwrap(), vec![0.0; 4]);
    }

    fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Mat<Complex64> {
        let m = random_matrix(rng, n, n);
        let mut q = Mat::<Complex64>::zeros(n, n);
        for j in 0..n {
            let mut v: Vec<Complex64> = (0..n).map(|i| m[(i, j)]).collect();
            for k in 0..j {
                let dot: Complex64 = (0..n).map(|i| q[(i, k)].conj() * v[i]).sum();
                for (i, x) in v.iter_mut().enumerate() {
                    *x -= dot * q[(i, k)];
                }
            }
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for (i, x) in v.iter().enumerate() {
                q[(i, j)] = x / norm;
            }
        }
        q
    }

    #[test]
    fn unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 8, 8);
        let (u, v) = (random_unitary(&mut rng, 8), random_unitary(&mut rng, 8));
        let s1 = matrix_singular_values(&a).unwrap();
        let s2 = matrix_singular_values(&(&u * &a * &v)).unwrap();
        for (x, y) in s1.iter().zip(&s2) {
            assert!((x - y).abs() < 1e-12 * s1[0]);
        }
    }

    #[test]
    fn block_shortcut_matches_dense() {
        let basis = Arc::new(build_basis(0.5, 10, 4).unwrap());
        let m = assemble_model(&ModelSpec::Y { a: Complex64::new(1.0, -0.5), nu: 0.8 }, &basis);
        let fast = singular_values(&m).unwrap();
        let dense = matrix_singular_values(&m.entries).unwrap();
        for (x, y) in fast.values.iter().zip(&dense) {
            assert!((x - y).abs() < 1e-12);
        }
        let adj = singular_values(&m.adjoint()).unwrap();
        for (x, y) in fast.values.iter().zip(&adj.values) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn pinned_multiplicities() {
        let alpha = 0.0;
        assert_eq!(pin_multiplicity(&ModelSpec::Q0, alpha, c_coeff(3, alpha), 12, 6).unwrap(), MULTIPLICITY_Q0);
        assert_eq!(pin_multiplicity(&ModelSpec::E, alpha, b_closed(4, alpha).unwrap().sqrt(), 12, 6).unwrap(), MULTIPLICITY_E);
        let frakq = ModelSpec::FrakQ { a: c(1.0) };
        assert_eq!(pin_multiplicity(&frakq, alpha, c_coeff(3, alpha), 12, 6).unwrap(), MULTIPLICITY_FRAKQ);
        let y = ModelSpec::Y { a: c(0.0), nu: 1.0 };
        let t = t_coeff(2, alpha, c(0.0), 1.0);
        assert_eq!(pin_multiplicity(&y, alpha, t, 40, 12).unwrap(), 0, "log families are not polynomial");
    }

    #[test]
    fn predictions_match_exact_spectra() {
        for alpha in [0.0, 0.5] {
            let basis = Arc::new(build_basis(alpha, 24, 8).unwrap());
            for op in [PredictedOperator::Q0, PredictedOperator::FrakQ { a: Complex64::new(0.6, 0.8) }, PredictedOperator::E] {
                let s = singular_values(&assemble_model(&op.model(), &basis)).unwrap();
                let pred = schmidt_multiset(op, alpha, 40).unwrap();
                let count = 2 * (24 - 6);
                let m = match_multisets(&s.values, &pred.values(), count).unwrap();
                assert!(m.max_abs_error < 1e-9, "{op:?} alpha={alpha}: {m:?}");
            }
        }
    }

    #[test]
    fn e_top_value() {
        let pred = schmidt_multiset(PredictedOperator::E, 0.0, 10).unwrap();
        let top = pred.values()[0];
        assert!(top >= (2.0f64 / 45.0).sqrt() - 1e-12);
        assert!(schmidt_multiset(PredictedOperator::FrakQ { a: c(0.0) }, 0.0, 5).unwrap().values().is_empty());
    }

    #[test]
    fn kyfan_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 6, 6);
        let r = kyfan_verify(&a, &Mat::zeros(6, 6)).unwrap();
        assert_eq!(r.rank_b, 0);
        assert!(r.worst() == 0.0);
        let suite = kyfan_random_suite(10, 12, 5).unwrap();
        assert!(suite.worst() <= 1e-12, "{suite:?}");
    }

    #[test]
    fn schatten_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_matrix(&mut rng, 7, 7);
        let s = matrix_singular_values(&a).unwrap();
        let frob = a.norm_l2();
        assert!((schatten_partial(2.0, &s, 7).unwrap() - frob).abs() < 1e-12 * frob);
        let harmonic: Vec<f64> = (1..=1000).map(|n| 1.0 / n as f64).collect();
        let tail = schatten_partial(1.5, &harmonic, 1000).unwrap() - schatten_partial(1.5, &harmonic, 500).unwrap();
        assert!(tail < 0.1);
        assert!(schatten_partial(0.5, &harmonic, 3).is_err());
        assert!(schatten_partial(1.0, &harmonic, 1001).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = SingularSpectrum::from_values(vec![0.5, 2.0, 1.0 / 3.0], "x");
        let back = SingularSpectrum::from_csv(&s.to_csv()).unwrap();
        assert_eq!(back.values, s.values);
        assert!(SingularSpectrum::from_csv("index,value\n1,abc\n").is_err());
        let commented = SingularSpectrum::from_csv("# label=x\nindex,value\n1,0.5\n").unwrap();
        assert_eq!(commented.values, vec![0.5]);
    }
}
