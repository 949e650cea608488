use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// u(z) = U(z) + conj(U(z)) + ν log|z|² with U(z) = Σ_{k≥1} a_k z^k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolU {
    /// a_1, a_2, …; the constant term of U is irrelevant and omitted.
    pub coeffs: Vec<Complex64>,
    pub nu: f64,
}

impl SymbolU {
    pub fn new(coeffs: Vec<Complex64>, nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(domain("SymbolU", format!("nu must be finite and nonnegative, got {nu}")));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(domain("SymbolU", "coefficients must be finite"));
        }
        Ok(SymbolU { coeffs, nu })
    }

    pub fn linear(a: Complex64, nu: f64) -> Result<Self> {
        Self::new(vec![a], nu)
    }

    /// deg U after dropping trailing zero coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)).map_or(0, |i| i + 1)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0 && self.nu == 0.0
    }

    pub fn derivative_at(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for (i, a) in self.coeffs.iter().enumerate() {
            acc += a * (i as f64 + 1.0) * zp;
            zp *= z;
        }
        acc
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        SymbolU { coeffs: self.coeffs.iter().map(|a| a * lambda).collect(), nu: self.nu * lambda }
    }

    /// U(z) ↦ U(e^{iθ} z).
    pub fn rotated(&self, theta: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * Complex64::from_polar(1.0, theta * (i as f64 + 1.0)))
            .collect();
        SymbolU { coeffs, nu: self.nu }
    }
}

/// Σ c_ij z^i w^j.
pub type BivariatePoly = BTreeMap<(u32, u32), Complex64>;

/// Coefficients of F(z, w) = (U(z) − U(w) − U'(w)(z − w)) / (z − w)².
/// For U = z^k the quotient is Σ_{i+j=k−2} (j+1) z^i w^j.
pub fn remainder_coeffs(coeffs: &[Complex64]) -> BivariatePoly {
    let mut out = BivariatePoly::new();
    for (idx, a) in coeffs.iter().enumerate() {
        let k = idx as u32 + 1;
        if k < 2 || *a == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..=(k - 2) {
            let i = k - 2 - j;
            *out.entry((i, j)).or_insert(Complex64::new(0.0, 0.0)) += a * (j as f64 + 1.0);
        }
    }
    out.retain(|_, v| *v != Complex64::new(0.0, 0.0));
    out
}

fn poly_mul(a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
    let mut out = BivariatePoly::new();
    for (&(i, j), x) in a {
        for (&(p, q), y) in b {
            *out.entry((i + p, j + q)).or_insert(Complex64::new(0.0, 0.0)) += x * y;
        }
    }
    out
}

/// Coefficients of (z−w)² F + U'(w)(z−w) − (U(z) − U(w)); zero exactly when
/// F is the remainder of U.
pub fn remainder_defect(coeffs: &[Complex64], f: &BivariatePoly) -> BivariatePoly {
    let one = Complex64::new(1.0, 0.0);
    let zw: BivariatePoly = [((1, 0), one), ((0, 1), -one)].into_iter().collect();
    let mut total = poly_mul(&poly_mul(&zw, &zw), f);
    let mut du = BivariatePoly::new();
    for (idx, a) in coeffs.iter().enumerate() {
        let k = idx as u32 + 1;
        du.insert((0, k - 1), a * k as f64);
        *total.entry((k, 0)).or_insert(Complex64::new(0.0, 0.0)) -= a;
        *total.entry((0, k)).or_insert(Complex64::new(0.0, 0.0)) += a;
    }
    for (key, v) in poly_mul(&du, &zw) {
        *total.entry(key).or_insert(Complex64::new(0.0, 0.0)) += v;
    }
    total.retain(|_, v| *v != Complex64::new(0.0, 0.0));
    total
}
