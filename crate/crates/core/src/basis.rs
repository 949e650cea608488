//! Explicit function families built from monomials and log|z|², and the
//! coefficient sequences of the Schmidt decompositions of E, Q₀ and Y.

use std::collections::BTreeMap;

use num_complex::Complex64;
use qd::Quad;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::moments::{MomentTable, Region};
use crate::quadrature::{radial_rule, RuleRequest};
use crate::specfun::{
    digamma_diff_unchecked, log_gamma_unchecked, pochhammer_over_factorial, trigamma_diff_unchecked,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Finite combination of z^m z̄^n and log|z|²·z^m z̄^n.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LogPolynomial {
    pub poly: BTreeMap<(u32, u32), Complex64>,
    pub logpoly: BTreeMap<(u32, u32), Complex64>,
}

impl LogPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: u32, n: u32, coef: Complex64) -> Self {
        let mut f = Self::zero();
        f.add_term(false, m, n, coef);
        f
    }

    pub fn add_term(&mut self, log: bool, m: u32, n: u32, coef: Complex64) {
        let map = if log { &mut self.logpoly } else { &mut self.poly };
        *map.entry((m, n)).or_insert(ZERO) += coef;
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let scale = |map: &BTreeMap<(u32, u32), Complex64>| map.iter().map(|(k, v)| (*k, v * c)).collect();
        LogPolynomial { poly: scale(&self.poly), logpoly: scale(&self.logpoly) }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(m, n), &c) in &other.poly {
            out.add_term(false, m, n, c);
        }
        for (&(m, n), &c) in &other.logpoly {
            out.add_term(true, m, n, c);
        }
        out
    }

    /// Pointwise complex conjugate: z^m z̄^n ↦ z^n z̄^m with conjugated coefficients.
    pub fn conj(&self) -> Self {
        let flip = |map: &BTreeMap<(u32, u32), Complex64>| map.iter().map(|(&(m, n), v)| ((n, m), v.conj())).collect();
        LogPolynomial { poly: flip(&self.poly), logpoly: flip(&self.logpoly) }
    }

    fn terms(&self) -> impl Iterator<Item = (u32, u32, u32, Complex64)> + '_ {
        self.poly
            .iter()
            .map(|(&(m, n), &c)| (m, n, 0, c))
            .chain(self.logpoly.iter().map(|(&(m, n), &c)| (m, n, 1, c)))
    }

    /// ⟨self, other⟩ by summing closed-form monomial moments. Exact in exact
    /// arithmetic; loses accuracy when the radial factors nearly cancel.
    pub fn inner_closed(&self, other: &Self, table: &MomentTable) -> Result<Complex64> {
        let mut acc = ZERO;
        for (m, n, lf, cf) in self.terms() {
            for (p, q, lg, cg) in other.terms() {
                if m as i64 - n as i64 != p as i64 - q as i64 {
                    continue;
                }
                acc += cf * cg.conj() * table.monomial_inner(m, n, p, q, lf + lg, Region::FullDisk)?;
            }
        }
        Ok(acc)
    }

    /// ⟨self, other⟩ with the radial factors evaluated at Gauss nodes, one
    /// frequency class at a time. This keeps full relative accuracy for
    /// factors with small norm.
    pub fn inner(&self, other: &Self, alpha: f64) -> Complex64 {
        let by_class = |f: &Self| {
            let mut classes: BTreeMap<i64, Vec<(u32, u32, Complex64)>> = BTreeMap::new();
            for (m, n, l, c) in f.terms() {
                classes.entry(m as i64 - n as i64).or_default().push((m.min(n), l, c));
            }
            classes
        };
        let (fa, fb) = (by_class(self), by_class(other));
        let mut acc = ZERO;
        for (k, ta) in &fa {
            let Some(tb) = fb.get(k) else { continue };
            let deg = |ts: &[(u32, u32, Complex64)]| ts.iter().map(|t| t.0 as usize).max().unwrap_or(0);
            let poly_degree = deg(ta) + deg(tb);
            let kk = k.unsigned_abs() as usize;
            let rule = radial_rule(
                alpha,
                0.0,
                1.0,
                RuleRequest { degree: kk + poly_degree + 4, poly_degree: poly_degree + 2, s_min: kk as f64 },
            );
            let eval = |ts: &[(u32, u32, Complex64)], l: usize| {
                let (t, lt) = (rule.t[l], rule.ln_t[l]);
                ts.iter().fold(ZERO, |s, &(e, lg, c)| s + c * t.powi(e as i32) * if lg == 1 { lt } else { 1.0 })
            };
            for l in 0..rule.len() {
                let weight = rule.w[l] * (kk as f64 * rule.ln_t[l]).exp();
                acc += eval(ta, l) * eval(tb, l).conj() * weight;
            }
        }
        acc
    }

    pub fn norm(&self, alpha: f64) -> f64 {
        self.inner(self, alpha).re.max(0.0).sqrt()
    }
}

/// ‖z^n‖⁻¹ = √((α+2)_n / n!).
pub fn harmonic_normalizer(n: u32, alpha: f64) -> f64 {
    pochhammer_over_factorial(alpha + 2.0, n).sqrt()
}

/// The unit-norm monomial e_n = √((α+2)_n/n!)·zⁿ.
pub fn e_fn(n: u32, alpha: f64) -> LogPolynomial {
    LogPolynomial::monomial(n, 0, Complex64::new(harmonic_normalizer(n, alpha), 0.0))
}

/// b_n in closed rational form.
pub fn b_closed(n: u32, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(domain("b_closed", format!("n must be at least 2, got {n}")));
    }
    let (a, n) = (alpha, n as f64);
    Ok(2.0 * (a + 1.0) * ((a + 4.0) * n + a * a + a)
        / ((a + n) * (a + n + 1.0).powi(2) * (a + n + 2.0) * (a + n + 3.0)))
}

/// b_n as the four-term sum it is derived from. The terms are O(1) and cancel
/// down to O(n⁻⁴), so the sum is carried in double-double arithmetic.
pub fn b_via_sum(n: u32, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(domain("b_via_sum", format!("n must be at least 2, got {n}")));
    }
    let q = Quad::from_f64;
    let n = q(n as f64);
    let an = q(alpha).add_accurate(n);
    let shifted = |x: f64| an.add_accurate(q(x));
    let first = n.add_accurate(q(1.0)) * n.add_accurate(q(2.0)) / (shifted(2.0) * shifted(3.0));
    let second = q(4.0) * n * n.add_accurate(q(1.0)) / (shifted(1.0) * shifted(2.0));
    let third = q(4.0) * n * n / (shifted(1.0) * shifted(1.0));
    let fourth = n * n.sub_accurate(q(1.0)) / (an * shifted(1.0));
    Ok(first.sub_accurate(second).add_accurate(third).sub_accurate(fourth).0)
}

/// c_n = √((α+1)/((α+n+2)(α+n+3))).
pub fn c_coeff(n: u32, alpha: f64) -> f64 {
    let n = n as f64;
    ((alpha + 1.0) / ((alpha + n + 2.0) * (alpha + n + 3.0))).sqrt()
}

/// Unit-norm degree-two radial correction of z^{n−2}, orthogonal to z^{n−2} and z^n.
pub fn varphi_fn(n: u32, alpha: f64) -> Result<LogPolynomial> {
    let b = b_closed(n, alpha)?;
    let nf = n as f64;
    let norm = (pochhammer_over_factorial(alpha + 2.0, n) / b).sqrt();
    let lin = -2.0 * nf / (alpha + nf + 1.0);
    let cst = nf * (nf - 1.0) / ((alpha + nf) * (alpha + nf + 1.0));
    let mut f = LogPolynomial::zero();
    f.add_term(false, n, 2, Complex64::new(norm, 0.0));
    f.add_term(false, n - 1, 1, Complex64::new(norm * lin, 0.0));
    f.add_term(false, n - 2, 0, Complex64::new(norm * cst, 0.0));
    Ok(f)
}

fn phi_normalizer(n: u32, alpha: f64) -> f64 {
    let nf = n as f64;
    (0.5 * ((alpha + nf + 2.0).ln() + log_gamma_unchecked(alpha + nf + 4.0)
        - (alpha + 1.0).ln()
        - log_gamma_unchecked(alpha + 2.0)
        - log_gamma_unchecked(nf + 2.0)))
        .exp()
}

/// Unit-norm degree-one radial correction of zⁿ, orthogonal to zⁿ.
pub fn phi_fn(n: u32, alpha: f64) -> LogPolynomial {
    let norm = phi_normalizer(n, alpha);
    let shift = (n as f64 + 1.0) / (alpha + n as f64 + 2.0);
    let mut f = LogPolynomial::zero();
    f.add_term(false, n + 1, 1, Complex64::new(norm, 0.0));
    f.add_term(false, n, 0, Complex64::new(-norm * shift, 0.0));
    f
}

/// Exact mean ⟨ν log|z|² e_{n+1}, e_{n+1}⟩ = ν(Ψ(n+2) − Ψ(n+α+3)).
pub fn x_mean(n: u32, alpha: f64, nu: f64) -> f64 {
    nu * digamma_diff_unchecked(n as f64 + 2.0, alpha + 1.0)
}

/// The same mean computed from closed-form log moments.
pub fn x_mean_via_moments(n: u32, table: &MomentTable, nu: f64) -> Result<f64> {
    let s = n as f64 + 1.0;
    Ok(nu * table.radial_moment(s, 1, Region::FullDisk)? / table.radial_moment(s, 0, Region::FullDisk)?)
}

/// The displayed form ν(Ψ'(n+1) − Ψ'(n+α+2)), kept for reports.
pub fn x_trigamma_variant(n: u32, alpha: f64, nu: f64) -> f64 {
    nu * trigamma_diff_unchecked(n as f64 + 1.0, alpha + 1.0)
}

/// Norm of the un-normalized h-vector: √(|a|²c_n² + ν²(Ψ'(n+2) − Ψ'(n+α+3))).
pub fn t_coeff(n: u32, alpha: f64, a: Complex64, nu: f64) -> f64 {
    let c = c_coeff(n, alpha);
    (a.norm_sqr() * c * c + nu * nu * trigamma_diff_unchecked(n as f64 + 2.0, alpha + 1.0)).sqrt()
}

/// The displayed form with the trigamma difference squared, kept for reports.
pub fn t_squared_variant(n: u32, alpha: f64, a: Complex64, nu: f64) -> f64 {
    let c = c_coeff(n, alpha);
    let d = trigamma_diff_unchecked(n as f64 + 2.0, alpha + 1.0);
    (a.norm_sqr() * c * c + nu * nu * d * d).sqrt()
}

/// (ν log|z|² − x_n) e_{n+1} − ā c_n ϕ_n.
pub fn h_unnormalized(n: u32, alpha: f64, a: Complex64, nu: f64) -> LogPolynomial {
    let ne = harmonic_normalizer(n + 1, alpha);
    let mut f = LogPolynomial::zero();
    f.add_term(true, n + 1, 0, Complex64::new(nu * ne, 0.0));
    f.add_term(false, n + 1, 0, Complex64::new(-x_mean(n, alpha, nu) * ne, 0.0));
    f.plus(&phi_fn(n, alpha).scaled(-a.conj() * c_coeff(n, alpha)))
}

/// h_n = h-vector / t_n.
pub fn h_fn(n: u32, alpha: f64, a: Complex64, nu: f64) -> Result<LogPolynomial> {
    if a == ZERO && nu == 0.0 {
        return Err(Error::Degenerate("h_n needs (a, nu) != (0, 0): t_n vanishes".into()));
    }
    if nu < 0.0 {
        return Err(domain("h_fn", format!("nu must be nonnegative, got {nu}")));
    }
    Ok(h_unnormalized(n, alpha, a, nu).scaled(Complex64::new(1.0 / t_coeff(n, alpha, a, nu), 0.0)))
}

/// Which coefficient sequence a table row refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceName {
    B,
    C,
    T,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub name: SequenceName,
    pub alpha: f64,
    pub a: Complex64,
    pub nu: f64,
}

/// One row of a sequence table; `alternate` carries the cross-check column
/// (b via the four-term sum) or the alternative closed form (t, x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequenceRow {
    pub n: u32,
    pub value: f64,
    pub alternate: Option<f64>,
}

impl SequenceSpec {
    pub fn first_index(&self) -> u32 {
        match self.name {
            SequenceName::B => 2,
            _ => 0,
        }
    }

    pub fn alternate_label(&self) -> Option<&'static str> {
        match self.name {
            SequenceName::B => Some("via_sum"),
            SequenceName::C => None,
            SequenceName::T | SequenceName::X => Some("variant"),
        }
    }

    pub fn row(&self, n: u32) -> Result<SequenceRow> {
        let (value, alternate) = match self.name {
            SequenceName::B => (b_closed(n, self.alpha)?, Some(b_via_sum(n, self.alpha)?)),
            SequenceName::C => (c_coeff(n, self.alpha), None),
            SequenceName::T => (
                t_coeff(n, self.alpha, self.a, self.nu),
                Some(t_squared_variant(n, self.alpha, self.a, self.nu)),
            ),
            SequenceName::X => (x_mean(n, self.alpha, self.nu), Some(x_trigamma_variant(n, self.alpha, self.nu))),
        };
        Ok(SequenceRow { n, value, alternate })
    }

    pub fn table(&self, count: u32) -> Result<Vec<SequenceRow>> {
        if self.nu < 0.0 {
            return Err(domain("SequenceSpec", format!("nu must be nonnegative, got {}", self.nu)));
        }
        let start = self.first_index();
        (start..start + count).map(|n| self.row(n)).collect()
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::moments::MeasureConfig;
    use crate::specfun::trigamma_diff;
    use proptest::prelude::*;

    fn alpha() -> impl Strategy<Value = f64> {
        prop::sample::select(vec![0.0, 0.5, 1.0, 2.5])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn b_closed_equals_four_term_sum(n in 2u32..=1000, a in alpha()) {
            let closed = b_closed(n, a).unwrap();
            prop_assert!((b_via_sum(n, a).unwrap() - closed).abs() <= 1e-12 * closed);
        }

        #[test]
        fn x_mean_matches_log_moments(n in 0u32..200, a in alpha(), nu in 0.0f64..3.0) {
            let table = MomentTable::new(MeasureConfig::new(a).unwrap());
            prop_assert!((x_mean(n, a, nu) - x_mean_via_moments(n, &table, nu).unwrap()).abs() <= 1e-12);
        }

        #[test]
        fn t_is_the_norm_of_the_h_vector(
            n in 0u32..=40, a in alpha(), re in -2.0f64..2.0, im in -2.0f64..2.0, nu in 0.0f64..2.0,
        ) {
            let table = MomentTable::new(MeasureConfig::new(a).unwrap());
            let coef = Complex64::new(re, im);
            let h = h_unnormalized(n, a, coef, nu);
            let sq = h.inner_closed(&h, &table).unwrap().re;
            let t2 = t_coeff(n, a, coef, nu).powi(2);
            prop_assert!((t2 - sq).abs() <= 1e-10 * sq.max(1e-300), "t^2 = {t2}, norm^2 = {sq}");
        }
    }

    #[test]
    fn scaled_trigamma_difference_tends_to_weight_exponent() {
        let n = 10_000.0;
        for a in [0.0, 0.5, 1.0, 2.5] {
            let v = n * n * trigamma_diff(n + 2.0, a + 1.0).unwrap();
            assert!((v / (a + 1.0) - 1.0).abs() <= 1e-3, "alpha = {a}: {v}");
        }
    }
}
