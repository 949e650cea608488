//! Kernel operators T f(z) = ∫ f(w) G(z, w) K_α(z, w) dA_α(w) with G a finite
//! sum of products m_z(z)·m_w(w) of monomials (possibly times log|·|²), i.e.
//! T = Σ c · M_{m_z} ℙ M_{m_w}.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::symbol::{remainder_coeffs, SymbolU};

/// z^hol z̄^anti (log|z|²)^log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mono {
    pub hol: u32,
    pub anti: u32,
    pub log: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { hol: 0, anti: 0, log: 0 };
    pub const LOG: Mono = Mono { hol: 0, anti: 0, log: 1 };

    pub fn z(p: u32) -> Self {
        Mono { hol: p, anti: 0, log: 0 }
    }

    pub fn zbar(p: u32) -> Self {
        Mono { hol: 0, anti: p, log: 0 }
    }

    /// Frequency shift of multiplication by this monomial.
    pub fn shift(&self) -> i64 {
        self.hol as i64 - self.anti as i64
    }

    pub fn conj(&self) -> Self {
        Mono { hol: self.anti, anti: self.hol, log: self.log }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelTerm {
    pub coef: Complex64,
    pub z: Mono,
    pub w: Mono,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct KernelSymbol {
    pub terms: Vec<KernelTerm>,
}

impl KernelSymbol {
    pub fn push(&mut self, coef: Complex64, z: Mono, w: Mono) {
        if coef != Complex64::new(0.0, 0.0) {
            self.terms.push(KernelTerm { coef, z, w });
        }
    }

    pub fn plus(mut self, other: &KernelSymbol) -> Self {
        self.terms.extend_from_slice(&other.terms);
        self
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = KernelSymbol::default();
        for t in &self.terms {
            out.push(t.coef * c, t.z, t.w);
        }
        out
    }

    /// Kernel of T*: (c M_a ℙ M_b)* = c̄ M_{b̄} ℙ M_{ā}.
    pub fn adjoint(&self) -> Self {
        let mut out = KernelSymbol::default();
        for t in &self.terms {
            out.push(t.coef.conj(), t.w.conj(), t.z.conj());
        }
        out
    }

    /// Pointwise conjugate of G(z, w) (the "tilde" operators).
    pub fn conjugated(&self) -> Self {
        let mut out = KernelSymbol::default();
        for t in &self.terms {
            out.push(t.coef.conj(), t.z.conj(), t.w.conj());
        }
        out
    }

    /// Largest frequency shift of any term, in either variable.
    pub fn max_shift(&self) -> i64 {
        self.terms.iter().map(|t| (t.z.shift() + t.w.shift()).abs()).max().unwrap_or(0)
    }
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// (z − w)².
pub fn kernel_e() -> KernelSymbol {
    let mut k = KernelSymbol::default();
    k.push(ONE, Mono::z(2), Mono::ONE);
    k.push(-2.0 * ONE, Mono::z(1), Mono::z(1));
    k.push(ONE, Mono::ONE, Mono::z(2));
    k
}

/// z − w.
pub fn kernel_q0() -> KernelSymbol {
    let mut k = KernelSymbol::default();
    k.push(ONE, Mono::z(1), Mono::ONE);
    k.push(-ONE, Mono::ONE, Mono::z(1));
    k
}

/// ν(log|z|² − log|w|²).
pub fn kernel_rnu(nu: f64) -> KernelSymbol {
    let mut k = KernelSymbol::default();
    k.push(Complex64::new(nu, 0.0), Mono::LOG, Mono::ONE);
    k.push(Complex64::new(-nu, 0.0), Mono::ONE, Mono::LOG);
    k
}

/// a Q₀ + ā Q₀*.
pub fn kernel_frakq(a: Complex64) -> KernelSymbol {
    let q = kernel_q0();
    q.scaled(a).plus(&q.adjoint().scaled(a.conj()))
}

/// U'(w)(z − w).
pub fn kernel_l(u: &SymbolU) -> KernelSymbol {
    let mut k = KernelSymbol::default();
    for (i, a) in u.coeffs.iter().enumerate() {
        let p = i as u32 + 1;
        let c = a * p as f64;
        k.push(c, Mono::z(1), Mono::z(p - 1));
        k.push(-c, Mono::ONE, Mono::z(p));
    }
    k
}

/// F_u(z, w)(z − w)².
pub fn kernel_s(u: &SymbolU) -> KernelSymbol {
    let mut k = KernelSymbol::default();
    for ((i, j), c) in remainder_coeffs(&u.coeffs) {
        k.push(c, Mono::z(i + 2), Mono::z(j));
        k.push(-2.0 * c, Mono::z(i + 1), Mono::z(j + 1));
        k.push(c, Mono::z(i), Mono::z(j + 2));
    }
    k
}

/// u(z) − u(w).
pub fn kernel_commutator(u: &SymbolU) -> KernelSymbol {
    let mut k = kernel_rnu(u.nu);
    for (i, a) in u.coeffs.iter().enumerate() {
        let p = i as u32 + 1;
        k.push(*a, Mono::z(p), Mono::ONE);
        k.push(-a, Mono::ONE, Mono::z(p));
        k.push(a.conj(), Mono::zbar(p), Mono::ONE);
        k.push(-a.conj(), Mono::ONE, Mono::zbar(p));
    }
    k
}

/// The multiplier u itself, as (coefficient, monomial) pairs.
pub fn symbol_terms(u: &SymbolU) -> Vec<(Complex64, Mono)> {
    let mut out = Vec::new();
    if u.nu != 0.0 {
        out.push((Complex64::new(u.nu, 0.0), Mono::LOG));
    }
    for (i, a) in u.coeffs.iter().enumerate() {
        if *a != Complex64::new(0.0, 0.0) {
            let p = i as u32 + 1;
            out.push((*a, Mono::z(p)));
            out.push((a.conj(), Mono::zbar(p)));
        }
    }
    out
}

/// The named operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ModelSpec {
    E,
    Estar,
    Q0,
    Q0star,
    FrakQ { a: Complex64 },
    Rnu { nu: f64 },
    Y { a: Complex64, nu: f64 },
    L { u: SymbolU },
    S { u: SymbolU },
    /// L built from conj(U): kernel conj(U'(w))(z̄ − w̄).
    Lconj { u: SymbolU },
    /// S built from conj(U).
    Sconj { u: SymbolU },
    Commutator { u: SymbolU },
}

impl ModelSpec {
    pub fn kernel(&self) -> KernelSymbol {
        match self {
            ModelSpec::E => kernel_e(),
            ModelSpec::Estar => kernel_e().adjoint(),
            ModelSpec::Q0 => kernel_q0(),
            ModelSpec::Q0star => kernel_q0().adjoint(),
            ModelSpec::FrakQ { a } => kernel_frakq(*a),
            ModelSpec::Rnu { nu } => kernel_rnu(*nu),
            ModelSpec::Y { a, nu } => kernel_frakq(*a).plus(&kernel_rnu(*nu)),
            ModelSpec::L { u } => kernel_l(u),
            ModelSpec::S { u } => kernel_s(u),
            ModelSpec::Lconj { u } => kernel_l(u).conjugated(),
            ModelSpec::Sconj { u } => kernel_s(u).conjugated(),
            ModelSpec::Commutator { u } => kernel_commutator(u),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModelSpec::E => "E".into(),
            ModelSpec::Estar => "E*".into(),
            ModelSpec::Q0 => "Q0".into(),
            ModelSpec::Q0star => "Q0*".into(),
            ModelSpec::FrakQ { a } => format!("FrakQ(a={a})"),
            ModelSpec::Rnu { nu } => format!("Rnu(nu={nu})"),
            ModelSpec::Y { a, nu } => format!("Y(a={a}, nu={nu})"),
            ModelSpec::L { u } => format!("L(U={:?}, nu={})", u.coeffs, u.nu),
            ModelSpec::S { u } => format!("S(U={:?}, nu={})", u.coeffs, u.nu),
            ModelSpec::Lconj { u } => format!("Lconj(U={:?}, nu={})", u.coeffs, u.nu),
            ModelSpec::Sconj { u } => format!("Sconj(U={:?}, nu={})", u.coeffs, u.nu),
            ModelSpec::Commutator { u } => format!("C(U={:?}, nu={})", u.coeffs, u.nu),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_is_an_involution() {
        let u = SymbolU::new(vec![Complex64::new(1.0, 2.0), Complex64::new(0.0, -0.5)], 0.3).unwrap();
        for spec in [ModelSpec::E, ModelSpec::Q0, ModelSpec::S { u: u.clone() }, ModelSpec::Commutator { u }] {
            let k = spec.kernel();
            assert_eq!(k.adjoint().adjoint(), k);
        }
    }

    #[test]
    fn q0_adjoint_kernel_is_wbar_minus_zbar() {
        let k = kernel_q0().adjoint();
        assert!(k.terms.contains(&KernelTerm { coef: ONE, z: Mono::ONE, w: Mono::zbar(1) }));
        assert!(k.terms.contains(&KernelTerm { coef: -ONE, z: Mono::zbar(1), w: Mono::ONE }));
    }

    #[test]
    fn s_for_quadratic_symbol_is_e() {
        let u = SymbolU::new(vec![Complex64::new(0.0, 0.0), ONE], 0.0).unwrap();
        assert_eq!(kernel_s(&u), kernel_e());
    }
}
