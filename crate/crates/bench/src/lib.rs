//! Shared fixtures for the criterion benchmarks in `benches/`.

use std::sync::Arc;

use commspec_core::operators::{build_basis, BasisSet, SymbolU};
use commspec_core::Result;
use num_complex::Complex64;

/// The symbol of the main experiment: U(z) = z with unit log mass.
pub fn linear_log_symbol() -> SymbolU {
    SymbolU::new(vec![Complex64::new(1.0, 0.0)], 1.0).expect("valid symbol")
}

/// Unweighted basis of the given size.
pub fn basis(degree: u32, r0: u32) -> Result<Arc<BasisSet>> {
    Ok(Arc::new(build_basis(0.0, degree, r0)?))
}

/// A synthetic 1/n spectrum with a first-order correction, for fitting benches.
pub fn synthetic_spectrum(len: usize) -> Vec<f64> {
    (1..=len).map(|n| 3.0 / n as f64 + 5.0 / (n * n) as f64).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_are_consistent() {
        let b = super::basis(8, 3).unwrap();
        assert_eq!(b.meta().degree, 8);
        let s = super::synthetic_spectrum(50);
        assert!(s.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(super::linear_log_symbol().nu, 1.0);
    }
}
