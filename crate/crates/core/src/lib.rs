//! Galerkin laboratory for commutators of multiplication operators with the
//! harmonic Bergman projection on L²(𝔻, dA_α).

pub mod asymptotics;
pub mod basis;
pub mod error;
pub mod moments;
pub mod operators;
pub mod quadrature;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use moments::{MeasureConfig, MomentTable, Region};
pub use operators::{BasisSet, ModelSpec, OperatorMatrix, SymbolU};
pub use spectral::SingularSpectrum;
pub use asymptotics::{TailFit, TheoremReport};

/// Caps the worker threads used by assembly (rayon) and dense linear algebra
/// (faer). `0` keeps the defaults. Must run before any parallel work.
pub fn configure_threads(threads: usize) -> Result<()> {
    if threads == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| error::Error::Degenerate(format!("thread pool: {e}")))?;
    faer::set_global_parallelism(if threads == 1 { faer::Par::Seq } else { faer::Par::rayon(threads) });
    Ok(())
}
