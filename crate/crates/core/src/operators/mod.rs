//! Galerkin matrices of the kernel operators on a truncated orthonormal basis.

pub mod assembly;
pub mod kernel;
pub mod matrix;
pub mod sector;
pub mod symbol;
pub mod truncated;

pub use assembly::{
    assemble_commutator_kernel, assemble_commutator_projection, assemble_kernel, assemble_model,
    multiplication_matrix, projection_matrix, region_gram,
};
pub use kernel::{KernelSymbol, KernelTerm, ModelSpec, Mono};
pub use matrix::{Coupling, OperatorMatrix};
pub use sector::{compress_with, partition, region_compress, sector_compress, sector_model};
pub use symbol::{remainder_coeffs, SymbolU};
pub use truncated::{build_basis, BasisMeta, BasisSet};
