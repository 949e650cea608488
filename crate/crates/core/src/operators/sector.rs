//! Compressions by indicators of the disk partition. With G_R the Galerkin
//! matrix of multiplication by χ_R, the compression χ_L T χ_R becomes
//! G_L A G_R; the regions sum to the disk, so Σ_L Σ_R G_L A G_R = A.

use std::sync::Arc;

use super::assembly::{assemble_model, region_gram};
use super::kernel::ModelSpec;
use super::matrix::OperatorMatrix;
use super::truncated::BasisSet;
use crate::error::{domain, Error, Result};
use crate::moments::Region;

/// G_L A G_R.
pub fn region_compress(m: &OperatorMatrix, left: Region, right: Region) -> Result<OperatorMatrix> {
    let gl = region_gram(left, &m.basis)?;
    let gr = if left == right { gl.clone() } else { region_gram(right, &m.basis)? };
    compress_with(m, &gl, &gr, format!("chi[{left:?}] {} chi[{right:?}]", m.label))
}

/// G_L A G_R for precomputed region Grams.
pub fn compress_with(m: &OperatorMatrix, gl: &OperatorMatrix, gr: &OperatorMatrix, label: String) -> Result<OperatorMatrix> {
    if gl.dim() != m.dim() || gr.dim() != m.dim() {
        return Err(Error::Dimension(format!("gram {} / {} vs operator {}", gl.dim(), gr.dim(), m.dim())));
    }
    let entries = &gl.entries * &m.entries * &gr.entries;
    Ok(OperatorMatrix::from_entries(entries, m.basis.clone(), label))
}

/// M_j T M_j for the j-th of N sectors of the outer annulus.
pub fn sector_compress(m: &OperatorMatrix, j: u32, n: u32) -> Result<OperatorMatrix> {
    if n == 0 || j == 0 || j > n {
        return Err(domain("sector_compress", format!("need 1 <= j <= N, got j={j}, N={n}")));
    }
    region_compress(m, Region::Sector { j, n }, Region::Sector { j, n })
}

/// Assembles a named operator and compresses it to sector j of N.
pub fn sector_model(spec: &ModelSpec, j: u32, n: u32, basis: &Arc<BasisSet>) -> Result<OperatorMatrix> {
    sector_compress(&assemble_model(spec, basis), j, n)
}

/// The partition regions for N sectors: the inner disk, then sectors 1..N.
pub fn partition(n: u32) -> Vec<Region> {
    std::iter::once(Region::InnerDisk(n)).chain((1..=n).map(|j| Region::Sector { j, n })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::truncated::build_basis;
    use num_complex::Complex64;

    #[test]
    fn partition_reassembles_operator() {
        let b = Arc::new(build_basis(0.0, 6, 3).unwrap());
        let y = assemble_model(&ModelSpec::Y { a: Complex64::new(1.0, 0.5), nu: 0.5 }, &b);
        let n = 3;
        let grams: Vec<_> = partition(n).into_iter().map(|r| region_gram(r, &b).unwrap()).collect();
        let mut total = OperatorMatrix::zeros(b.clone(), "sum");
        for gl in &grams {
            for gr in &grams {
                total.entries += &compress_with(&y, gl, gr, String::new()).unwrap().entries;
            }
        }
        assert!(total.max_abs_diff(&y).unwrap() < 1e-12);
    }

    #[test]
    fn single_sector_is_annulus() {
        let b = Arc::new(build_basis(0.5, 5, 2).unwrap());
        let q = assemble_model(&ModelSpec::Q0, &b);
        let s = sector_compress(&q, 1, 1).unwrap();
        let a = region_compress(&q, Region::Annulus(1), Region::Annulus(1)).unwrap();
        assert!(s.max_abs_diff(&a).unwrap() < 1e-13);
        assert!(sector_compress(&q, 0, 3).is_err());
        assert!(sector_compress(&q, 4, 3).is_err());
        let zero = OperatorMatrix::zeros(b, "0");
        assert_eq!(sector_compress(&zero, 2, 3).unwrap().max_abs(), 0.0);
    }
}
