//! Galerkin assembly. Every operator here is a finite sum of terms
//! c·M_a ℙ M_b, and ℙ only reaches the harmonic monomials, so an entry is
//! c·Σ_m ⟨b β_q, ê_m⟩⟨a ê_m, β_p⟩ with a single surviving frequency m. The
//! kernel series is therefore summed exactly, with no truncation order.

use std::collections::BTreeSet;
use std::sync::Arc;

use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;

use super::kernel::{kernel_commutator, symbol_terms, KernelSymbol, ModelSpec, Mono};
use super::matrix::{Coupling, OperatorMatrix};
use super::symbol::SymbolU;
use super::truncated::{BasisSet, RadialFamily};
use crate::error::Result;
use crate::moments::{angular_factor, full_moment, Region};
use crate::quadrature::{radial_rule, RuleRequest};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn request(s: f64, poly: usize, logpow: u32) -> RuleRequest {
    RuleRequest { degree: s.ceil() as usize + poly + 4, poly_degree: poly + 2 * logpow as usize, s_min: s }
}

/// ∫_{lo}^{hi} t^s (ln t)^λ p_j(t) dμ_α for j < len.
fn radial_vector(alpha: f64, fam: &RadialFamily, len: usize, s: f64, logpow: u32, range: (f64, f64)) -> Vec<f64> {
    let rule = radial_rule(alpha, range.0, range.1, request(s, len.saturating_sub(1), logpow));
    let mut out = vec![0.0; len];
    let mut vals = vec![0.0; len];
    for l in 0..rule.len() {
        let lt = rule.ln_t[l];
        let w = rule.w[l] * (s * lt).exp() * lt.powi(logpow as i32);
        if w == 0.0 {
            continue;
        }
        fam.eval_into(rule.t[l], &mut vals);
        for (o, v) in out.iter_mut().zip(&vals) {
            *o += w * v;
        }
    }
    out
}

/// ∫ t^s (ln t)^λ p^a_i(t) p^b_j(t) dμ_α, row-major la × lb.
#[allow(clippy::too_many_arguments)]
fn radial_block(
    alpha: f64,
    fa: &RadialFamily,
    la: usize,
    fb: &RadialFamily,
    lb: usize,
    s: f64,
    logpow: u32,
    range: (f64, f64),
) -> Vec<f64> {
    let rule = radial_rule(alpha, range.0, range.1, request(s, la + lb - 2, logpow));
    let mut out = vec![0.0; la * lb];
    let (mut va, mut vb) = (vec![0.0; la], vec![0.0; lb]);
    for l in 0..rule.len() {
        let lt = rule.ln_t[l];
        let w = rule.w[l] * (s * lt).exp() * lt.powi(logpow as i32);
        if w == 0.0 {
            continue;
        }
        fa.eval_into(rule.t[l], &mut va);
        fb.eval_into(rule.t[l], &mut vb);
        for (i, a) in va.iter().enumerate() {
            let wa = w * a;
            for (o, b) in out[i * lb..(i + 1) * lb].iter_mut().zip(&vb) {
                *o += wa * b;
            }
        }
    }
    out
}

fn kappa(k: i64) -> u32 {
    k.unsigned_abs() as u32
}

/// Contributions to the columns of one source class: (target offset, rows, block).
type ColumnBlocks = Vec<(usize, usize, Vec<Complex64>)>;

/// Kernel-path assembly of Σ c·M_{m_z} ℙ M_{m_w}.
pub fn assemble_kernel(kernel: &KernelSymbol, basis: &Arc<BasisSet>, label: impl Into<String>) -> OperatorMatrix {
    let alpha = basis.alpha;
    let d = basis.degree as i64;
    let full = (0.0, 1.0);
    let per_class: Vec<(ColumnBlocks, BTreeSet<i64>)> = basis
        .classes()
        .par_iter()
        .map(|src| {
            let mut blocks: ColumnBlocks = Vec::new();
            let mut targets = BTreeSet::new();
            let fq = basis.family(kappa(src.k));
            for term in &kernel.terms {
                let mid = src.k + term.w.shift();
                let k_dst = mid + term.z.shift();
                if k_dst.abs() > d {
                    continue;
                }
                let dst = basis.class(k_dst).expect("class in range");
                let fp = basis.family(kappa(k_dst));
                let harmonic = 1.0 / full_moment(alpha, mid.unsigned_abs() as f64).sqrt();
                let m = mid.unsigned_abs() as f64;
                let s_in = (term.w.hol + term.w.anti) as f64 / 2.0 + (kappa(src.k) as f64 + m) / 2.0;
                let s_out = (term.z.hol + term.z.anti) as f64 / 2.0 + (m + kappa(k_dst) as f64) / 2.0;
                let a = radial_vector(alpha, fq, src.len, s_in, term.w.log, full);
                let b = radial_vector(alpha, fp, dst.len, s_out, term.z.log, full);
                let mut block = vec![ZERO; dst.len * src.len];
                for (i, bi) in b.iter().enumerate() {
                    for (j, aj) in a.iter().enumerate() {
                        block[i * src.len + j] = term.coef * (bi * aj * harmonic * harmonic);
                    }
                }
                targets.insert(k_dst);
                blocks.push((dst.offset, dst.len, block));
            }
            (blocks, targets)
        })
        .collect();
    let n = basis.dim();
    let mut entries = Mat::<Complex64>::zeros(n, n);
    let mut couplings = Vec::new();
    for (src, (blocks, targets)) in basis.classes().iter().zip(per_class) {
        for (row0, rows, block) in blocks {
            for i in 0..rows {
                for j in 0..src.len {
                    entries[(row0 + i, src.offset + j)] += block[i * src.len + j];
                }
            }
        }
        if !targets.is_empty() {
            couplings.push(Coupling { source: src.k, targets: targets.into_iter().collect() });
        }
    }
    OperatorMatrix { entries, basis: basis.clone(), label: label.into(), couplings }
}

/// Galerkin matrix of multiplication by Σ c·m restricted to a region:
/// entries ⟨χ_region Σ c m β_q, β_p⟩.
pub fn multiplication_matrix(
    terms: &[(Complex64, Mono)],
    region: Region,
    basis: &Arc<BasisSet>,
    label: impl Into<String>,
) -> Result<OperatorMatrix> {
    region.validate()?;
    let alpha = basis.alpha;
    let range = region.t_range();
    let classes = basis.classes();
    let per_class: Vec<(ColumnBlocks, BTreeSet<i64>)> = classes
        .par_iter()
        .map(|src| {
            let mut blocks: ColumnBlocks = Vec::new();
            let mut targets = BTreeSet::new();
            let fq = basis.family(kappa(src.k));
            for dst in classes {
                let fp = basis.family(kappa(dst.k));
                let mut block = vec![ZERO; dst.len * src.len];
                let mut touched = false;
                for (coef, mono) in terms {
                    let ang = angular_factor(src.k + mono.shift() - dst.k, region);
                    if ang == ZERO {
                        continue;
                    }
                    let s = (mono.hol + mono.anti + kappa(src.k) + kappa(dst.k)) as f64 / 2.0;
                    let radial = radial_block(alpha, fp, dst.len, fq, src.len, s, mono.log, range);
                    let c = coef * ang;
                    for (b, r) in block.iter_mut().zip(&radial) {
                        *b += c * r;
                    }
                    touched = true;
                }
                if touched {
                    targets.insert(dst.k);
                    blocks.push((dst.offset, dst.len, block));
                }
            }
            (blocks, targets)
        })
        .collect();
    let n = basis.dim();
    let mut entries = Mat::<Complex64>::zeros(n, n);
    let mut couplings = Vec::new();
    for (src, (blocks, targets)) in classes.iter().zip(per_class) {
        for (row0, rows, block) in blocks {
            for i in 0..rows {
                for j in 0..src.len {
                    entries[(row0 + i, src.offset + j)] = block[i * src.len + j];
                }
            }
        }
        if !targets.is_empty() {
            couplings.push(Coupling { source: src.k, targets: targets.into_iter().collect() });
        }
    }
    Ok(OperatorMatrix { entries, basis: basis.clone(), label: label.into(), couplings })
}

/// Galerkin matrix of multiplication by the indicator of a region.
pub fn region_gram(region: Region, basis: &Arc<BasisSet>) -> Result<OperatorMatrix> {
    multiplication_matrix(&[(Complex64::new(1.0, 0.0), Mono::ONE)], region, basis, format!("chi[{region:?}]"))
}

/// ℙ_α on the truncated space, assembled through the kernel path.
pub fn projection_matrix(basis: &Arc<BasisSet>) -> OperatorMatrix {
    let mut k = KernelSymbol::default();
    k.push(Complex64::new(1.0, 0.0), Mono::ONE, Mono::ONE);
    assemble_kernel(&k, basis, "P")
}

pub fn assemble_model(spec: &ModelSpec, basis: &Arc<BasisSet>) -> OperatorMatrix {
    assemble_kernel(&spec.kernel(), basis, spec.label())
}

/// 𝒞_u through its integral kernel (u(z) − u(w)) K_α(z, w).
pub fn assemble_commutator_kernel(u: &SymbolU, basis: &Arc<BasisSet>) -> OperatorMatrix {
    assemble_kernel(&kernel_commutator(u), basis, commutator_label(u))
}

/// 𝒞_u = M_u ℙ − ℙ M_u through the multiplication matrix of u: in this basis
/// ℙ keeps exactly the harmonic members, so A[p,q] = ⟨uβ_q, β_p⟩([q harmonic] − [p harmonic]).
pub fn assemble_commutator_projection(u: &SymbolU, basis: &Arc<BasisSet>) -> Result<OperatorMatrix> {
    let mut m = multiplication_matrix(&symbol_terms(u), Region::FullDisk, basis, commutator_label(u))?;
    let mask = basis.harmonic_mask();
    let n = basis.dim();
    for q in 0..n {
        for p in 0..n {
            let w = (mask[q] as i32 - mask[p] as i32) as f64;
            m.entries[(p, q)] *= w;
        }
    }
    m.couplings = super::matrix::scan_couplings(&m.entries, basis);
    Ok(m)
}

fn commutator_label(u: &SymbolU) -> String {
    ModelSpec::Commutator { u: u.clone() }.label()
}
