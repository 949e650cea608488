//! Seeded invariant suites behind `commspec verify`. Each check samples its
//! cases from one ChaCha8 stream, so a seed fixes every number in the report.

use std::sync::Arc;

use commspec_core::asymptotics::{fit_tail, su_bound_profile, theorem_constant};
use commspec_core::basis::{b_closed, b_via_sum, e_fn, h_unnormalized, t_coeff, varphi_fn, LogPolynomial};
use commspec_core::moments::{quad_oracle_inner, MeasureConfig, MomentTable, Region};
use commspec_core::operators::{
    assemble_commutator_kernel, assemble_commutator_projection, assemble_model, build_basis, compress_with, partition,
    region_gram, BasisSet, ModelSpec, OperatorMatrix, SymbolU,
};
use commspec_core::spectral::{kyfan_random_suite, match_multisets, schmidt_multiset, singular_values, PredictedOperator};
use commspec_core::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const ALPHAS: [f64; 4] = [0.0, 0.5, 1.0, 2.5];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn rel(x: f64, y: f64) -> f64 {
    if y == 0.0 {
        x.abs()
    } else {
        (x - y).abs() / y.abs()
    }
}

fn complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

fn alpha(rng: &mut ChaCha8Rng) -> f64 {
    ALPHAS[rng.random_range(0..ALPHAS.len())]
}

fn symbol(rng: &mut ChaCha8Rng) -> Result<SymbolU> {
    let degree = rng.random_range(1..=3);
    let coeffs = (0..degree).map(|_| complex(rng, 1.0)).collect();
    let nu = if rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.0..1.5) };
    SymbolU::new(coeffs, nu)
}

fn small_basis(rng: &mut ChaCha8Rng) -> Result<Arc<BasisSet>> {
    Ok(Arc::new(build_basis(alpha(rng), rng.random_range(6..=12), rng.random_range(2..=5))?))
}

fn region(rng: &mut ChaCha8Rng) -> Region {
    let parts = rng.random_range(1..=8);
    match rng.random_range(0..4) {
        0 => Region::FullDisk,
        1 => Region::InnerDisk(parts),
        2 => Region::Annulus(parts),
        _ => Region::Sector { j: rng.random_range(1..=parts), n: parts },
    }
}

fn moment_oracle(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..40 {
        let a = alpha(rng);
        let table = MomentTable::new(MeasureConfig::new(a)?);
        let idx = (rng.random_range(0..9), rng.random_range(0..9), rng.random_range(0..9), rng.random_range(0..9));
        let (lp, r) = (rng.random_range(0..3), region(rng));
        let closed = table.monomial_inner(idx.0, idx.1, idx.2, idx.3, lp, r)?;
        let oracle = quad_oracle_inner(a, idx, lp, r, 40)?;
        let s = (idx.0 + idx.1 + idx.2 + idx.3) as f64 / 2.0;
        let scale = closed.norm().max(table.radial_moment(s, lp, r)?.abs());
        worst = worst.max((closed - oracle).norm() / scale);
    }
    Ok((40, worst))
}

fn hermitian(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let table = MomentTable::new(MeasureConfig::new(alpha(rng))?);
        let (m, n, p, q) = (rng.random_range(0..12), rng.random_range(0..12), rng.random_range(0..12), rng.random_range(0..12));
        let (lp, r) = (rng.random_range(0..3), region(rng));
        let x = table.monomial_inner(m, n, p, q, lp, r)?;
        let y = table.monomial_inner(p, q, m, n, lp, r)?;
        worst = worst.max((x - y.conj()).norm());
    }
    Ok((100, worst))
}

fn b_identity(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (n, a) = (rng.random_range(2..=1000), alpha(rng));
        worst = worst.max(rel(b_via_sum(n, a)?, b_closed(n, a)?));
    }
    Ok((200, worst))
}

fn t_norm(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let (n, a, coef, nu) = (rng.random_range(0..=40), alpha(rng), complex(rng, 2.0), rng.random_range(0.0..2.0));
        let table = MomentTable::new(MeasureConfig::new(a)?);
        let h = h_unnormalized(n, a, coef, nu);
        worst = worst.max(rel(t_coeff(n, a, coef, nu).powi(2), h.inner_closed(&h, &table)?.re));
    }
    Ok((30, worst))
}

fn orthonormal(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let a = alpha(rng);
    let mut fam: Vec<LogPolynomial> = (0..=12).map(|n| e_fn(n, a)).collect();
    fam.extend((1..=12).map(|n| e_fn(n, a).conj()));
    for n in 2..=12 {
        let f = varphi_fn(n, a)?;
        // varphi_2 is real-valued and would appear twice
        if n > 2 {
            fam.push(f.conj());
        }
        fam.push(f);
    }
    let mut worst: f64 = 0.0;
    for (i, f) in fam.iter().enumerate() {
        for (j, g) in fam.iter().enumerate().skip(i) {
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((f.inner(g, a) - expect).norm());
        }
    }
    Ok((fam.len(), worst))
}

fn paths_and_skew(rng: &mut ChaCha8Rng) -> Result<((usize, f64), (usize, f64), (usize, f64))> {
    let one = Complex64::new(1.0, 0.0);
    let (mut paths, mut skew, mut leak) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..6 {
        let (u, b) = (symbol(rng)?, small_basis(rng)?);
        let k = assemble_commutator_kernel(&u, &b);
        paths = paths.max(k.max_abs_diff(&assemble_commutator_projection(&u, &b)?)?);
        skew = skew.max(k.linear_combination(&[(one, &k), (one, &k.adjoint())], "")?.max_abs());
        let g = u.degree() as i64;
        for q in 0..k.dim() {
            for p in 0..k.dim() {
                if (b.locate(p).0 - b.locate(q).0).abs() > g {
                    leak = leak.max(k.get(p, q).norm());
                }
            }
        }
    }
    Ok(((6, paths), (6, skew), (6, leak)))
}

fn partition_identity(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let b = small_basis(rng)?;
        let y = assemble_model(&ModelSpec::Y { a: complex(rng, 1.0), nu: rng.random_range(0.0..1.0) }, &b);
        let grams: Vec<OperatorMatrix> =
            partition(rng.random_range(1..=5)).into_iter().map(|r| region_gram(r, &b)).collect::<Result<_>>()?;
        let mut total = OperatorMatrix::zeros(b.clone(), "sum");
        for gl in &grams {
            for gr in &grams {
                total.entries += &compress_with(&y, gl, gr, String::new())?.entries;
            }
        }
        worst = worst.max(total.max_abs_diff(&y)?);
    }
    Ok((3, worst))
}

fn exact_spectrum(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let d = 16usize;
    let mut a = complex(rng, 1.0);
    if a.norm() < 0.1 {
        a += 0.5;
    }
    let op = PredictedOperator::FrakQ { a };
    let b = Arc::new(build_basis(alpha(rng), d as u32, 8)?);
    let s = singular_values(&assemble_model(&op.model(), &b))?;
    let pred = schmidt_multiset(op, b.meta().alpha, 2 * d)?;
    let count = 2 * (d - 4);
    Ok((count, match_multisets(&s.values, &pred.values(), count)?.max_abs_error))
}

fn synthetic_fit(rng: &mut ChaCha8Rng) -> Result<((usize, f64), (usize, f64))> {
    let (mut worst, mut worst_c) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let (c, d, p) = (rng.random_range(0.1..10.0), rng.random_range(-20.0..20.0), [1.0, 1.5, 2.0][rng.random_range(0..3)]);
        let s: Vec<f64> = (1..=300).map(|n| c / (n as f64).powf(p) + d / (n as f64).powf(p + 1.0)).collect();
        let fit = fit_tail(&s, p, (20, 250))?;
        worst = worst.max(fit.max_residual);
        worst_c = worst_c.max(rel(fit.estimate, c));
    }
    Ok(((10, worst), (10, worst_c)))
}

fn lambert_round_trip(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let ps: Vec<f64> = (0..20).map(|_| rng.random_range(3.0..200.0)).collect();
    let profile = su_bound_profile(rng.random_range(1.5..20.0), &ps)?;
    Ok((ps.len(), profile.iter().map(|b| b.round_trip_error).fold(0.0, f64::max)))
}

fn constant_scaling(rng: &mut ChaCha8Rng) -> Result<(usize, f64)> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let (u, a, lambda) = (symbol(rng)?, alpha(rng), rng.random_range(0.1..10.0));
        let base = theorem_constant(&u, a, 256)?;
        let scaled = theorem_constant(&u.scaled(lambda), a, 256)?;
        let turned = theorem_constant(&u.rotated(rng.random_range(0.0..std::f64::consts::TAU)), a, 256)?;
        worst = worst.max(rel(scaled, lambda * base)).max(rel(turned, base));
    }
    Ok((10, worst))
}

/// Runs every suite; the checks come back in a fixed order.
pub fn run(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |name: &'static str, (cases, max_error): (usize, f64), tolerance: f64| {
        out.push(Check { name, cases, max_error, tolerance, pass: max_error <= tolerance });
    };
    push("moment_closed_form_vs_quadrature", moment_oracle(&mut rng)?, 1e-9);
    push("moment_hermitian_symmetry", hermitian(&mut rng)?, 0.0);
    push("b_closed_vs_four_term_sum", b_identity(&mut rng)?, 1e-12);
    push("t_squared_vs_h_vector_norm", t_norm(&mut rng)?, 1e-10);
    push("e_varphi_orthonormality", orthonormal(&mut rng)?, 1e-10);
    let (paths, skew, leak) = paths_and_skew(&mut rng)?;
    push("commutator_kernel_vs_projection_path", paths, 1e-12);
    push("commutator_skew_adjoint", skew, 1e-12);
    push("frequency_coupling_law", leak, 0.0);
    push("region_partition_identity", partition_identity(&mut rng)?, 1e-11);
    push("frakq_exact_spectrum", exact_spectrum(&mut rng)?, 1e-9);
    let suite = kyfan_random_suite(20, 8, rng.random())?;
    push("ky_fan_weyl_inequalities", (suite.trials, suite.worst()), 1e-12);
    let (residual, constant) = synthetic_fit(&mut rng)?;
    push("tail_fit_residual_on_model_data", residual, 1e-10);
    push("tail_fit_constant_on_model_data", constant, 1e-6);
    push("lambert_round_trip", lambert_round_trip(&mut rng)?, 1e-10);
    push("constant_scaling_and_rotation", constant_scaling(&mut rng)?, 1e-12);
    Ok(out)
}
