use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use commspec_bench::{basis, linear_log_symbol, synthetic_spectrum};
use commspec_core::asymptotics::{fit_tail, theorem_constant};
use commspec_core::moments::{MeasureConfig, MomentTable, Region};
use commspec_core::operators::{assemble_commutator_kernel, assemble_model, build_basis, sector_compress, ModelSpec};
use commspec_core::spectral::singular_values;
use num_complex::Complex64;

fn moments(c: &mut Criterion) {
    c.bench_function("monomial_inner/sector_uncached", |b| {
        b.iter(|| {
            let t = MomentTable::new(MeasureConfig::new(0.5).unwrap());
            for m in 0..8 {
                black_box(t.monomial_inner(m, 2, 3, m, 1, Region::Sector { j: 2, n: 4 }).unwrap());
            }
        })
    });
}

fn basis_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_basis");
    for d in [48u32, 192] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| build_basis(0.0, d, 8).unwrap()));
    }
    g.finish();
}

fn assembly(c: &mut Criterion) {
    let u = linear_log_symbol();
    let mut g = c.benchmark_group("assemble_commutator");
    g.sample_size(10);
    for d in [24u32, 48, 96] {
        let b = basis(d, 8).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(d), &b, |bench, b| bench.iter(|| assemble_commutator_kernel(&u, b)));
    }
    g.finish();
}

fn spectra(c: &mut Criterion) {
    let u = linear_log_symbol();
    let mut g = c.benchmark_group("singular_values");
    g.sample_size(10);
    for d in [24u32, 48] {
        let m = assemble_commutator_kernel(&u, &basis(d, 8).unwrap());
        g.bench_with_input(BenchmarkId::new("commutator", d), &m, |bench, m| bench.iter(|| singular_values(m).unwrap()));
    }
    let y = assemble_model(&ModelSpec::Y { a: Complex64::new(1.0, 0.0), nu: 0.0 }, &basis(24, 8).unwrap());
    g.bench_function("sector_compress_then_svd/24", |bench| {
        bench.iter(|| singular_values(&sector_compress(&y, 1, 4).unwrap()).unwrap())
    });
    g.finish();
}

fn asymptotics(c: &mut Criterion) {
    let s = synthetic_spectrum(2000);
    c.bench_function("fit_tail/1500_points", |b| b.iter(|| fit_tail(black_box(&s), 1.0, (200, 1700)).unwrap()));
    let u = linear_log_symbol();
    c.bench_function("theorem_constant/512", |b| b.iter(|| theorem_constant(black_box(&u), 0.0, 512).unwrap()));
}

criterion_group!(benches, moments, basis_build, assembly, spectra, asymptotics);
criterion_main!(benches);
