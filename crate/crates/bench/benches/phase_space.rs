use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qpl_core::weyl_wigner::{structure_constants, wigner_function, ww_basis};
use qpl_core::Operator;

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("ww_basis");
    for n in [5usize, 16, 32] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| ww_basis(black_box(n)).unwrap()));
    }
    g.finish();
}

fn wigner(c: &mut Criterion) {
    let mut g = c.benchmark_group("wigner_function");
    for n in [5usize, 16, 32] {
        let b = ww_basis(n).unwrap();
        let rho = Operator::identity(n).scale((1.0 / n as f64).into());
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, _| {
            bch.iter(|| wigner_function(black_box(&rho), &b).unwrap())
        });
    }
    g.finish();
}

fn structure(c: &mut Criterion) {
    let mut g = c.benchmark_group("structure_constants");
    g.sample_size(20);
    for n in [3usize, 5, 7] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| structure_constants(black_box(n)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, basis, wigner, structure);
criterion_main!(benches);
