use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pdsdp_bench::{few_positive, random_symmetric};
use pdsdp_core::instances::{gen_mimo, MimoInstance};
use pdsdp_core::problem::estimate_operator_norm;
use pdsdp_core::symmat::{aproj_psd_detailed_with, proj_psd, TruncatedEigenSolver};
use std::hint::black_box;

fn projections(c: &mut Criterion) {
    let mut group = c.benchmark_group("proj_psd");
    group.sample_size(20);
    for n in [50, 150, 300] {
        let s = random_symmetric(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| b.iter(|| proj_psd(black_box(s)).unwrap()));
    }
    group.finish();
}

fn truncated(c: &mut Criterion) {
    let mut group = c.benchmark_group("aproj_psd");
    group.sample_size(20);
    for (n, r) in [(150, 2), (300, 2), (300, 8)] {
        let s = few_positive(n, r, 2);
        group.bench_with_input(BenchmarkId::new(format!("r{r}"), n), &s, |b, s| {
            b.iter(|| aproj_psd_detailed_with(&mut TruncatedEigenSolver::new(), black_box(s), r).unwrap())
        });
    }
    group.finish();
}

fn operator(c: &mut Criterion) {
    let prob = gen_mimo(&MimoInstance::random(100, 1e-3, 0)).unwrap();
    let x = random_symmetric(prob.n(), 3);
    let y = vec![0.5; prob.m() + prob.p()];
    c.bench_function("apply_m/mimo100", |b| b.iter(|| prob.apply_m(black_box(&x)).unwrap()));
    c.bench_function("apply_m_adjoint/mimo100", |b| b.iter(|| prob.apply_m_adjoint(black_box(&y)).unwrap()));
    c.bench_function("operator_norm/mimo100", |b| b.iter(|| estimate_operator_norm(black_box(&prob), 0).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().without_plots();
    targets = projections, truncated, operator
}
criterion_main!(benches);
