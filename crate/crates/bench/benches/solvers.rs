use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pdsdp_core::instances::{gen_equipartition, gen_mimo, toy_suite, Graph, MimoInstance};
use pdsdp_core::{solve_lr_pd_sdp, solve_pd_sdp, SolverConfig};
use std::hint::black_box;

fn small_solves(c: &mut Criterion) {
    let config = SolverConfig {
        log_every: 0,
        ..SolverConfig::default()
    };
    let mut problems = toy_suite();
    problems.push(gen_mimo(&MimoInstance::random(12, 0.0, 0)).unwrap());
    problems.push(gen_equipartition(&Graph::erdos_renyi(10, 0.5, 0).unwrap()).unwrap());

    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for prob in &problems {
        group.bench_with_input(BenchmarkId::new("pd", prob.name()), prob, |b, p| {
            b.iter(|| solve_pd_sdp(black_box(p), &config).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("lr", prob.name()), prob, |b, p| {
            b.iter(|| solve_lr_pd_sdp(black_box(p), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().without_plots();
    targets = small_solves
}
criterion_main!(benches);
