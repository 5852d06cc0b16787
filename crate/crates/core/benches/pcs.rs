//! Parallel vs sequential replication engines, plus the asymptotic summary
//! on its own.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use lxdisc::{simulate_pcs, simulate_pcs_sequential, Model, QuadratureSpec};

fn bench_pcs_engines(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    let truth = Model::lindley(0.78).unwrap();
    let reps = 2_000;

    let mut group = c.benchmark_group("pcs_simulation");
    group.sample_size(10);
    for n in [20usize, 100] {
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| simulate_pcs_sequential(black_box(&truth), n, reps, 42, &spec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| simulate_pcs(black_box(&truth), n, reps, 42, &spec).unwrap())
        });
    }
    group.finish();
}

fn bench_asymptotic_summary(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    let truth = Model::xgamma(1.26).unwrap();
    c.bench_function("asymptotic_summary", |b| {
        b.iter(|| lxdisc::asymptotic_summary(black_box(&truth), &spec).unwrap())
    });
}

criterion_group!(benches, bench_pcs_engines, bench_asymptotic_summary);
criterion_main!(benches);
