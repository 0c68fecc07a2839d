//! Sequential against rayon-parallel execution of the verification sweeps.
//!
//! Build with `--no-default-features` to see the parallel arm collapse onto the
//! sequential one.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use subspace_lab::par::Execution;
use subspace_lab::verify::{self, CriterionReport, VerifyConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn config(exec: Execution, u_max: usize) -> VerifyConfig {
    VerifyConfig {
        u_max,
        exec,
        ..VerifyConfig::default()
    }
}

fn sweep(c: &mut Criterion, name: &str, u_max: usize, run: fn(&VerifyConfig) -> CriterionReport) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10).measurement_time(Duration::from_secs(8));
    for (label, exec) in MODES {
        let cfg = config(exec, u_max);
        group.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
            b.iter(|| black_box(run(cfg)).passed)
        });
    }
    group.finish();
}

fn random_systems(c: &mut Criterion) {
    sweep(c, "random_systems", 9, verify::criterion_1);
}

fn brenner_catalogue(c: &mut Criterion) {
    sweep(c, "brenner_catalogue", 9, verify::criterion_3);
}

fn functor_sweep(c: &mut Criterion) {
    sweep(c, "functor_sweep", 9, verify::criterion_6);
}

fn indecomposability(c: &mut Criterion) {
    sweep(c, "indecomposability", 9, verify::criterion_8);
}

fn everything(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_all");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for (label, exec) in MODES {
        let cfg = config(exec, 7);
        group.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
            b.iter(|| black_box(verify::verify_all(cfg)))
        });
    }
    group.finish();
}

criterion_group!(
    sweeps,
    random_systems,
    brenner_catalogue,
    functor_sweep,
    indecomposability,
    everything
);
criterion_main!(sweeps);
