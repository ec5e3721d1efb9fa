//! Sequential against parallel execution on the heavier batteries.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gpdcalc::battery;
use gpdcalc::fpgroup::RewriteBound;
use gpdcalc::par::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn unit_injectivity(c: &mut Criterion) {
    let mut g = c.benchmark_group("unit_injectivity");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| black_box(battery::unit_injectivity(e, 40, 7).unwrap())));
    }
    g.finish();
}

fn induced_xmods(c: &mut Criterion) {
    let bound = RewriteBound::default();
    let mut g = c.benchmark_group("induced_xmods");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| black_box(battery::induced_xmods(e, &bound).unwrap())));
    }
    g.finish();
}

fn reconstruction(c: &mut Criterion) {
    let mut g = c.benchmark_group("reconstruction");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| black_box(battery::reconstruction(e).unwrap())));
    }
    g.finish();
}

fn induced_module_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("induced_module_oracle");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| black_box(battery::induced_module_oracle(e).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, unit_injectivity, induced_module_oracle, reconstruction, induced_xmods);
criterion_main!(benches);
