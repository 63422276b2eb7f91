//! Throughput of the Monte Carlo kernels, parallel driver against the
//! sequential fallback. Build with `--no-default-features` to measure the
//! sequential-only configuration under the same names.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use bornmc::pipeline::{run_measurement, run_measurement_seq, MeasurementConfig};
use bornmc::selectivity::{
    selectivity_monte_carlo, selectivity_monte_carlo_seq, GumbelParams, SelectivityQuery,
};
use bornmc::state::RadialProfile;
use bornmc::volume::{volume_monte_carlo, volume_monte_carlo_seq, EquivalenceClassSpec};

fn bench_volume(c: &mut Criterion) {
    let profile = RadialProfile::normalized(vec![1.0, 1.0, 1.0]).unwrap();
    let spec = EquivalenceClassSpec::new(profile, 0.05).unwrap();
    let trials = 20_000;
    let mut group = c.benchmark_group("volume_mc_n3");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| volume_monte_carlo(black_box(&spec), trials, 42).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| volume_monte_carlo_seq(black_box(&spec), trials, 42).unwrap())
    });
    group.finish();
}

fn bench_selectivity(c: &mut Criterion) {
    let query =
        SelectivityQuery::new(100, 1.0, GumbelParams::new(0.0, 1.0).unwrap()).unwrap();
    let trials = 20_000;
    let mut group = c.benchmark_group("selectivity_mc_n100");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| selectivity_monte_carlo(black_box(&query), trials, 42).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| selectivity_monte_carlo_seq(black_box(&query), trials, 42).unwrap())
    });
    group.finish();
}

fn bench_measurement(c: &mut Criterion) {
    let asq: f64 = 0.3;
    let config = MeasurementConfig::new(
        asq.sqrt(),
        (1.0 - asq).sqrt(),
        1000,
        GumbelParams::new(0.0, 1.0).unwrap(),
        0.5,
        2_000,
        42,
    )
    .unwrap();
    let mut group = c.benchmark_group("measurement_n1000");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter(|| run_measurement(black_box(&config)).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| run_measurement_seq(black_box(&config)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_volume, bench_selectivity, bench_measurement);
criterion_main!(benches);
