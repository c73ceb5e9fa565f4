use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use supercyclic::verifier::{
    hunt_counterexample, verify_degree_theorem, verify_k_cyclic, CampaignOptions, HuntConfig, HuntMode,
};

fn runners() -> [(&'static str, CampaignOptions); 2] {
    [("sequential", CampaignOptions::sequential()), ("parallel", CampaignOptions::default())]
}

fn k_cyclic(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify-kcyclic-4-5-4");
    group.sample_size(20);
    for (name, opts) in runners() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| black_box(verify_k_cyclic(4, 5, 4, opts).unwrap()))
        });
    }
    group.finish();
}

fn degree(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify-degree-4-6");
    group.sample_size(10);
    for (name, opts) in runners() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| black_box(verify_degree_theorem(4, 6, opts).unwrap()))
        });
    }
    group.finish();
}

fn random_hunt(c: &mut Criterion) {
    let mut group = c.benchmark_group("hunt-random-7-9");
    group.sample_size(10);
    let cfg = HuntConfig {
        nx: 7,
        ny_max: 9,
        mode: HuntMode::Random { seed: 1, trials: 2000 },
    };
    for (name, opts) in runners() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| black_box(hunt_counterexample(cfg, opts).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, k_cyclic, degree, random_hunt);
criterion_main!(benches);
