use std::hint::black_box;

use clgrp::forms::transform_to_canonical;
use clgrp::groups::spinor_norm;
use clgrp_bench::plus_type;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CASES: [(u64, u32, usize); 5] = [(3, 1, 16), (3, 1, 32), (3, 1, 64), (2, 1, 64), (5, 2, 32)];

fn name(p: u64, k: u32, d: usize) -> String {
    format!("GF({p}^{k}) d={d}")
}

fn spinor(c: &mut Criterion) {
    let mut group = c.benchmark_group("spinor_norm");
    for (p, k, d) in CASES {
        let fx = plus_type(p, k, d, 1);
        group.bench_function(BenchmarkId::from_parameter(name(p, k, d)), |b| {
            b.iter(|| spinor_norm(&fx.field, black_box(&fx.isometry), &fx.form).unwrap())
        });
    }
    group.finish();
}

fn coset_rep(c: &mut Criterion) {
    let mut group = c.benchmark_group("coset_rep");
    for (p, k, d) in CASES {
        let fx = plus_type(p, k, d, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        group.bench_function(BenchmarkId::from_parameter(name(p, k, d)), |b| {
            b.iter(|| fx.quotient.coset_rep(&fx.field, black_box(&fx.similarity), &mut rng).unwrap())
        });
    }
    group.finish();
}

fn transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("transform_to_canonical");
    group.sample_size(20);
    for (p, k, d) in CASES {
        let fx = plus_type(p, k, d, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        group.bench_function(BenchmarkId::from_parameter(name(p, k, d)), |b| {
            b.iter(|| transform_to_canonical(&fx.field, black_box(&fx.form), &mut rng).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, spinor, coset_rep, transform);
criterion_main!(benches);
