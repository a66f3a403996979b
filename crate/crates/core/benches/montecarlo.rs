//! Parallel vs. sequential schedules for the Monte Carlo drivers.
//!
//! With the default `parallel` feature the dispatching entry points fan the
//! per-trial streams out over rayon; the `_seq` twins always run in order.
//! Both produce identical tallies, so the only thing measured here is the
//! schedule. Build with `--no-default-features` to confirm the dispatching
//! path collapses onto the sequential one.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use twisted_dihedral::field::FieldParams;
use twisted_dihedral::{
    attack_success_rate, attack_success_rate_seq, estimate_prob_invertible,
    estimate_prob_invertible_seq,
};

const SEED: u64 = 0xD1ED2A1;

fn bench_attack_rate(c: &mut Criterion) {
    let mut group = c.benchmark_group("attack_success_rate_19_19_x256");
    group.sample_size(10);
    group.bench_function("dispatch", |b| {
        b.iter(|| attack_success_rate(black_box(19), black_box(19), 256, SEED).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| attack_success_rate_seq(black_box(19), black_box(19), 256, SEED).unwrap())
    });
    // same tally either way
    let par = attack_success_rate(19, 19, 256, SEED).unwrap();
    let seq = attack_success_rate_seq(19, 19, 256, SEED).unwrap();
    assert_eq!(par, seq);
    group.finish();
}

fn bench_circulant_estimate(c: &mut Criterion) {
    let field = FieldParams::new(19).unwrap();
    let mut group = c.benchmark_group("circulant_invertibility_19_19_x4096");
    group.sample_size(10);
    group.bench_function("dispatch", |b| {
        b.iter(|| estimate_prob_invertible(black_box(field), 19, 4096, SEED).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| estimate_prob_invertible_seq(black_box(field), 19, 4096, SEED).unwrap())
    });
    let par = estimate_prob_invertible(field, 19, 4096, SEED).unwrap();
    let seq = estimate_prob_invertible_seq(field, 19, 4096, SEED).unwrap();
    assert_eq!(par, seq);
    group.finish();
}

criterion_group!(benches, bench_attack_rate, bench_circulant_estimate);
criterion_main!(benches);
