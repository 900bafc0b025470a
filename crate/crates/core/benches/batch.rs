use std::hint::black_box;

use amalgam::batch;
use amalgam::classify::example_group;
use amalgam::nielsen::{reduce_tuple, ReductionConfig};
use amalgam::random::{random_tuple, rng};
use criterion::{criterion_group, criterion_main, Criterion};

fn reduce_batch(c: &mut Criterion) {
    let g = example_group();
    let tuples: Vec<_> = (0..256).map(|i| random_tuple(&g, 4, 6, &mut rng(7, i))).collect();
    let config = ReductionConfig::default();
    let work = |_: usize, t: &amalgam::GeneratingTuple| reduce_tuple(&g, t, &config).map(|o| o.moves.len());

    let mut group = c.benchmark_group("reduce-256-tuples");
    group.sample_size(20);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(batch::map_sequential(&tuples, work)))
    });
    group.bench_function("parallel", |b| b.iter(|| black_box(batch::map(&tuples, work))));
    group.finish();
}

fn normal_form_batch(c: &mut Criterion) {
    let g = example_group();
    let words: Vec<_> = (0..4096)
        .map(|i| amalgam::random::random_group_word(&g, 10, &mut rng(11, i)))
        .collect();
    let work = |_: usize, w: &amalgam::GroupWord| g.symmetric_form(w).lambda;

    let mut group = c.benchmark_group("snf-4096-words");
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(batch::map_sequential(&words, work)))
    });
    group.bench_function("parallel", |b| b.iter(|| black_box(batch::map(&words, work))));
    group.finish();
}

criterion_group!(benches, reduce_batch, normal_form_batch);
criterion_main!(benches);
