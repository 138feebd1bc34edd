//! Benchmarks of the data-parallel inner loops against their sequential
//! twins. With the default `parallel` feature the first variant runs on
//! rayon; built with `--no-default-features` both variants are sequential.

use criterion::{criterion_group, criterion_main, Criterion};
use realcy::intersection::{build_triple_table, build_triple_table_seq};
use realcy::lattice::TriangulationVariant;
use realcy::rng::SplitMix64;
use realcy::twist::{batch_twisted_ranks, batch_twisted_ranks_seq, build_pairings, TwistClass};
use std::hint::black_box;

fn bench_table_build(c: &mut Criterion) {
    let geometry = realcy::build_geometry(TriangulationVariant::Default).unwrap();
    let mut group = c.benchmark_group("triple_table_build");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| build_triple_table(black_box(&geometry)).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| build_triple_table_seq(black_box(&geometry)).unwrap())
    });
    group.finish();
}

fn bench_rank_sweep(c: &mut Criterion) {
    let geometry = realcy::build_geometry(TriangulationVariant::Default).unwrap();
    let table = build_triple_table(&geometry).unwrap();
    let pairings = build_pairings(&table);
    let mut rng = SplitMix64::new(1);
    let twists: Vec<TwistClass> = (0..256).map(|_| TwistClass::random(&mut rng)).collect();
    let mut group = c.benchmark_group("twisted_rank_sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| batch_twisted_ranks(black_box(&pairings), black_box(&twists)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| batch_twisted_ranks_seq(black_box(&pairings), black_box(&twists)))
    });
    group.finish();
}

criterion_group!(benches, bench_table_build, bench_rank_sweep);
criterion_main!(benches);
