use std::hint::black_box;

use cliquerelax_bench::{dense_random, planted, ring, sparse_random};
use cliquerelax_core::io::{graph_to_string, read_edge_list, LabelMap};
use cliquerelax_core::{enumerate_maximal_cliques, enumerate_maximal_quasi_cliques, modularity, QuasiCliqueParams};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn params(lambda: &str, gamma: &str, min_size: usize) -> QuasiCliqueParams {
    QuasiCliqueParams::new(lambda.parse().unwrap(), gamma.parse().unwrap()).unwrap().with_min_size(min_size).unwrap()
}

fn cliques(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximal_cliques");
    for n in [1_000, 10_000] {
        let g = sparse_random(n, 1);
        group.bench_with_input(BenchmarkId::new("sparse", n), &g, |b, g| b.iter(|| enumerate_maximal_cliques(g, 3)));
    }
    let g = dense_random(50, 0.8, 1);
    group.bench_function("dense_50", |b| b.iter(|| enumerate_maximal_cliques(&g, 1)));
    group.finish();
}

fn quasi_cliques(c: &mut Criterion) {
    let mut group = c.benchmark_group("quasi_cliques");
    group.sample_size(20);
    let g = planted(10_000, 1);
    for (lambda, gamma) in [("0.9", "0.9"), ("0.75", "0.75"), ("0.6", "0.6")] {
        let p = params(lambda, gamma, 4);
        group.bench_with_input(BenchmarkId::new("planted_10k", format!("{lambda}/{gamma}")), &p, |b, p| {
            b.iter(|| enumerate_maximal_quasi_cliques(&g, p).unwrap())
        });
    }
    let dense = dense_random(24, 0.8, 1);
    let p = params("0.5", "0.5", 3);
    group.bench_function("dense_24_half", |b| b.iter(|| enumerate_maximal_quasi_cliques(&dense, &p).unwrap()));
    group.finish();
}

fn scoring_and_io(c: &mut Criterion) {
    let g = ring(300, 6);
    let natural = cliquerelax_core::Partition::new((0..g.vertex_count()).map(|v| (v / 6) as u32).collect()).unwrap();
    c.bench_function("modularity_ring_300x6", |b| b.iter(|| modularity(black_box(&g), &natural).unwrap()));

    let big = sparse_random(10_000, 2);
    let text = graph_to_string(&big, &LabelMap::identity(big.vertex_count()), None);
    c.bench_function("read_edge_list_10k", |b| b.iter(|| read_edge_list(black_box(text.as_bytes())).unwrap()));
}

criterion_group!(benches, cliques, quasi_cliques, scoring_and_io);
criterion_main!(benches);
