use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use happy_core::cluster::solve_mhv_cluster;
use happy_core::oracles::{brute_mhv, OracleConfig};
use happy_core::{ColoredGraph, Execution, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, ell: usize, precolored: usize, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(0.35) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let pre: Vec<_> = (1..=precolored).map(|v| (v, rng.gen_range(1..=ell))).collect();
    ColoredGraph::new(g, ell, pre).unwrap()
}

/// Cliques of size 3 plus `d` modulator vertices joined to every third vertex.
fn near_cluster(n: usize, d: usize, ell: usize) -> ColoredGraph {
    let mut g = Graph::new(n);
    for u in d + 1..=n {
        for v in u + 1..=n.min(u + 2) {
            if (u - d - 1) / 3 == (v - d - 1) / 3 {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    for s in 1..=d {
        for v in (d + s..=n).step_by(3) {
            g.add_edge(s, v).unwrap();
        }
    }
    let pre: Vec<_> = (d + 1..=n).step_by(2).map(|v| (v, v % ell + 1)).collect();
    ColoredGraph::new(g, ell, pre).unwrap()
}

fn bench_brute(c: &mut Criterion) {
    let g = random_graph(14, 3, 2, 7);
    let mut group = c.benchmark_group("brute_mhv");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        let cfg = OracleConfig { execution: exec, ..OracleConfig::default() };
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &g, |b, g| {
            b.iter(|| brute_mhv(black_box(g), &cfg).unwrap().value)
        });
    }
    group.finish();
}

fn bench_cluster(c: &mut Criterion) {
    let g = near_cluster(40, 4, 3);
    let mut group = c.benchmark_group("solve_mhv_cluster");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &g, |b, g| {
            b.iter(|| solve_mhv_cluster(black_box(g), None, exec).unwrap().value)
        });
    }
    group.finish();
}

criterion_group!(benches, bench_brute, bench_cluster);
criterion_main!(benches);
