mod common;

use std::collections::BTreeSet;

use happy_core::kernel::{
    clique_happy_bound, clique_modulator_2approx, cubic_bound, cubic_kernel, is_clique_modulator,
    linear_bound, linear_kernel, min_clique_modulator,
};
use happy_core::multiway::{compression_bound, gmc_compress_to_mhv};
use happy_core::oracles::{brute_mhv, search_mhv, OracleConfig};
use happy_core::{potentially_happy_sets, ColoredGraph, Vertex};
use rand::Rng;

fn instance(seed: u64) -> (ColoredGraph, BTreeSet<Vertex>) {
    let mut rng = common::rng(seed);
    let n = rng.gen_range(2..=9);
    let d = rng.gen_range(0..=3.min(n));
    let ell = rng.gen_range(1..=4);
    let g = common::near_clique(&mut rng, n, d);
    let p = rng.gen_range(0.1..0.5);
    (common::precolor(&mut rng, g, ell, p), (1..=d).collect())
}

#[test]
fn linear_kernel_keeps_every_answer() {
    let cfg = OracleConfig::default();
    for seed in 0..40 {
        let (g, s) = instance(seed);
        let before = brute_mhv(&g, &cfg).unwrap().value;
        let (out, _) = linear_kernel(&g, 0, &s).unwrap();
        let after = search_mhv(&out, &cfg).unwrap().value;
        let h = potentially_happy_sets(&g).all.len();
        assert!(out.n() <= linear_bound(h, s.len()), "seed {seed}");
        for k in 0..=g.n() {
            assert_eq!(before >= k, after >= k, "seed {seed}, k {k}");
        }
    }
}

#[test]
fn cubic_kernel_keeps_every_answer() {
    let cfg = OracleConfig::default();
    for seed in 0..40 {
        let (g, _) = instance(seed);
        let before = brute_mhv(&g, &cfg).unwrap().value;
        for k in 0..=g.n() {
            let trace = cubic_kernel(&g, k, None).unwrap();
            assert!(trace.clique_happy <= clique_happy_bound(trace.d()));
            assert!(trace.graph.n() <= cubic_bound(trace.d()));
            let after = search_mhv(&trace.graph, &cfg).unwrap().value as i64;
            assert_eq!(before >= k, after >= trace.k, "seed {seed}, k {k}");
            assert_eq!(trace.replay(&g, k).unwrap(), (trace.graph.clone(), trace.k));
        }
    }
}

#[test]
fn compression_keeps_every_answer() {
    let cfg = OracleConfig::default();
    for seed in 0..40 {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=7);
        let g = common::random_instance(&mut rng, n, 3);
        let before = brute_mhv(&g, &cfg).unwrap().value;
        let (out, _) = gmc_compress_to_mhv(&g, 0).unwrap();
        let h = potentially_happy_sets(&g).all.len();
        assert!(out.n() <= compression_bound(h));
        assert_eq!(search_mhv(&out, &cfg).unwrap().value, before, "seed {seed}");
    }
}

#[test]
fn approximate_clique_modulator_is_within_twice_optimum() {
    for seed in 0..60 {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.3..0.95);
        let g = common::gnp(&mut rng, n, p);
        let s = clique_modulator_2approx(&g);
        assert!(is_clique_modulator(&g, &s));
        assert!(s.len() <= 2 * min_clique_modulator(&g).len());
    }
}

#[test]
fn trace_log_is_one_line_per_rule() {
    let (g, s) = instance(7);
    let trace = cubic_kernel(&g, 3, Some(&s)).unwrap();
    let log = trace.to_string();
    assert_eq!(log.lines().count(), trace.records.len() + 1);
    assert!(log.lines().next().unwrap().starts_with("gadget pair"));
    assert!(log.lines().nth(trace.records.len() - 1).unwrap().starts_with("linear keep"));
}
