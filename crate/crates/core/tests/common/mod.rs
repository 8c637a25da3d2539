//! Seeded instance factories and exhaustive enumerators shared by the
//! integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use happy_core::gadgets::check_crbds;
use happy_core::source::{CrbdsInstance, RmisInstance};
#[allow(unused_imports)]
pub use happy_core::sample::*;
use happy_core::{Graph, Vertex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn compositions(n: usize, min: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in min..=n {
        for mut rest in compositions(n - first, min) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every RMIS instance on at most `max_n` vertices whose cliques are blocks
/// of consecutive vertices of size at least two. Each labelled instance is
/// isomorphic to one of these.
pub fn all_rmis(max_n: usize) -> Vec<RmisInstance> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for sizes in compositions(n, 2) {
            let mut cliques = Vec::new();
            let mut owner = vec![0; n + 1];
            let mut next = 1;
            for (i, &s) in sizes.iter().enumerate() {
                let c: Vec<Vertex> = (next..next + s).collect();
                for &v in &c {
                    owner[v] = i;
                }
                next += s;
                cliques.push(c);
            }
            let cross: Vec<(Vertex, Vertex)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .filter(|&(u, v)| owner[u] != owner[v])
                .collect();
            for mask in 0u64..1 << cross.len() {
                let mut g = Graph::new(n);
                for c in &cliques {
                    for (i, &u) in c.iter().enumerate() {
                        for &v in &c[i + 1..] {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                for (i, &(u, v)) in cross.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        g.add_edge(u, v).unwrap();
                    }
                }
                let r = g.degree(1);
                if g.vertices().all(|v| g.degree(v) == r) {
                    out.push(RmisInstance::new(g, cliques.clone(), r).unwrap());
                }
            }
        }
    }
    out
}

/// Every CRBDS instance with at most `max_r` red and `max_b` blue vertices
/// that satisfies the gadget preconditions.
pub fn all_crbds(max_r: usize, max_b: usize) -> Vec<CrbdsInstance> {
    all_crbds_where(max_r, max_b, |inst| check_crbds(inst).is_ok())
}

pub fn all_crbds_where(max_r: usize, max_b: usize, keep: impl Fn(&CrbdsInstance) -> bool) -> Vec<CrbdsInstance> {
    let mut out = Vec::new();
    for nr in 1..=max_r {
        for nb in 1..=max_b {
            for k in 1..=nr {
                let colorings = (k as u64).pow(nr as u32);
                for code in 0..colorings {
                    let mut colors = Vec::with_capacity(nr);
                    let mut c = code;
                    for _ in 0..nr {
                        colors.push((c % k as u64) as usize + 1);
                        c /= k as u64;
                    }
                    let used: BTreeSet<usize> = colors.iter().copied().collect();
                    if used.len() < k {
                        continue;
                    }
                    for mask in 0u64..1 << (nr * nb) {
                        let edges = (0..nr * nb)
                            .filter(|i| mask >> i & 1 == 1)
                            .map(|i| (i / nb + 1, i % nb + 1));
                        let inst = CrbdsInstance::new(colors.clone(), nb, k, edges).unwrap();
                        if keep(&inst) {
                            out.push(inst);
                        }
                    }
                }
            }
        }
    }
    out
}
