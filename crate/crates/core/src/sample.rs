//! Seeded random instance families used by the verification suites, the
//! benchmarks and the command-line generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cwexpr::{Builder, NodeId, WExpression};
use crate::{ColoredGraph, Graph, Vertex};

/// Precolor each vertex independently with probability `p`. Panics if
/// `ell` is zero.
pub fn precolor<R: Rng + ?Sized>(rng: &mut R, g: Graph, ell: usize, p: f64) -> ColoredGraph {
    let mut pre = Vec::new();
    for v in g.vertices() {
        if rng.gen_bool(p) {
            pre.push((v, rng.gen_range(1..=ell)));
        }
    }
    ColoredGraph::new(g, ell, pre).unwrap()
}

pub fn gnp<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, ell: usize) -> ColoredGraph {
    let p = rng.gen_range(0.2..0.7);
    let g = gnp(rng, n, p);
    let pre = rng.gen_range(0.1..0.6);
    precolor(rng, g, ell, pre)
}

/// Random cliques plus `d` modulator vertices (numbered first) with random
/// edges.
pub fn near_cluster<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize) -> Graph {
    let mut g = Graph::new(n);
    let mut rest: Vec<Vertex> = (d + 1..=n).collect();
    rest.shuffle(rng);
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    for v in rest {
        match blocks.last_mut() {
            Some(b) if rng.gen_bool(0.6) => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    for b in &blocks {
        for (i, &u) in b.iter().enumerate() {
            for &v in &b[i + 1..] {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    for u in 1..=d {
        for v in u + 1..=n {
            if rng.gen_bool(0.4) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// A clique on the last `n - d` vertices plus random edges at the first `d`.
pub fn near_clique<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if u > d || rng.gen_bool(0.5) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random expression over ids `1..=n` using labels `1..=w`. Panics if `n`
/// or `w` is zero.
pub fn random_expression<R: Rng + ?Sized>(rng: &mut R, n: usize, w: usize) -> WExpression {
    fn build<R: Rng + ?Sized>(rng: &mut R, b: &mut Builder, ids: &[Vertex], w: usize) -> NodeId {
        let mut node = if ids.len() == 1 {
            b.introduce(ids[0], rng.gen_range(1..=w)).unwrap()
        } else {
            let cut = rng.gen_range(1..ids.len());
            let l = build(rng, b, &ids[..cut], w);
            let r = build(rng, b, &ids[cut..], w);
            b.union(l, r)
        };
        if w >= 2 {
            for _ in 0..rng.gen_range(0..=2) {
                let a = rng.gen_range(1..=w);
                let c = (a + rng.gen_range(1..w) - 1) % w + 1;
                node = if rng.gen_bool(0.7) {
                    b.join(a, c, node).unwrap()
                } else {
                    b.rename(a, c, node).unwrap()
                };
            }
        }
        node
    }
    let mut ids: Vec<Vertex> = (1..=n).collect();
    ids.shuffle(rng);
    let mut b = Builder::default();
    build(rng, &mut b, &ids, w);
    b.finish().unwrap()
}
