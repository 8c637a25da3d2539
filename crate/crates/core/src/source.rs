//! Source problems of the hardness reductions: regular multicolored
//! independent set and colorful red-blue dominating set.

use std::collections::BTreeSet;

use crate::error::{contract, Result};
use crate::graph::{Graph, Vertex};

/// An `r`-regular graph partitioned into cliques.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RmisInstance {
    graph: Graph,
    cliques: Vec<Vec<Vertex>>,
    r: usize,
}

impl RmisInstance {
    /// Validates regularity, the partition, and that every part is a clique.
    /// Each part is stored sorted.
    pub fn new(graph: Graph, mut cliques: Vec<Vec<Vertex>>, r: usize) -> Result<Self> {
        let mut owner = vec![None; graph.n() + 1];
        for (i, part) in cliques.iter_mut().enumerate() {
            if part.is_empty() {
                return Err(contract(format!("clique {} is empty", i + 1)));
            }
            part.sort_unstable();
            for &v in part.iter() {
                if !graph.contains(v) {
                    return Err(contract(format!("clique member {v} out of range")));
                }
                if owner[v].replace(i).is_some() {
                    return Err(contract(format!("vertex {v} lies in two cliques")));
                }
            }
            for (a, &u) in part.iter().enumerate() {
                for &v in &part[a + 1..] {
                    if !graph.has_edge(u, v) {
                        return Err(contract(format!("clique {} misses edge {u}-{v}", i + 1)));
                    }
                }
            }
        }
        if let Some(v) = graph.vertices().find(|&v| owner[v].is_none()) {
            return Err(contract(format!("vertex {v} is in no clique")));
        }
        if let Some(v) = graph.vertices().find(|&v| graph.degree(v) != r) {
            return Err(contract(format!(
                "vertex {v} has degree {}, expected {r}",
                graph.degree(v)
            )));
        }
        Ok(RmisInstance { graph, cliques, r })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cliques(&self) -> &[Vec<Vertex>] {
        &self.cliques
    }

    pub fn k(&self) -> usize {
        self.cliques.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Index (0-based) of the clique containing `v`.
    pub fn clique_of(&self, v: Vertex) -> usize {
        self.cliques
            .iter()
            .position(|c| c.binary_search(&v).is_ok())
            .expect("partition covers every vertex")
    }

    /// Whether `set` picks exactly one vertex per clique, pairwise non-adjacent.
    pub fn is_solution(&self, set: &BTreeSet<Vertex>) -> bool {
        set.len() == self.k()
            && self
                .cliques
                .iter()
                .all(|c| c.iter().filter(|v| set.contains(v)).count() == 1)
            && set
                .iter()
                .all(|&u| set.iter().all(|&v| !self.graph.has_edge(u, v)))
    }
}

/// Red vertices `1..=nr` colored with `1..=k`, blue vertices `1..=nb`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrbdsInstance {
    nb: usize,
    k: usize,
    // index r - 1: blue neighbours of red vertex r
    adjacency: Vec<BTreeSet<Vertex>>,
    colors: Vec<usize>,
}

impl CrbdsInstance {
    /// `colors[i]` is the color of red vertex `i + 1`.
    pub fn new<I>(colors: Vec<usize>, nb: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(contract(format!("red color {c} outside 1..={k}")));
        }
        let mut adjacency = vec![BTreeSet::new(); colors.len()];
        for (r, b) in edges {
            if r == 0 || r > colors.len() || b == 0 || b > nb {
                return Err(contract(format!("edge {r}-{b} out of range")));
            }
            if !adjacency[r - 1].insert(b) {
                return Err(contract(format!("duplicate edge {r}-{b}")));
            }
        }
        Ok(CrbdsInstance {
            nb,
            k,
            adjacency,
            colors,
        })
    }

    pub fn nr(&self) -> usize {
        self.colors.len()
    }

    pub fn nb(&self) -> usize {
        self.nb
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, r: Vertex) -> usize {
        self.colors[r - 1]
    }

    pub fn blue_neighbors(&self, r: Vertex) -> &BTreeSet<Vertex> {
        &self.adjacency[r - 1]
    }

    /// Red neighbours of blue vertex `b`, ascending.
    pub fn red_neighbors(&self, b: Vertex) -> Vec<Vertex> {
        (1..=self.nr())
            .filter(|&r| self.adjacency[r - 1].contains(&b))
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, bs)| bs.iter().map(move |&b| (i + 1, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum()
    }

    /// Red vertices of color `c`, ascending.
    pub fn color_class(&self, c: usize) -> Vec<Vertex> {
        (1..=self.nr()).filter(|&r| self.color(r) == c).collect()
    }

    /// Whether `set` holds `k` distinctly colored red vertices dominating B.
    pub fn is_solution(&self, set: &BTreeSet<Vertex>) -> bool {
        if set.len() != self.k || set.iter().any(|&r| r == 0 || r > self.nr()) {
            return false;
        }
        let colors: BTreeSet<usize> = set.iter().map(|&r| self.color(r)).collect();
        colors.len() == self.k
            && (1..=self.nb).all(|b| set.iter().any(|&r| self.adjacency[r - 1].contains(&b)))
    }
}
