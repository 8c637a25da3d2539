//! Exact solvers that avoid enumerating every coloring. They exist to check
//! instances whose coloring space is out of reach for the brute-force
//! oracles, and are themselves validated against those oracles.

use super::{saturating_pow, OracleConfig, Optimum};
use crate::error::{Error, Result};
use crate::graph::{potentially_happy_sets, Color, ColoredGraph, Coloring, Vertex};
use crate::par;

/// Union-find with undo, each root carrying the precolor of its set.
struct ColorUnion {
    parent: Vec<usize>,
    size: Vec<usize>,
    color: Vec<Option<Color>>,
    // (attached root, new root, previous color of the new root)
    history: Vec<(usize, usize, Option<Color>)>,
}

impl ColorUnion {
    fn new(g: &ColoredGraph) -> Self {
        let n = g.n() + 1;
        let mut color = vec![None; n];
        for (v, c) in g.precolored() {
            color[v] = Some(c);
        }
        ColorUnion {
            parent: (0..n).collect(),
            size: vec![1; n],
            color,
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// False when the two sets carry different colors.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return true;
        }
        match (self.color[ra], self.color[rb]) {
            (Some(x), Some(y)) if x != y => return false,
            _ => {}
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.history.push((rb, ra, self.color[ra]));
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.color[ra] = self.color[ra].or(self.color[rb]);
        true
    }

    fn checkpoint(&self) -> usize {
        self.history.len()
    }

    fn rollback(&mut self, to: usize) {
        while self.history.len() > to {
            let (child, root, color) = self.history.pop().unwrap();
            self.parent[child] = child;
            self.size[root] -= self.size[child];
            self.color[root] = color;
        }
    }
}

struct Search<'a> {
    g: &'a ColoredGraph,
    candidates: Vec<Vertex>,
    uf: ColorUnion,
    chosen: Vec<Vertex>,
    best: Option<Vec<Vertex>>,
    nodes: u128,
    budget: u128,
}

impl Search<'_> {
    fn run(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::TooLarge {
                needed: saturating_pow(2, self.candidates.len()),
                budget: self.budget,
            });
        }
        let best_len = self.best.as_ref().map_or(-1, |b| b.len() as isize);
        if (self.chosen.len() + self.candidates.len() - i) as isize <= best_len {
            return Ok(());
        }
        if i == self.candidates.len() {
            self.best = Some(self.chosen.clone());
            return Ok(());
        }
        let v = self.candidates[i];
        let mark = self.uf.checkpoint();
        let fits = self.g.graph().neighbors(v).iter().all(|&u| self.uf.union(v, u));
        if fits {
            self.chosen.push(v);
            self.run(i + 1)?;
            self.chosen.pop();
        }
        self.uf.rollback(mark);
        self.run(i + 1)
    }
}

/// Maximum happy vertices by branch and bound over sets of potentially
/// happy vertices that can be made happy together.
///
/// A set can be made happy together exactly when flooding the graph along
/// the edges touching it never merges two precolors. The budget bounds the
/// number of search nodes.
pub fn search_mhv(g: &ColoredGraph, cfg: &OracleConfig) -> Result<Optimum> {
    let candidates: Vec<Vertex> = potentially_happy_sets(g).all.into_iter().collect();
    let mut search = Search {
        g,
        candidates,
        uf: ColorUnion::new(g),
        chosen: Vec::new(),
        best: None,
        nodes: 0,
        budget: cfg.budget,
    };
    search.run(0)?;
    let happy = search.best.expect("the empty set is always feasible");

    let mut uf = ColorUnion::new(g);
    for &v in &happy {
        for &u in g.graph().neighbors(v) {
            let ok = uf.union(v, u);
            debug_assert!(ok);
        }
    }
    let colors: Vec<Color> = g
        .graph()
        .vertices()
        .map(|v| uf.color[uf.find(v)].unwrap_or(1))
        .collect();
    let witness = Coloring::new(g, colors)?;
    let value = crate::graph::happy_vertices(g, &witness)?.len();
    debug_assert_eq!(value, happy.len());
    Ok(Optimum { value, witness })
}

/// Maximum happy edges by enumerating colorings of a vertex cover of the
/// uncolored part only; every other uncolored vertex then has all of its
/// neighbours colored and takes their most frequent color.
pub fn cover_mhe(g: &ColoredGraph, cfg: &OracleConfig) -> Result<Optimum> {
    let graph = g.graph();
    let ell = g.ell();
    let uncolored: Vec<bool> = std::iter::once(false)
        .chain(graph.vertices().map(|v| g.precolor(v).is_none()))
        .collect();

    // greedy cover of the uncolored subgraph, largest uncovered degree first
    let mut in_cover = vec![false; g.n() + 1];
    let mut cover = Vec::new();
    loop {
        let pick = graph
            .vertices()
            .filter(|&v| uncolored[v] && !in_cover[v])
            .map(|v| {
                let d = graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| uncolored[u] && !in_cover[u])
                    .count();
                (d, std::cmp::Reverse(v))
            })
            .max();
        match pick {
            Some((d, std::cmp::Reverse(v))) if d > 0 => {
                in_cover[v] = true;
                cover.push(v);
            }
            _ => break,
        }
    }
    cover.sort_unstable();
    let rest: Vec<Vertex> = graph
        .vertices()
        .filter(|&v| uncolored[v] && !in_cover[v])
        .collect();

    let total = saturating_pow(ell, cover.len());
    cfg.check(total)?;
    let adj = graph.adjacency_lists();
    let mut base = vec![0; g.n() + 1];
    for v in graph.vertices() {
        base[v] = g.precolor(v).unwrap_or(1);
    }

    let complete = |index: u128| -> (usize, Vec<Color>) {
        let mut colors = base.clone();
        let mut r = index;
        for &v in cover.iter().rev() {
            colors[v] = (r % ell as u128) as usize + 1;
            r /= ell as u128;
        }
        let mut tally = vec![0usize; ell + 1];
        for &v in &rest {
            tally.iter_mut().for_each(|t| *t = 0);
            for &u in &adj[v] {
                tally[colors[u]] += 1;
            }
            // max count, lowest color on ties
            let best = (1..=ell).max_by_key(|&c| (tally[c], std::cmp::Reverse(c))).unwrap();
            colors[v] = best;
        }
        (crate::graph::count_happy_edges_raw(&adj, &colors), colors)
    };

    const CHUNK: u128 = 1024;
    let chunks = total.div_ceil(CHUNK) as usize;
    let results = par::map_indexed(cfg.execution, chunks, |chunk| {
        let start = chunk as u128 * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut best = (complete(start).0, start);
        for i in start + 1..end {
            let s = complete(i).0;
            if s > best.0 {
                best = (s, i);
            }
        }
        best
    });
    let (_, index) = results
        .into_iter()
        .max_by_key(|&(s, i)| (s, std::cmp::Reverse(i)))
        .expect("at least one coloring");
    let (value, mut colors) = complete(index);
    colors.remove(0);
    let witness = Coloring::new(g, colors)?;
    Ok(Optimum { value, witness })
}
