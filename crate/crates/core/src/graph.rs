//! Graphs, precolorings and happiness.
//!
//! Vertices and colors are 1-based integers. Every iteration in this crate
//! walks vertices, neighbours and colors in ascending order, so any choice
//! described as "arbitrary" resolves to the smallest candidate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::RangeInclusive;

use crate::error::{contract, Result};

pub type Vertex = usize;
pub type Color = usize;

/// Undirected simple graph on vertices `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    // slot 0 is never used
    adj: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n + 1],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len() - 1
    }

    pub fn vertices(&self) -> RangeInclusive<Vertex> {
        1..=self.n()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.adj[u].contains(&v)
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(BTreeSet::new());
        self.n()
    }

    /// Adds `uv`; rejects self-loops, duplicates and unknown endpoints.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if !self.contains(u) || !self.contains(v) {
            return Err(contract(format!("edge {u}-{v} has an endpoint outside 1..={}", self.n())));
        }
        if u == v {
            return Err(contract(format!("self-loop at vertex {u}")));
        }
        if !self.adj[u].insert(v) {
            return Err(contract(format!("duplicate edge {u}-{v}")));
        }
        self.adj[v].insert(u);
        Ok(())
    }

    /// Adds `uv` unless it is already present.
    pub fn ensure_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if self.has_edge(u, v) {
            return Ok(());
        }
        self.add_edge(u, v)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        true
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Adjacency lists without the unused slot semantics, for hot loops.
    pub fn adjacency_lists(&self) -> Vec<Vec<Vertex>> {
        self.adj.iter().map(|s| s.iter().copied().collect()).collect()
    }

    /// Induced subgraph on `keep`, relabelled so that the i-th smallest
    /// kept vertex becomes vertex `i`.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let index: BTreeMap<Vertex, Vertex> =
            keep.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        let mut g = Graph::new(keep.len());
        for (&v, &iv) in &index {
            for u in self.adj[v].range(v + 1..) {
                if let Some(&iu) = index.get(u) {
                    g.adj[iv].insert(iu);
                    g.adj[iu].insert(iv);
                }
            }
        }
        g
    }

    /// Connected components of the graph with `removed` vertices deleted,
    /// each sorted, ordered by smallest member.
    pub fn components_avoiding(&self, removed: &BTreeSet<Vertex>) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n() + 1];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] || removed.contains(&s) {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] && !removed.contains(&u) {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&BTreeSet::new())
    }

    /// Graph complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for u in self.vertices() {
            for v in u + 1..=self.n() {
                if !self.has_edge(u, v) {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                }
            }
        }
        g
    }
}

/// A graph together with a partial precoloring over colors `1..=ell`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    graph: Graph,
    ell: usize,
    precolor: Vec<Option<Color>>,
}

impl ColoredGraph {
    pub fn new<I>(graph: Graph, ell: usize, precoloring: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Color)>,
    {
        if ell == 0 {
            return Err(contract("at least one color is required"));
        }
        let mut precolor = vec![None; graph.n() + 1];
        for (v, c) in precoloring {
            if !graph.contains(v) {
                return Err(contract(format!("precolored vertex {v} out of range")));
            }
            if c == 0 || c > ell {
                return Err(contract(format!("color {c} of vertex {v} outside 1..={ell}")));
            }
            if precolor[v].replace(c).is_some() {
                return Err(contract(format!("vertex {v} precolored twice")));
            }
        }
        Ok(ColoredGraph { graph, ell, precolor })
    }

    /// Same graph with no precolored vertices.
    pub fn uncolored(graph: Graph, ell: usize) -> Result<Self> {
        Self::new(graph, ell, std::iter::empty())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn precolor(&self, v: Vertex) -> Option<Color> {
        self.precolor[v]
    }

    /// `(vertex, color)` pairs in ascending vertex order.
    pub fn precolored(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.graph
            .vertices()
            .filter_map(move |v| self.precolor[v].map(|c| (v, c)))
    }

    pub fn uncolored_vertices(&self) -> Vec<Vertex> {
        self.graph
            .vertices()
            .filter(|&v| self.precolor[v].is_none())
            .collect()
    }

    pub fn add_vertex(&mut self, color: Option<Color>) -> Result<Vertex> {
        if let Some(c) = color {
            if c == 0 || c > self.ell {
                return Err(contract(format!("color {c} outside 1..={}", self.ell)));
            }
        }
        let v = self.graph.add_vertex();
        self.precolor.push(color);
        Ok(v)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.graph.add_edge(u, v)
    }

    pub fn ensure_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.graph.ensure_edge(u, v)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        self.graph.remove_edge(u, v)
    }

    /// Raise the number of available colors; never lowers it.
    pub fn lift_colors(&mut self, ell: usize) {
        self.ell = self.ell.max(ell);
    }

    /// Drop color `color` (which must be unused) and shift larger colors down.
    pub fn remove_unused_color(&mut self, color: Color) -> Result<()> {
        if self.precolor.contains(&Some(color)) {
            return Err(contract(format!("color {color} is still used")));
        }
        if self.ell == 1 {
            return Err(contract("cannot remove the last color"));
        }
        for c in self.precolor.iter_mut().flatten() {
            if *c > color {
                *c -= 1;
            }
        }
        self.ell -= 1;
        Ok(())
    }

    /// Induced instance on `keep` (relabelled ascending), keeping precolors.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> ColoredGraph {
        let graph = self.graph.induced(keep);
        let mut precolor = vec![None];
        precolor.extend(keep.iter().map(|&v| self.precolor[v]));
        ColoredGraph {
            graph,
            ell: self.ell,
            precolor,
        }
    }
}

/// A total coloring `1..=n -> 1..=ell` extending some precoloring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    /// `assignment[i]` is the color of vertex `i + 1`.
    pub fn new(g: &ColoredGraph, assignment: Vec<Color>) -> Result<Self> {
        if assignment.len() != g.n() {
            return Err(contract(format!(
                "coloring has {} entries for {} vertices",
                assignment.len(),
                g.n()
            )));
        }
        for (i, &c) in assignment.iter().enumerate() {
            let v = i + 1;
            if c == 0 || c > g.ell() {
                return Err(contract(format!("vertex {v} gets color {c} outside 1..={}", g.ell())));
            }
            if let Some(p) = g.precolor(v) {
                if p != c {
                    return Err(contract(format!(
                        "vertex {v} is precolored {p} but colored {c}"
                    )));
                }
            }
        }
        let mut colors = Vec::with_capacity(assignment.len() + 1);
        colors.push(0);
        colors.extend(assignment);
        Ok(Coloring { colors })
    }

    /// Every vertex gets `color`; fails if that contradicts the precoloring.
    pub fn constant(g: &ColoredGraph, color: Color) -> Result<Self> {
        Self::new(g, vec![color; g.n()])
    }

    pub fn n(&self) -> usize {
        self.colors.len() - 1
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    /// Colors of vertices `1..=n` in order.
    pub fn as_slice(&self) -> &[Color] {
        &self.colors[1..]
    }
}

/// Potentially happy vertices and their forced-color classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HappySets {
    pub all: BTreeSet<Vertex>,
    // index c - 1 holds the class of color c
    per_color: Vec<BTreeSet<Vertex>>,
}

impl HappySets {
    /// Members forced to color `c` if happy.
    pub fn class(&self, c: Color) -> &BTreeSet<Vertex> {
        &self.per_color[c - 1]
    }

    pub fn ell(&self) -> usize {
        self.per_color.len()
    }

    /// `(color, class)` for the non-empty classes, by color.
    pub fn classes(&self) -> impl Iterator<Item = (Color, &BTreeSet<Vertex>)> {
        self.per_color
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(i, s)| (i + 1, s))
    }

    /// The forced color of `v`, if it has one.
    pub fn forced_color(&self, v: Vertex) -> Option<Color> {
        self.per_color
            .iter()
            .position(|s| s.contains(&v))
            .map(|i| i + 1)
    }

    /// Potentially happy vertices with no precolor in their closed
    /// neighbourhood.
    pub fn free(&self) -> BTreeSet<Vertex> {
        self.all
            .iter()
            .copied()
            .filter(|v| self.per_color.iter().all(|s| !s.contains(v)))
            .collect()
    }
}

fn check_coloring(g: &ColoredGraph, c: &Coloring) -> Result<()> {
    if c.n() != g.n() {
        return Err(contract(format!(
            "coloring covers {} vertices, graph has {}",
            c.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Vertices all of whose neighbours share their color.
pub fn happy_vertices(g: &ColoredGraph, c: &Coloring) -> Result<BTreeSet<Vertex>> {
    check_coloring(g, c)?;
    let graph = g.graph();
    Ok(graph
        .vertices()
        .filter(|&v| graph.neighbors(v).iter().all(|&u| c.color(u) == c.color(v)))
        .collect())
}

/// Number of edges whose endpoints share a color.
pub fn happy_edge_count(g: &ColoredGraph, c: &Coloring) -> Result<usize> {
    check_coloring(g, c)?;
    Ok(g.graph().edges().filter(|&(u, v)| c.color(u) == c.color(v)).count())
}

/// Happy-vertex count on raw adjacency lists; `colors[v]` for `v >= 1`.
pub(crate) fn count_happy_raw(adj: &[Vec<Vertex>], colors: &[Color]) -> usize {
    (1..adj.len())
        .filter(|&v| adj[v].iter().all(|&u| colors[u] == colors[v]))
        .count()
}

/// Happy-edge count on raw adjacency lists.
pub(crate) fn count_happy_edges_raw(adj: &[Vec<Vertex>], colors: &[Color]) -> usize {
    (1..adj.len())
        .map(|v| {
            adj[v]
                .iter()
                .filter(|&&u| u > v && colors[u] == colors[v])
                .count()
        })
        .sum()
}

pub fn potentially_happy_sets(g: &ColoredGraph) -> HappySets {
    let graph = g.graph();
    let mut all = BTreeSet::new();
    let mut per_color = vec![BTreeSet::new(); g.ell()];
    for v in graph.vertices() {
        let mut seen: Option<Color> = None;
        let mut consistent = true;
        for u in std::iter::once(v).chain(graph.neighbors(v).iter().copied()) {
            if let Some(c) = g.precolor(u) {
                match seen {
                    None => seen = Some(c),
                    Some(s) if s != c => {
                        consistent = false;
                        break;
                    }
                    _ => {}
                }
            }
        }
        if consistent {
            all.insert(v);
            if let Some(c) = seen {
                per_color[c - 1].insert(v);
            }
        }
    }
    HappySets { all, per_color }
}

/// `G^2[s]`: vertices of `s`, adjacent when at distance at most two in `g`.
///
/// Vertex `i` of the result is the i-th smallest member of `s`.
pub fn induced_square(g: &Graph, s: &BTreeSet<Vertex>) -> Result<Graph> {
    if let Some(&bad) = s.iter().find(|&&v| !g.contains(v)) {
        return Err(contract(format!("vertex {bad} is not in the graph")));
    }
    let members: Vec<Vertex> = s.iter().copied().collect();
    let mut sq = Graph::new(members.len());
    for (i, &u) in members.iter().enumerate() {
        for (j, &v) in members.iter().enumerate().skip(i + 1) {
            let close = g.has_edge(u, v)
                || g.neighbors(u).iter().any(|w| g.neighbors(v).contains(w));
            if close {
                sq.add_edge(i + 1, j + 1)?;
            }
        }
    }
    Ok(sq)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn coloring(g: &ColoredGraph, c: &[Color]) -> Coloring {
        Coloring::new(g, c.to_vec()).unwrap()
    }

    #[test]
    fn happy_vertices_on_p3() {
        let g = p3();
        let c = coloring(&g, &[1, 1, 2]);
        assert_eq!(happy_vertices(&g, &c).unwrap(), BTreeSet::from([1]));
        assert_eq!(happy_edge_count(&g, &c).unwrap(), 1);
    }

    #[test]
    fn constant_coloring_makes_everything_happy() {
        let g = ColoredGraph::uncolored(cycle(5), 3).unwrap();
        let c = Coloring::constant(&g, 2).unwrap();
        assert_eq!(happy_vertices(&g, &c).unwrap().len(), 5);
        assert_eq!(happy_edge_count(&g, &c).unwrap(), 5);
    }

    #[test]
    fn triangle_with_two_colors() {
        let g = k3(2, &[]);
        let c = coloring(&g, &[1, 2, 1]);
        assert!(happy_vertices(&g, &c).unwrap().is_empty());
        assert_eq!(happy_edge_count(&g, &c).unwrap(), 1);
    }

    #[test]
    fn isolated_vertices_are_happy() {
        let g = ColoredGraph::new(Graph::new(2), 2, [(1, 1), (2, 2)]).unwrap();
        let c = coloring(&g, &[1, 2]);
        assert_eq!(happy_vertices(&g, &c).unwrap().len(), 2);
    }

    #[test]
    fn size_mismatch_is_a_contract_violation() {
        let g = p3();
        let other = ColoredGraph::uncolored(Graph::new(2), 2).unwrap();
        let c = Coloring::constant(&other, 1).unwrap();
        assert!(matches!(happy_vertices(&g, &c), Err(crate::Error::Contract(_))));
        assert!(happy_edge_count(&g, &c).is_err());
    }

    #[test]
    fn coloring_must_extend_precoloring() {
        let g = p3();
        assert!(Coloring::new(&g, vec![2, 1, 2]).is_err());
        assert!(Coloring::new(&g, vec![1, 3, 2]).is_err());
        assert!(Coloring::new(&g, vec![1, 1]).is_err());
    }

    #[test]
    fn happy_sets_on_p3() {
        let h = potentially_happy_sets(&p3());
        assert_eq!(h.all, BTreeSet::from([1, 3]));
        assert_eq!(h.class(1), &BTreeSet::from([1]));
        assert_eq!(h.class(2), &BTreeSet::from([3]));
        assert_eq!(h.forced_color(3), Some(2));
        assert!(h.free().is_empty());
    }

    #[test]
    fn happy_sets_without_precoloring() {
        let g = ColoredGraph::uncolored(cycle(4), 3).unwrap();
        let h = potentially_happy_sets(&g);
        assert_eq!(h.all.len(), 4);
        assert!(h.classes().next().is_none());
    }

    #[test]
    fn happy_sets_on_bichromatic_triangle() {
        let h = potentially_happy_sets(&k3(2, &[(1, 1), (2, 2)]));
        assert!(h.all.is_empty());
    }

    #[test]
    fn square_of_p3_and_c5() {
        let g = p3();
        let sq = induced_square(g.graph(), &BTreeSet::from([1, 3])).unwrap();
        assert_eq!(sq.edges().collect::<Vec<_>>(), vec![(1, 2)]);

        let single = induced_square(g.graph(), &BTreeSet::from([2])).unwrap();
        assert_eq!((single.n(), single.edge_count()), (1, 0));

        let c5 = cycle(5);
        let sq = induced_square(&c5, &c5.vertices().collect()).unwrap();
        assert_eq!(sq.edge_count(), 10);

        assert!(induced_square(&c5, &BTreeSet::from([6])).is_err());
    }

    #[test]
    fn graph_rejects_bad_edges() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(1, 4).is_err());
        g.add_edge(1, 2).unwrap();
        assert!(g.add_edge(2, 1).is_err());
    }

    #[test]
    fn removing_a_color_renumbers() {
        let g = Graph::new(3);
        let mut cg = ColoredGraph::new(g, 4, [(1, 1), (2, 3), (3, 4)]).unwrap();
        cg.remove_unused_color(2).unwrap();
        assert_eq!(cg.ell(), 3);
        assert_eq!(cg.precolored().collect::<Vec<_>>(), vec![(1, 1), (2, 2), (3, 3)]);
        assert!(cg.remove_unused_color(1).is_err());
    }
}
