//! Hardness reductions as instance generators, and random source instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Coloring, Graph, Vertex};
use crate::source::{CrbdsInstance, RmisInstance};

/// A generated happy-coloring instance with its threshold and the selector
/// vertices whose deletion leaves a simple graph class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: ColoredGraph,
    pub k: usize,
    pub selectors: Vec<Vertex>,
}

impl Reduction {
    pub fn without_selectors(&self) -> Graph {
        let drop: BTreeSet<Vertex> = self.selectors.iter().copied().collect();
        let keep = self.graph.graph().vertices().filter(|v| !drop.contains(v)).collect();
        self.graph.graph().induced(&keep)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PathVariant {
    #[default]
    Path,
    /// Closes every path into a triangle.
    Triangle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StarVariant {
    #[default]
    Star,
    /// Completes every star to a clique.
    Cluster,
}

/// Graph classes left behind once the selectors are gone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    /// Disjoint paths on three vertices.
    Paths3,
    Triangles,
    /// Disjoint stars; an isolated vertex counts as a star without leaves.
    Stars,
    /// Disjoint cliques.
    Cliques,
}

impl GraphClass {
    pub fn recognizes(self, g: &Graph) -> bool {
        g.components().iter().all(|comp| {
            let size = comp.len();
            let edges = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            match self {
                GraphClass::Paths3 => size == 3 && edges == 2,
                GraphClass::Triangles => size == 3 && edges == 3,
                GraphClass::Stars => edges + 1 == size && comp.iter().any(|&v| g.degree(v) + 1 == size),
                GraphClass::Cliques => edges == size * (size - 1) / 2,
            }
        })
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn check_rmis(inst: &RmisInstance) -> Result<()> {
    match inst.cliques().iter().position(|c| c.len() < 2) {
        Some(i) => Err(precondition(format!("clique {} has fewer than two vertices", i + 1))),
        None => Ok(()),
    }
}

/// The source conditions the star gadgets rely on: every blue vertex has at
/// least two red neighbours and every color is carried by at least two red
/// vertices of positive degree.
pub fn check_crbds(inst: &CrbdsInstance) -> Result<()> {
    if let Some(b) = (1..=inst.nb()).find(|&b| inst.red_neighbors(b).len() < 2) {
        return Err(precondition(format!("blue vertex {b} has fewer than two neighbours")));
    }
    for c in 1..=inst.k() {
        let carriers = inst
            .color_class(c)
            .into_iter()
            .filter(|&r| !inst.blue_neighbors(r).is_empty())
            .count();
        if carriers < 2 {
            return Err(precondition(format!(
                "color {c} has {carriers} red vertices with neighbours, two are needed"
            )));
        }
    }
    Ok(())
}

/// Vertex layout shared by both RMIS gadgets: three vertices per source edge
/// in lexicographic edge order, then the selectors.
struct PathLayout {
    edges: Vec<(Vertex, Vertex)>,
    k: usize,
}

impl PathLayout {
    fn new(inst: &RmisInstance) -> Self {
        PathLayout {
            edges: inst.graph().edges().collect(),
            k: inst.k(),
        }
    }

    /// `(t_u, e, t_v)` of the i-th edge.
    fn path(&self, i: usize) -> (Vertex, Vertex, Vertex) {
        (3 * i + 1, 3 * i + 2, 3 * i + 3)
    }

    /// Selector of 0-based clique `i`.
    fn selector(&self, i: usize) -> Vertex {
        3 * self.edges.len() + i + 1
    }

    fn base(&self) -> usize {
        3 * self.edges.len() + self.k
    }
}

fn rmis_paths(inst: &RmisInstance, layout: &PathLayout, extra: usize) -> Result<(Graph, Vec<(Vertex, Color)>)> {
    let mut g = Graph::new(layout.base() + extra);
    let mut pre = Vec::new();
    for (i, &(u, v)) in layout.edges.iter().enumerate() {
        let (tu, e, tv) = layout.path(i);
        g.add_edge(tu, e)?;
        g.add_edge(e, tv)?;
        g.add_edge(tu, layout.selector(inst.clique_of(u)))?;
        g.add_edge(tv, layout.selector(inst.clique_of(v)))?;
        pre.push((tu, u));
        pre.push((tv, v));
    }
    Ok((g, pre))
}

/// Paths through one uncolored middle vertex per source edge, plus one
/// selector per clique; the source has a multicolored independent set iff
/// `k * r` vertices can be happy.
pub fn gen_rmis_to_mhv(inst: &RmisInstance) -> Result<Reduction> {
    check_rmis(inst)?;
    let layout = PathLayout::new(inst);
    let (g, pre) = rmis_paths(inst, &layout, 0)?;
    Ok(Reduction {
        graph: ColoredGraph::new(g, inst.graph().n(), pre)?,
        k: inst.k() * inst.r(),
        selectors: (0..inst.k()).map(|i| layout.selector(i)).collect(),
    })
}

/// `k r + (m + k r) + (3k + 2n) m` for the path variant, plus `n m` for
/// triangles.
pub fn rmis_mhe_threshold(inst: &RmisInstance, variant: PathVariant) -> usize {
    let (n, m, k, r) = (inst.graph().n(), inst.graph().edge_count(), inst.k(), inst.r());
    let base = k * r + (m + k * r) + (3 * k + 2 * n) * m;
    match variant {
        PathVariant::Path => base,
        PathVariant::Triangle => base + n * m,
    }
}

/// The vertex gadget with middle vertices wired to the selectors and `m`
/// precolored auxiliary paths per source vertex hanging off its selector.
pub fn gen_rmis_to_mhe(inst: &RmisInstance, variant: PathVariant) -> Result<Reduction> {
    check_rmis(inst)?;
    let layout = PathLayout::new(inst);
    let (n, m) = (inst.graph().n(), layout.edges.len());
    let (mut g, mut pre) = rmis_paths(inst, &layout, 3 * n * m)?;
    let triangle = variant == PathVariant::Triangle;
    for (i, &(u, v)) in layout.edges.iter().enumerate() {
        let (tu, e, tv) = layout.path(i);
        g.ensure_edge(e, layout.selector(inst.clique_of(u)))?;
        g.ensure_edge(e, layout.selector(inst.clique_of(v)))?;
        if triangle {
            g.add_edge(tu, tv)?;
        }
    }
    let mut next = layout.base() + 1;
    for (i, clique) in inst.cliques().iter().enumerate() {
        let s = layout.selector(i);
        for &v in clique {
            for _ in 0..m {
                let (a1, a2, a3) = (next, next + 1, next + 2);
                next += 3;
                g.add_edge(a1, a2)?;
                g.add_edge(a2, a3)?;
                if triangle {
                    g.add_edge(a1, a3)?;
                }
                for a in [a1, a2, a3] {
                    g.add_edge(a, s)?;
                    pre.push((a, v));
                }
            }
        }
    }
    Ok(Reduction {
        graph: ColoredGraph::new(g, n, pre)?,
        k: rmis_mhe_threshold(inst, variant),
        selectors: (0..inst.k()).map(|i| layout.selector(i)).collect(),
    })
}

/// Coloring of an RMIS gadget built from a multicolored independent set:
/// selectors take the chosen vertices, and a middle vertex takes a chosen
/// endpoint, or else the color of the lower of its two selectors.
pub fn rmis_witness(inst: &RmisInstance, target: &Reduction, solution: &BTreeSet<Vertex>) -> Result<Coloring> {
    if !inst.is_solution(solution) {
        return Err(precondition("not a multicolored independent set"));
    }
    let layout = PathLayout::new(inst);
    let chosen: Vec<Vertex> = inst
        .cliques()
        .iter()
        .map(|c| *c.iter().find(|v| solution.contains(*v)).expect("one per clique"))
        .collect();
    let g = &target.graph;
    let mut colors: Vec<Color> = g.graph().vertices().map(|v| g.precolor(v).unwrap_or(1)).collect();
    for (i, &v) in chosen.iter().enumerate() {
        colors[layout.selector(i) - 1] = v;
    }
    for (i, &(u, v)) in layout.edges.iter().enumerate() {
        let (_, e, _) = layout.path(i);
        colors[e - 1] = if solution.contains(&u) {
            u
        } else if solution.contains(&v) {
            v
        } else {
            chosen[inst.clique_of(u).min(inst.clique_of(v))]
        };
    }
    Coloring::new(g, colors)
}

/// Stars centred at the blue vertices, leaves `u_b` (ascending `u`) after
/// their centre; selectors follow the stars.
struct StarLayout {
    centers: Vec<Vertex>,
    // (red vertex, leaf) per blue vertex
    leaves: Vec<Vec<(Vertex, Vertex)>>,
    selectors: Vec<Vertex>,
    size: usize,
}

impl StarLayout {
    fn new(inst: &CrbdsInstance) -> Self {
        let mut next = 1;
        let mut centers = Vec::new();
        let mut leaves = Vec::new();
        for b in 1..=inst.nb() {
            centers.push(next);
            next += 1;
            leaves.push(
                inst.red_neighbors(b)
                    .into_iter()
                    .map(|u| {
                        next += 1;
                        (u, next - 1)
                    })
                    .collect(),
            );
        }
        let selectors = (next..next + inst.k()).collect();
        StarLayout {
            centers,
            leaves,
            selectors,
            size: next - 1 + inst.k(),
        }
    }
}

fn crbds_stars(layout: &StarLayout, extra: usize, variant: StarVariant) -> Result<(Graph, Vec<(Vertex, Color)>)> {
    let mut g = Graph::new(layout.size + extra);
    let mut pre = Vec::new();
    for (center, leaves) in layout.centers.iter().zip(&layout.leaves) {
        for (i, &(u, leaf)) in leaves.iter().enumerate() {
            g.add_edge(*center, leaf)?;
            pre.push((leaf, u));
            if variant == StarVariant::Cluster {
                for &(_, other) in &leaves[..i] {
                    g.add_edge(other, leaf)?;
                }
            }
        }
    }
    Ok((g, pre))
}

/// Stars with selectors joined to the leaves of their color; the source
/// has a colorful dominating set iff `|B|` vertices can be happy.
pub fn gen_crbds_to_mhv(inst: &CrbdsInstance) -> Result<Reduction> {
    check_crbds(inst)?;
    crbds_to_mhv_unchecked(inst)
}

fn crbds_to_mhv_unchecked(inst: &CrbdsInstance) -> Result<Reduction> {
    let layout = StarLayout::new(inst);
    let (mut g, pre) = crbds_stars(&layout, 0, StarVariant::Star)?;
    for &(u, leaf) in layout.leaves.iter().flatten() {
        g.add_edge(leaf, layout.selectors[inst.color(u) - 1])?;
    }
    Ok(Reduction {
        graph: ColoredGraph::new(g, inst.nr(), pre)?,
        k: inst.nb(),
        selectors: layout.selectors,
    })
}

/// `(2 + k) |B|`.
pub fn crbds_mhe_threshold(inst: &CrbdsInstance) -> usize {
    (2 + inst.k()) * inst.nb()
}

/// Stars with every selector joined to every centre, and `|B|` pendant
/// vertices per red vertex hanging off the selector of its color.
pub fn gen_crbds_to_mhe(inst: &CrbdsInstance, variant: StarVariant) -> Result<Reduction> {
    check_crbds(inst)?;
    let layout = StarLayout::new(inst);
    let nb = inst.nb();
    let (mut g, mut pre) = crbds_stars(&layout, inst.nr() * nb, variant)?;
    for &c in &layout.centers {
        for &s in &layout.selectors {
            g.add_edge(c, s)?;
        }
    }
    let mut next = layout.size + 1;
    for u in 1..=inst.nr() {
        for _ in 0..nb {
            g.add_edge(next, layout.selectors[inst.color(u) - 1])?;
            pre.push((next, u));
            next += 1;
        }
    }
    Ok(Reduction {
        graph: ColoredGraph::new(g, inst.nr(), pre)?,
        k: crbds_mhe_threshold(inst),
        selectors: layout.selectors,
    })
}

/// Coloring of a CRBDS gadget built from a colorful dominating set:
/// selectors take the chosen vertex of their color, centres the least chosen
/// neighbour.
pub fn crbds_witness(inst: &CrbdsInstance, target: &Reduction, solution: &BTreeSet<Vertex>) -> Result<Coloring> {
    if !inst.is_solution(solution) {
        return Err(precondition("not a colorful dominating set"));
    }
    let layout = StarLayout::new(inst);
    let g = &target.graph;
    let mut colors: Vec<Color> = g.graph().vertices().map(|v| g.precolor(v).unwrap_or(1)).collect();
    for &u in solution {
        colors[layout.selectors[inst.color(u) - 1] - 1] = u;
    }
    for (b, &center) in (1..=inst.nb()).zip(&layout.centers) {
        let u = inst
            .red_neighbors(b)
            .into_iter()
            .find(|u| solution.contains(u))
            .expect("dominated");
        colors[center - 1] = u;
    }
    Coloring::new(g, colors)
}

const MATCHING_ATTEMPTS: usize = 64;
const MATCHING_NODES: usize = 200_000;

/// `k` cliques of `q` consecutive vertices, then `x` rounds each adding a
/// random perfect matching of new edges between distinct cliques. The result
/// is `(q - 1 + x)`-regular.
pub fn gen_random_rmis(k: usize, q: usize, x: usize, seed: u64) -> Result<RmisInstance> {
    if k < 2 || q < 2 {
        return Err(precondition(format!("need k >= 2 and q >= 2, got k = {k}, q = {q}")));
    }
    if x > q * (k - 1) {
        return Err(precondition(format!("x = {x} exceeds q(k-1) = {}", q * (k - 1))));
    }
    let n = k * q;
    if x > 0 && n % 2 == 1 {
        return Err(precondition(format!("{n} vertices admit no perfect matching")));
    }
    let cliques: Vec<Vec<Vertex>> = (0..k).map(|i| (i * q + 1..=(i + 1) * q).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MATCHING_ATTEMPTS {
        let mut g = Graph::new(n);
        for c in &cliques {
            for (a, &u) in c.iter().enumerate() {
                for &v in &c[a + 1..] {
                    g.add_edge(u, v)?;
                }
            }
        }
        let mut complete = true;
        for _ in 0..x {
            match random_perfect_matching(&g, &mut rng) {
                Some(pairs) => {
                    for (u, v) in pairs {
                        g.add_edge(u, v)?;
                    }
                }
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            return RmisInstance::new(g, cliques, q - 1 + x);
        }
    }
    Err(Error::Generation(format!(
        "no {x} disjoint cross matchings found for k = {k}, q = {q} after {MATCHING_ATTEMPTS} attempts"
    )))
}

// Perfect matching of non-edges by randomized backtracking; since all
// intra-clique pairs are already edges, every matched pair crosses cliques.
fn random_perfect_matching(g: &Graph, rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
    struct Search<'a> {
        g: &'a Graph,
        order: Vec<Vertex>,
        mate: Vec<Vertex>,
        nodes: usize,
    }
    impl Search<'_> {
        fn run(&mut self, rng: &mut ChaCha8Rng) -> bool {
            let Some(&u) = self.order.iter().find(|&&v| self.mate[v] == 0) else {
                return true;
            };
            let mut options: Vec<Vertex> = self
                .g
                .vertices()
                .filter(|&v| v != u && self.mate[v] == 0 && !self.g.has_edge(u, v))
                .collect();
            options.shuffle(rng);
            for v in options {
                self.nodes += 1;
                if self.nodes > MATCHING_NODES {
                    return false;
                }
                self.mate[u] = v;
                self.mate[v] = u;
                if self.run(rng) {
                    return true;
                }
                self.mate[u] = 0;
                self.mate[v] = 0;
            }
            false
        }
    }
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.shuffle(rng);
    let mut search = Search {
        g,
        order,
        mate: vec![0; g.n() + 1],
        nodes: 0,
    };
    search.run(rng).then(|| {
        g.vertices()
            .filter(|&u| u < search.mate[u])
            .map(|u| (u, search.mate[u]))
            .collect()
    })
}

/// `k * per_color` red vertices in consecutive color blocks and `nb` blue
/// vertices. Each red-blue pair is an edge with probability `edge_prob`;
/// blue vertices are then padded to two neighbours and red vertices to one
/// with the lowest-numbered candidates.
pub fn gen_random_crbds(k: usize, per_color: usize, nb: usize, edge_prob: f64, seed: u64) -> Result<CrbdsInstance> {
    if k == 0 || per_color < 2 || nb == 0 {
        return Err(precondition(format!(
            "need k >= 1, per_color >= 2, nb >= 1, got {k}, {per_color}, {nb}"
        )));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(precondition(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    let nr = k * per_color;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![vec![false; nb + 1]; nr + 1];
    for row in adj.iter_mut().skip(1) {
        for cell in row.iter_mut().skip(1) {
            *cell = rng.gen_bool(edge_prob);
        }
    }
    #[allow(clippy::needless_range_loop)]
    for b in 1..=nb {
        let mut r = 1;
        while (1..=nr).filter(|&r| adj[r][b]).count() < 2 {
            adj[r][b] = true;
            r += 1;
        }
    }
    for row in adj.iter_mut().skip(1) {
        if !row.iter().any(|&e| e) {
            row[1] = true;
        }
    }
    let colors = (0..nr).map(|i| i / per_color + 1).collect();
    let edges = (1..=nr).flat_map(|r| (1..=nb).map(move |b| (r, b))).filter(|&(r, b)| adj[r][b]);
    CrbdsInstance::new(colors, nb, k, edges.collect::<Vec<_>>())
}
