//! Happy vertices as a group multiway cut problem.

use std::collections::BTreeSet;

use crate::error::{contract, Error, Result};
use crate::graph::{induced_square, potentially_happy_sets, Color, ColoredGraph, Coloring, Graph, Vertex};

/// Graph with pairwise disjoint terminal groups and a deletion budget.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GmcInstance {
    graph: Graph,
    groups: Vec<BTreeSet<Vertex>>,
    budget: usize,
}

impl GmcInstance {
    pub fn new(graph: Graph, groups: Vec<BTreeSet<Vertex>>, budget: usize) -> Result<Self> {
        let mut owner = vec![None; graph.n() + 1];
        for (i, group) in groups.iter().enumerate() {
            for &v in group {
                if !graph.contains(v) {
                    return Err(contract(format!("terminal {v} out of range")));
                }
                if let Some(j) = owner[v].replace(i) {
                    return Err(contract(format!(
                        "vertex {v} lies in groups {} and {}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(GmcInstance {
            graph,
            groups,
            budget,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn groups(&self) -> &[BTreeSet<Vertex>] {
        &self.groups
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// Same instance without empty groups.
    pub fn canonical(&self) -> GmcInstance {
        GmcInstance {
            graph: self.graph.clone(),
            groups: self.groups.iter().filter(|g| !g.is_empty()).cloned().collect(),
            budget: self.budget,
        }
    }
}

/// A minimum group multiway cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmcCut {
    pub size: usize,
    pub cut: BTreeSet<Vertex>,
}

impl GmcCut {
    pub fn is_yes(&self, inst: &GmcInstance) -> bool {
        self.size <= inst.budget()
    }
}

struct Dsu {
    parent: Vec<usize>,
    color: Vec<Option<Color>>,
}

impl Dsu {
    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return true;
        }
        let merged = match (self.color[ra], self.color[rb]) {
            (Some(x), Some(y)) if x != y => return false,
            (x, y) => x.or(y),
        };
        self.parent[rb] = ra;
        self.color[ra] = merged;
        true
    }
}

/// A coloring making every vertex of `happy` happy, or `None` when two
/// differently precolored vertices are joined by a path whose every edge
/// touches `happy`.
///
/// Each component of the graph formed by the edges touching `happy` is
/// flooded with its precolor, or color 1 if it has none. Every other
/// uncolored vertex gets color 1.
pub fn feasible_happy_set(g: &ColoredGraph, happy: &BTreeSet<Vertex>) -> Result<Option<Coloring>> {
    let pot = potentially_happy_sets(g);
    if let Some(v) = happy.iter().find(|v| !pot.all.contains(v)) {
        return Err(contract(format!("vertex {v} is not potentially happy")));
    }
    let mut dsu = Dsu {
        parent: (0..=g.n()).collect(),
        color: std::iter::once(None)
            .chain(g.graph().vertices().map(|v| g.precolor(v)))
            .collect(),
    };
    for &h in happy {
        for &u in g.graph().neighbors(h) {
            if !dsu.union(h, u) {
                return Ok(None);
            }
        }
    }
    let colors: Vec<Color> = g
        .graph()
        .vertices()
        .map(|v| {
            let r = dsu.find(v);
            dsu.color[r].unwrap_or(1)
        })
        .collect();
    Coloring::new(g, colors).map(Some)
}

/// Group multiway cut instance on the square of the potentially happy
/// vertices: at least `k` vertices can be happy iff deleting
/// `|H| - k` vertices separates the precolor groups.
///
/// Vertex `i` of the result is the i-th smallest potentially happy vertex;
/// groups are the non-empty color classes in color order.
pub fn mhv_to_gmc(g: &ColoredGraph, k: usize) -> Result<GmcInstance> {
    let pot = potentially_happy_sets(g);
    let h = pot.all.len();
    if k > h {
        return Err(Error::TrivialNo { k, h });
    }
    let square = induced_square(g.graph(), &pot.all)?;
    let members: Vec<Vertex> = pot.all.iter().copied().collect();
    let position = |v: Vertex| members.binary_search(&v).expect("class member is potentially happy") + 1;
    let groups = pot
        .classes()
        .map(|(_, class)| class.iter().map(|&v| position(v)).collect())
        .collect();
    GmcInstance::new(square, groups, h - k)
}

/// Equivalent MHV instance of size `O(h^2)`: the square of the potentially
/// happy vertices with every edge subdivided, and the subdivision vertices
/// made unhappy by an adjacent pair precolored 1 and 2.
///
/// Layout: potentially happy vertices first (ascending), then one vertex per
/// square edge in lexicographic edge order, then the precolored pair.
pub fn gmc_compress_to_mhv(g: &ColoredGraph, k: usize) -> Result<(ColoredGraph, usize)> {
    let pot = potentially_happy_sets(g);
    let square = induced_square(g.graph(), &pot.all)?;
    let h = square.n();
    let edges: Vec<(Vertex, Vertex)> = square.edges().collect();
    let n = h + edges.len() + 2;
    let (t1, t2) = (n - 1, n);
    let mut out = Graph::new(n);
    for (i, &(u, v)) in edges.iter().enumerate() {
        let x = h + 1 + i;
        for y in [u, v, t1, t2] {
            out.add_edge(x, y)?;
        }
    }
    out.add_edge(t1, t2)?;
    let mut precolor: Vec<(Vertex, Color)> = pot
        .all
        .iter()
        .enumerate()
        .filter_map(|(i, &v)| pot.forced_color(v).map(|c| (i + 1, c)))
        .collect();
    precolor.push((t1, 1));
    precolor.push((t2, 2));
    let out = ColoredGraph::new(out, g.ell().max(2), precolor)?;
    Ok((out, k))
}

/// `h(h-1)/2 + h + 2`.
pub fn compression_bound(h: usize) -> usize {
    h * h.saturating_sub(1) / 2 + h + 2
}
