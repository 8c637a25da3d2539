//! Clique-width expressions and a node multiway cut solver over them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{contract, Result};
use crate::graph::{Graph, Vertex};
use crate::oracles::CutCost;
use crate::par::{self, Execution};

pub type Label = usize;
pub type NodeId = usize;

/// Largest label the cut solver can track.
pub const MAX_LABEL: Label = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WNode {
    Introduce { vertex: Vertex, label: Label },
    Union(NodeId, NodeId),
    Rename { from: Label, to: Label, child: NodeId },
    Join { a: Label, b: Label, child: NodeId },
}

/// Expression tree stored in post-order: children precede their parent and
/// the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WExpression {
    nodes: Vec<WNode>,
}

impl WExpression {
    pub fn introduce(vertex: Vertex, label: Label) -> Result<Self> {
        let mut b = Builder::default();
        b.introduce(vertex, label)?;
        b.finish()
    }

    pub fn union(self, other: WExpression) -> Result<Self> {
        let mut b = Builder::from(self);
        let left = b.root();
        let right = b.append(other)?;
        b.union(left, right);
        b.finish()
    }

    pub fn rename(self, from: Label, to: Label) -> Result<Self> {
        let mut b = Builder::from(self);
        let child = b.root();
        b.rename(from, to, child)?;
        b.finish()
    }

    pub fn join(self, a: Label, b_label: Label) -> Result<Self> {
        let mut b = Builder::from(self);
        let child = b.root();
        b.join(a, b_label, child)?;
        b.finish()
    }

    pub fn nodes(&self) -> &[WNode] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        self.nodes.len() - 1
    }

    /// Largest label mentioned anywhere in the expression.
    pub fn width(&self) -> Label {
        self.nodes
            .iter()
            .map(|n| match *n {
                WNode::Introduce { label, .. } => label,
                WNode::Union(..) => 0,
                WNode::Rename { from, to, .. } => from.max(to),
                WNode::Join { a, b, .. } => a.max(b),
            })
            .max()
            .unwrap_or(0)
    }

    /// Introduced vertex ids, ascending.
    pub fn vertex_ids(&self) -> BTreeSet<Vertex> {
        self.nodes
            .iter()
            .filter_map(|n| match *n {
                WNode::Introduce { vertex, .. } => Some(vertex),
                _ => None,
            })
            .collect()
    }
}

/// Incremental construction of a [`WExpression`] arena.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    nodes: Vec<WNode>,
    ids: BTreeSet<Vertex>,
}

impl From<WExpression> for Builder {
    fn from(e: WExpression) -> Self {
        let ids = e.vertex_ids();
        Builder { nodes: e.nodes, ids }
    }
}

impl Builder {
    fn push(&mut self, node: WNode) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn root(&self) -> NodeId {
        self.nodes.len() - 1
    }

    fn append(&mut self, other: WExpression) -> Result<NodeId> {
        for v in other.vertex_ids() {
            if !self.ids.insert(v) {
                return Err(contract(format!("duplicate vertex id {v}")));
            }
        }
        let offset = self.nodes.len();
        self.nodes.extend(other.nodes.into_iter().map(|n| match n {
            WNode::Union(l, r) => WNode::Union(l + offset, r + offset),
            WNode::Rename { from, to, child } => WNode::Rename {
                from,
                to,
                child: child + offset,
            },
            WNode::Join { a, b, child } => WNode::Join {
                a,
                b,
                child: child + offset,
            },
            leaf => leaf,
        }));
        Ok(self.root())
    }

    pub fn introduce(&mut self, vertex: Vertex, label: Label) -> Result<NodeId> {
        check_label(label)?;
        if !self.ids.insert(vertex) {
            return Err(contract(format!("duplicate vertex id {vertex}")));
        }
        Ok(self.push(WNode::Introduce { vertex, label }))
    }

    pub fn union(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.push(WNode::Union(left, right))
    }

    pub fn rename(&mut self, from: Label, to: Label, child: NodeId) -> Result<NodeId> {
        check_label(from)?;
        check_label(to)?;
        Ok(self.push(WNode::Rename { from, to, child }))
    }

    pub fn join(&mut self, a: Label, b: Label, child: NodeId) -> Result<NodeId> {
        check_label(a)?;
        check_label(b)?;
        if a == b {
            return Err(contract(format!("join needs two distinct labels, got {a} twice")));
        }
        Ok(self.push(WNode::Join { a, b, child }))
    }

    /// The expression rooted at the most recently added node. Every other
    /// node must be the child of exactly one later node.
    pub fn finish(self) -> Result<WExpression> {
        if self.nodes.is_empty() {
            return Err(contract("empty expression"));
        }
        let mut uses = vec![0usize; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            for c in children(node) {
                if c >= id {
                    return Err(contract(format!("node {id} refers forward to {c}")));
                }
                uses[c] += 1;
            }
        }
        let root = self.nodes.len() - 1;
        if let Some(bad) = (0..root).find(|&i| uses[i] != 1) {
            return Err(contract(format!("node {bad} is used {} times", uses[bad])));
        }
        Ok(WExpression {
            nodes: canonical_order(&self.nodes),
        })
    }
}

fn children(node: &WNode) -> Vec<NodeId> {
    match *node {
        WNode::Introduce { .. } => vec![],
        WNode::Union(l, r) => vec![l, r],
        WNode::Rename { child, .. } | WNode::Join { child, .. } => vec![child],
    }
}

// Post-order from the root, left child first.
fn canonical_order(nodes: &[WNode]) -> Vec<WNode> {
    let mut order = Vec::with_capacity(nodes.len());
    let mut stack = vec![(nodes.len() - 1, false)];
    while let Some((id, expanded)) = stack.pop() {
        if expanded {
            order.push(id);
            continue;
        }
        stack.push((id, true));
        for c in children(&nodes[id]).into_iter().rev() {
            stack.push((c, false));
        }
    }
    let mut new_id = vec![0; nodes.len()];
    for (i, &old) in order.iter().enumerate() {
        new_id[old] = i;
    }
    order
        .iter()
        .map(|&old| match nodes[old] {
            WNode::Union(l, r) => WNode::Union(new_id[l], new_id[r]),
            WNode::Rename { from, to, child } => WNode::Rename {
                from,
                to,
                child: new_id[child],
            },
            WNode::Join { a, b, child } => WNode::Join {
                a,
                b,
                child: new_id[child],
            },
            leaf => leaf,
        })
        .collect()
}

fn check_label(l: Label) -> Result<()> {
    if l == 0 {
        return Err(contract("labels start at 1"));
    }
    Ok(())
}

/// The graph defined by an expression. Vertex `i` of `graph` is the i-th
/// smallest vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertex_ids: Vec<Vertex>,
    pub labels: Vec<Label>,
    pub graph: Graph,
}

impl LabeledGraph {
    /// Graph vertex carrying expression id `id`.
    pub fn index_of(&self, id: Vertex) -> Option<Vertex> {
        self.vertex_ids.binary_search(&id).ok().map(|i| i + 1)
    }
}

pub fn eval(expr: &WExpression) -> LabeledGraph {
    let vertex_ids: Vec<Vertex> = expr.vertex_ids().into_iter().collect();
    let index: BTreeMap<Vertex, usize> =
        vertex_ids.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
    let mut graph = Graph::new(vertex_ids.len());
    let mut labels = vec![0; vertex_ids.len() + 1];
    // members[node] = graph vertices below the node
    let mut members: Vec<Vec<Vertex>> = Vec::with_capacity(expr.nodes.len());
    for node in &expr.nodes {
        let here = match *node {
            WNode::Introduce { vertex, label } => {
                let v = index[&vertex];
                labels[v] = label;
                vec![v]
            }
            WNode::Union(l, r) => {
                let mut m = std::mem::take(&mut members[l]);
                m.append(&mut std::mem::take(&mut members[r]));
                m
            }
            WNode::Rename { from, to, child } => {
                let m = std::mem::take(&mut members[child]);
                for &v in &m {
                    if labels[v] == from {
                        labels[v] = to;
                    }
                }
                m
            }
            WNode::Join { a, b, child } => {
                let m = std::mem::take(&mut members[child]);
                for &u in m.iter().filter(|&&u| labels[u] == a) {
                    for &v in m.iter().filter(|&&v| labels[v] == b) {
                        graph.ensure_edge(u, v).expect("distinct vertices");
                    }
                }
                m
            }
        };
        members.push(here);
    }
    labels.remove(0);
    LabeledGraph {
        vertex_ids,
        labels,
        graph,
    }
}

/// Per-label summary of a cut state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelType {
    /// No surviving vertex has this label.
    Empty,
    /// Surviving vertices of this label reach no terminal.
    Free,
    /// All surviving vertices of this label reach the same terminal; the
    /// group number is canonical by first occurrence in label order.
    Group(usize),
    /// Vertices of this label reach two different terminals.
    Mixed,
}

/// Canonical per-label view of a DP state over labels `1..=width`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutState(pub Vec<LabelType>);

/// Components of the surviving graph, each recorded as the set of labels it
/// carries. A label is poisoned once it meets two terminal components; any
/// later join on it would connect two terminals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct CompState {
    terminals: Vec<u64>,
    free: Vec<u64>,
    poison: u64,
}

impl CompState {
    fn empty() -> Self {
        CompState {
            terminals: Vec::new(),
            free: Vec::new(),
            poison: 0,
        }
    }

    fn present(&self) -> u64 {
        self.terminals
            .iter()
            .chain(&self.free)
            .fold(self.poison, |acc, &m| acc | m)
    }

    fn normalize(mut self) -> Self {
        let mut seen = 0u64;
        for &m in &self.terminals {
            self.poison |= seen & m;
            seen |= m;
        }
        let poison = self.poison;
        self.terminals.retain(|&m| m & !poison != 0);
        self.terminals.sort_unstable();
        self.terminals.dedup();
        let terminal_masks = self.terminals.clone();
        let mut free: Vec<u64> = std::mem::take(&mut self.free)
            .into_iter()
            .filter(|&m| m & !poison != 0)
            .filter(|&m| terminal_masks.iter().all(|&t| m & !t != 0))
            .collect();
        free.sort_unstable();
        free.dedup();
        let kept: Vec<u64> = free
            .iter()
            .copied()
            .filter(|&m| free.iter().all(|&o| o == m || m & !o != 0))
            .collect();
        self.free = kept;
        self
    }

    fn union(&self, other: &CompState) -> CompState {
        let mut terminals = self.terminals.clone();
        terminals.extend(&other.terminals);
        let mut free = self.free.clone();
        free.extend(&other.free);
        CompState {
            terminals,
            free,
            poison: self.poison | other.poison,
        }
        .normalize()
    }

    fn rename(&self, from: Label, to: Label) -> CompState {
        let (f, t) = (bit(from), bit(to));
        let remap = |m: u64| if m & f != 0 { (m & !f) | t } else { m };
        CompState {
            terminals: self.terminals.iter().map(|&m| remap(m)).collect(),
            free: self.free.iter().map(|&m| remap(m)).collect(),
            poison: remap(self.poison),
        }
        .normalize()
    }

    /// `None` when the join would connect two terminals.
    fn join(&self, a: Label, b: Label) -> Option<CompState> {
        let present = self.present();
        let (ba, bb) = (bit(a), bit(b));
        if present & ba == 0 || present & bb == 0 {
            return Some(self.clone());
        }
        if self.poison & (ba | bb) != 0 {
            return None;
        }
        let touched = ba | bb;
        let mut merged = 0u64;
        let mut terminal_hits = 0;
        let mut terminals = Vec::with_capacity(self.terminals.len());
        for &m in &self.terminals {
            if m & touched != 0 {
                merged |= m;
                terminal_hits += 1;
            } else {
                terminals.push(m);
            }
        }
        if terminal_hits > 1 {
            return None;
        }
        let mut free = Vec::with_capacity(self.free.len());
        for &m in &self.free {
            if m & touched != 0 {
                merged |= m;
            } else {
                free.push(m);
            }
        }
        if terminal_hits == 1 {
            terminals.push(merged);
        } else {
            free.push(merged);
        }
        Some(
            CompState {
                terminals,
                free,
                poison: self.poison,
            }
            .normalize(),
        )
    }

    fn project(&self, width: Label) -> CutState {
        let mut groups: Vec<usize> = Vec::new();
        let types = (1..=width)
            .map(|l| {
                let m = bit(l);
                if self.poison & m != 0 {
                    return LabelType::Mixed;
                }
                if let Some(t) = self.terminals.iter().position(|&t| t & m != 0) {
                    let g = match groups.iter().position(|&x| x == t) {
                        Some(g) => g,
                        None => {
                            groups.push(t);
                            groups.len() - 1
                        }
                    };
                    return LabelType::Group(g + 1);
                }
                if self.free.iter().any(|&f| f & m != 0) {
                    LabelType::Free
                } else {
                    LabelType::Empty
                }
            })
            .collect();
        CutState(types)
    }
}

fn bit(l: Label) -> u64 {
    1u64 << (l - 1)
}

type Table = HashMap<CompState, usize>;

fn relax(table: &mut Table, state: CompState, cost: usize) {
    table
        .entry(state)
        .and_modify(|c| *c = (*c).min(cost))
        .or_insert(cost);
}

/// Outcome of [`solve_nmc_cw`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NmcSolution {
    pub min_cut: CutCost,
    /// Largest DP table over all subexpressions.
    pub max_states: usize,
    /// Table size per node, indexed like [`WExpression::nodes`].
    pub states_per_node: Vec<usize>,
}

impl NmcSolution {
    pub fn is_yes(&self, k: usize) -> bool {
        self.min_cut.within(k)
    }
}

/// Minimum number of non-terminal vertices whose deletion pairwise separates
/// `terminals` in the evaluated graph.
pub fn solve_nmc_cw(
    expr: &WExpression,
    terminals: &BTreeSet<Vertex>,
    exec: Execution,
) -> Result<NmcSolution> {
    let ids = expr.vertex_ids();
    if let Some(t) = terminals.iter().find(|t| !ids.contains(t)) {
        return Err(contract(format!("terminal {t} is not a vertex of the expression")));
    }
    if expr.width() > MAX_LABEL {
        return Err(contract(format!(
            "width {} exceeds the supported {MAX_LABEL} labels",
            expr.width()
        )));
    }
    let sizes: Vec<AtomicUsize> = expr.nodes.iter().map(|_| AtomicUsize::new(0)).collect();
    let table = solve_node(expr, expr.root(), terminals, exec, &sizes);
    let sizes: Vec<usize> = sizes.into_iter().map(AtomicUsize::into_inner).collect();
    let min_cut = table
        .values()
        .min()
        .map_or(CutCost::Infinite, |&c| CutCost::Finite(c));
    Ok(NmcSolution {
        min_cut,
        max_states: sizes.iter().copied().max().unwrap_or(0),
        states_per_node: sizes,
    })
}

/// The DP tables for every node, projected to per-label types.
pub fn cut_states(
    expr: &WExpression,
    terminals: &BTreeSet<Vertex>,
) -> Vec<BTreeMap<Vec<LabelType>, usize>> {
    let width = expr.width();
    let sizes: Vec<AtomicUsize> = expr.nodes.iter().map(|_| AtomicUsize::new(0)).collect();
    let mut out = Vec::with_capacity(expr.nodes.len());
    for id in 0..expr.nodes.len() {
        let table = solve_node(expr, id, terminals, Execution::Sequential, &sizes);
        let mut projected = BTreeMap::new();
        for (s, c) in table {
            let key = s.project(width).0;
            let e = projected.entry(key).or_insert(c);
            *e = (*e).min(c);
        }
        out.push(projected);
    }
    out
}

fn solve_node(
    expr: &WExpression,
    id: NodeId,
    terminals: &BTreeSet<Vertex>,
    exec: Execution,
    sizes: &[AtomicUsize],
) -> Table {
    let mut table = Table::new();
    match expr.nodes[id] {
        WNode::Introduce { vertex, label } => {
            let m = bit(label);
            if terminals.contains(&vertex) {
                let mut s = CompState::empty();
                s.terminals.push(m);
                table.insert(s, 0);
            } else {
                let mut s = CompState::empty();
                s.free.push(m);
                table.insert(s, 0);
                table.insert(CompState::empty(), 1);
            }
        }
        WNode::Union(l, r) => {
            let (left, right) = par::join(
                exec,
                || solve_node(expr, l, terminals, exec, sizes),
                || solve_node(expr, r, terminals, exec, sizes),
            );
            for (ls, &lc) in &left {
                for (rs, &rc) in &right {
                    relax(&mut table, ls.union(rs), lc + rc);
                }
            }
        }
        WNode::Rename { from, to, child } => {
            for (s, c) in solve_node(expr, child, terminals, exec, sizes) {
                relax(&mut table, s.rename(from, to), c);
            }
        }
        WNode::Join { a, b, child } => {
            for (s, c) in solve_node(expr, child, terminals, exec, sizes) {
                if let Some(next) = s.join(a, b) {
                    relax(&mut table, next, c);
                }
            }
        }
    }
    sizes[id].store(table.len(), Ordering::Relaxed);
    table
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn terms(ts: &[Vertex]) -> BTreeSet<Vertex> {
        ts.iter().copied().collect()
    }

    #[test]
    fn single_vertex() {
        let e = WExpression::introduce(1, 1).unwrap();
        let lg = eval(&e);
        assert_eq!(lg.graph.n(), 1);
        assert_eq!(lg.labels, vec![1]);
    }

    #[test]
    fn edge_expression() {
        let lg = eval(&edge());
        assert_eq!(lg.graph.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn p3_expression_builds_a_path() {
        let lg = eval(&p3());
        assert_eq!(lg.graph.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
        assert_eq!(p3().width(), 3);
    }

    #[test]
    fn duplicate_ids_and_bad_joins_are_rejected() {
        let a = WExpression::introduce(1, 1).unwrap();
        let b = WExpression::introduce(1, 2).unwrap();
        assert!(a.clone().union(b).is_err());
        assert!(a.clone().join(1, 1).is_err());
        assert!(WExpression::introduce(2, 0).is_err());
    }

    #[test]
    fn nmc_examples() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let s = solve_nmc_cw(&p3(), &terms(&[1, 3]), exec).unwrap();
            assert_eq!(s.min_cut, CutCost::Finite(1));
            assert!(s.is_yes(1) && !s.is_yes(0));
            let s = solve_nmc_cw(&edge(), &terms(&[1, 2]), exec).unwrap();
            assert_eq!(s.min_cut, CutCost::Infinite);
            let s = solve_nmc_cw(&p3(), &terms(&[2]), exec).unwrap();
            assert_eq!(s.min_cut, CutCost::Finite(0));
        }
    }

    #[test]
    fn unknown_terminal_is_rejected() {
        assert!(solve_nmc_cw(&p3(), &terms(&[9]), Execution::Sequential).is_err());
    }

    // a - b joined while neither reaches a terminal, then a meets t, the
    // labels of a and t merge and t' arrives on a fresh label that is joined
    // to b's label: t - a - b - t' needs one deletion.
    #[test]
    fn free_component_spanning_labels_is_tracked() {
        let mut bld = Builder::default();
        let a = bld.introduce(1, 1).unwrap();
        let b = bld.introduce(2, 3).unwrap();
        let ab = bld.union(a, b);
        let ab = bld.join(1, 3, ab).unwrap();
        let t = bld.introduce(3, 2).unwrap();
        let abt = bld.union(ab, t);
        let abt = bld.join(1, 2, abt).unwrap();
        let renamed = bld.rename(1, 2, abt).unwrap();
        let t2 = bld.introduce(4, 1).unwrap();
        let all = bld.union(renamed, t2);
        bld.join(1, 3, all).unwrap();
        let e = bld.finish().unwrap();
        let g = eval(&e).graph;
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 4)]);
        let s = solve_nmc_cw(&e, &terms(&[3, 4]), Execution::Sequential).unwrap();
        assert_eq!(s.min_cut, CutCost::Finite(1));
    }

    #[test]
    fn projection_of_p3_root() {
        let tables = cut_states(&p3(), &terms(&[1, 3]));
        let root = tables.last().unwrap();
        // keeping vertex 2 joins both terminals, so only the cut survives
        assert_eq!(root.len(), 1);
        let (types, cost) = root.iter().next().unwrap();
        assert_eq!(*cost, 1);
        assert_eq!(
            types,
            &vec![LabelType::Group(1), LabelType::Empty, LabelType::Group(2)]
        );
    }
}
