//! Kernelization for happy vertices parameterized by the distance to a
//! clique.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{contract, Result};
use crate::graph::{potentially_happy_sets, Color, ColoredGraph, Graph, Vertex};
use crate::oracles::next_combination;

/// Whether deleting `s` leaves a complete graph.
pub fn is_clique_modulator(g: &Graph, s: &BTreeSet<Vertex>) -> bool {
    let rest: Vec<Vertex> = g.vertices().filter(|v| !s.contains(v)).collect();
    rest.iter()
        .enumerate()
        .all(|(i, &u)| rest[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Both endpoints of a greedy maximal matching in the complement, scanning
/// vertices in ascending order. At most twice the optimum.
pub fn clique_modulator_2approx(g: &Graph) -> BTreeSet<Vertex> {
    let mut s = BTreeSet::new();
    for u in g.vertices() {
        if s.contains(&u) {
            continue;
        }
        let partner = g
            .vertices()
            .skip(u)
            .find(|&v| !s.contains(&v) && !g.has_edge(u, v));
        if let Some(v) = partner {
            s.insert(u);
            s.insert(v);
        }
    }
    s
}

/// A minimum clique modulator by exhaustive search (smallest size first,
/// then lexicographic). Exponential; meant for small graphs.
pub fn min_clique_modulator(g: &Graph) -> BTreeSet<Vertex> {
    let n = g.n();
    for size in 0..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let s: BTreeSet<Vertex> = idx.iter().map(|&i| i + 1).collect();
            if is_clique_modulator(g, &s) {
                return s;
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the whole vertex set is a clique modulator")
}

fn check_modulator(g: &Graph, s: &BTreeSet<Vertex>) -> Result<()> {
    if let Some(&v) = s.iter().find(|&&v| !g.contains(v)) {
        return Err(contract(format!("modulator vertex {v} is not in the graph")));
    }
    if !is_clique_modulator(g, s) {
        return Err(contract("deleting the modulator does not leave a clique"));
    }
    Ok(())
}

/// A colored graph carrying at most one unhappiness pair: adjacent vertices
/// precolored 1 and 2. Joining a vertex to both makes it unhappy for good.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    graph: ColoredGraph,
    pair: Option<(Vertex, Vertex)>,
}

impl GadgetGraph {
    pub fn new(graph: ColoredGraph) -> Self {
        GadgetGraph { graph, pair: None }
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn pair(&self) -> Option<(Vertex, Vertex)> {
        self.pair
    }

    pub fn into_graph(self) -> ColoredGraph {
        self.graph
    }

    /// The pair, added on first use. Lifts the instance to two colors.
    pub fn ensure_pair(&mut self) -> (Vertex, Vertex) {
        if let Some(p) = self.pair {
            return p;
        }
        self.graph.lift_colors(2);
        let t1 = self.graph.add_vertex(Some(1)).expect("two colors available");
        let t2 = self.graph.add_vertex(Some(2)).expect("two colors available");
        self.graph.add_edge(t1, t2).expect("fresh vertices");
        self.pair = Some((t1, t2));
        (t1, t2)
    }

    /// Joins every target to both pair vertices.
    pub fn make_unhappy<I>(&mut self, targets: I) -> Result<()>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let (t1, t2) = self.ensure_pair();
        for v in targets {
            if !self.graph.graph().contains(v) {
                return Err(contract(format!("vertex {v} is not in the graph")));
            }
            if v == t1 || v == t2 {
                continue;
            }
            self.graph.ensure_edge(v, t1)?;
            self.graph.ensure_edge(v, t2)?;
        }
        Ok(())
    }

    /// Induced instance on `keep` (relabelled ascending) with `targets`
    /// made unhappy. The pair survives only if both its vertices are kept.
    fn restrict(&self, keep: &BTreeSet<Vertex>, targets: &BTreeSet<Vertex>) -> Result<GadgetGraph> {
        if let Some(&v) = keep.iter().chain(targets).find(|&&v| !self.graph.graph().contains(v)) {
            return Err(contract(format!("vertex {v} is not in the graph")));
        }
        if let Some(&v) = targets.iter().find(|v| !keep.contains(*v)) {
            return Err(contract(format!("target {v} is not kept")));
        }
        let position = |v: Vertex| keep.range(..v).count() + 1;
        let pair = self
            .pair
            .filter(|(a, b)| keep.contains(a) && keep.contains(b))
            .map(|(a, b)| (position(a), position(b)));
        let mut out = GadgetGraph {
            graph: self.graph.induced(keep),
            pair,
        };
        out.make_unhappy(targets.iter().map(|&v| position(v)))?;
        Ok(out)
    }
}

/// Makes `targets` unhappy through a fresh adjacent pair precolored 1 and 2.
pub fn attach_unhappiness_gadget(g: &ColoredGraph, targets: &BTreeSet<Vertex>) -> Result<GadgetGraph> {
    let mut out = GadgetGraph::new(g.clone());
    out.make_unhappy(targets.iter().copied())?;
    Ok(out)
}

/// Potentially happy clique vertices split by forced color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliquePartitionSets {
    /// Members with no precolor in their closed neighbourhood.
    pub free: BTreeSet<Vertex>,
    // index c - 1 holds color c
    classes: Vec<BTreeSet<Vertex>>,
    /// Colors with a non-empty class.
    pub used: BTreeSet<Color>,
}

impl CliquePartitionSets {
    pub fn new(g: &ColoredGraph, s: &BTreeSet<Vertex>) -> Self {
        let pot = potentially_happy_sets(g);
        let in_clique = |set: &BTreeSet<Vertex>| -> BTreeSet<Vertex> {
            set.iter().copied().filter(|v| !s.contains(v)).collect()
        };
        let classes: Vec<BTreeSet<Vertex>> = (1..=g.ell()).map(|c| in_clique(pot.class(c))).collect();
        let used = (1..=g.ell()).filter(|&c| !classes[c - 1].is_empty()).collect();
        CliquePartitionSets {
            free: in_clique(&pot.free()),
            classes,
            used,
        }
    }

    pub fn class(&self, c: Color) -> &BTreeSet<Vertex> {
        &self.classes[c - 1]
    }

    /// Number of potentially happy clique vertices.
    pub fn len(&self) -> usize {
        self.free.len() + self.classes.iter().map(BTreeSet::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn largest_class(&self) -> usize {
        self.classes.iter().map(BTreeSet::len).max().unwrap_or(0)
    }
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// `2h + 3|S| + 3 * C(|S|, 2) + 2`.
pub fn linear_bound(h: usize, s: usize) -> usize {
    2 * h + 3 * s + 3 * choose2(s) + 2
}

/// Bound on potentially happy clique vertices once no rule applies:
/// `d^2 + d(d+1)^2`.
pub fn clique_happy_bound(d: usize) -> usize {
    d * d + d * (d + 1) * (d + 1)
}

/// Final vertex bound of [`cubic_kernel`] for an extended modulator of size `d`.
pub fn cubic_bound(d: usize) -> usize {
    linear_bound(clique_happy_bound(d) + d, d)
}

/// Vertices kept by the linear kernel and the kept ones to make unhappy.
fn linear_selection(g: &ColoredGraph, s: &BTreeSet<Vertex>, pair: Option<(Vertex, Vertex)>) -> (BTreeSet<Vertex>, BTreeSet<Vertex>) {
    let graph = g.graph();
    let pot = potentially_happy_sets(g);
    let mut keep: BTreeSet<Vertex> = pot.all.union(s).copied().collect();
    for &v in &pot.all {
        if let Some(c) = pot.forced_color(v) {
            if let Some(&u) = graph.neighbors(v).iter().find(|&&u| g.precolor(u) == Some(c)) {
                keep.insert(u);
            }
        }
    }
    for &x in s {
        if let Some(&u) = graph.neighbors(x).iter().find(|u| !s.contains(*u)) {
            keep.insert(u);
        }
    }
    let members: Vec<Vertex> = s.iter().copied().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if let Some(&w) = graph.neighbors(a).intersection(graph.neighbors(b)).next() {
                keep.insert(w);
            }
        }
    }
    let in_pair = |v: &Vertex| pair.is_some_and(|(a, b)| *v == a || *v == b);
    let targets = keep
        .iter()
        .copied()
        .filter(|v| !pot.all.contains(v) && !in_pair(v))
        .collect();
    (keep, targets)
}

/// Equivalent instance on at most [`linear_bound`] vertices, given a clique
/// modulator `s`. The budget `k` is unchanged.
pub fn linear_kernel(g: &ColoredGraph, k: usize, s: &BTreeSet<Vertex>) -> Result<(ColoredGraph, usize)> {
    check_modulator(g.graph(), s)?;
    let (keep, targets) = linear_selection(g, s, None);
    let out = GadgetGraph::new(g.clone()).restrict(&keep, &targets)?;
    Ok((out.into_graph(), k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Adds the unhappiness pair and extends the modulator with it.
    Gadget,
    /// Drops a color no vertex is precolored with.
    UnusedColor,
    /// Makes a color class unhappy when it trails the largest by more than `d`.
    SmallClass,
    /// Cuts an uncolored modulator vertex off one of too many clique neighbours.
    HeavyEdge,
    /// Makes a free clique vertex without modulator neighbours unhappy.
    FreeSurplus,
    /// Makes one vertex per used color unhappy when every class is large.
    ColoredSurplus,
    /// Restricts to the linear kernel.
    Linear,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Gadget => "gadget",
            Rule::UnusedColor => "unused-color",
            Rule::SmallClass => "small-class",
            Rule::HeavyEdge => "heavy-edge",
            Rule::FreeSurplus => "free-surplus",
            Rule::ColoredSurplus => "colored-surplus",
            Rule::Linear => "linear",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    AddPair { t1: Vertex, t2: Vertex },
    DropColor(Color),
    MakeUnhappy(Vec<Vertex>),
    RemoveEdge(Vertex, Vertex),
    /// Vertices in the numbering before the step.
    Restrict {
        keep: BTreeSet<Vertex>,
        targets: BTreeSet<Vertex>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleRecord {
    pub rule: Rule,
    pub action: Action,
    pub k_delta: i64,
}

/// Applied rules plus the resulting instance and budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTrace {
    pub records: Vec<RuleRecord>,
    /// Extended modulator before the final restriction.
    pub modulator: BTreeSet<Vertex>,
    /// Potentially happy clique vertices once no rule applies.
    pub clique_happy: usize,
    pub graph: ColoredGraph,
    pub k: i64,
}

impl KernelTrace {
    pub fn d(&self) -> usize {
        self.modulator.len()
    }

    pub fn k_delta(&self) -> i64 {
        self.records.iter().map(|r| r.k_delta).sum()
    }

    /// Re-applies the records to `input`.
    pub fn replay(&self, input: &ColoredGraph, k: usize) -> Result<(ColoredGraph, i64)> {
        let mut w = GadgetGraph::new(input.clone());
        let mut k = k as i64;
        for rec in &self.records {
            apply(&mut w, &rec.action)?;
            k += rec.k_delta;
        }
        Ok((w.into_graph(), k))
    }
}

fn apply(w: &mut GadgetGraph, action: &Action) -> Result<()> {
    match action {
        Action::AddPair { t1, t2 } => {
            if w.ensure_pair() != (*t1, *t2) {
                return Err(contract("pair recorded at different vertices"));
            }
        }
        Action::DropColor(c) => w.graph.remove_unused_color(*c)?,
        Action::MakeUnhappy(vs) => w.make_unhappy(vs.iter().copied())?,
        Action::RemoveEdge(u, v) => {
            if !w.graph.remove_edge(*u, *v) {
                return Err(contract(format!("edge {u}-{v} is missing")));
            }
        }
        Action::Restrict { keep, targets } => *w = w.restrict(keep, targets)?,
    }
    Ok(())
}

fn write_set<'a>(f: &mut fmt::Formatter<'_>, vs: impl IntoIterator<Item = &'a Vertex>) -> fmt::Result {
    for v in vs {
        write!(f, " {v}")?;
    }
    Ok(())
}

impl fmt::Display for RuleRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule.name())?;
        match &self.action {
            Action::AddPair { t1, t2 } => write!(f, " pair {t1} {t2}")?,
            Action::DropColor(c) => write!(f, " drop {c}")?,
            Action::MakeUnhappy(vs) => {
                write!(f, " unhappy")?;
                write_set(f, vs)?;
            }
            Action::RemoveEdge(u, v) => write!(f, " cut {u} {v}")?,
            Action::Restrict { keep, targets } => {
                write!(f, " keep")?;
                write_set(f, keep)?;
                write!(f, " ; unhappy")?;
                write_set(f, targets)?;
            }
        }
        write!(f, " ; dk {}", self.k_delta)
    }
}

impl fmt::Display for KernelTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rec in &self.records {
            writeln!(f, "{rec}")?;
        }
        writeln!(
            f,
            "result n {} m {} ell {} k {} d {} clique-happy {}",
            self.graph.n(),
            self.graph.graph().edge_count(),
            self.graph.ell(),
            self.k,
            self.d(),
            self.clique_happy
        )
    }
}

/// Equivalent instance on at most [`cubic_bound`] vertices.
///
/// Without `s` the modulator comes from [`clique_modulator_2approx`]. Rules
/// are tried in a fixed priority and the scan restarts after every
/// application. The budget may drop below zero, which means a yes-instance.
pub fn cubic_kernel(g: &ColoredGraph, k: usize, s: Option<&BTreeSet<Vertex>>) -> Result<KernelTrace> {
    let mut s = match s {
        Some(s) => {
            check_modulator(g.graph(), s)?;
            s.clone()
        }
        None => clique_modulator_2approx(g.graph()),
    };
    let mut w = GadgetGraph::new(g.clone());
    let mut records = Vec::new();
    let mut push = |rule, action, k_delta| records.push(RuleRecord { rule, action, k_delta });

    let (t1, t2) = w.ensure_pair();
    s.insert(t1);
    s.insert(t2);
    push(Rule::Gadget, Action::AddPair { t1, t2 }, 0);
    let d = s.len();
    let mut k = k as i64;

    loop {
        let cg = w.graph();
        let graph = cg.graph();
        let present: BTreeSet<Color> = cg.precolored().map(|(_, c)| c).collect();
        if let Some(c) = (1..=cg.ell()).find(|c| !present.contains(c)) {
            let action = Action::DropColor(c);
            apply(&mut w, &action)?;
            push(Rule::UnusedColor, action, 0);
            continue;
        }
        if cg.ell() > d + 1 {
            // two clique vertices carry distinct precolors, so only the
            // modulator can be happy
            break;
        }
        let parts = CliquePartitionSets::new(cg, &s);

        let largest = parts.largest_class();
        if let Some(&c) = parts.used.iter().find(|&&c| parts.class(c).len() + d < largest) {
            let action = Action::MakeUnhappy(parts.class(c).iter().copied().collect());
            apply(&mut w, &action)?;
            push(Rule::SmallClass, action, 0);
            continue;
        }

        let heavy = s
            .iter()
            .filter(|&&v| cg.precolor(v).is_none())
            .find_map(|&v| {
                std::iter::once(&parts.free)
                    .chain(parts.used.iter().map(|&c| parts.class(c)))
                    .find_map(|set| {
                        let hit = graph.neighbors(v).iter().filter(|u| set.contains(*u));
                        let least = *hit.clone().next()?;
                        (hit.count() > d).then_some((v, least))
                    })
            });
        if let Some((v, u)) = heavy {
            let action = Action::RemoveEdge(v, u);
            apply(&mut w, &action)?;
            push(Rule::HeavyEdge, action, 0);
            continue;
        }

        let outside = |v: &&Vertex| graph.neighbors(**v).iter().all(|u| !s.contains(u));
        if parts.free.len() > d + 1 {
            if let Some(&v) = parts.free.iter().find(outside) {
                let action = Action::MakeUnhappy(vec![v]);
                apply(&mut w, &action)?;
                push(Rule::FreeSurplus, action, -1);
                k -= 1;
                continue;
            }
        }

        let only_precolored = |v: &&Vertex| {
            graph
                .neighbors(**v)
                .iter()
                .all(|u| !s.contains(u) || cg.precolor(*u).is_some())
        };
        let picks: Option<Vec<Vertex>> = parts
            .used
            .iter()
            .map(|&c| {
                let class = parts.class(c);
                if class.len() > d + 1 {
                    class.iter().find(only_precolored).copied()
                } else {
                    None
                }
            })
            .collect();
        if let Some(picks) = picks.filter(|p| !p.is_empty()) {
            let action = Action::MakeUnhappy(picks);
            apply(&mut w, &action)?;
            push(Rule::ColoredSurplus, action, -1);
            k -= 1;
            continue;
        }
        break;
    }

    let clique_happy = CliquePartitionSets::new(w.graph(), &s).len();
    let (keep, targets) = linear_selection(w.graph(), &s, w.pair());
    let action = Action::Restrict { keep, targets };
    apply(&mut w, &action)?;
    push(Rule::Linear, action, 0);
    Ok(KernelTrace {
        records,
        modulator: s,
        clique_happy,
        graph: w.into_graph(),
        k,
    })
}
