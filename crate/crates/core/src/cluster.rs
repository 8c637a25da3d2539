//! Maximum happy vertices parameterized by the distance to a cluster graph.
//!
//! For every guess of which modulator vertices are happy and how the
//! modulator splits into color classes, [`find_coloring`] builds the best
//! coloring consistent with the guess; the overall optimum is the best of
//! these over all guesses.

use std::collections::BTreeSet;

use crate::error::{contract, Result};
use crate::graph::{happy_vertices, Color, ColoredGraph, Coloring, Graph, Vertex};
use crate::matching::max_weight_assignment;
use crate::par::{self, Execution};

/// Lexicographically first induced path on three vertices, as a sorted
/// triple, ignoring `removed` vertices.
pub fn first_induced_p3(g: &Graph, removed: &BTreeSet<Vertex>) -> Option<[Vertex; 3]> {
    let alive: Vec<Vertex> = g.vertices().filter(|v| !removed.contains(v)).collect();
    for (i, &a) in alive.iter().enumerate() {
        for (j, &b) in alive.iter().enumerate().skip(i + 1) {
            for &c in &alive[j + 1..] {
                let edges = g.has_edge(a, b) as u8 + g.has_edge(a, c) as u8 + g.has_edge(b, c) as u8;
                if edges == 2 {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

pub fn is_cluster_graph(g: &Graph, removed: &BTreeSet<Vertex>) -> bool {
    first_induced_p3(g, removed).is_none()
}

/// Minimum vertex set whose removal leaves a disjoint union of cliques.
///
/// Iterative deepening over the size bound; each node branches on the
/// vertices of the first induced P3 in ascending order.
pub fn find_cluster_modulator(g: &Graph) -> BTreeSet<Vertex> {
    fn branch(g: &Graph, removed: &mut BTreeSet<Vertex>, budget: usize) -> bool {
        let Some(p3) = first_induced_p3(g, removed) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for v in p3 {
            removed.insert(v);
            if branch(g, removed, budget - 1) {
                return true;
            }
            removed.remove(&v);
        }
        false
    }
    let mut removed = BTreeSet::new();
    for budget in 0..=g.n() {
        if branch(g, &mut removed, budget) {
            return removed;
        }
    }
    unreachable!("removing every vertex leaves an empty cluster graph")
}

/// Bell number `B(d)`.
pub fn bell(d: usize) -> u128 {
    // Bell triangle
    let mut row = vec![1u128];
    for _ in 0..d {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

/// All set partitions of `0..d` as restricted growth strings, in
/// lexicographic order.
pub fn restricted_growth_strings(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut s = vec![0usize; d];
    loop {
        out.push(s.clone());
        // rightmost position that can still grow
        let mut i = d;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let cap = s[..i].iter().max().map_or(0, |m| m + 1);
            if s[i] < cap {
                s[i] += 1;
                for x in &mut s[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Which modulator vertices are happy, and how the modulator splits into
/// color classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterGuess {
    pub happy: BTreeSet<Vertex>,
    pub blocks: Vec<BTreeSet<Vertex>>,
}

impl ClusterGuess {
    /// Guess from a restricted growth string over the sorted modulator and
    /// a bitmask selecting the happy members.
    pub fn from_codes(modulator: &[Vertex], happy_mask: u64, rgs: &[usize]) -> Self {
        let t = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![BTreeSet::new(); t];
        for (&v, &b) in modulator.iter().zip(rgs) {
            blocks[b].insert(v);
        }
        let happy = modulator
            .iter()
            .enumerate()
            .filter(|(i, _)| happy_mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        ClusterGuess { happy, blocks }
    }

    /// The guess that describes `coloring` on the modulator.
    pub fn of_coloring(g: &ColoredGraph, modulator: &BTreeSet<Vertex>, coloring: &Coloring) -> Result<Self> {
        let happy = happy_vertices(g, coloring)?;
        let mut blocks: Vec<(Color, BTreeSet<Vertex>)> = Vec::new();
        for &v in modulator {
            let c = coloring.color(v);
            match blocks.iter_mut().find(|(bc, _)| *bc == c) {
                Some((_, b)) => {
                    b.insert(v);
                }
                None => blocks.push((c, BTreeSet::from([v]))),
            }
        }
        Ok(ClusterGuess {
            happy: happy.intersection(modulator).copied().collect(),
            blocks: blocks.into_iter().map(|(_, b)| b).collect(),
        })
    }
}

/// Color variables forced by a guess: `sigma[v]` is the variable of vertex
/// `v` (0-based), `lambda[i]` the color already fixed for variable `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableAssignment {
    pub sigma: Vec<Option<usize>>,
    pub lambda: Vec<Option<Color>>,
}

fn check_guess(g: &ColoredGraph, modulator: &BTreeSet<Vertex>, guess: &ClusterGuess) -> Result<()> {
    if let Some(v) = modulator.iter().find(|&&v| !g.graph().contains(v)) {
        return Err(contract(format!("modulator vertex {v} out of range")));
    }
    if !guess.happy.is_subset(modulator) {
        return Err(contract("happy guess must lie inside the modulator"));
    }
    let mut covered = BTreeSet::new();
    for block in &guess.blocks {
        if block.is_empty() {
            return Err(contract("partition blocks must be non-empty"));
        }
        for &v in block {
            if !covered.insert(v) {
                return Err(contract(format!("vertex {v} lies in two blocks")));
            }
        }
    }
    if &covered != modulator {
        return Err(contract("partition blocks must cover the modulator exactly"));
    }
    Ok(())
}

/// Variable assignment implied by a guess, or `None` when the guess
/// contradicts itself or the precoloring.
pub fn assign_variables(
    g: &ColoredGraph,
    modulator: &BTreeSet<Vertex>,
    guess: &ClusterGuess,
) -> Result<Option<VariableAssignment>> {
    check_guess(g, modulator, guess)?;
    let graph = g.graph();
    let t = guess.blocks.len();
    let mut sigma = vec![None; g.n() + 1];
    for (i, block) in guess.blocks.iter().enumerate() {
        for &v in block {
            sigma[v] = Some(i);
        }
    }
    for &v in &guess.happy {
        for &u in graph.neighbors(v) {
            match sigma[u] {
                None => sigma[u] = sigma[v],
                Some(x) if Some(x) != sigma[v] => return Ok(None),
                _ => {}
            }
        }
    }
    let mut lambda = vec![None; t];
    for v in graph.vertices() {
        if let (Some(i), Some(c)) = (sigma[v], g.precolor(v)) {
            match lambda[i] {
                None => lambda[i] = Some(c),
                Some(x) if x != c => return Ok(None),
                _ => {}
            }
        }
    }
    let fixed: Vec<Color> = lambda.iter().flatten().copied().collect();
    let distinct: BTreeSet<Color> = fixed.iter().copied().collect();
    if distinct.len() != fixed.len() {
        return Ok(None);
    }
    Ok(Some(VariableAssignment { sigma, lambda }))
}

/// The best coloring consistent with `guess`: every guessed-happy vertex is
/// happy and each block is monochromatic with pairwise distinct colors.
/// `None` when no such coloring exists.
pub fn find_coloring(
    g: &ColoredGraph,
    modulator: &BTreeSet<Vertex>,
    guess: &ClusterGuess,
) -> Result<Option<Coloring>> {
    let graph = g.graph();
    if !is_cluster_graph(graph, modulator) {
        return Err(contract("removing the modulator must leave a cluster graph"));
    }
    let t = guess.blocks.len();
    let ell = g.ell();
    if t > ell {
        check_guess(g, modulator, guess)?;
        return Ok(None);
    }
    let Some(VariableAssignment { mut sigma, mut lambda }) = assign_variables(g, modulator, guess)? else {
        return Ok(None);
    };
    let mut color: Vec<Option<Color>> = std::iter::once(None)
        .chain(graph.vertices().map(|v| g.precolor(v)))
        .collect();

    // vertices sharing a fixed variable's color take both the color and the variable
    for (i, fixed) in lambda.iter().enumerate() {
        let Some(a) = *fixed else { continue };
        for v in graph.vertices() {
            if color[v] == Some(a) || sigma[v] == Some(i) {
                color[v] = Some(a);
                sigma[v] = Some(i);
            }
        }
    }

    // weights[i][a - 1]: happy clique vertices gained if variable i takes color a
    let mut weights: Vec<Vec<Option<i64>>> = lambda
        .iter()
        .map(|fixed| match *fixed {
            Some(a) => (1..=ell).map(|c| (c == a).then_some(0)).collect(),
            None => vec![Some(0); ell],
        })
        .collect();

    for clique in graph.components_avoiding(modulator) {
        let colors: BTreeSet<Color> = clique.iter().filter_map(|&v| color[v]).collect();
        let vars: BTreeSet<usize> = clique.iter().filter_map(|&v| sigma[v]).collect();
        if colors.len() >= 2 || vars.len() >= 2 {
            for &v in &clique {
                if color[v].is_none() && sigma[v].is_none() {
                    color[v] = Some(1);
                }
            }
            continue;
        }
        let mut counts = vec![0i64; t];
        for &v in &clique {
            let seen: BTreeSet<usize> = std::iter::once(v)
                .chain(graph.neighbors(v).iter().copied())
                .filter_map(|u| sigma[u])
                .collect();
            if seen.len() == 1 {
                counts[*seen.first().unwrap()] += 1;
            }
        }
        match colors.first() {
            None => {
                let chosen = match vars.first() {
                    Some(&i) => Some(i),
                    // highest count, lowest index on ties
                    None => (0..t).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))),
                };
                for &v in &clique {
                    match chosen {
                        Some(i) => sigma[v] = Some(i),
                        None => color[v] = Some(1),
                    }
                }
            }
            Some(&a) => {
                for &v in &clique {
                    if color[v].is_none() && sigma[v].is_none() {
                        color[v] = Some(a);
                    }
                }
                for (i, row) in weights.iter_mut().enumerate() {
                    if let Some(w) = row[a - 1].as_mut() {
                        *w += counts[i];
                    }
                }
            }
        }
    }

    let Some(assignment) = max_weight_assignment(&weights) else {
        return Ok(None);
    };
    for (i, &col) in assignment.iter().enumerate() {
        lambda[i] = Some(col + 1);
    }
    let full: Vec<Color> = graph
        .vertices()
        .map(|v| {
            color[v]
                .or_else(|| sigma[v].and_then(|i| lambda[i]))
                .expect("every vertex is assigned a color or a variable")
        })
        .collect();
    Coloring::new(g, full).map(Some)
}

/// Outcome of [`solve_mhv_cluster`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSolution {
    pub value: usize,
    pub witness: Coloring,
    pub modulator: BTreeSet<Vertex>,
    pub guess: ClusterGuess,
    /// Number of guesses examined, `2^d * B(d)`.
    pub guesses: u128,
}

/// Maximum happy vertices; the modulator is computed when not supplied.
///
/// The winner is the best recount over all guesses, the earliest guess
/// (happy subset mask first, then partition) on ties.
pub fn solve_mhv_cluster(
    g: &ColoredGraph,
    modulator: Option<&BTreeSet<Vertex>>,
    exec: Execution,
) -> Result<ClusterSolution> {
    let modulator = match modulator {
        Some(s) => s.clone(),
        None => find_cluster_modulator(g.graph()),
    };
    if modulator.len() >= 64 {
        return Err(contract("modulator too large to enumerate"));
    }
    if !is_cluster_graph(g.graph(), &modulator) {
        return Err(contract("removing the modulator must leave a cluster graph"));
    }
    let members: Vec<Vertex> = modulator.iter().copied().collect();
    let d = members.len();
    let partitions = restricted_growth_strings(d);
    let masks = 1usize << d;
    let total = masks * partitions.len();

    let guess_at = |idx: usize| {
        let rgs = &partitions[idx % partitions.len()];
        ClusterGuess::from_codes(&members, (idx / partitions.len()) as u64, rgs)
    };

    const CHUNK: usize = 64;
    let chunks = total.div_ceil(CHUNK);
    let results = par::map_indexed(exec, chunks, |chunk| -> Result<Option<(usize, usize, Coloring)>> {
        let mut best: Option<(usize, usize, Coloring)> = None;
        for idx in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
            if let Some(c) = find_coloring(g, &modulator, &guess_at(idx))? {
                let n = happy_vertices(g, &c)?.len();
                if best.as_ref().is_none_or(|b| n > b.0) {
                    best = Some((n, idx, c));
                }
            }
        }
        Ok(best)
    });
    let mut best: Option<(usize, usize, Coloring)> = None;
    for r in results {
        if let Some(cand) = r? {
            if best.as_ref().is_none_or(|b| cand.0 > b.0) {
                best = Some(cand);
            }
        }
    }
    let (value, idx, witness) = best.expect("the guess read off an optimal coloring always succeeds");
    let guess = guess_at(idx);
    Ok(ClusterSolution {
        value,
        witness,
        modulator,
        guess,
        guesses: total as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, p3};
    use crate::oracles::{brute_mhv, OracleConfig};

    fn set(v: &[Vertex]) -> BTreeSet<Vertex> {
        v.iter().copied().collect()
    }

    #[test]
    fn bell_numbers() {
        let b: Vec<u128> = (0..8).map(bell).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203, 877]);
        for d in 0..7 {
            assert_eq!(restricted_growth_strings(d).len() as u128, bell(d));
        }
    }

    #[test]
    fn growth_strings_in_lex_order() {
        let r = restricted_growth_strings(3);
        assert_eq!(
            r,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]
        );
        assert_eq!(restricted_growth_strings(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn modulator_examples() {
        let two_cliques = Graph::from_edges(5, [(1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert!(find_cluster_modulator(&two_cliques).is_empty());
        assert_eq!(find_cluster_modulator(p3().graph()), set(&[1]));
        assert_eq!(find_cluster_modulator(&cycle(5)).len(), 2);
    }

    // s = 1, clique {x = 2, y = 3}, edges s-x, x-y, p(x) = 2
    fn small() -> ColoredGraph {
        let g = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        ColoredGraph::new(g, 2, [(2, 2)]).unwrap()
    }

    #[test]
    fn hand_traced_guess() {
        let g = small();
        let guess = ClusterGuess {
            happy: set(&[1]),
            blocks: vec![set(&[1])],
        };
        let c = find_coloring(&g, &set(&[1]), &guess).unwrap().unwrap();
        assert_eq!(c.as_slice(), &[2, 2, 2]);
        assert_eq!(happy_vertices(&g, &c).unwrap().len(), 3);
    }

    #[test]
    fn conflicting_neighbours() {
        let g = Graph::from_edges(3, [(1, 2), (1, 3)]).unwrap();
        let g = ColoredGraph::new(g, 2, [(2, 1), (3, 2)]).unwrap();
        let guess = ClusterGuess {
            happy: set(&[1]),
            blocks: vec![set(&[1])],
        };
        assert_eq!(find_coloring(&g, &set(&[1]), &guess).unwrap(), None);
    }

    #[test]
    fn too_many_blocks_for_the_colors() {
        let g = ColoredGraph::uncolored(Graph::new(2), 1).unwrap();
        let guess = ClusterGuess {
            happy: set(&[]),
            blocks: vec![set(&[1]), set(&[2])],
        };
        assert_eq!(find_coloring(&g, &set(&[1, 2]), &guess).unwrap(), None);
    }

    #[test]
    fn malformed_guess_is_a_contract_violation() {
        let g = small();
        let guess = ClusterGuess {
            happy: set(&[2]),
            blocks: vec![set(&[1])],
        };
        assert!(find_coloring(&g, &set(&[1]), &guess).is_err());
        let bad_modulator = ClusterGuess {
            happy: set(&[]),
            blocks: vec![],
        };
        let path = ColoredGraph::uncolored(Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap(), 1).unwrap();
        assert!(find_coloring(&path, &set(&[]), &bad_modulator).is_err());
    }

    #[test]
    fn solver_examples() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let cliques = Graph::from_edges(5, [(1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
            let g = ColoredGraph::uncolored(cliques, 3).unwrap();
            let s = solve_mhv_cluster(&g, None, exec).unwrap();
            assert_eq!((s.value, s.guesses), (5, 1));

            assert_eq!(solve_mhv_cluster(&small(), None, exec).unwrap().value, 3);
            let s = solve_mhv_cluster(&p3(), Some(&set(&[2])), exec).unwrap();
            assert_eq!((s.value, s.guesses), (1, 2));
        }
    }

    #[test]
    fn agrees_with_brute_force_on_cycles() {
        let cfg = OracleConfig::default();
        for n in 4..=7 {
            let g = ColoredGraph::new(cycle(n), 3, [(1, 1), (3, 2)]).unwrap();
            let s = solve_mhv_cluster(&g, None, Execution::Sequential).unwrap();
            assert_eq!(s.value, brute_mhv(&g, &cfg).unwrap().value, "C{n}");
            assert_eq!(s.guesses, (1u128 << s.modulator.len()) * bell(s.modulator.len()));
        }
    }
}
