use std::collections::BTreeSet;

use super::{saturating_pow, CutCost, OracleConfig};
use crate::error::{contract, Result};
use crate::graph::{Graph, Vertex};
use crate::multiway::{GmcCut, GmcInstance};

/// Smallest vertex set (terminals allowed) leaving no path between
/// terminals of different groups. Among minimum cuts the lexicographically
/// smallest sorted set is returned.
pub fn brute_gmc(inst: &GmcInstance, cfg: &OracleConfig) -> Result<GmcCut> {
    let g = inst.graph();
    cfg.check(saturating_pow(2, g.n()))?;
    let mut owner = vec![None; g.n() + 1];
    for (i, group) in inst.groups().iter().enumerate() {
        for &v in group {
            owner[v] = Some(i);
        }
    }
    let candidates: Vec<Vertex> = g.vertices().collect();
    let cut = smallest_separator(g, &candidates, |removed| separated(g, &owner, removed))
        .expect("deleting every vertex separates all groups");
    Ok(GmcCut {
        size: cut.len(),
        cut,
    })
}

/// Outcome of [`brute_nmc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NmcCut {
    pub cost: CutCost,
    pub cut: Option<BTreeSet<Vertex>>,
}

/// Smallest set of non-terminals whose deletion leaves every terminal in
/// its own component; `Infinite` when two terminals are adjacent.
pub fn brute_nmc(g: &Graph, terminals: &BTreeSet<Vertex>, cfg: &OracleConfig) -> Result<NmcCut> {
    if let Some(t) = terminals.iter().find(|&&t| !g.contains(t)) {
        return Err(contract(format!("terminal {t} is not a vertex")));
    }
    let candidates: Vec<Vertex> = g.vertices().filter(|v| !terminals.contains(v)).collect();
    cfg.check(saturating_pow(2, candidates.len()))?;
    let adjacent = terminals
        .iter()
        .any(|&t| g.neighbors(t).iter().any(|u| terminals.contains(u)));
    if adjacent {
        return Ok(NmcCut {
            cost: CutCost::Infinite,
            cut: None,
        });
    }
    let mut owner = vec![None; g.n() + 1];
    for (i, &t) in terminals.iter().enumerate() {
        owner[t] = Some(i);
    }
    let cut = smallest_separator(g, &candidates, |removed| separated(g, &owner, removed))
        .expect("deleting all non-terminals isolates non-adjacent terminals");
    Ok(NmcCut {
        cost: CutCost::Finite(cut.len()),
        cut: Some(cut),
    })
}

// Subsets of `candidates` by increasing size, lexicographic within a size.
fn smallest_separator<F>(g: &Graph, candidates: &[Vertex], ok: F) -> Option<BTreeSet<Vertex>>
where
    F: Fn(&[bool]) -> bool,
{
    let mut removed = vec![false; g.n() + 1];
    for size in 0..=candidates.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            for &i in &idx {
                removed[candidates[i]] = true;
            }
            let good = ok(&removed);
            for &i in &idx {
                removed[candidates[i]] = false;
            }
            if good {
                return Some(idx.iter().map(|&i| candidates[i]).collect());
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    None
}

pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[pos] += 1;
    for i in pos + 1..k {
        idx[i] = idx[i - 1] + 1;
    }
    true
}

// No surviving component holds vertices of two owners.
fn separated(g: &Graph, owner: &[Option<usize>], removed: &[bool]) -> bool {
    let mut seen = removed.to_vec();
    let mut stack = Vec::new();
    for s in g.vertices() {
        if seen[s] || owner[s].is_none() {
            continue;
        }
        let mine = owner[s];
        seen[s] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if seen[u] {
                    continue;
                }
                if owner[u].is_some() && owner[u] != mine {
                    return false;
                }
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    true
}
