use std::collections::BTreeSet;

use super::OracleConfig;
use crate::error::Result;
use crate::graph::Vertex;
use crate::source::{CrbdsInstance, RmisInstance};

fn product(sizes: impl Iterator<Item = usize>) -> u128 {
    sizes.fold(1u128, |acc, s| acc.saturating_mul(s as u128))
}

/// First independent transversal of the cliques, scanning transversals in
/// lexicographic order (last clique varying fastest).
pub fn brute_rmis(inst: &RmisInstance, cfg: &OracleConfig) -> Result<Option<BTreeSet<Vertex>>> {
    let cliques = inst.cliques();
    let sizes: Vec<usize> = cliques.iter().map(Vec::len).collect();
    cfg.check(product(sizes.iter().copied()))?;
    let g = inst.graph();
    let mut pick = vec![0usize; cliques.len()];
    loop {
        let chosen: Vec<Vertex> = pick.iter().zip(cliques).map(|(&i, c)| c[i]).collect();
        let independent = chosen
            .iter()
            .enumerate()
            .all(|(a, &u)| chosen[a + 1..].iter().all(|&v| !g.has_edge(u, v)));
        if independent {
            return Ok(Some(chosen.into_iter().collect()));
        }
        if !advance(&mut pick, &sizes, true) {
            return Ok(None);
        }
    }
}

/// First distinctly colored dominating `k`-set, scanning one vertex per
/// color class with the class of color 1 varying fastest.
pub fn brute_crbds(inst: &CrbdsInstance, cfg: &OracleConfig) -> Result<Option<BTreeSet<Vertex>>> {
    let classes: Vec<Vec<Vertex>> = (1..=inst.k()).map(|c| inst.color_class(c)).collect();
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    cfg.check(product(sizes.iter().copied()))?;
    if sizes.contains(&0) {
        return Ok(None);
    }
    let mut pick = vec![0usize; classes.len()];
    loop {
        let chosen: Vec<Vertex> = pick.iter().zip(&classes).map(|(&i, c)| c[i]).collect();
        let dominated = (1..=inst.nb())
            .all(|b| chosen.iter().any(|&r| inst.blue_neighbors(r).contains(&b)));
        if dominated {
            return Ok(Some(chosen.into_iter().collect()));
        }
        if !advance(&mut pick, &sizes, false) {
            return Ok(None);
        }
    }
}

// Mixed-radix increment; `last_fastest` picks which end is least significant.
fn advance(pick: &mut [usize], sizes: &[usize], last_fastest: bool) -> bool {
    let order: Vec<usize> = if last_fastest {
        (0..pick.len()).rev().collect()
    } else {
        (0..pick.len()).collect()
    };
    for i in order {
        if pick[i] + 1 < sizes[i] {
            pick[i] += 1;
            return true;
        }
        pick[i] = 0;
    }
    false
}
