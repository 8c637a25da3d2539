use super::{saturating_pow, OracleConfig, Optimum};
use crate::error::Result;
use crate::graph::{count_happy_edges_raw, count_happy_raw, Color, ColoredGraph, Coloring, Vertex};
use crate::par;

const CHUNK: u128 = 4096;

/// Maximum number of happy vertices over all extensions of the precoloring.
///
/// Ties go to the lexicographically smallest coloring.
pub fn brute_mhv(g: &ColoredGraph, cfg: &OracleConfig) -> Result<Optimum> {
    exhaustive(g, cfg, count_happy_raw)
}

/// Maximum number of happy edges over all extensions of the precoloring.
pub fn brute_mhe(g: &ColoredGraph, cfg: &OracleConfig) -> Result<Optimum> {
    exhaustive(g, cfg, count_happy_edges_raw)
}

// Colorings are numbered in mixed radix over the uncolored vertices, the
// smallest vertex being the most significant digit, so the smallest index
// is the lexicographically smallest coloring.
fn exhaustive(
    g: &ColoredGraph,
    cfg: &OracleConfig,
    score: fn(&[Vec<Vertex>], &[Color]) -> usize,
) -> Result<Optimum> {
    let free = g.uncolored_vertices();
    let ell = g.ell();
    let total = saturating_pow(ell, free.len());
    cfg.check(total)?;

    let adj = g.graph().adjacency_lists();
    let mut base = vec![0; g.n() + 1];
    for v in g.graph().vertices() {
        base[v] = g.precolor(v).unwrap_or(1);
    }

    let chunks = total.div_ceil(CHUNK) as usize;
    let results = par::map_indexed(cfg.execution, chunks, |chunk| {
        let start = chunk as u128 * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut colors = base.clone();
        let mut rest = start;
        for &v in free.iter().rev() {
            colors[v] = (rest % ell as u128) as usize + 1;
            rest /= ell as u128;
        }
        let mut best = (score(&adj, &colors), start);
        for idx in start + 1..end {
            // odometer step: least significant digit is the last free vertex
            for &v in free.iter().rev() {
                if colors[v] < ell {
                    colors[v] += 1;
                    break;
                }
                colors[v] = 1;
            }
            let s = score(&adj, &colors);
            if s > best.0 {
                best = (s, idx);
            }
        }
        best
    });

    let (value, index) = results
        .into_iter()
        .max_by_key(|&(s, i)| (s, std::cmp::Reverse(i)))
        .expect("at least one coloring");

    let mut colors = base;
    let mut rest = index;
    for &v in free.iter().rev() {
        colors[v] = (rest % ell as u128) as usize + 1;
        rest /= ell as u128;
    }
    colors.remove(0);
    let witness = Coloring::new(g, colors)?;
    Ok(Optimum { value, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, k3, p3};
    use crate::graph::{happy_edge_count, happy_vertices, Graph};
    use crate::par::Execution;
    use crate::Error;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn p3_fixture() {
        let opt = brute_mhv(&p3(), &cfg()).unwrap();
        assert_eq!(opt.value, 1);
        assert_eq!(opt.witness.as_slice(), &[1, 1, 2]);
        assert_eq!(brute_mhe(&p3(), &cfg()).unwrap().value, 1);
    }

    #[test]
    fn uncolored_connected_graph() {
        let g = ColoredGraph::uncolored(cycle(6), 3).unwrap();
        let opt = brute_mhv(&g, &cfg()).unwrap();
        assert_eq!(opt.value, 6);
        assert_eq!(opt.witness.as_slice(), &[1; 6]);
        assert_eq!(brute_mhe(&g, &cfg()).unwrap().value, 6);
    }

    #[test]
    fn bichromatic_triangle() {
        let g = k3(2, &[(1, 1), (2, 2)]);
        assert_eq!(brute_mhv(&g, &cfg()).unwrap().value, 0);
        assert_eq!(brute_mhe(&g, &cfg()).unwrap().value, 1);
    }

    #[test]
    fn witness_attains_value() {
        let g = Graph::from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap();
        let g = ColoredGraph::new(g, 3, [(1, 1), (3, 2)]).unwrap();
        let opt = brute_mhv(&g, &cfg()).unwrap();
        assert_eq!(happy_vertices(&g, &opt.witness).unwrap().len(), opt.value);
        let opt = brute_mhe(&g, &cfg()).unwrap();
        assert_eq!(happy_edge_count(&g, &opt.witness).unwrap(), opt.value);
    }

    #[test]
    fn chunking_does_not_change_the_witness() {
        // enough colorings for several chunks
        let g = Graph::from_edges(9, (1..9).map(|v| (v, v + 1))).unwrap();
        let g = ColoredGraph::new(g, 3, [(1, 2), (9, 3)]).unwrap();
        let seq = brute_mhv(&g, &cfg().sequential()).unwrap();
        let par = brute_mhv(
            &g,
            &OracleConfig {
                execution: Execution::Parallel,
                ..cfg()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn budget_is_enforced() {
        let g = ColoredGraph::uncolored(cycle(10), 4).unwrap();
        let err = brute_mhv(&g, &OracleConfig::with_budget(1000)).unwrap_err();
        assert!(matches!(err, Error::TooLarge { needed, .. } if needed == 1 << 20));
    }
}
