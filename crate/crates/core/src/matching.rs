//! Maximum-weight bipartite assignment (Hungarian method).

/// Assigns every row a distinct column maximizing the total weight.
///
/// `weights[r][c]` is `None` where row `r` may not take column `c`. Returns
/// the column of each row, or `None` when no assignment saturates all rows.
/// Among maximum-weight assignments the one with the smallest sum of
/// column indices is returned.
pub fn max_weight_assignment(weights: &[Vec<Option<i64>>]) -> Option<Vec<usize>> {
    let rows = weights.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = weights[0].len();
    assert!(weights.iter().all(|r| r.len() == cols), "ragged weight matrix");
    if rows > cols {
        return None;
    }

    // scale so that column-index penalties never outweigh one unit of weight
    let scale = (rows * cols + 1) as i64;
    let cost = |r: usize, c: usize| weights[r][c].map(|w| -(w * scale) + c as i64);
    let span: i64 = (0..rows)
        .map(|r| (0..cols).filter_map(|c| cost(r, c)).map(i64::abs).max().unwrap_or(0))
        .sum();
    let forbidden = 2 * span + 1;
    let a = |r: usize, c: usize| cost(r, c).unwrap_or(forbidden);

    // 1-based potentials, e-maxx formulation
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut p = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = a(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0; rows];
    for j in 1..=cols {
        if p[j] != 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    if assignment
        .iter()
        .enumerate()
        .any(|(r, &c)| weights[r][c].is_none())
    {
        return None;
    }
    Some(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn total(w: &[Vec<Option<i64>>], a: &[usize]) -> i64 {
        a.iter().enumerate().map(|(r, &c)| w[r][c].unwrap()).sum()
    }

    // best (weight, -index sum) over all injective assignments
    fn brute(w: &[Vec<Option<i64>>]) -> Option<(i64, i64)> {
        fn go(w: &[Vec<Option<i64>>], r: usize, used: &mut Vec<bool>, acc: (i64, i64), best: &mut Option<(i64, i64)>) {
            if r == w.len() {
                if best.is_none_or(|b| acc > b) {
                    *best = Some(acc);
                }
                return;
            }
            for c in 0..used.len() {
                if let (false, Some(x)) = (used[c], w[r][c]) {
                    used[c] = true;
                    go(w, r + 1, used, (acc.0 + x, acc.1 - c as i64), best);
                    used[c] = false;
                }
            }
        }
        let mut best = None;
        go(w, 0, &mut vec![false; w[0].len()], (0, 0), &mut best);
        best
    }

    #[test]
    fn simple_cases() {
        let w = vec![vec![Some(1), Some(5)], vec![Some(4), Some(1)]];
        assert_eq!(max_weight_assignment(&w), Some(vec![1, 0]));
        let w = vec![vec![Some(0), Some(0), Some(0)]];
        assert_eq!(max_weight_assignment(&w), Some(vec![0]));
        let w = vec![vec![None, Some(3)], vec![None, Some(1)]];
        assert_eq!(max_weight_assignment(&w), None);
        let w = vec![vec![Some(1)], vec![Some(1)]];
        assert_eq!(max_weight_assignment(&w), None);
        assert_eq!(max_weight_assignment(&[]), Some(vec![]));
    }

    #[test]
    fn forced_entries_are_respected() {
        let w = vec![vec![None, Some(0), None], vec![Some(0), Some(100), Some(0)]];
        assert_eq!(max_weight_assignment(&w), Some(vec![1, 0]));
    }

    fn matrix() -> impl Strategy<Value = Vec<Vec<Option<i64>>>> {
        (1usize..=4, 0usize..=2).prop_flat_map(|(rows, extra)| {
            let cols = rows + extra;
            proptest::collection::vec(
                proptest::collection::vec(proptest::option::weighted(0.8, 0i64..6), cols),
                rows,
            )
        })
    }

    proptest! {
        #[test]
        fn matches_exhaustive_search(w in matrix()) {
            let got = max_weight_assignment(&w);
            match brute(&w) {
                None => prop_assert!(got.is_none()),
                Some((best, neg_index_sum)) => {
                    let a = got.expect("assignment exists");
                    prop_assert_eq!(total(&w, &a), best);
                    prop_assert_eq!(-(a.iter().sum::<usize>() as i64), neg_index_sum);
                    let distinct: std::collections::BTreeSet<_> = a.iter().collect();
                    prop_assert_eq!(distinct.len(), a.len());
                }
            }
        }
    }
}
