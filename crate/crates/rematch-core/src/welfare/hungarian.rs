//! Exact maximum-weight perfect matching on a complete bipartite graph.
//!
//! Shortest-augmenting-path Hungarian method over rational arithmetic.
//! Weights may be negative. Ties are broken by scanning agents, then items,
//! in increasing index order, so the returned permutation is deterministic;
//! in particular an all-equal weight matrix yields the identity.

use crate::rational::Rational;
use num::Zero;

/// Returns `(assignment, total)` where `assignment[agent] = item` maximizes
/// the sum of `weights[agent][assignment[agent]]`.
///
/// `weights` must be square and non-empty.
pub fn max_weight_perfect_matching(weights: &[Vec<Rational>]) -> (Vec<usize>, Rational) {
    let n = weights.len();
    assert!(n > 0, "weight matrix must be non-empty");
    for row in weights {
        assert_eq!(row.len(), n, "weight matrix must be square");
    }

    // Minimize cost = -weight. Internally 1-based with a virtual column 0;
    // `row_of[j]` is the row currently assigned to column j (0 = none).
    let cost = |i: usize, j: usize| -> Rational { -weights[i - 1][j - 1].clone() };

    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut min_slack: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0, j) - &u[i0] - &v[j];
                if min_slack[j].as_ref().is_none_or(|m| &cur < m) {
                    min_slack[j] = Some(cur);
                    way[j] = j0;
                }
                if delta.as_ref().is_none_or(|d| min_slack[j].as_ref().unwrap() < d) {
                    delta = min_slack[j].clone();
                    j1 = j;
                }
            }
            let delta = delta.expect("complete bipartite graph always has slack");
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = min_slack[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        // Walk the alternating path back to the virtual column.
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    let total = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| weights[i][j].clone())
        .sum();
    (assignment, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn identity_dominant_weights() {
        let (perm, total) = max_weight_perfect_matching(&mat(&[&[3, 2], &[2, 3]]));
        assert_eq!(perm, vec![0, 1]);
        assert_eq!(total, rat_int(6));
    }

    #[test]
    fn all_equal_weights_break_ties_to_identity() {
        let (perm, total) = max_weight_perfect_matching(&mat(&[&[7, 7, 7], &[7, 7, 7], &[7, 7, 7]]));
        assert_eq!(perm, vec![0, 1, 2]);
        assert_eq!(total, rat_int(21));
    }

    #[test]
    fn decay_first_round_prefers_owners() {
        // First-copy weights of the 3x2 decay fixture with eps = 1/10.
        let w = vec![
            vec![rat_int(0), rat(9, 10), rat(9, 10)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
        ];
        let (perm, total) = max_weight_perfect_matching(&w);
        assert_eq!(total, rat_int(2));
        assert_eq!(perm[1], 1);
        assert_eq!(perm[2], 2);
    }

    #[test]
    fn negative_weights_are_handled_exactly() {
        let (perm, total) = max_weight_perfect_matching(&mat(&[&[-5, -1], &[-2, -7]]));
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(total, rat_int(-3));
    }

    #[test]
    fn single_agent() {
        let (perm, total) = max_weight_perfect_matching(&mat(&[&[-4]]));
        assert_eq!(perm, vec![0]);
        assert_eq!(total, rat_int(-4));
    }

    #[test]
    fn brute_force_agreement_on_small_matrices() {
        // Exhaustive check against all permutations for a handful of 4x4 grids.
        let grids = [
            mat(&[&[1, 2, 3, 4], &[4, 3, 2, 1], &[0, 0, 5, 0], &[2, 2, 2, 2]]),
            mat(&[&[-1, 2, 0, 4], &[4, -3, 2, 1], &[0, 1, -5, 9], &[2, 0, 2, -2]]),
            mat(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
        ];
        for w in &grids {
            let (_, total) = max_weight_perfect_matching(w);
            let best = permutations(4)
                .into_iter()
                .map(|p| {
                    p.iter()
                        .enumerate()
                        .map(|(i, &j)| w[i][j].clone())
                        .sum::<Rational>()
                })
                .max()
                .unwrap();
            assert_eq!(total, best);
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        permute(&mut items, 0, &mut out);
        out
    }

    fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, out);
            items.swap(k, i);
        }
    }
}
