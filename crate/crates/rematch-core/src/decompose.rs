//! Splitting a frequency matrix into per-round perfect matchings.
//!
//! A matrix with all row and column sums equal to `T` is the edge-multiplicity
//! table of a `T`-regular bipartite multigraph, so it decomposes into `T`
//! perfect matchings: extract one, decrement the matched multiplicities, and
//! repeat. The residual graph stays regular, so every extraction succeeds.

use crate::instance::{CoreError, FrequencyMatrix, RepeatedMatching};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    InvalidFrequency(#[from] CoreError),
    /// Unreachable on valid input: a regular support always has a perfect
    /// matching.
    #[error("no perfect matching in a residual support that should be regular")]
    InternalHallFailure,
}

/// Remaining multiplicities during decomposition: agent `i` is adjacent to
/// every item with `counts[i][g] > 0`.
#[derive(Debug, Clone)]
pub struct SupportGraph {
    counts: Vec<Vec<usize>>,
}

impl SupportGraph {
    pub fn from_frequency(f: &FrequencyMatrix) -> Self {
        SupportGraph {
            counts: f.rows().to_vec(),
        }
    }

    /// Builds a support from raw counts; the matrix must be square.
    pub fn from_counts(counts: Vec<Vec<usize>>) -> Self {
        debug_assert!(counts.iter().all(|row| row.len() == counts.len()));
        SupportGraph { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, agent: usize, item: usize) -> usize {
        self.counts[agent][item]
    }

    /// The common row/column sum, or `None` if the support is not regular.
    pub fn regularity(&self) -> Option<usize> {
        let n = self.n();
        let degree: usize = self.counts[0].iter().sum();
        for row in &self.counts {
            if row.iter().sum::<usize>() != degree {
                return None;
            }
        }
        for g in 0..n {
            if self.counts.iter().map(|row| row[g]).sum::<usize>() != degree {
                return None;
            }
        }
        Some(degree)
    }

    fn remove_matching(&mut self, matching: &[usize]) {
        for (agent, &item) in matching.iter().enumerate() {
            debug_assert!(self.counts[agent][item] > 0);
            self.counts[agent][item] -= 1;
        }
    }
}

/// Maximum bipartite matching on the support, Hopcroft-Karp style: BFS
/// layers from free agents, then shortest augmenting paths. Returns a
/// perfect matching as `matched[agent] = item`, or `None` if no perfect
/// matching exists. Scanning is lowest-index-first throughout, so the result
/// is deterministic.
pub fn perfect_matching(support: &SupportGraph) -> Option<Vec<usize>> {
    let n = support.n();
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&g| support.count(i, g) > 0).collect())
        .collect();

    const FREE: usize = usize::MAX;
    let mut item_of = vec![FREE; n];
    let mut agent_of = vec![FREE; n];
    let mut matched = 0usize;

    while matched < n {
        // BFS phase: layer agents by alternating-path distance.
        let mut layer = vec![FREE; n];
        let mut queue: Vec<usize> = (0..n).filter(|&i| item_of[i] == FREE).collect();
        for &i in &queue {
            layer[i] = 0;
        }
        let mut found_free_item = false;
        let mut head = 0;
        while head < queue.len() {
            let i = queue[head];
            head += 1;
            for &g in &adjacency[i] {
                let next = agent_of[g];
                if next == FREE {
                    found_free_item = true;
                } else if layer[next] == FREE {
                    layer[next] = layer[i] + 1;
                    queue.push(next);
                }
            }
        }
        if !found_free_item {
            return None;
        }

        fn augment(
            i: usize,
            adjacency: &[Vec<usize>],
            item_of: &mut [usize],
            agent_of: &mut [usize],
            layer: &mut [usize],
        ) -> bool {
            for &g in &adjacency[i] {
                let next = agent_of[g];
                let reaches = next == usize::MAX
                    || (layer[next] == layer[i] + 1
                        && augment(next, adjacency, item_of, agent_of, layer));
                if reaches {
                    item_of[i] = g;
                    agent_of[g] = i;
                    return true;
                }
            }
            // Dead end: take this agent out of the current phase.
            layer[i] = usize::MAX;
            false
        }

        let mut progressed = false;
        for i in 0..n {
            if item_of[i] == FREE && augment(i, &adjacency, &mut item_of, &mut agent_of, &mut layer)
            {
                matched += 1;
                progressed = true;
            }
        }
        if !progressed {
            return None;
        }
    }
    Some(item_of)
}

/// Converts a frequency matrix into `T` per-round perfect matchings whose
/// per-pair counts reproduce the matrix exactly.
pub fn decompose_frequency(f: &FrequencyMatrix) -> Result<RepeatedMatching, DecomposeError> {
    let mut support = SupportGraph::from_frequency(f);
    let mut rounds = Vec::with_capacity(f.rounds());
    for _ in 0..f.rounds() {
        let matching = perfect_matching(&support).ok_or(DecomposeError::InternalHallFailure)?;
        support.remove_matching(&matching);
        debug_assert!(support.regularity().is_some());
        rounds.push(matching);
    }
    debug_assert_eq!(support.regularity(), Some(0));
    Ok(RepeatedMatching::new(rounds)?)
}
