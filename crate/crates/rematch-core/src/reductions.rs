//! Instance generators built from classic hard problems.
//!
//! These constructions are regression probes, not decision solvers: at desk
//! scale the exhaustive oracle recovers the planted optimum structure (an
//! exact-3-cover instance has maximum welfare `3m + 9q` precisely when a
//! cover exists; an independent-set instance pins the fairness-constrained
//! optimum inside `[K, K+1)`).

use crate::instance::{validate_instance, Instance};
use crate::rational::{rat_int, Rational};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("set {index} is invalid: {reason}")]
    InvalidSet { index: usize, reason: String },
    #[error("need at least q = {q} sets, got m = {m}")]
    TooFewSets { m: usize, q: usize },
    #[error("delta must satisfy 0 < delta < 1/|V|^2 (|V| = {vertices})")]
    DeltaOutOfRange { vertices: usize },
    #[error("graph invariant violated: {reason}")]
    GraphInvariantViolated { reason: String },
}

/// An exact-3-cover question: a universe of `3q` elements and `m` subsets of
/// size three. Elements are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3cInput {
    pub q: usize,
    pub sets: Vec<Vec<usize>>,
}

impl X3cInput {
    pub fn new(q: usize, sets: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        let universe = 3 * q;
        if q == 0 {
            return Err(ReductionError::InvalidSet {
                index: 0,
                reason: "q must be positive".to_owned(),
            });
        }
        for (index, set) in sets.iter().enumerate() {
            if set.len() != 3 {
                return Err(ReductionError::InvalidSet {
                    index,
                    reason: format!("has {} elements, expected 3", set.len()),
                });
            }
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != 3 {
                return Err(ReductionError::InvalidSet {
                    index,
                    reason: "elements are not distinct".to_owned(),
                });
            }
            if set.iter().any(|&e| e == 0 || e > universe) {
                return Err(ReductionError::InvalidSet {
                    index,
                    reason: format!("element out of universe 1..={universe}"),
                });
            }
        }
        if sets.len() < q {
            return Err(ReductionError::TooFewSets {
                m: sets.len(),
                q,
            });
        }
        Ok(X3cInput { q, sets })
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }
}

/// Builds the welfare-hardness instance for an exact-3-cover question:
/// `T = 3`, `n = m + 3q`.
///
/// Agents: one set agent per subset (first copy of each of its three element
/// items is worth 1; third copy of every space-filling item is worth 3),
/// then one element agent per universe element (second copy of its element
/// item is worth 3). Items: the `3q` element items, then `m - q`
/// space-filling items, then `q` dummy items nobody values. A cover of the
/// universe by `q` disjoint sets exists exactly when some matching reaches
/// welfare `3m + 9q`.
pub fn build_x3c_instance(input: &X3cInput) -> Result<Instance, ReductionError> {
    let q = input.q;
    let m = input.m();
    let n = m + 3 * q;
    let rounds = 3;
    let space_filling_start = 3 * q;
    let space_filling_count = m - q;

    let mut tensor = vec![vec![vec![Rational::zero(); rounds]; n]; n];
    for (set_agent, set) in input.sets.iter().enumerate() {
        for &element in set {
            tensor[set_agent][element - 1][0] = rat_int(1);
        }
        for item in space_filling_start..space_filling_start + space_filling_count {
            tensor[set_agent][item][2] = rat_int(3);
        }
    }
    for element in 0..3 * q {
        tensor[m + element][element][1] = rat_int(3);
    }
    Ok(validate_instance(n, rounds, tensor).expect("construction dimensions are fixed"))
}

/// A simple undirected graph with 1-based vertices, no self-loops, no
/// duplicate edges, and no isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInput {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphInput {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, ReductionError> {
        if vertices == 0 {
            return Err(ReductionError::GraphInvariantViolated {
                reason: "graph has no vertices".to_owned(),
            });
        }
        let mut covered = vec![false; vertices];
        let mut seen = std::collections::BTreeSet::new();
        for &(x, y) in &edges {
            if x == y {
                return Err(ReductionError::GraphInvariantViolated {
                    reason: format!("self-loop at vertex {x}"),
                });
            }
            if x == 0 || y == 0 || x > vertices || y > vertices {
                return Err(ReductionError::GraphInvariantViolated {
                    reason: format!("edge ({x}, {y}) out of range 1..={vertices}"),
                });
            }
            if !seen.insert((x.min(y), x.max(y))) {
                return Err(ReductionError::GraphInvariantViolated {
                    reason: format!("duplicate edge ({x}, {y})"),
                });
            }
            covered[x - 1] = true;
            covered[y - 1] = true;
        }
        if let Some(idle) = covered.iter().position(|&c| !c) {
            return Err(ReductionError::GraphInvariantViolated {
                reason: format!("vertex {} is isolated", idle + 1),
            });
        }
        Ok(GraphInput { vertices, edges })
    }
}

/// Builds the fair-welfare-hardness instance for an independent-set
/// question: `T = |V|`, `n = (2|V| + 1)|E| + 1`.
///
/// Each edge gets `2|V| + 1` edge agents who value every copy of either
/// endpoint's node item at `delta`; one special agent values every copy of
/// every node item at 1; dummy items pad the item side. `delta` must lie
/// strictly between 0 and `1/|V|^2` so all edge agents together are worth
/// less than one unit of special-agent value.
pub fn build_independent_set_instance(
    graph: &GraphInput,
    delta: &Rational,
) -> Result<Instance, ReductionError> {
    let v = graph.vertices;
    let vsq = rat_int((v * v) as i64);
    if delta <= &Rational::zero() || &(delta * &vsq) >= &rat_int(1) {
        return Err(ReductionError::DeltaOutOfRange { vertices: v });
    }
    let agents_per_edge = 2 * v + 1;
    let n = agents_per_edge * graph.edges.len() + 1;
    let rounds = v;

    let mut tensor = vec![vec![vec![Rational::zero(); rounds]; n]; n];
    for (edge_index, &(x, y)) in graph.edges.iter().enumerate() {
        for copy in 0..agents_per_edge {
            let agent = edge_index * agents_per_edge + copy;
            for t in 0..rounds {
                tensor[agent][x - 1][t] = delta.clone();
                tensor[agent][y - 1][t] = delta.clone();
            }
        }
    }
    let special = n - 1;
    for node in 0..v {
        for t in 0..rounds {
            tensor[special][node][t] = rat_int(1);
        }
    }
    Ok(validate_instance(n, rounds, tensor).expect("construction dimensions are fixed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{classify, Monotonicity, Sign};
    use crate::rational::rat;

    #[test]
    fn x3c_single_set_layout() {
        let input = X3cInput::new(1, vec![vec![1, 2, 3]]).unwrap();
        let inst = build_x3c_instance(&input).unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.rounds(), 3);
        // Set agent values first copies of its elements.
        assert_eq!(inst.value(0, 0, 1), &rat_int(1));
        assert_eq!(inst.value(0, 0, 2), &rat_int(0));
        // Element agent for element 2 values the second copy of item 2.
        assert_eq!(inst.value(2, 1, 2), &rat_int(3));
        // Dummy column is all zeros.
        for agent in 0..4 {
            for copy in 1..=3 {
                assert_eq!(inst.value(agent, 3, copy), &rat_int(0));
            }
        }
        let class = classify(&inst);
        assert_eq!(class.monotonicity, Monotonicity::General);
        assert_eq!(class.sign, Sign::Goods);
        assert!(!class.identical);
    }

    #[test]
    fn x3c_two_sets_has_one_space_filling_item() {
        let input = X3cInput::new(1, vec![vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        let inst = build_x3c_instance(&input).unwrap();
        assert_eq!(inst.n(), 5);
        // Item 4 (index 3) is space-filling: worth 3 on the third copy to
        // both set agents, nothing to element agents.
        for set_agent in 0..2 {
            assert_eq!(inst.value(set_agent, 3, 3), &rat_int(3));
            assert_eq!(inst.value(set_agent, 3, 1), &rat_int(0));
        }
        assert_eq!(inst.value(2, 3, 3), &rat_int(0));
    }

    #[test]
    fn x3c_input_validation() {
        assert!(matches!(
            X3cInput::new(1, vec![vec![1, 2]]),
            Err(ReductionError::InvalidSet { .. })
        ));
        assert!(matches!(
            X3cInput::new(1, vec![vec![1, 2, 4]]),
            Err(ReductionError::InvalidSet { .. })
        ));
        assert!(matches!(
            X3cInput::new(1, vec![vec![1, 1, 2]]),
            Err(ReductionError::InvalidSet { .. })
        ));
        assert!(matches!(
            X3cInput::new(2, vec![vec![1, 2, 3]]),
            Err(ReductionError::TooFewSets { m: 1, q: 2 })
        ));
    }

    #[test]
    fn independent_set_single_edge_layout() {
        let graph = GraphInput::new(2, vec![(1, 2)]).unwrap();
        let inst = build_independent_set_instance(&graph, &rat(1, 100)).unwrap();
        assert_eq!(inst.n(), 6);
        assert_eq!(inst.rounds(), 2);
        // Five edge agents value both node items at delta in every round.
        for agent in 0..5 {
            for item in 0..2 {
                for copy in 1..=2 {
                    assert_eq!(inst.value(agent, item, copy), &rat(1, 100));
                }
            }
            assert_eq!(inst.value(agent, 2, 1), &rat_int(0));
        }
        // The special agent values node items at 1, dummies at 0.
        for item in 0..2 {
            assert_eq!(inst.value(5, item, 2), &rat_int(1));
        }
        assert_eq!(inst.value(5, 3, 1), &rat_int(0));
    }

    #[test]
    fn independent_set_delta_bound_is_strict() {
        let graph = GraphInput::new(2, vec![(1, 2)]).unwrap();
        assert!(matches!(
            build_independent_set_instance(&graph, &rat(1, 4)),
            Err(ReductionError::DeltaOutOfRange { vertices: 2 })
        ));
        assert!(build_independent_set_instance(&graph, &rat(1, 5)).is_ok());
        assert!(matches!(
            build_independent_set_instance(&graph, &rat_int(0)),
            Err(ReductionError::DeltaOutOfRange { .. })
        ));
    }

    #[test]
    fn triangle_graph_shape() {
        let graph = GraphInput::new(3, vec![(1, 2), (2, 3), (1, 3)]).unwrap();
        let inst = build_independent_set_instance(&graph, &rat(1, 100)).unwrap();
        assert_eq!(inst.n(), 22);
        assert_eq!(inst.rounds(), 3);
    }

    #[test]
    fn graph_validation_rejects_degenerate_input() {
        assert!(GraphInput::new(2, vec![(1, 1)]).is_err());
        assert!(GraphInput::new(2, vec![(1, 3)]).is_err());
        assert!(GraphInput::new(3, vec![(1, 2)]).is_err());
        assert!(GraphInput::new(2, vec![(1, 2), (2, 1)]).is_err());
    }
}
