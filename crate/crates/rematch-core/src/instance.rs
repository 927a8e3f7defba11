//! Domain model for repeated matchings.
//!
//! An instance matches `n` items to `n` agents in each of `T` rounds. Agent
//! `i`'s value for item `g` depends on how many times she has already held
//! it: the t-th copy is worth `v(i, g, t)`. A bundle's value is therefore a
//! prefix sum along the copy axis and depends only on multiplicities, never
//! on the order of rounds.

use crate::rational::Rational;
use num::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("dimension mismatch on {axis}: expected {expected}, got {got}")]
    DimensionMismatch {
        axis: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{name} must be positive, got {got}")]
    NonPositiveParameter { name: &'static str, got: usize },
    #[error("bundle holds {count} copies of item {item}, more than the {rounds} rounds")]
    CopyIndexOverflow {
        item: usize,
        count: usize,
        rounds: usize,
    },
    #[error("invalid frequency matrix: {reason}")]
    InvalidFrequency { reason: String },
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
}

/// A repeated matching instance: `n` agents, `n` items, `T` rounds, and the
/// full valuation tensor indexed by (agent, item, copy).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    rounds: usize,
    /// Flattened tensor, laid out agent-major: `((agent * n) + item) * T + (copy - 1)`.
    values: Vec<Rational>,
}

/// Validates raw dimensions and builds an [`Instance`].
///
/// The tensor must be exactly `n x n x T`. Values arrive as [`Rational`]s,
/// which are already in lowest terms by construction.
pub fn validate_instance(
    n: usize,
    rounds: usize,
    tensor: Vec<Vec<Vec<Rational>>>,
) -> Result<Instance, CoreError> {
    if n == 0 {
        return Err(CoreError::NonPositiveParameter { name: "n", got: n });
    }
    if rounds == 0 {
        return Err(CoreError::NonPositiveParameter {
            name: "T",
            got: rounds,
        });
    }
    if tensor.len() != n {
        return Err(CoreError::DimensionMismatch {
            axis: "agents",
            expected: n,
            got: tensor.len(),
        });
    }
    let mut values = Vec::with_capacity(n * n * rounds);
    for per_agent in &tensor {
        if per_agent.len() != n {
            return Err(CoreError::DimensionMismatch {
                axis: "items",
                expected: n,
                got: per_agent.len(),
            });
        }
        for per_item in per_agent {
            if per_item.len() != rounds {
                return Err(CoreError::DimensionMismatch {
                    axis: "copies",
                    expected: rounds,
                    got: per_item.len(),
                });
            }
            values.extend(per_item.iter().cloned());
        }
    }
    Ok(Instance { n, rounds, values })
}

impl Instance {
    /// Number of agents (equal to the number of items).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rounds `T`.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Value of the `copy`-th copy of `item` for `agent`. `copy` is 1-based,
    /// matching the "t-th time an agent holds an item" convention used
    /// throughout this crate.
    pub fn value(&self, agent: usize, item: usize, copy: usize) -> &Rational {
        debug_assert!(agent < self.n && item < self.n);
        debug_assert!(
            (1..=self.rounds).contains(&copy),
            "copy index {copy} out of 1..={}",
            self.rounds
        );
        &self.values[(agent * self.n + item) * self.rounds + (copy - 1)]
    }

    /// Sum of the first `count` copy values of `item` for `agent`.
    pub fn prefix_value(&self, agent: usize, item: usize, count: usize) -> Rational {
        let mut total = Rational::zero();
        for copy in 1..=count {
            total += self.value(agent, item, copy);
        }
        total
    }

    /// Exposes the tensor as nested vectors (agent, item, copy), e.g. for
    /// serialization.
    pub fn tensor(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|g| (1..=self.rounds).map(|t| self.value(i, g, t).clone()).collect())
                    .collect()
            })
            .collect()
    }
}

/// Multiset of item copies held by one agent, as per-item counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub counts: Vec<usize>,
}

impl Bundle {
    pub fn empty(n: usize) -> Self {
        Bundle {
            counts: vec![0; n],
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// `n x n` matrix of copy counts; every row and every column sums to `T`.
///
/// This is the canonical allocation representation: welfare and fairness
/// depend only on these multiplicities, and any such matrix decomposes into
/// `T` perfect matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyMatrix {
    rows: Vec<Vec<usize>>,
    rounds: usize,
}

impl FrequencyMatrix {
    /// Validates margins: the matrix must be square with all row and column
    /// sums equal.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, CoreError> {
        let n = rows.len();
        if n == 0 {
            return Err(CoreError::InvalidFrequency {
                reason: "empty matrix".to_owned(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CoreError::InvalidFrequency {
                    reason: format!("row {} has length {}, expected {}", i + 1, row.len(), n),
                });
            }
        }
        let rounds: usize = rows[0].iter().sum();
        for (i, row) in rows.iter().enumerate() {
            let sum: usize = row.iter().sum();
            if sum != rounds {
                return Err(CoreError::InvalidFrequency {
                    reason: format!("row {} sums to {}, expected {}", i + 1, sum, rounds),
                });
            }
        }
        for g in 0..n {
            let sum: usize = rows.iter().map(|row| row[g]).sum();
            if sum != rounds {
                return Err(CoreError::InvalidFrequency {
                    reason: format!("column {} sums to {}, expected {}", g + 1, sum, rounds),
                });
            }
        }
        Ok(FrequencyMatrix { rows, rounds })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// The common row/column sum `T`.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn count(&self, agent: usize, item: usize) -> usize {
        self.rows[agent][item]
    }
}

/// Row extraction: the bundle agent `agent` receives under `f`.
pub fn bundle_of(f: &FrequencyMatrix, agent: usize) -> Result<Bundle, CoreError> {
    let row = f.rows().get(agent).ok_or(CoreError::IndexOutOfRange {
        index: agent,
        size: f.n(),
    })?;
    Ok(Bundle {
        counts: row.clone(),
    })
}

/// A concrete schedule: one perfect matching per round.
/// `rounds[t][i]` is the item matched to agent `i` in round `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedMatching {
    rounds: Vec<Vec<usize>>,
}

impl RepeatedMatching {
    /// Validates that every round is a permutation of `0..n`.
    pub fn new(rounds: Vec<Vec<usize>>) -> Result<Self, CoreError> {
        if rounds.is_empty() {
            return Err(CoreError::NonPositiveParameter {
                name: "T",
                got: 0,
            });
        }
        let n = rounds[0].len();
        for (t, round) in rounds.iter().enumerate() {
            if round.len() != n {
                return Err(CoreError::DimensionMismatch {
                    axis: "agents",
                    expected: n,
                    got: round.len(),
                });
            }
            let mut seen = vec![false; n];
            for &item in round {
                if item >= n || seen[item] {
                    return Err(CoreError::InvalidFrequency {
                        reason: format!("round {} is not a permutation", t + 1),
                    });
                }
                seen[item] = true;
            }
        }
        Ok(RepeatedMatching { rounds })
    }

    pub fn rounds(&self) -> &[Vec<usize>] {
        &self.rounds
    }

    pub fn n(&self) -> usize {
        self.rounds[0].len()
    }

    /// The induced frequency matrix: how often each agent holds each item.
    pub fn frequency(&self) -> FrequencyMatrix {
        let n = self.n();
        let mut rows = vec![vec![0usize; n]; n];
        for round in &self.rounds {
            for (agent, &item) in round.iter().enumerate() {
                rows[agent][item] += 1;
            }
        }
        FrequencyMatrix::new(rows).expect("permutation sums are always regular")
    }
}

/// Value of `bundle` for `agent`: the double sum of copy values up to each
/// item's multiplicity.
pub fn bundle_value(inst: &Instance, agent: usize, bundle: &Bundle) -> Result<Rational, CoreError> {
    if agent >= inst.n() {
        return Err(CoreError::IndexOutOfRange {
            index: agent,
            size: inst.n(),
        });
    }
    if bundle.counts.len() != inst.n() {
        return Err(CoreError::DimensionMismatch {
            axis: "items",
            expected: inst.n(),
            got: bundle.counts.len(),
        });
    }
    let mut total = Rational::zero();
    for (item, &count) in bundle.counts.iter().enumerate() {
        if count > inst.rounds() {
            return Err(CoreError::CopyIndexOverflow {
                item,
                count,
                rounds: inst.rounds(),
            });
        }
        total += inst.prefix_value(agent, item, count);
    }
    Ok(total)
}

/// Sum of all agents' values for their own rows of `f`.
pub fn social_welfare(inst: &Instance, f: &FrequencyMatrix) -> Result<Rational, CoreError> {
    check_frequency_shape(inst, f)?;
    let mut total = Rational::zero();
    for agent in 0..inst.n() {
        total += bundle_value(inst, agent, &bundle_of(f, agent)?)?;
    }
    Ok(total)
}

pub(crate) fn check_frequency_shape(inst: &Instance, f: &FrequencyMatrix) -> Result<(), CoreError> {
    if f.n() != inst.n() || f.rounds() != inst.rounds() {
        return Err(CoreError::InvalidFrequency {
            reason: format!(
                "matrix is {}x{} with margin {}, instance needs {}x{} with margin {}",
                f.n(),
                f.n(),
                f.rounds(),
                inst.n(),
                inst.n(),
                inst.rounds()
            ),
        });
    }
    Ok(())
}

/// How the copy-value sequences behave along the copy axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    /// Every copy sequence is constant (both non-increasing and non-decreasing).
    Constant,
    NonIncreasing,
    NonDecreasing,
    /// At least one sequence rises and falls.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// All values are non-negative.
    Goods,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationClass {
    pub monotonicity: Monotonicity,
    pub sign: Sign,
    pub identical: bool,
}

/// Classifies an instance by exact comparisons: monotonicity along every
/// (agent, item) copy sequence, global sign, and whether all agents share
/// one valuation tensor.
pub fn classify(inst: &Instance) -> ValuationClass {
    let mut non_increasing = true;
    let mut non_decreasing = true;
    let mut goods = true;
    for agent in 0..inst.n() {
        for item in 0..inst.n() {
            for copy in 1..=inst.rounds() {
                let v = inst.value(agent, item, copy);
                if v < &Rational::zero() {
                    goods = false;
                }
                if copy < inst.rounds() {
                    let next = inst.value(agent, item, copy + 1);
                    if v < next {
                        non_increasing = false;
                    }
                    if v > next {
                        non_decreasing = false;
                    }
                }
            }
        }
    }
    let monotonicity = match (non_increasing, non_decreasing) {
        (true, true) => Monotonicity::Constant,
        (true, false) => Monotonicity::NonIncreasing,
        (false, true) => Monotonicity::NonDecreasing,
        (false, false) => Monotonicity::General,
    };
    let identical = (1..inst.n()).all(|agent| {
        (0..inst.n()).all(|item| {
            (1..=inst.rounds()).all(|copy| inst.value(agent, item, copy) == inst.value(0, item, copy))
        })
    });
    ValuationClass {
        monotonicity,
        sign: if goods { Sign::Goods } else { Sign::Mixed },
        identical,
    }
}
