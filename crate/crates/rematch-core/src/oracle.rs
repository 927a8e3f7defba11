//! Brute-force ground truth at desk scale.
//!
//! Enumerates every n-by-n non-negative integer matrix whose rows and
//! columns all sum to `T` (the full space of frequency matrices) and scans
//! it for welfare optima, fairness-constrained optima, or any fair matrix.
//! The space explodes quickly, so every entry point is gated by
//! [`OracleLimits`].

use crate::fairness::{self, FairnessNotion};
use crate::instance::{CoreError, FrequencyMatrix, Instance};
use crate::rational::Rational;
use crate::welfare::{SolverStrategy, WelfareSolution};
use num::Zero;
use thiserror::Error;

/// Caps on the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
    pub max_rounds: usize,
    /// Cap on the number of matrices visited before giving up.
    pub max_enumerated: u64,
}

impl Default for OracleLimits {
    /// Wide profile: many agents, few rounds.
    fn default() -> Self {
        OracleLimits {
            max_n: 6,
            max_rounds: 3,
            max_enumerated: 50_000_000,
        }
    }
}

impl OracleLimits {
    /// Tall profile: fewer agents, more rounds.
    pub fn tall() -> Self {
        OracleLimits {
            max_n: 4,
            max_rounds: 5,
            max_enumerated: 50_000_000,
        }
    }

    pub fn admits(&self, n: usize, rounds: usize) -> bool {
        n <= self.max_n && rounds <= self.max_rounds
    }

    /// Picks whichever default profile admits `(n, rounds)`, falling back to
    /// the wide profile when neither does (callers then get a clean
    /// limit-exceeded error).
    pub fn preset_for(n: usize, rounds: usize) -> Self {
        let wide = OracleLimits::default();
        if wide.admits(n, rounds) {
            return wide;
        }
        let tall = OracleLimits::tall();
        if tall.admits(n, rounds) {
            return tall;
        }
        wide
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle limit exceeded: n={n}, T={rounds}, visited={visited} (limits: n<={max_n}, T<={max_rounds}, visited<={max_enumerated})")]
    LimitExceeded {
        n: usize,
        rounds: usize,
        visited: u64,
        max_n: usize,
        max_rounds: usize,
        max_enumerated: u64,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Streams every frequency matrix for the given margins exactly once.
///
/// Entries are filled cell by cell, each scanned from its largest feasible
/// value down to its smallest, which yields a fixed lexicographic-style
/// order: for n=2, T=2 the stream is [[2,0],[0,2]], [[1,1],[1,1]],
/// [[0,2],[2,0]].
pub fn enumerate_frequency_matrices(
    n: usize,
    rounds: usize,
    limits: &OracleLimits,
) -> Result<FrequencyMatrixIter, OracleError> {
    if n == 0 || rounds == 0 {
        return Err(CoreError::NonPositiveParameter {
            name: if n == 0 { "n" } else { "T" },
            got: 0,
        }
        .into());
    }
    if !limits.admits(n, rounds) {
        return Err(limit_error(n, rounds, 0, limits));
    }
    Ok(FrequencyMatrixIter {
        n,
        rounds,
        limits: *limits,
        row_remaining: vec![rounds; n],
        col_remaining: vec![rounds; n],
        entries: Vec::with_capacity(n * n),
        lower_bounds: Vec::with_capacity(n * n),
        yielded: 0,
        state: IterState::Fresh,
    })
}

fn limit_error(n: usize, rounds: usize, visited: u64, limits: &OracleLimits) -> OracleError {
    OracleError::LimitExceeded {
        n,
        rounds,
        visited,
        max_n: limits.max_n,
        max_rounds: limits.max_rounds,
        max_enumerated: limits.max_enumerated,
    }
}

#[derive(PartialEq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

pub struct FrequencyMatrixIter {
    n: usize,
    rounds: usize,
    limits: OracleLimits,
    row_remaining: Vec<usize>,
    col_remaining: Vec<usize>,
    /// Entries of the partially built matrix, in row-major cell order.
    entries: Vec<usize>,
    /// Smallest feasible value for each filled cell, to know when a cell is
    /// exhausted while backtracking.
    lower_bounds: Vec<usize>,
    yielded: u64,
    state: IterState,
}

impl FrequencyMatrixIter {
    /// Feasible value range for the next cell. Lower bounds come from the
    /// budget the rest of the row can still absorb and from what the rows
    /// below can still feed this column; within them, any choice extends to
    /// a complete matrix, so the search never dead-ends.
    fn bounds(&self, cell: usize) -> (usize, usize) {
        let row = cell / self.n;
        let col = cell % self.n;
        let row_rem = self.row_remaining[row];
        let col_rem = self.col_remaining[col];
        let later_cols: usize = self.col_remaining[col + 1..].iter().sum();
        let rows_below = self.n - row - 1;
        let lo_row = row_rem.saturating_sub(later_cols);
        let lo_col = col_rem.saturating_sub(rows_below * self.rounds);
        (lo_row.max(lo_col), row_rem.min(col_rem))
    }

    fn push(&mut self, value: usize, lo: usize) {
        let cell = self.entries.len();
        self.row_remaining[cell / self.n] -= value;
        self.col_remaining[cell % self.n] -= value;
        self.entries.push(value);
        self.lower_bounds.push(lo);
    }

    fn pop(&mut self) -> (usize, usize) {
        let value = self.entries.pop().unwrap();
        let lo = self.lower_bounds.pop().unwrap();
        let cell = self.entries.len();
        self.row_remaining[cell / self.n] += value;
        self.col_remaining[cell % self.n] += value;
        (value, lo)
    }

    /// Fills all remaining cells with their largest feasible values.
    fn descend(&mut self) {
        while self.entries.len() < self.n * self.n {
            let (lo, hi) = self.bounds(self.entries.len());
            debug_assert!(lo <= hi);
            self.push(hi, lo);
        }
    }

    /// Steps to the next leaf, or finishes.
    fn advance(&mut self) {
        while let Some(&value) = self.entries.last() {
            let (value, lo) = (value, *self.lower_bounds.last().unwrap());
            self.pop();
            if value > lo {
                self.push(value - 1, lo);
                self.descend();
                return;
            }
        }
        self.state = IterState::Done;
    }

    fn current(&self) -> FrequencyMatrix {
        let rows: Vec<Vec<usize>> = self
            .entries
            .chunks(self.n)
            .map(|chunk| chunk.to_vec())
            .collect();
        FrequencyMatrix::new(rows).expect("enumeration preserves margins")
    }
}

impl Iterator for FrequencyMatrixIter {
    type Item = Result<FrequencyMatrix, OracleError>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.state {
            IterState::Fresh => {
                self.state = IterState::Running;
                self.descend();
            }
            IterState::Running => self.advance(),
            IterState::Done => return None,
        }
        if self.state == IterState::Done {
            return None;
        }
        if self.yielded == self.limits.max_enumerated {
            self.state = IterState::Done;
            return Some(Err(limit_error(
                self.n,
                self.rounds,
                self.yielded,
                &self.limits,
            )));
        }
        self.yielded += 1;
        Some(Ok(self.current()))
    }
}

/// Prefix sums of copy values, so a bundle evaluates with one addition per
/// item. Shared by the brute-force scans below.
pub(crate) struct ValueTable {
    /// prefix[agent][item][k] = value of the first k copies.
    prefix: Vec<Vec<Vec<Rational>>>,
}

impl ValueTable {
    pub(crate) fn new(inst: &Instance) -> Self {
        let prefix = (0..inst.n())
            .map(|i| {
                (0..inst.n())
                    .map(|g| {
                        let mut acc = Rational::zero();
                        let mut sums = Vec::with_capacity(inst.rounds() + 1);
                        sums.push(acc.clone());
                        for t in 1..=inst.rounds() {
                            acc += inst.value(i, g, t);
                            sums.push(acc.clone());
                        }
                        sums
                    })
                    .collect()
            })
            .collect();
        ValueTable { prefix }
    }

    pub(crate) fn row_value(&self, agent: usize, row: &[usize]) -> Rational {
        let mut total = Rational::zero();
        for (item, &count) in row.iter().enumerate() {
            total += &self.prefix[agent][item][count];
        }
        total
    }
}

/// Exact maximum social welfare over every frequency matrix; the first
/// maximizer in enumeration order is returned.
pub fn brute_max_welfare(
    inst: &Instance,
    limits: &OracleLimits,
) -> Result<WelfareSolution, OracleError> {
    let table = ValueTable::new(inst);
    let mut best: Option<(Rational, FrequencyMatrix)> = None;
    for item in enumerate_frequency_matrices(inst.n(), inst.rounds(), limits)? {
        let f = item?;
        let welfare: Rational = (0..inst.n())
            .map(|i| table.row_value(i, &f.rows()[i]))
            .sum();
        if best.as_ref().is_none_or(|(w, _)| &welfare > w) {
            best = Some((welfare, f));
        }
    }
    let (welfare, frequency) = best.expect("enumeration yields at least one matrix");
    Ok(WelfareSolution {
        frequency,
        welfare,
        strategy: SolverStrategy::Oracle,
    })
}

/// Maximum welfare among matrices passing the given fairness check, or
/// `None` when no matrix passes.
pub fn brute_max_welfare_constrained(
    inst: &Instance,
    notion: FairnessNotion,
    limits: &OracleLimits,
) -> Result<Option<WelfareSolution>, OracleError> {
    let table = ValueTable::new(inst);
    let mut best: Option<(Rational, FrequencyMatrix)> = None;
    for item in enumerate_frequency_matrices(inst.n(), inst.rounds(), limits)? {
        let f = item?;
        let welfare: Rational = (0..inst.n())
            .map(|i| table.row_value(i, &f.rows()[i]))
            .sum();
        // Fairness is the expensive side; only check matrices that would
        // improve the incumbent.
        if best.as_ref().is_some_and(|(w, _)| &welfare <= w) {
            continue;
        }
        if fairness::satisfies(inst, &f, notion)? {
            best = Some((welfare, f));
        }
    }
    Ok(best.map(|(welfare, frequency)| WelfareSolution {
        frequency,
        welfare,
        strategy: SolverStrategy::Oracle,
    }))
}

/// First enumerated matrix passing the fairness check, or `None`.
pub fn brute_fair_exists(
    inst: &Instance,
    notion: FairnessNotion,
    limits: &OracleLimits,
) -> Result<Option<FrequencyMatrix>, OracleError> {
    for item in enumerate_frequency_matrices(inst.n(), inst.rounds(), limits)? {
        let f = item?;
        if fairness::satisfies(inst, &f, notion)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
