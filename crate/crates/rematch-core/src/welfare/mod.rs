//! Social-welfare maximization.
//!
//! A single round is a maximum-weight perfect matching. Over `T` rounds the
//! problem is NP-hard in general, but monotone copy values keep it
//! polynomial: non-increasing values reduce to a min-cost flow over per-copy
//! unit arcs, non-decreasing values reduce to one matching on per-pair
//! average values, and constant values to one matching on the first-copy
//! values. A round-by-round greedy is included as a baseline; it is not
//! optimal (see [`crate::fixtures::decay_3x2`]).

mod flow;
mod hungarian;

pub use flow::FlowNetwork;
pub use hungarian::max_weight_perfect_matching;

use crate::instance::{
    classify, social_welfare, CoreError, FrequencyMatrix, Instance, Monotonicity,
};
use crate::oracle::{self, OracleError, OracleLimits};
use crate::rational::Rational;
use thiserror::Error;

/// Which solver produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverStrategy {
    NonIncreasing,
    NonDecreasing,
    Constant,
    Greedy,
    Oracle,
}

impl SolverStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SolverStrategy::NonIncreasing => "non-increasing",
            SolverStrategy::NonDecreasing => "non-decreasing",
            SolverStrategy::Constant => "constant",
            SolverStrategy::Greedy => "greedy",
            SolverStrategy::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct WelfareSolution {
    pub frequency: FrequencyMatrix,
    pub welfare: Rational,
    pub strategy: SolverStrategy,
}

/// Strategy requested by a caller; `Auto` dispatches on the valuation class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyChoice {
    Auto,
    NonIncreasing,
    NonDecreasing,
    Constant,
    Greedy,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WelfareError {
    #[error("solver requires {required} valuations, instance is {found:?}")]
    WrongValuationClass {
        required: &'static str,
        found: Monotonicity,
    },
    #[error("general valuations with n={n}, T={rounds} exceed the oracle limits (n<={max_n}, T<={max_rounds}); welfare maximization is intractable here")]
    IntractableWithoutOracle {
        n: usize,
        rounds: usize,
        max_n: usize,
        max_rounds: usize,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Optimal welfare for monotone non-increasing (or constant) valuations via
/// min-cost flow on the per-copy network.
pub fn solve_nonincreasing(inst: &Instance) -> Result<WelfareSolution, WelfareError> {
    let class = classify(inst).monotonicity;
    if !matches!(class, Monotonicity::NonIncreasing | Monotonicity::Constant) {
        return Err(WelfareError::WrongValuationClass {
            required: "non-increasing",
            found: class,
        });
    }
    let mut network = FlowNetwork::build(inst);
    let (flow, cost) = network.solve();
    assert_eq!(flow as usize, inst.n() * inst.rounds());
    let frequency = FrequencyMatrix::new(network.copy_counts())?;
    let welfare = social_welfare(inst, &frequency)?;
    // Non-increasing copy values make the cheapest copy selection an initial
    // prefix per pair, so the flow cost must account the same total.
    assert_eq!(welfare, -cost);
    Ok(WelfareSolution {
        frequency,
        welfare,
        strategy: SolverStrategy::NonIncreasing,
    })
}

/// Optimal welfare for monotone non-decreasing (or constant) valuations:
/// one max-weight matching on per-pair average values, repeated every round.
pub fn solve_nondecreasing(inst: &Instance) -> Result<WelfareSolution, WelfareError> {
    let class = classify(inst).monotonicity;
    if !matches!(class, Monotonicity::NonDecreasing | Monotonicity::Constant) {
        return Err(WelfareError::WrongValuationClass {
            required: "non-decreasing",
            found: class,
        });
    }
    let rounds = Rational::from_integer((inst.rounds() as i64).into());
    let averages: Vec<Vec<Rational>> = (0..inst.n())
        .map(|i| {
            (0..inst.n())
                .map(|g| inst.prefix_value(i, g, inst.rounds()) / &rounds)
                .collect()
        })
        .collect();
    let (assignment, average_total) = max_weight_perfect_matching(&averages);
    let frequency = full_rounds_matrix(inst, &assignment)?;
    let welfare = social_welfare(inst, &frequency)?;
    assert_eq!(welfare, average_total * rounds);
    Ok(WelfareSolution {
        frequency,
        welfare,
        strategy: SolverStrategy::NonDecreasing,
    })
}

/// Optimal welfare for constant valuations: one max-weight matching on the
/// first-copy values, repeated every round.
pub fn solve_constant(inst: &Instance) -> Result<WelfareSolution, WelfareError> {
    let class = classify(inst).monotonicity;
    if class != Monotonicity::Constant {
        return Err(WelfareError::WrongValuationClass {
            required: "constant",
            found: class,
        });
    }
    let weights: Vec<Vec<Rational>> = (0..inst.n())
        .map(|i| (0..inst.n()).map(|g| inst.value(i, g, 1).clone()).collect())
        .collect();
    let (assignment, per_round) = max_weight_perfect_matching(&weights);
    let frequency = full_rounds_matrix(inst, &assignment)?;
    let welfare = social_welfare(inst, &frequency)?;
    assert_eq!(
        welfare,
        per_round * Rational::from_integer((inst.rounds() as i64).into())
    );
    Ok(WelfareSolution {
        frequency,
        welfare,
        strategy: SolverStrategy::Constant,
    })
}

fn full_rounds_matrix(
    inst: &Instance,
    assignment: &[usize],
) -> Result<FrequencyMatrix, CoreError> {
    let n = inst.n();
    let mut rows = vec![vec![0usize; n]; n];
    for (agent, &item) in assignment.iter().enumerate() {
        rows[agent][item] = inst.rounds();
    }
    FrequencyMatrix::new(rows)
}

/// Round-by-round baseline: each round takes a max-weight matching where a
/// pair's weight is the value of its next copy, given what earlier rounds
/// assigned. No optimality claim.
pub fn greedy_sequential(inst: &Instance) -> WelfareSolution {
    let n = inst.n();
    let mut counts = vec![vec![0usize; n]; n];
    for _round in 0..inst.rounds() {
        let weights: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|g| inst.value(i, g, counts[i][g] + 1).clone())
                    .collect()
            })
            .collect();
        let (assignment, _) = max_weight_perfect_matching(&weights);
        for (agent, &item) in assignment.iter().enumerate() {
            counts[agent][item] += 1;
        }
    }
    let frequency = FrequencyMatrix::new(counts).expect("sum of permutations is regular");
    let welfare = social_welfare(inst, &frequency).expect("frequency fits the instance");
    WelfareSolution {
        frequency,
        welfare,
        strategy: SolverStrategy::Greedy,
    }
}

/// Front end: dispatches on the requested strategy, or on the valuation
/// class for `Auto`. General (non-monotone) instances go to the exhaustive
/// oracle when `limits` admit them and are rejected otherwise, since exact
/// welfare maximization is intractable in general.
pub fn solve_welfare(
    inst: &Instance,
    choice: StrategyChoice,
    limits: &OracleLimits,
) -> Result<WelfareSolution, WelfareError> {
    match choice {
        StrategyChoice::NonIncreasing => solve_nonincreasing(inst),
        StrategyChoice::NonDecreasing => solve_nondecreasing(inst),
        StrategyChoice::Constant => solve_constant(inst),
        StrategyChoice::Greedy => Ok(greedy_sequential(inst)),
        StrategyChoice::Oracle => oracle_solve(inst, limits),
        StrategyChoice::Auto => match classify(inst).monotonicity {
            Monotonicity::Constant => solve_constant(inst),
            Monotonicity::NonIncreasing => solve_nonincreasing(inst),
            Monotonicity::NonDecreasing => solve_nondecreasing(inst),
            Monotonicity::General => oracle_solve(inst, limits),
        },
    }
}

fn oracle_solve(inst: &Instance, limits: &OracleLimits) -> Result<WelfareSolution, WelfareError> {
    if !limits.admits(inst.n(), inst.rounds()) {
        return Err(WelfareError::IntractableWithoutOracle {
            n: inst.n(),
            rounds: inst.rounds(),
            max_n: limits.max_n,
            max_rounds: limits.max_rounds,
        });
    }
    Ok(oracle::brute_max_welfare(inst, limits)?)
}

/// Per-pair average copy value; the non-decreasing reduction's weight and a
/// handy upper bound: any bundle's value is at most the sum of its counts
/// times these averages.
pub fn average_value(inst: &Instance, agent: usize, item: usize) -> Rational {
    inst.prefix_value(agent, item, inst.rounds())
        / Rational::from_integer((inst.rounds() as i64).into())
}
