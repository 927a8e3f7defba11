//! Fairness of repeated matchings: exact checkers and constructive
//! algorithms.
//!
//! Two notions are supported. Envy-freeness up to one item (EF1): agent `i`
//! accepts `j`'s bundle if her own value is at least her value for `j`'s
//! bundle after the last copy of some item is removed. Swap envy-freeness
//! (swapEF): either `i` does not envy `j` outright, or a hypothetical
//! exchange of one copy from each bundle removes the envy. Both predicates
//! are evaluated exactly over rationals; a tie passes.
//!
//! The constructive side covers identical valuations (round-robin picks over
//! a fixed item ranking) and residues `T mod n` in {0, 1, 2} (round-robin
//! additions) or {n-2, n-1} (round-robin removals); anything else falls back
//! to the exhaustive oracle when the instance is small enough.

use crate::decompose::{perfect_matching, SupportGraph};
use crate::instance::{
    check_frequency_shape, classify, CoreError, FrequencyMatrix, Instance,
};
use crate::oracle::{self, OracleError, OracleLimits, ValueTable};
use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FairnessNotion {
    Ef1,
    SwapEf,
}

impl FairnessNotion {
    pub fn name(self) -> &'static str {
        match self {
            FairnessNotion::Ef1 => "ef1",
            FairnessNotion::SwapEf => "swapef",
        }
    }
}

/// Why an ordered pair passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The envier values her own bundle at least as much outright.
    NoEnvy,
    /// EF1: dropping the last copy of this item from the envied bundle
    /// settles the pair.
    RemoveLast { item: usize },
    /// swapEF: exchanging the last copy of `own_item` for a copy of
    /// `other_item` settles the pair.
    Swap { own_item: usize, other_item: usize },
}

/// Verdict for one ordered pair (envier, envied). `witness == None` is a
/// violation certificate: every candidate witness failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub envier: usize,
    pub envied: usize,
    /// The envier's value for her own bundle.
    pub own_value: Rational,
    /// The envier's value for the envied bundle.
    pub other_value: Rational,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessReport {
    pub notion: FairnessNotion,
    pub satisfied: bool,
    pub pairs: Vec<PairVerdict>,
}

impl FairnessReport {
    pub fn violations(&self) -> impl Iterator<Item = &PairVerdict> {
        self.pairs.iter().filter(|p| p.witness.is_none())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FairnessError {
    #[error("algorithm requires {required} valuations")]
    WrongValuationClass { required: &'static str },
    #[error("no constructive algorithm covers T mod n = {residue} for n = {n}")]
    UnsupportedResidue { residue: usize, n: usize },
    #[error("exhaustive search found no fair matching")]
    OracleExhausted,
    #[error("output failed fairness re-verification at pair ({envier}, {envied})")]
    VerificationFailed { envier: usize, envied: usize },
    #[error("removal phase could not keep the remaining picks feasible")]
    InternalPhaseFailure,
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn pair_witness(
    inst: &Instance,
    f: &FrequencyMatrix,
    notion: FairnessNotion,
    envier: usize,
    envied: usize,
    own_value: &Rational,
    other_value: &Rational,
) -> Option<Witness> {
    if own_value >= other_value {
        return Some(Witness::NoEnvy);
    }
    let rounds = inst.rounds();
    match notion {
        FairnessNotion::Ef1 => {
            // Remove the last copy of some item g held by the envied agent:
            // the bundle loses v(envier, g, count).
            for item in 0..inst.n() {
                let count = f.count(envied, item);
                if count == 0 {
                    continue;
                }
                let reduced = other_value - inst.value(envier, item, count);
                if own_value >= &reduced {
                    return Some(Witness::RemoveLast { item });
                }
            }
            None
        }
        FairnessNotion::SwapEf => {
            for own_item in 0..inst.n() {
                if f.count(envier, own_item) == 0 {
                    continue;
                }
                for other_item in 0..inst.n() {
                    if f.count(envied, other_item) == 0 {
                        continue;
                    }
                    if own_item == other_item {
                        // Swapping copies of the same item changes nothing,
                        // so this candidate reduces to the outright clause.
                        continue;
                    }
                    // Copy indices after the hypothetical exchange; skip a
                    // candidate that would need a copy beyond round T.
                    let own_gain = f.count(envier, other_item) + 1;
                    let other_gain = f.count(envied, own_item) + 1;
                    if own_gain > rounds || other_gain > rounds {
                        continue;
                    }
                    let lhs = own_value + inst.value(envier, other_item, own_gain)
                        - inst.value(envier, own_item, f.count(envier, own_item));
                    let rhs = other_value + inst.value(envier, own_item, other_gain)
                        - inst.value(envier, other_item, f.count(envied, other_item));
                    if lhs >= rhs {
                        return Some(Witness::Swap {
                            own_item,
                            other_item,
                        });
                    }
                }
            }
            None
        }
    }
}

fn check(
    inst: &Instance,
    f: &FrequencyMatrix,
    notion: FairnessNotion,
) -> Result<FairnessReport, CoreError> {
    check_frequency_shape(inst, f)?;
    let table = ValueTable::new(inst);
    let values: Vec<Vec<Rational>> = (0..inst.n())
        .map(|i| {
            (0..inst.n())
                .map(|j| table.row_value(i, &f.rows()[j]))
                .collect()
        })
        .collect();
    let mut pairs = Vec::new();
    let mut satisfied = true;
    for envier in 0..inst.n() {
        for envied in 0..inst.n() {
            if envier == envied {
                continue;
            }
            let own_value = values[envier][envier].clone();
            let other_value = values[envier][envied].clone();
            let witness = pair_witness(inst, f, notion, envier, envied, &own_value, &other_value);
            satisfied &= witness.is_some();
            pairs.push(PairVerdict {
                envier,
                envied,
                own_value,
                other_value,
                witness,
            });
        }
    }
    Ok(FairnessReport {
        notion,
        satisfied,
        pairs,
    })
}

/// Full EF1 report with a witness or violation certificate per ordered pair.
pub fn check_ef1(inst: &Instance, f: &FrequencyMatrix) -> Result<FairnessReport, CoreError> {
    check(inst, f, FairnessNotion::Ef1)
}

/// Full swapEF report with a witness or violation certificate per ordered pair.
pub fn check_swapef(inst: &Instance, f: &FrequencyMatrix) -> Result<FairnessReport, CoreError> {
    check(inst, f, FairnessNotion::SwapEf)
}

/// Boolean fast path used by the exhaustive oracle: stops at the first
/// violated pair instead of building a report.
pub fn satisfies(
    inst: &Instance,
    f: &FrequencyMatrix,
    notion: FairnessNotion,
) -> Result<bool, CoreError> {
    check_frequency_shape(inst, f)?;
    let table = ValueTable::new(inst);
    let own_values: Vec<Rational> = (0..inst.n())
        .map(|i| table.row_value(i, &f.rows()[i]))
        .collect();
    for envier in 0..inst.n() {
        for envied in 0..inst.n() {
            if envier == envied {
                continue;
            }
            let other_value = table.row_value(envier, &f.rows()[envied]);
            if pair_witness(
                inst,
                f,
                notion,
                envier,
                envied,
                &own_values[envier],
                &other_value,
            )
            .is_none()
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn floor_ceil(rounds: usize, n: usize) -> (usize, usize, usize) {
    let residue = rounds % n;
    let floor = rounds / n;
    let ceil = if residue > 0 { floor + 1 } else { floor };
    (residue, floor, ceil)
}

fn matrix(f: Vec<Vec<usize>>) -> Result<FrequencyMatrix, FairnessError> {
    Ok(FrequencyMatrix::new(f)?)
}

/// Round-robin picks over a fixed item ranking, for identical valuations.
///
/// Everyone starts with `floor(T/n)` copies of every item; the `T mod n`
/// leftover copies of each item are claimed in round-robin phases where each
/// agent takes the best-ranked item that still has spare copies. Ranking
/// sorts items by the value of their `ceil(T/n)`-th copy, descending, ties
/// to the lower index. The result is always swapEF, and EF1 when all values
/// are non-negative.
pub fn alg_identical(inst: &Instance) -> Result<FrequencyMatrix, FairnessError> {
    if !classify(inst).identical {
        return Err(FairnessError::WrongValuationClass {
            required: "identical",
        });
    }
    let n = inst.n();
    let (residue, floor, ceil) = floor_ceil(inst.rounds(), n);
    let mut f = vec![vec![floor; n]; n];
    if residue > 0 {
        let mut ranking: Vec<usize> = (0..n).collect();
        ranking.sort_by(|&a, &b| {
            inst.value(0, b, ceil)
                .cmp(inst.value(0, a, ceil))
                .then(a.cmp(&b))
        });
        let mut spare = vec![residue; n];
        for _phase in 0..residue {
            for agent in 0..n {
                let pick = ranking
                    .iter()
                    .copied()
                    .find(|&g| spare[g] > 0)
                    .expect("spare copies exactly cover the picks");
                spare[pick] -= 1;
                // Consecutive picks of one item hit distinct agents, so no
                // agent claims the same item twice across phases.
                debug_assert_eq!(f[agent][pick], floor);
                f[agent][pick] = ceil;
            }
        }
    }
    matrix(f)
}

/// Round-robin additions for `T mod n` in {0, 1, 2}.
///
/// After the uniform `floor(T/n)` base, a forward pass (agent order 1..n)
/// lets each agent claim the unclaimed item whose next copy she values most;
/// when the residue is 2, a reverse pass (n..1) adds one more copy each. The
/// output is EF1 for goods and swapEF for mixed items.
pub fn alg_round_robin(inst: &Instance) -> Result<FrequencyMatrix, FairnessError> {
    let n = inst.n();
    let (residue, floor, ceil) = floor_ceil(inst.rounds(), n);
    if residue > 2 {
        return Err(FairnessError::UnsupportedResidue { residue, n });
    }
    let mut f = vec![vec![floor; n]; n];
    if residue > 0 {
        let mut unclaimed = vec![true; n];
        for agent in 0..n {
            let pick = argmax_by(&unclaimed, |g| inst.value(agent, g, ceil));
            f[agent][pick] = ceil;
            unclaimed[pick] = false;
        }
    }
    if residue == 2 {
        let mut unclaimed = vec![true; n];
        for agent in (0..n).rev() {
            // The agent may take a second extra copy of her forward-phase
            // item here; the copy index stays within T.
            let pick = argmax_by(&unclaimed, |g| {
                debug_assert!(f[agent][g] + 1 <= inst.rounds());
                inst.value(agent, g, f[agent][g] + 1)
            });
            f[agent][pick] += 1;
            unclaimed[pick] = false;
        }
    }
    matrix(f)
}

/// Round-robin removals for `T mod n = n - 1`: everyone starts with
/// `ceil(T/n)` copies of every item and discards the least-valued last copy
/// of a distinct item. EF1 for goods.
pub fn alg_removal(inst: &Instance) -> Result<FrequencyMatrix, FairnessError> {
    let n = inst.n();
    let (residue, _, ceil) = floor_ceil(inst.rounds(), n);
    if n < 2 || residue != n - 1 {
        return Err(FairnessError::UnsupportedResidue { residue, n });
    }
    let mut f = vec![vec![ceil; n]; n];
    forward_removal_phase(inst, &mut f, ceil);
    matrix(f)
}

/// Removal variant that also covers `T mod n = n - 2` by running a second,
/// reverse-order removal phase; output is swapEF for mixed items.
pub fn alg_swap_removal(inst: &Instance) -> Result<FrequencyMatrix, FairnessError> {
    let n = inst.n();
    let (residue, _, ceil) = floor_ceil(inst.rounds(), n);
    let two_phases = if n >= 2 && residue == n - 1 {
        false
    } else if n >= 3 && residue == n - 2 {
        true
    } else {
        return Err(FairnessError::UnsupportedResidue { residue, n });
    };
    let mut f = vec![vec![ceil; n]; n];
    forward_removal_phase(inst, &mut f, ceil);
    if two_phases {
        reverse_removal_phase(inst, &mut f)?;
    }
    matrix(f)
}

fn forward_removal_phase(inst: &Instance, f: &mut [Vec<usize>], ceil: usize) {
    let n = inst.n();
    let mut unclaimed = vec![true; n];
    for agent in 0..n {
        let pick = argmin_by(&unclaimed, |g| inst.value(agent, g, ceil));
        f[agent][pick] -= 1;
        unclaimed[pick] = false;
    }
}

/// Reverse-order removal pass: agent order n..1, each discarding the last
/// copy of her least-valued unclaimed item among those she still holds.
///
/// The discard may hit the same item the agent removed in the forward pass
/// (its remaining count can be ceil-1, or even 0 when T < n, in which case
/// the item is simply not a candidate). Greedy picks are additionally
/// screened so the agents still to act can each discard a distinct held
/// item; the screen only ever bites in the T = n - 2 corner where bundles
/// hold single copies.
fn reverse_removal_phase(inst: &Instance, f: &mut [Vec<usize>]) -> Result<(), FairnessError> {
    let n = inst.n();
    let mut unclaimed = vec![true; n];
    for agent in (0..n).rev() {
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&g| unclaimed[g] && f[agent][g] >= 1)
            .collect();
        candidates.sort_by(|&a, &b| {
            inst.value(agent, a, f[agent][a])
                .cmp(inst.value(agent, b, f[agent][b]))
                .then(a.cmp(&b))
        });
        let mut chosen = None;
        for &pick in &candidates {
            if remainder_feasible(f, &unclaimed, agent, pick) {
                chosen = Some(pick);
                break;
            }
        }
        let pick = chosen.ok_or(FairnessError::InternalPhaseFailure)?;
        f[agent][pick] -= 1;
        unclaimed[pick] = false;
    }
    Ok(())
}

/// Can agents 0..agent still each discard a distinct unclaimed item they
/// hold, after `pick` is claimed? A Hall-style check via perfect matching on
/// the remaining square sub-support.
fn remainder_feasible(f: &[Vec<usize>], unclaimed: &[bool], agent: usize, pick: usize) -> bool {
    if agent == 0 {
        return true;
    }
    let items: Vec<usize> = (0..f.len())
        .filter(|&g| unclaimed[g] && g != pick)
        .collect();
    debug_assert_eq!(items.len(), agent);
    let counts: Vec<Vec<usize>> = (0..agent)
        .map(|a| items.iter().map(|&g| usize::from(f[a][g] >= 1)).collect())
        .collect();
    perfect_matching(&SupportGraph::from_counts(counts)).is_some()
}

fn argmax_by<'v>(eligible: &[bool], mut value: impl FnMut(usize) -> &'v Rational) -> usize {
    let mut best: Option<(usize, &Rational)> = None;
    for g in 0..eligible.len() {
        if !eligible[g] {
            continue;
        }
        let v = value(g);
        if best.is_none_or(|(_, bv)| v > bv) {
            best = Some((g, v));
        }
    }
    best.expect("at least one eligible item").0
}

fn argmin_by<'v>(eligible: &[bool], mut value: impl FnMut(usize) -> &'v Rational) -> usize {
    let mut best: Option<(usize, &Rational)> = None;
    for g in 0..eligible.len() {
        if !eligible[g] {
            continue;
        }
        let v = value(g);
        if best.is_none_or(|(_, bv)| v < bv) {
            best = Some((g, v));
        }
    }
    best.expect("at least one eligible item").0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FairMethod {
    Identical,
    RoundRobin,
    Removal,
    SwapRemoval,
    Oracle,
}

impl FairMethod {
    pub fn name(self) -> &'static str {
        match self {
            FairMethod::Identical => "identical-ranking",
            FairMethod::RoundRobin => "round-robin",
            FairMethod::Removal => "removal",
            FairMethod::SwapRemoval => "swap-removal",
            FairMethod::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FairSolution {
    pub frequency: FrequencyMatrix,
    pub method: FairMethod,
}

/// Dispatches to the constructive algorithm covering the instance, falling
/// back to exhaustive search within `limits` for uncovered residues. The
/// output is re-verified with the matching checker before it is returned,
/// so a lemma transcription bug surfaces as an error instead of an unfair
/// matching.
pub fn fair_solve(
    inst: &Instance,
    notion: FairnessNotion,
    limits: &OracleLimits,
) -> Result<FairSolution, FairnessError> {
    let n = inst.n();
    let rounds = inst.rounds();
    let residue = rounds % n;
    let (frequency, method) = if classify(inst).identical {
        (alg_identical(inst)?, FairMethod::Identical)
    } else if residue <= 2 {
        (alg_round_robin(inst)?, FairMethod::RoundRobin)
    } else if notion == FairnessNotion::Ef1 && residue == n - 1 {
        (alg_removal(inst)?, FairMethod::Removal)
    } else if notion == FairnessNotion::SwapEf && (residue == n - 1 || residue == n - 2) {
        (alg_swap_removal(inst)?, FairMethod::SwapRemoval)
    } else if limits.admits(n, rounds) {
        match oracle::brute_fair_exists(inst, notion, limits)? {
            Some(f) => (f, FairMethod::Oracle),
            None => return Err(FairnessError::OracleExhausted),
        }
    } else {
        return Err(FairnessError::UnsupportedResidue { residue, n });
    };

    let report = check(inst, &frequency, notion)?;
    if !report.satisfied {
        let bad = report
            .violations()
            .next()
            .expect("unsatisfied report holds a violation");
        return Err(FairnessError::VerificationFailed {
            envier: bad.envier,
            envied: bad.envied,
        });
    }
    Ok(FairSolution { frequency, method })
}
