//! Welfare solver invariants, checked against the exhaustive oracle.

mod common;

use common::{instance_strategy, ShapeTarget};
use proptest::prelude::*;
use rematch_core::instance::{bundle_of, bundle_value, social_welfare, Bundle};
use rematch_core::oracle::{brute_max_welfare, enumerate_frequency_matrices, OracleLimits};
use rematch_core::rational::{rat_int, Rational};
use rematch_core::welfare::{
    average_value, greedy_sequential, solve_nondecreasing, solve_nonincreasing,
};
use rematch_core::{classify, Monotonicity};

fn small_limits() -> OracleLimits {
    OracleLimits {
        max_n: 4,
        max_rounds: 5,
        max_enumerated: 1_000_000,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nonincreasing_solver_matches_oracle(
        inst in instance_strategy(2..=4, 1..=4, 0, 6, ShapeTarget::NonIncreasing, false)
    ) {
        let solved = solve_nonincreasing(&inst).unwrap();
        let brute = brute_max_welfare(&inst, &small_limits()).unwrap();
        prop_assert_eq!(&solved.welfare, &brute.welfare);
        prop_assert_eq!(social_welfare(&inst, &solved.frequency).unwrap(), solved.welfare);
    }

    #[test]
    fn nondecreasing_solver_matches_oracle(
        inst in instance_strategy(2..=4, 1..=4, -4, 6, ShapeTarget::NonDecreasing, false)
    ) {
        let solved = solve_nondecreasing(&inst).unwrap();
        let brute = brute_max_welfare(&inst, &small_limits()).unwrap();
        prop_assert_eq!(&solved.welfare, &brute.welfare);
    }

    #[test]
    fn greedy_never_beats_the_oracle(
        inst in instance_strategy(2..=3, 1..=3, -3, 6, ShapeTarget::Raw, false)
    ) {
        let greedy = greedy_sequential(&inst);
        let brute = brute_max_welfare(&inst, &small_limits()).unwrap();
        prop_assert!(greedy.welfare <= brute.welfare);
    }

    #[test]
    fn averaging_bound_holds_for_nondecreasing_values(
        inst in instance_strategy(2..=4, 1..=4, -4, 6, ShapeTarget::NonDecreasing, false)
    ) {
        // Every bundle value is at most the count-weighted sum of per-pair
        // averages, with equality when the bundle is all rounds of one item.
        let limits = small_limits();
        for f in enumerate_frequency_matrices(inst.n(), inst.rounds(), &limits).unwrap().take(200) {
            let f = f.unwrap();
            for agent in 0..inst.n() {
                let bundle = bundle_of(&f, agent).unwrap();
                let actual = bundle_value(&inst, agent, &bundle).unwrap();
                let bound: Rational = (0..inst.n())
                    .map(|g| average_value(&inst, agent, g) * rat_int(bundle.counts[g] as i64))
                    .sum();
                prop_assert!(actual <= bound);
            }
        }
        for agent in 0..inst.n() {
            let mut counts = vec![0usize; inst.n()];
            counts[agent] = inst.rounds();
            let full = Bundle { counts };
            let actual = bundle_value(&inst, agent, &full).unwrap();
            let bound = average_value(&inst, agent, agent) * rat_int(inst.rounds() as i64);
            prop_assert_eq!(actual, bound);
        }
    }

    #[test]
    fn bundle_value_is_additive_over_copy_prefixes(
        inst in instance_strategy(1..=4, 1..=5, -5, 5, ShapeTarget::Raw, false)
    ) {
        // Dropping the last copy of any held item subtracts exactly that
        // copy's value.
        for agent in 0..inst.n() {
            let mut counts = vec![0usize; inst.n()];
            for (g, c) in counts.iter_mut().enumerate() {
                *c = (agent + g) % (inst.rounds() + 1);
            }
            let bundle = Bundle { counts: counts.clone() };
            let total = bundle_value(&inst, agent, &bundle).unwrap();
            for g in 0..inst.n() {
                if counts[g] == 0 {
                    continue;
                }
                let mut reduced = counts.clone();
                reduced[g] -= 1;
                let rest = bundle_value(&inst, agent, &Bundle { counts: reduced }).unwrap();
                prop_assert_eq!(&total, &(rest + inst.value(agent, g, counts[g])));
            }
        }
    }

    #[test]
    fn classification_is_sound(
        inst in instance_strategy(1..=4, 1..=4, -3, 3, ShapeTarget::NonIncreasing, false)
    ) {
        let class = classify(&inst);
        prop_assert!(matches!(
            class.monotonicity,
            Monotonicity::NonIncreasing | Monotonicity::Constant
        ));
        if class.monotonicity == Monotonicity::Constant {
            // Constant sequences satisfy both monotone orders directly.
            for i in 0..inst.n() {
                for g in 0..inst.n() {
                    for t in 1..inst.rounds() {
                        prop_assert_eq!(inst.value(i, g, t), inst.value(i, g, t + 1));
                    }
                }
            }
        }
    }
}
