//! Decomposition invariants: round-trip exactness and per-round bijections.

mod common;

use proptest::prelude::*;
use rematch_core::decompose::{decompose_frequency, perfect_matching, SupportGraph};
use rematch_core::instance::FrequencyMatrix;

/// A frequency matrix built by summing `t` random permutation matrices.
fn permutation_sum_strategy(
    n_range: std::ops::RangeInclusive<usize>,
    t_range: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = FrequencyMatrix> {
    (n_range, t_range).prop_flat_map(|(n, t)| {
        prop::collection::vec(Just(()).prop_perturb(move |_, mut rng| {
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.random_range(0..=i);
                perm.swap(i, j);
            }
            perm
        }), t)
        .prop_map(move |perms| {
            let mut rows = vec![vec![0usize; n]; n];
            for perm in perms {
                for (agent, item) in perm.into_iter().enumerate() {
                    rows[agent][item] += 1;
                }
            }
            FrequencyMatrix::new(rows).expect("permutation sums are regular")
        })
    })
}

proptest! {
    #[test]
    fn decompose_round_trips_exactly(f in permutation_sum_strategy(1..=8, 1..=6)) {
        let rm = decompose_frequency(&f).unwrap();
        prop_assert_eq!(rm.rounds().len(), f.rounds());
        for round in rm.rounds() {
            let mut seen = vec![false; f.n()];
            for &item in round {
                prop_assert!(!seen[item]);
                seen[item] = true;
            }
        }
        prop_assert_eq!(rm.frequency(), f);
    }

    #[test]
    fn extraction_preserves_regularity(f in permutation_sum_strategy(2..=6, 2..=5)) {
        let mut support = SupportGraph::from_frequency(&f);
        for expected in (0..f.rounds()).rev() {
            let matching = perfect_matching(&support).expect("regular support has a matching");
            let mut counts = (0..f.n())
                .map(|i| (0..f.n()).map(|g| support.count(i, g)).collect::<Vec<_>>())
                .collect::<Vec<_>>();
            for (agent, &item) in matching.iter().enumerate() {
                prop_assert!(counts[agent][item] > 0);
                counts[agent][item] -= 1;
            }
            support = SupportGraph::from_counts(counts);
            prop_assert_eq!(support.regularity(), Some(expected));
        }
    }
}
