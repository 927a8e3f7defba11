//! Proptest strategies shared by the integration suites.

use proptest::prelude::*;
use rematch_core::instance::{validate_instance, Instance};
use rematch_core::rational::{rat_int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeTarget {
    NonIncreasing,
    NonDecreasing,
    Constant,
    Raw,
}

/// Integer-valued rationals in `lo..=hi`. Integer draws keep ties common,
/// which is exactly what the tie-breaking rules need to be exercised.
pub fn value_in(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi).prop_map(rat_int)
}

/// An instance with every copy sequence shaped per `target`. `identical`
/// copies agent 1's table to everyone.
pub fn instance_strategy(
    n: std::ops::RangeInclusive<usize>,
    rounds: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
    target: ShapeTarget,
    identical: bool,
) -> impl Strategy<Value = Instance> {
    (n, rounds).prop_flat_map(move |(n, t)| {
        let seq = prop::collection::vec(lo..=hi, t).prop_map(move |mut copies| {
            match target {
                ShapeTarget::NonIncreasing => copies.sort_unstable_by(|a, b| b.cmp(a)),
                ShapeTarget::NonDecreasing => copies.sort_unstable(),
                ShapeTarget::Constant => {
                    let first = copies[0];
                    copies.iter_mut().for_each(|c| *c = first);
                }
                ShapeTarget::Raw => {}
            }
            copies.into_iter().map(rat_int).collect::<Vec<_>>()
        });
        let agents = if identical { 1 } else { n };
        prop::collection::vec(prop::collection::vec(seq, n), agents).prop_map(
            move |mut tensor| {
                while tensor.len() < n {
                    tensor.push(tensor[0].clone());
                }
                validate_instance(n, t, tensor).expect("generated dimensions are consistent")
            },
        )
    })
}

/// A `(n, T)` pair where `T % n` equals the requested residue. Residues are
/// given relative to n: `Residue::Exact(r)` or `Residue::NMinus(k)`.
#[derive(Debug, Clone, Copy)]
pub enum Residue {
    Exact(usize),
    NMinus(usize),
}

pub fn shape_with_residue(
    n_range: std::ops::RangeInclusive<usize>,
    max_quotient: usize,
    residue: Residue,
) -> impl Strategy<Value = (usize, usize)> {
    n_range
        .prop_flat_map(move |n| (Just(n), 0..=max_quotient))
        .prop_filter_map("residue must fit n and keep T positive", move |(n, k)| {
            let r = match residue {
                Residue::Exact(r) => r,
                Residue::NMinus(d) => n.checked_sub(d)?,
            };
            if r >= n {
                return None;
            }
            let t = k * n + r;
            (t > 0).then_some((n, t))
        })
}
