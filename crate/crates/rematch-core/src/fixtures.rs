//! Small hand-built instances used across the test suites and docs.

use crate::instance::{validate_instance, Instance};
use crate::rational::{rat_int, Rational};
use num::Zero;

/// Three agents, two rounds. Agent 1 values the first copy of items 2 and 3
/// at `1 - eps`; agents 2 and 3 value the first copy of their own item at 1;
/// everything else is 0. Non-increasing goods. The round-by-round greedy
/// reaches welfare `3 - eps` here while the optimum is `4 - 2*eps`.
pub fn decay_3x2(eps: Rational) -> Instance {
    let one_minus = rat_int(1) - eps;
    let z = Rational::zero;
    let tensor = vec![
        vec![
            vec![z(), z()],
            vec![one_minus.clone(), z()],
            vec![one_minus, z()],
        ],
        vec![
            vec![z(), z()],
            vec![rat_int(1), z()],
            vec![z(), z()],
        ],
        vec![
            vec![z(), z()],
            vec![z(), z()],
            vec![rat_int(1), z()],
        ],
    ];
    validate_instance(3, 2, tensor).expect("fixture dimensions are fixed")
}

/// Two agents, three rounds, identical constant valuations (3, 2).
/// Matching each agent to a distinct item for all rounds is envy-free up to
/// one item but not swap envy-free.
pub fn constant_2x3() -> Instance {
    let tensor = vec![
        vec![vec![rat_int(3); 3], vec![rat_int(2); 3]],
        vec![vec![rat_int(3); 3], vec![rat_int(2); 3]],
    ];
    validate_instance(2, 3, tensor).expect("fixture dimensions are fixed")
}

/// Two agents, one round, identical valuations: item 1 is a good (+1), item
/// 2 a chore (-1). Neither of the two matchings is envy-free up to one item,
/// but both are swap envy-free.
pub fn good_and_chore() -> Instance {
    let tensor = vec![
        vec![vec![rat_int(1)], vec![rat_int(-1)]],
        vec![vec![rat_int(1)], vec![rat_int(-1)]],
    ];
    validate_instance(2, 1, tensor).expect("fixture dimensions are fixed")
}
