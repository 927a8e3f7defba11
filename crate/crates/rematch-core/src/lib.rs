//! Repeated bipartite matchings with history-dependent valuations.
//!
//! `n` items are matched to `n` agents in each of `T` rounds; an agent's
//! value for an item depends on how many times she has held it before. The
//! crate provides:
//!
//! - exact rational arithmetic end to end ([`rational`]);
//! - the domain model: instances, bundles, frequency matrices, repeated
//!   matchings, and valuation classification ([`instance`]);
//! - conversion between frequency matrices and per-round perfect matchings
//!   ([`decompose`]);
//! - social-welfare maximization for monotone valuation classes plus a
//!   greedy baseline ([`welfare`]);
//! - EF1 and swap-envy-freeness checking and constructive algorithms
//!   ([`fairness`]);
//! - exhaustive brute-force oracles for validation at small scale
//!   ([`oracle`]);
//! - hardness-flavoured instance generators for stress tests
//!   ([`reductions`]).

pub mod decompose;
pub mod fairness;
pub mod fixtures;
pub mod instance;
pub mod oracle;
pub mod rational;
pub mod reductions;
pub mod welfare;

pub use instance::{
    bundle_of, bundle_value, classify, social_welfare, validate_instance, Bundle, CoreError,
    FrequencyMatrix, Instance, Monotonicity, RepeatedMatching, Sign, ValuationClass,
};
pub use rational::{format_rational, parse_rational, rat, rat_int, Rational};
