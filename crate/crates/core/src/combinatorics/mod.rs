//! Exact solvers, oracles and heuristics on graphs.

pub mod cliques;
pub mod enumerate;
pub mod mwss;
pub mod rounding;

pub use cliques::{
    enumerate_cliques_bounded, greedy_cliques_by_coverage, greedy_cliques_by_weight,
    BoundedCliques, CLIQUE_KEEP_THRESHOLD,
};
pub use enumerate::{enumerate_stable_sets, StableSets, DEFAULT_ENUMERATION_LIMIT};
pub use mwss::{
    max_weight_stable_set, solve_constrained, stability_number, ConstrainedMwssQuery, MwssResult,
    DEFAULT_TIME_BUDGET,
};
pub use rounding::rounding_lower_bound;
