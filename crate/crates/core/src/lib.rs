//! Cutting planes for the stable set polytope built from clique projections
//! and clique liftings.
//!
//! A sequence of clique projections turns a graph `G` into denser graphs
//! `G_1, ..., G_r`. A clique inequality of `G_r` is lifted back, one projection
//! at a time, into a valid (often rank or weighted-rank) inequality for `G`.
//! The crate provides the projection and lifting machinery, a separation
//! routine built on it, a small bounded-variable simplex with a cutting-plane
//! driver, and exact oracles for validity and face dimension.

pub mod benchmarks;
pub mod combinatorics;
pub mod dimacs;
pub mod error;
pub mod facet;
pub mod fixtures;
pub mod graph;
pub mod lifting;
pub mod lp;
pub mod projection;
pub mod random;
pub mod separation;

pub use error::{Error, Result};
pub use graph::{Graph, IndexMap, VertexSet, WeightVector};
