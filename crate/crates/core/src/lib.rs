//! Min-Power k edge-disjoint st-paths.
//!
//! The approximation returns a minimum-cost union of `k` edge-disjoint st-paths
//! ([`approx::approximate_min_power_kedp`]), whose power is within `2 sqrt(2k)` of
//! optimal. The remaining modules build and check the combinatorial objects behind
//! that guarantee: minimal k-st-edge-connected subgraphs ([`minimal`]), cut-prefix
//! orderings and exact density / power bounds ([`extremal`]), a near-extremal
//! construction ([`generators`]) and brute-force oracles ([`exact`]).

pub mod approx;
pub mod arith;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod flow;
pub mod generators;
pub mod graphcore;
pub mod minimal;
pub mod pipeline;

pub use error::{Error, Result};
