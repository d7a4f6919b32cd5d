//! Cut-prefix orderings of minimal directed graphs and exact checkers for the
//! density and power bounds of minimally k-st-edge-connected graphs.
//!
//! Every inequality `x <= sqrt(2k) * y` is evaluated as `x^2 <= 2k * y^2`.

mod bounds;
mod counting;
mod ordering;

pub use bounds::{
    check_density_bound, check_power_bound, check_subset_bound, check_weighted_inequality,
    compare_subset_sweeps, leveling_step, sweep_subsets, weighted_min_sum, LevelingStep,
    SubsetComparison, SubsetSweep, SweepOptions,
};
pub use counting::{closed_forms, max_edges_under_budget, BudgetMaximum};
pub use ordering::{
    compute_ordering, induced_subsequence_check, length_budget, orient_minimal, prefix_profile,
    verify_ordering, CutExpectation, LengthProfile, Ordering, OrderingReport, PrefixStats,
};
