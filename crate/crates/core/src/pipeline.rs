//! End-to-end run on one instance: approximate, prune to a minimal subgraph,
//! orient it, build the cut-prefix ordering and evaluate every bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{approximate_min_power_kedp, Solution};
use crate::error::Result;
use crate::extremal::{
    check_density_bound, check_power_bound, check_weighted_inequality, compare_subset_sweeps,
    compute_ordering, induced_subsequence_check, length_budget, leveling_step, orient_minimal,
    verify_ordering, weighted_min_sum, CutExpectation, LengthProfile, Ordering, OrderingReport,
    SubsetComparison, SweepOptions,
};
use crate::flow::min_cost_k_flow_within;
use crate::graphcore::{
    assignment_from_edges, power_cost, total_cost, touched_nodes, EdgeSet, Instance,
};
use crate::minimal::{deletion_flows, prune_to_minimal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    pub sweep: SweepOptions,
    /// Ground sets up to this size get the induced-subsequence check on every subset.
    pub induced_exhaustive_limit: usize,
    pub induced_samples: usize,
    pub weight_trials: usize,
    pub weight_max: u64,
    pub seed: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            sweep: SweepOptions::default(),
            induced_exhaustive_limit: 10,
            induced_samples: 256,
            weight_trials: 16,
            weight_max: 100,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub k: usize,
    pub solution: Solution,
    /// `p_c(F) <= 2 c(F)` for the approximate solution.
    pub power_twice_cost_ok: bool,
    pub pruned: EdgeSet,
    pub pruned_cost: u128,
    pub pruned_power: u128,
    pub pruned_nodes: usize,
    /// Every single-edge deletion leaves flow exactly `k - 1`.
    pub minimal_ok: bool,
    pub oriented: Option<Instance>,
    pub ordering: Option<Ordering>,
    pub ordering_report: Option<OrderingReport>,
    pub length: Option<LengthProfile>,
    /// Failures from orientation, ordering or the length budget.
    pub structure_errors: Vec<String>,
    pub power_bound_ok: bool,
    pub density_bound_ok: bool,
    pub subsets: Option<SubsetComparison>,
    pub induced_checked: usize,
    pub induced_ok: bool,
    pub weighted_trials: usize,
    pub weighted_ok: bool,
    pub leveling_ok: bool,
    /// `c(F') <= sum_xy min(p_c(x), p_c(y))`.
    pub cost_below_min_sum_ok: bool,
}

impl PipelineReport {
    pub fn ordering_ok(&self) -> bool {
        self.ordering_report.as_ref().is_some_and(|r| r.passed())
    }

    pub fn subset_ok(&self) -> bool {
        self.subsets.as_ref().is_some_and(|s| s.passed())
    }

    /// Every bound held on this instance.
    pub fn all_passed(&self) -> bool {
        self.structure_errors.is_empty()
            && self.power_twice_cost_ok
            && self.minimal_ok
            && self.ordering_ok()
            && self.length.is_some()
            && self.power_bound_ok
            && self.density_bound_ok
            && self.subset_ok()
            && self.induced_ok
            && self.weighted_ok
            && self.leveling_ok
            && self.cost_below_min_sum_ok
    }
}

pub fn run_pipeline(inst: &Instance, opts: &PipelineOptions) -> Result<PipelineReport> {
    let k = inst.k();
    let solution = approximate_min_power_kedp(inst)?;
    let power_twice_cost_ok = solution.power <= 2 * solution.cost;
    let pruned = prune_to_minimal(inst, &solution.edges)?;
    let pruned_cost = total_cost(inst, &pruned);
    let pruned_power = power_cost(inst, &pruned);
    let nodes = touched_nodes(inst, &pruned);
    let minimal_ok = deletion_flows(inst, &pruned)
        .iter()
        .all(|&(_, f)| f + 1 == k);

    let mut structure_errors = Vec::new();
    let paths = min_cost_k_flow_within(inst, &pruned)?;
    let oriented = match orient_minimal(inst, &pruned, &paths) {
        Ok(dg) => Some(dg),
        Err(e) => {
            structure_errors.push(format!("orientation: {e}"));
            None
        }
    };
    let ordering = oriented.as_ref().and_then(|dg| match compute_ordering(dg) {
        Ok(o) => Some(o),
        Err(e) => {
            structure_errors.push(format!("ordering: {e}"));
            None
        }
    });
    let (ordering_report, length) = match (&oriented, &ordering) {
        (Some(dg), Some(ord)) => {
            let report = verify_ordering(dg, ord, CutExpectation::Exact);
            let length = match length_budget(ord, dg) {
                Ok(l) => Some(l),
                Err(e) => {
                    structure_errors.push(format!("length budget: {e}"));
                    None
                }
            };
            (Some(report), length)
        }
        _ => (None, None),
    };

    let power_bound_ok = check_power_bound(inst, &pruned, k);
    let density_bound_ok = check_density_bound(inst, &pruned, k);
    let subsets = oriented
        .as_ref()
        .map(|dg| compare_subset_sweeps(inst, &pruned, dg, k, &opts.sweep));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut induced_checked, mut induced_ok) = (0, true);
    if let (Some(dg), Some(ord)) = (&oriented, &ordering) {
        let mut check = |subset: Vec<usize>| {
            induced_checked += 1;
            induced_ok &= induced_subsequence_check(dg, ord, &subset).passed();
        };
        if nodes.len() <= opts.induced_exhaustive_limit {
            for mask in 0u32..(1 << nodes.len()) {
                check(
                    (0..nodes.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| nodes[i])
                        .collect(),
                );
            }
        } else {
            for _ in 0..opts.induced_samples {
                check(
                    nodes
                        .iter()
                        .copied()
                        .filter(|_| rng.gen_bool(0.5))
                        .collect(),
                );
            }
        }
    } else {
        induced_ok = false;
    }

    let levels = assignment_from_edges(inst, &pruned);
    let cost_below_min_sum_ok = pruned_cost <= weighted_min_sum(inst, &pruned, levels.levels());
    let mut weight_sets: Vec<Vec<u64>> = vec![vec![1; inst.n()], levels.levels().to_vec()];
    for _ in 0..opts.weight_trials {
        weight_sets.push(
            (0..inst.n())
                .map(|_| rng.gen_range(0..=opts.weight_max))
                .collect(),
        );
    }
    let weighted_trials = weight_sets.len();
    let weighted_ok = weight_sets
        .iter()
        .all(|w| check_weighted_inequality(inst, &pruned, w, k));
    let leveling_ok = weight_sets
        .iter()
        .all(|w| leveling_step(inst, &pruned, w).is_none_or(|s| s.identity_holds()));

    Ok(PipelineReport {
        k,
        solution,
        power_twice_cost_ok,
        pruned,
        pruned_cost,
        pruned_power,
        pruned_nodes: nodes.len(),
        minimal_ok,
        oriented,
        ordering,
        ordering_report,
        length,
        structure_errors,
        power_bound_ok,
        density_bound_ok,
        subsets,
        induced_checked,
        induced_ok,
        weighted_trials,
        weighted_ok,
        leveling_ok,
        cost_below_min_sum_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::Edge;

    #[test]
    fn path_instance_passes_everything() {
        let inst =
            Instance::undirected(3, [Edge::new(0, 1, 3), Edge::new(1, 2, 4)], 0, 2, 1).unwrap();
        let r = run_pipeline(&inst, &PipelineOptions::default()).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.ordering.unwrap().nodes(), &[0, 1, 2]);
        assert_eq!(r.induced_checked, 8);
    }
}
