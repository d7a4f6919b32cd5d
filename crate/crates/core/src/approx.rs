//! The min-cost-paths approximation for Min-Power k-EDP.
//!
//! Returning the cheapest union of k edge-disjoint st-paths loses at most a factor
//! `2 * sqrt(2k)` in power against the optimum.

use crate::arith::{gcd, squared_le};
use crate::error::{Error, Result};
use crate::exact::{exact_min_power, OracleLimits};
use crate::flow::{min_cost_k_flow, PathSet};
use crate::graphcore::{power_cost, total_cost, EdgeSet, Instance};

/// A feasible edge set together with its evaluated cost, power and path witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub edges: EdgeSet,
    pub power: u128,
    pub cost: u128,
    pub witness: PathSet,
}

impl Solution {
    pub fn new(inst: &Instance, edges: EdgeSet, witness: PathSet) -> Solution {
        Solution {
            power: power_cost(inst, &edges),
            cost: total_cost(inst, &edges),
            edges,
            witness,
        }
    }

    /// Recomputes power and cost and checks the witness paths.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        self.witness.validate(inst)?;
        if self.witness.value() < inst.k() {
            return Err(Error::Structure(format!(
                "witness has {} paths, {} required",
                self.witness.value(),
                inst.k()
            )));
        }
        if !self.witness.edge_union().is_subset(&self.edges) {
            return Err(Error::Structure("witness leaves the edge set".into()));
        }
        if self.power != power_cost(inst, &self.edges) || self.cost != total_cost(inst, &self.edges)
        {
            return Err(Error::Structure("stale power or cost".into()));
        }
        Ok(())
    }
}

pub fn approximate_min_power_kedp(inst: &Instance) -> Result<Solution> {
    let paths = min_cost_k_flow(inst)?;
    let edges = paths.edge_union();
    Ok(Solution::new(inst, edges, paths))
}

/// `alg <= 2 * sqrt(2k) * opt`, checked as `alg^2 <= 8k * opt^2`.
pub fn guarantee_check(k: usize, alg_power: u128, opt_power: u128) -> bool {
    squared_le(alg_power, 8 * k as u128, opt_power)
}

/// An exact ratio `alg / opt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerRatio {
    pub alg_power: u128,
    pub opt_power: u128,
}

impl PowerRatio {
    /// Lowest terms; `0/0` (every feasible set is free) counts as ratio 1.
    pub fn reduced(&self) -> (u128, u128) {
        if self.opt_power == 0 {
            debug_assert_eq!(self.alg_power, 0);
            return (1, 1);
        }
        let g = gcd(self.alg_power, self.opt_power);
        (self.alg_power / g, self.opt_power / g)
    }
}

pub fn empirical_ratio(inst: &Instance, limits: &OracleLimits) -> Result<PowerRatio> {
    let alg = approximate_min_power_kedp(inst)?;
    let opt = exact_min_power(inst, limits)?;
    Ok(PowerRatio {
        alg_power: alg.power,
        opt_power: opt.power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::Edge;

    #[test]
    fn guarantee_boundaries() {
        assert!(guarantee_check(1, 2, 1));
        assert!(!guarantee_check(2, 5, 1));
        assert!(guarantee_check(2, 4, 1));
        assert!(guarantee_check(3, 0, 0));
        assert!(!guarantee_check(1, 1, 0));
    }

    #[test]
    fn single_edge_solution() {
        let inst = Instance::undirected(2, [Edge::new(0, 1, 5)], 0, 1, 1).unwrap();
        let sol = approximate_min_power_kedp(&inst).unwrap();
        assert_eq!(sol.edges, inst.full_edge_set());
        assert_eq!((sol.power, sol.cost), (10, 5));
        sol.validate(&inst).unwrap();
        let r = empirical_ratio(&inst, &OracleLimits::default()).unwrap();
        assert_eq!((r.alg_power, r.opt_power), (10, 10));
        assert_eq!(r.reduced(), (1, 1));
    }

    #[test]
    fn ratio_reduction() {
        let r = PowerRatio {
            alg_power: 12,
            opt_power: 8,
        };
        assert_eq!(r.reduced(), (3, 2));
        let z = PowerRatio {
            alg_power: 0,
            opt_power: 0,
        };
        assert_eq!(z.reduced(), (1, 1));
    }

    #[test]
    fn infeasible_is_propagated() {
        let inst = Instance::undirected(3, [Edge::new(0, 1, 1)], 0, 2, 1).unwrap();
        assert_eq!(
            approximate_min_power_kedp(&inst),
            Err(Error::Infeasible { max_flow: 0, k: 1 })
        );
    }
}
