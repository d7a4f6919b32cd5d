//! Brute-force ground truth for small instances.
//!
//! Feasibility here runs on a separate augmenting-path routine so that the oracle
//! shares no code path with the min-cost flow solver it is used to check.

use crate::approx::Solution;
use crate::error::{Error, Result};
use crate::flow::{PathSet, StPath};
use crate::graphcore::{activated_edges, Assignment, Cost, EdgeSet, Instance, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_edges: usize,
    pub max_levels_per_node: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_edges: 20,
            max_levels_per_node: 8,
        }
    }
}

/// Unit-capacity flow on a subset of instance edges. `dir[e]` is 0 (unused),
/// 1 (u -> v) or -1 (v -> u).
struct EdgeFlow<'a> {
    inst: &'a Instance,
    active: &'a [bool],
    incident: Vec<Vec<usize>>,
    dir: Vec<i8>,
}

impl<'a> EdgeFlow<'a> {
    fn new(inst: &'a Instance, active: &'a [bool]) -> Self {
        let mut incident = vec![Vec::new(); inst.n()];
        for (i, e) in inst.edges().iter().enumerate() {
            if active[i] {
                incident[e.u].push(i);
                incident[e.v].push(i);
            }
        }
        EdgeFlow {
            inst,
            active,
            incident,
            dir: vec![0; inst.m()],
        }
    }

    /// Direction value that moving `from -> other end` along `e` would produce,
    /// or `None` if the residual graph has no such step.
    fn step(&self, e: usize, from: Node) -> Option<i8> {
        let edge = self.inst.edge(e);
        let sign: i8 = if edge.u == from { 1 } else { -1 };
        let next = self.dir[e] + sign;
        if !(-1..=1).contains(&next) {
            return None;
        }
        if self.inst.is_directed() && next == -1 {
            return None;
        }
        Some(next)
    }

    fn augment(&mut self, x: Node, seen: &mut [bool]) -> bool {
        if x == self.inst.t() {
            return true;
        }
        seen[x] = true;
        for idx in 0..self.incident[x].len() {
            let e = self.incident[x][idx];
            let y = self.inst.edge(e).other(x);
            if seen[y] {
                continue;
            }
            if let Some(next) = self.step(e, x) {
                let prev = self.dir[e];
                self.dir[e] = next;
                if self.augment(y, seen) {
                    return true;
                }
                self.dir[e] = prev;
            }
        }
        false
    }

    fn flow(&mut self, cap: usize) -> usize {
        let mut value = 0;
        while value < cap {
            let mut seen = vec![false; self.inst.n()];
            if !self.augment(self.inst.s(), &mut seen) {
                break;
            }
            value += 1;
        }
        value
    }

    /// Reads off `k` paths, skipping any flow cycles.
    fn paths(&self, k: usize) -> PathSet {
        let inst = self.inst;
        let head = |e: usize| {
            let edge = inst.edge(e);
            if self.dir[e] == 1 {
                edge.v
            } else {
                edge.u
            }
        };
        let tail = |e: usize| inst.edge(e).other(head(e));
        let mut left: Vec<bool> = (0..inst.m())
            .map(|e| self.active[e] && self.dir[e] != 0)
            .collect();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let mut nodes = vec![inst.s()];
            let mut edges: Vec<usize> = Vec::new();
            let mut x = inst.s();
            while x != inst.t() {
                let e = self.incident[x]
                    .iter()
                    .copied()
                    .find(|&e| left[e] && tail(e) == x)
                    .expect("flow conservation");
                left[e] = false;
                let y = head(e);
                if let Some(i) = nodes.iter().position(|&v| v == y) {
                    nodes.truncate(i + 1);
                    edges.truncate(i);
                } else {
                    nodes.push(y);
                    edges.push(e);
                }
                x = y;
            }
            out.push(StPath { nodes, edges });
        }
        PathSet::new(out)
    }
}

fn mask_of(inst: &Instance, f: &EdgeSet) -> Vec<bool> {
    let mut mask = vec![false; inst.m()];
    for e in f.iter() {
        mask[e] = true;
    }
    mask
}

fn check_size(inst: &Instance, limits: &OracleLimits) -> Result<()> {
    if inst.m() > limits.max_edges {
        return Err(Error::OracleTooLarge(format!(
            "{} edges exceeds limit {}",
            inst.m(),
            limits.max_edges
        )));
    }
    Ok(())
}

fn feasibility(inst: &Instance, active: &[bool]) -> usize {
    EdgeFlow::new(inst, active).flow(inst.k())
}

fn witness(inst: &Instance, active: &[bool]) -> PathSet {
    let mut flow = EdgeFlow::new(inst, active);
    let reached = flow.flow(inst.k());
    debug_assert_eq!(reached, inst.k());
    flow.paths(inst.k())
}

/// Exact minimum-power feasible edge set.
///
/// Searches node power levels `a_v in {0} ∪ {incident costs}`; `s` and `t` start at
/// their k-th cheapest incident cost. The returned set is everything activated by
/// the best assignment.
pub fn exact_min_power(inst: &Instance, limits: &OracleLimits) -> Result<Solution> {
    check_size(inst, limits)?;
    let n = inst.n();
    let k = inst.k();
    let all = vec![true; inst.m()];
    let full_flow = feasibility(inst, &all);
    if full_flow < k {
        return Err(Error::Infeasible {
            max_flow: full_flow,
            k,
        });
    }

    let mut levels: Vec<Vec<Cost>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut costs: Vec<Cost> = inst
            .edges()
            .iter()
            .filter(|e| e.is_incident(v))
            .map(|e| e.cost)
            .collect();
        costs.sort_unstable();
        let floor = if v == inst.s() || v == inst.t() {
            costs[k - 1]
        } else {
            0
        };
        let mut lv: Vec<Cost> = std::iter::once(0)
            .chain(costs)
            .filter(|&c| c >= floor)
            .collect();
        lv.dedup();
        if lv.len() > limits.max_levels_per_node {
            return Err(Error::OracleTooLarge(format!(
                "node {v} has {} power levels, limit {}",
                lv.len(),
                limits.max_levels_per_node
            )));
        }
        levels.push(lv);
    }
    // suffix sums of the cheapest level, used as the remaining lower bound
    let mut rest_lb = vec![0u128; n + 1];
    for v in (0..n).rev() {
        rest_lb[v] = rest_lb[v + 1] + levels[v][0] as u128;
    }

    struct Search<'a> {
        inst: &'a Instance,
        levels: &'a [Vec<Cost>],
        rest_lb: &'a [u128],
        current: Vec<Cost>,
        best: u128,
        best_levels: Vec<Cost>,
    }

    impl Search<'_> {
        fn activated_mask(&self) -> Vec<bool> {
            self.inst
                .edges()
                .iter()
                .map(|e| e.cost <= self.current[e.u].min(self.current[e.v]))
                .collect()
        }

        fn run(&mut self, v: usize, sum: u128) {
            if v == self.current.len() {
                if sum < self.best {
                    self.best = sum;
                    self.best_levels = self.current.clone();
                }
                return;
            }
            let top = *self.levels[v].last().unwrap();
            for j in 0..self.levels[v].len() {
                let level = self.levels[v][j];
                let next = sum + level as u128;
                if next + self.rest_lb[v + 1] >= self.best {
                    break;
                }
                self.current[v] = level;
                let mask = self.activated_mask();
                if feasibility(self.inst, &mask) >= self.inst.k() {
                    self.run(v + 1, next);
                }
            }
            self.current[v] = top;
        }
    }

    let top: Vec<Cost> = levels.iter().map(|l| *l.last().unwrap()).collect();
    let mut search = Search {
        inst,
        levels: &levels,
        rest_lb: &rest_lb,
        current: top.clone(),
        best: top.iter().map(|&c| c as u128).sum(),
        best_levels: top,
    };
    search.run(0, 0);

    let assignment = Assignment::new(search.best_levels);
    let edges = activated_edges(inst, &assignment);
    let paths = witness(inst, &mask_of(inst, &edges));
    let sol = Solution::new(inst, edges, paths);
    if sol.power != search.best {
        return Err(Error::Internal(format!(
            "activated set has power {} but assignment totals {}",
            sol.power, search.best
        )));
    }
    Ok(sol)
}

/// Exact minimum-cost union of `k` edge-disjoint st-paths by include/exclude search.
pub fn exact_min_cost_paths(inst: &Instance, limits: &OracleLimits) -> Result<PathSet> {
    check_size(inst, limits)?;
    let k = inst.k();
    let all = vec![true; inst.m()];
    let full_flow = feasibility(inst, &all);
    if full_flow < k {
        return Err(Error::Infeasible {
            max_flow: full_flow,
            k,
        });
    }
    let mut order: Vec<usize> = (0..inst.m()).collect();
    order.sort_by_key(|&e| (inst.edge(e).cost, e));

    struct Search<'a> {
        inst: &'a Instance,
        order: &'a [usize],
        mask: Vec<bool>,
        best: u128,
        best_mask: Vec<bool>,
    }

    impl Search<'_> {
        fn run(&mut self, i: usize, cost: u128) {
            if cost >= self.best {
                return;
            }
            let k = self.inst.k();
            let included: Vec<bool> = self.mask.clone();
            if feasibility(self.inst, &included) >= k {
                self.best = cost;
                self.best_mask = included;
                return;
            }
            if i == self.order.len() {
                return;
            }
            let mut optimistic = self.mask.clone();
            for &e in &self.order[i..] {
                optimistic[e] = true;
            }
            if feasibility(self.inst, &optimistic) < k {
                return;
            }
            let e = self.order[i];
            self.mask[e] = true;
            self.run(i + 1, cost + self.inst.edge(e).cost as u128);
            self.mask[e] = false;
            self.run(i + 1, cost);
        }
    }

    let total: u128 = inst.edges().iter().map(|e| e.cost as u128).sum();
    let mut search = Search {
        inst,
        order: &order,
        mask: vec![false; inst.m()],
        best: total + 1,
        best_mask: all,
    };
    search.run(0, 0);
    Ok(witness(inst, &search.best_mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{total_cost, Edge};

    fn inst(n: usize, edges: &[(usize, usize, u64)], s: usize, t: usize, k: usize) -> Instance {
        Instance::undirected(
            n,
            edges.iter().map(|&(u, v, c)| Edge::new(u, v, c)),
            s,
            t,
            k,
        )
        .unwrap()
    }

    #[test]
    fn single_edge() {
        let g = inst(2, &[(0, 1, 5)], 0, 1, 1);
        let sol = exact_min_power(&g, &OracleLimits::default()).unwrap();
        assert_eq!((sol.power, sol.cost), (10, 5));
        sol.validate(&g).unwrap();
    }

    #[test]
    fn two_hop_path_beats_expensive_direct_edge() {
        // s=0, a=1, t=2: path power 1+1+1 = 3, direct edge power 6
        let g = inst(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)], 0, 2, 1);
        let sol = exact_min_power(&g, &OracleLimits::default()).unwrap();
        assert_eq!(sol.power, 3);
        assert!(!sol.edges.contains(g.find_edge(0, 2).unwrap()));
    }

    #[test]
    fn min_power_is_not_min_cost() {
        // a star of cost-2 edges at the hub beats a cheaper but spread out route
        // s=0 t=1, hub routes s-2-t with costs 4,4 vs s-3-4-t with 3,3,3
        let g = inst(
            5,
            &[(0, 2, 4), (2, 1, 4), (0, 3, 3), (3, 4, 3), (4, 1, 3)],
            0,
            1,
            1,
        );
        let sol = exact_min_power(&g, &OracleLimits::default()).unwrap();
        // 4*3 = 12 against 3*4 = 12: tie, either is optimal
        assert_eq!(sol.power, 12);
        let p = exact_min_cost_paths(&g, &OracleLimits::default()).unwrap();
        assert_eq!(total_cost(&g, &p.edge_union()), 8);
    }

    #[test]
    fn parallel_routes() {
        let g = inst(4, &[(0, 1, 1), (1, 3, 1), (0, 2, 5), (2, 3, 5)], 0, 3, 1);
        let p = exact_min_cost_paths(&g, &OracleLimits::default()).unwrap();
        p.validate(&g).unwrap();
        assert_eq!(total_cost(&g, &p.edge_union()), 2);
        let p2 = exact_min_cost_paths(&g.with_k(2).unwrap(), &OracleLimits::default()).unwrap();
        assert_eq!(p2.value(), 2);
        assert_eq!(total_cost(&g, &p2.edge_union()), 12);
    }

    #[test]
    fn limits_and_infeasibility() {
        let g = inst(3, &[(0, 1, 1), (1, 2, 1)], 0, 2, 2);
        assert_eq!(
            exact_min_power(&g, &OracleLimits::default()).unwrap_err(),
            Error::Infeasible { max_flow: 1, k: 2 }
        );
        let tight = OracleLimits {
            max_edges: 1,
            max_levels_per_node: 8,
        };
        assert!(matches!(
            exact_min_cost_paths(&g.with_k(1).unwrap(), &tight),
            Err(Error::OracleTooLarge(_))
        ));
        let few_levels = OracleLimits {
            max_edges: 20,
            max_levels_per_node: 1,
        };
        assert!(matches!(
            exact_min_power(&g.with_k(1).unwrap(), &few_levels),
            Err(Error::OracleTooLarge(_))
        ));
    }

    #[test]
    fn oracle_flow_undoes_flow() {
        let g = inst(
            4,
            &[(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
            0,
            3,
            2,
        );
        let all = vec![true; g.m()];
        assert_eq!(EdgeFlow::new(&g, &all).flow(usize::MAX), 2);
        witness(&g, &all).validate(&g).unwrap();
    }
}
