//! Unit-capacity max-flow, min-cost k-flow and path decomposition.
//!
//! An undirected edge `{u, v}` becomes the arc pair `u -> v`, `v -> u`, both with
//! capacity 1 and the edge's cost. Whenever both arcs of a pair carry flow they are
//! cancelled, so a finished flow uses every undirected edge in at most one direction.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::graphcore::{Cost, EdgeSet, Instance, Node};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub tail: Node,
    pub head: Node,
    pub capacity: u8,
    pub cost: Cost,
    pub flow: u8,
    /// Index of the originating instance edge.
    pub edge: usize,
}

/// Residual step: follow an arc forward (`forward`) or undo flow on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Step {
    arc: usize,
    forward: bool,
}

/// Mutable per-solve workspace.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    s: Node,
    t: Node,
    paired: bool,
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
}

impl FlowNetwork {
    /// Network over the edges of `f` only; arcs remember their instance edge index.
    pub fn from_instance(inst: &Instance, f: &EdgeSet) -> FlowNetwork {
        let n = inst.n();
        let paired = !inst.is_directed();
        let mut arcs = Vec::with_capacity(if paired { 2 * f.len() } else { f.len() });
        for e in f.iter() {
            let edge = inst.edge(e);
            arcs.push(Arc {
                tail: edge.u,
                head: edge.v,
                capacity: 1,
                cost: edge.cost,
                flow: 0,
                edge: e,
            });
            if paired {
                arcs.push(Arc {
                    tail: edge.v,
                    head: edge.u,
                    capacity: 1,
                    cost: edge.cost,
                    flow: 0,
                    edge: e,
                });
            }
        }
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for (i, a) in arcs.iter().enumerate() {
            out_arcs[a.tail].push(i);
            in_arcs[a.head].push(i);
        }
        FlowNetwork {
            n,
            s: inst.s(),
            t: inst.t(),
            paired,
            arcs,
            out_arcs,
            in_arcs,
        }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> Node {
        self.s
    }

    pub fn sink(&self) -> Node {
        self.t
    }

    /// Net flow leaving `s`.
    pub fn value(&self) -> i64 {
        let out: i64 = self.out_arcs[self.s]
            .iter()
            .map(|&a| self.arcs[a].flow as i64)
            .sum();
        let inn: i64 = self.in_arcs[self.s]
            .iter()
            .map(|&a| self.arcs[a].flow as i64)
            .sum();
        out - inn
    }

    /// Sum of cost over flow-carrying arcs.
    pub fn flow_cost(&self) -> u128 {
        self.arcs
            .iter()
            .filter(|a| a.flow > 0)
            .map(|a| a.cost as u128)
            .sum()
    }

    fn twin(&self, arc: usize) -> Option<usize> {
        self.paired.then_some(arc ^ 1)
    }

    /// Residual steps out of `x`, ordered by arc index.
    fn residual_steps(&self, x: Node) -> Vec<(Step, Node)> {
        let mut steps: Vec<(Step, Node)> = self.out_arcs[x]
            .iter()
            .filter(|&&a| self.arcs[a].flow < self.arcs[a].capacity)
            .map(|&a| {
                (
                    Step {
                        arc: a,
                        forward: true,
                    },
                    self.arcs[a].head,
                )
            })
            .chain(
                self.in_arcs[x]
                    .iter()
                    .filter(|&&a| self.arcs[a].flow > 0)
                    .map(|&a| {
                        (
                            Step {
                                arc: a,
                                forward: false,
                            },
                            self.arcs[a].tail,
                        )
                    }),
            )
            .collect();
        steps.sort_unstable();
        steps
    }

    fn step_cost(&self, step: Step) -> i128 {
        let c = self.arcs[step.arc].cost as i128;
        if step.forward {
            c
        } else {
            -c
        }
    }

    fn apply(&mut self, path: &[Step]) {
        for &step in path {
            let arc = &mut self.arcs[step.arc];
            if step.forward {
                arc.flow += 1;
            } else {
                arc.flow -= 1;
            }
        }
        for &step in path {
            if let Some(tw) = self.twin(step.arc) {
                if self.arcs[step.arc].flow > 0 && self.arcs[tw].flow > 0 {
                    self.arcs[step.arc].flow = 0;
                    self.arcs[tw].flow = 0;
                }
            }
        }
    }

    fn trace(&self, parent: &[Option<(Step, Node)>]) -> Vec<Step> {
        let mut path = Vec::new();
        let mut x = self.t;
        while x != self.s {
            let (step, prev) = parent[x].expect("reachable sink has a parent chain");
            path.push(step);
            x = prev;
        }
        path.reverse();
        path
    }

    /// One BFS augmentation; returns false when `t` is unreachable.
    fn augment_bfs(&mut self) -> bool {
        let mut parent: Vec<Option<(Step, Node)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[self.s] = true;
        let mut queue = VecDeque::from([self.s]);
        while let Some(x) = queue.pop_front() {
            if x == self.t {
                break;
            }
            for (step, y) in self.residual_steps(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((step, x));
                    queue.push_back(y);
                }
            }
        }
        if !seen[self.t] {
            return false;
        }
        let path = self.trace(&parent);
        self.apply(&path);
        true
    }

    /// Pushes flow until no augmenting path remains or `cap` units are routed.
    pub fn max_flow(&mut self, cap: usize) -> usize {
        let mut value = 0;
        while value < cap && self.augment_bfs() {
            value += 1;
        }
        value
    }

    /// One shortest-path augmentation on reduced costs. Returns false when `t` is unreachable.
    fn augment_shortest(&mut self, potential: &mut [i128]) -> bool {
        let mut dist: Vec<Option<i128>> = vec![None; self.n];
        let mut parent: Vec<Option<(Step, Node)>> = vec![None; self.n];
        let mut done = vec![false; self.n];
        let mut heap = BinaryHeap::new();
        dist[self.s] = Some(0);
        heap.push(Reverse((0i128, self.s)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if done[x] || dist[x] != Some(d) {
                continue;
            }
            done[x] = true;
            for (step, y) in self.residual_steps(x) {
                if done[y] {
                    continue;
                }
                let reduced = self.step_cost(step) + potential[x] - potential[y];
                debug_assert!(reduced >= 0, "negative reduced cost {reduced}");
                let nd = d + reduced;
                let better = match dist[y] {
                    None => true,
                    Some(old) => {
                        nd < old || (nd == old && parent[y].is_some_and(|(p, _)| step < p))
                    }
                };
                if better {
                    dist[y] = Some(nd);
                    parent[y] = Some((step, x));
                    heap.push(Reverse((nd, y)));
                }
            }
        }
        if dist[self.t].is_none() {
            return false;
        }
        for (p, d) in potential.iter_mut().zip(&dist) {
            if let Some(d) = d {
                *p += d;
            }
        }
        let path = self.trace(&parent);
        self.apply(&path);
        true
    }

    /// Successive shortest paths up to value `k`; returns the value reached.
    pub fn min_cost_flow(&mut self, k: usize) -> usize {
        let mut potential = vec![0i128; self.n];
        let mut value = 0;
        while value < k && self.augment_shortest(&mut potential) {
            value += 1;
        }
        value
    }
}

/// An st-path as node and edge sequences (`nodes.len() == edges.len() + 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StPath {
    pub nodes: Vec<Node>,
    pub edges: Vec<usize>,
}

/// Pairwise edge-disjoint st-paths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSet {
    paths: Vec<StPath>,
}

impl PathSet {
    pub fn new(paths: Vec<StPath>) -> Self {
        PathSet { paths }
    }

    pub fn paths(&self) -> &[StPath] {
        &self.paths
    }

    pub fn value(&self) -> usize {
        self.paths.len()
    }

    pub fn edge_union(&self) -> EdgeSet {
        self.paths
            .iter()
            .flat_map(|p| p.edges.iter().copied())
            .collect()
    }

    pub fn total_edges(&self) -> usize {
        self.paths.iter().map(|p| p.edges.len()).sum()
    }

    /// Checks that every path walks from `s` to `t` along instance edges
    /// and that no edge is used twice across the whole set.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let mut used = vec![false; inst.m()];
        for (pi, p) in self.paths.iter().enumerate() {
            if p.nodes.len() != p.edges.len() + 1 {
                return Err(Error::Structure(format!(
                    "path {pi}: node/edge count mismatch"
                )));
            }
            if p.nodes.first() != Some(&inst.s()) || p.nodes.last() != Some(&inst.t()) {
                return Err(Error::Structure(format!(
                    "path {pi} does not run from s to t"
                )));
            }
            for (i, &e) in p.edges.iter().enumerate() {
                if e >= inst.m() {
                    return Err(Error::Structure(format!("path {pi}: bad edge index {e}")));
                }
                if std::mem::replace(&mut used[e], true) {
                    return Err(Error::Structure(format!("edge {e} used twice")));
                }
                let edge = inst.edge(e);
                let (a, b) = (p.nodes[i], p.nodes[i + 1]);
                let ok = (edge.u == a && edge.v == b)
                    || (!inst.is_directed() && edge.u == b && edge.v == a);
                if !ok {
                    return Err(Error::Structure(format!(
                        "path {pi}: edge {e} does not join {a} and {b}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Maximum number of edge-disjoint st-paths using only edges of `f`.
pub fn max_flow_value(inst: &Instance, f: &EdgeSet) -> usize {
    FlowNetwork::from_instance(inst, f).max_flow(usize::MAX)
}

/// `min(k, max_flow_value(inst, f))`, stopping early once `k` is reached.
pub fn max_flow_at_least(inst: &Instance, f: &EdgeSet, k: usize) -> bool {
    FlowNetwork::from_instance(inst, f).max_flow(k) >= k
}

/// Minimum-cost set of `inst.k()` edge-disjoint st-paths.
pub fn min_cost_k_flow(inst: &Instance) -> Result<PathSet> {
    min_cost_k_flow_within(inst, &inst.full_edge_set())
}

/// Minimum-cost set of `inst.k()` edge-disjoint st-paths inside `f`.
pub fn min_cost_k_flow_within(inst: &Instance, f: &EdgeSet) -> Result<PathSet> {
    let k = inst.k();
    let mut net = FlowNetwork::from_instance(inst, f);
    let reached = net.min_cost_flow(k);
    if reached < k {
        return Err(Error::Infeasible {
            max_flow: reached,
            k,
        });
    }
    decompose(&net, k)
}

/// Splits a finished integral flow of value `k` into `k` edge-disjoint paths.
///
/// Flow cycles met along the way are cut out; they must have zero cost, since a
/// min-cost flow with non-negative costs never pays for a cycle.
pub fn decompose(net: &FlowNetwork, k: usize) -> Result<PathSet> {
    let value = net.value();
    if value != k as i64 {
        return Err(Error::Internal(format!("flow value {value}, expected {k}")));
    }
    if let Some(tw) = (0..net.arcs.len()).find(|&a| {
        net.twin(a)
            .is_some_and(|t| net.arcs[a].flow > 0 && net.arcs[t].flow > 0)
    }) {
        return Err(Error::Internal(format!(
            "arc pair {tw} carries flow both ways"
        )));
    }
    let mut remaining: Vec<bool> = net.arcs.iter().map(|a| a.flow > 0).collect();
    let mut cycle_cost: u128 = 0;
    let mut position: Vec<Option<usize>> = vec![None; net.n];
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let mut nodes = vec![net.s];
        let mut arcs: Vec<usize> = Vec::new();
        position[net.s] = Some(0);
        let mut x = net.s;
        while x != net.t {
            let a = net.out_arcs[x]
                .iter()
                .copied()
                .find(|&a| remaining[a])
                .ok_or_else(|| Error::Internal(format!("flow conservation broken at node {x}")))?;
            remaining[a] = false;
            let y = net.arcs[a].head;
            match position[y] {
                Some(i) => {
                    // walked around a cycle back to y
                    for &c in &arcs[i..] {
                        cycle_cost += net.arcs[c].cost as u128;
                    }
                    cycle_cost += net.arcs[a].cost as u128;
                    for &v in &nodes[i + 1..] {
                        position[v] = None;
                    }
                    arcs.truncate(i);
                    nodes.truncate(i + 1);
                }
                None => {
                    position[y] = Some(nodes.len());
                    nodes.push(y);
                    arcs.push(a);
                }
            }
            x = y;
        }
        for &v in &nodes {
            position[v] = None;
        }
        paths.push(StPath {
            nodes,
            edges: arcs.iter().map(|&a| net.arcs[a].edge).collect(),
        });
    }
    cycle_cost += remaining
        .iter()
        .zip(&net.arcs)
        .filter(|(r, _)| **r)
        .map(|(_, a)| a.cost as u128)
        .sum::<u128>();
    if cycle_cost > 0 {
        return Err(Error::Internal(format!(
            "flow contains cycles of positive cost {cycle_cost}"
        )));
    }
    Ok(PathSet { paths })
}
