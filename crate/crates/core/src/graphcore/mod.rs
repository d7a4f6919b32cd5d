//! Instances, edge sets, and the cost / power / assignment views of an edge set.

mod text;

pub use text::{parse_instance, serialize_instance, serialize_instance_with_comments};

use std::collections::HashSet;

use crate::error::{Error, Result};

pub type Node = usize;
pub type Cost = u64;

/// An edge `u -- v` (or arc `u -> v` for directed instances) with a non-negative cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: Node,
    pub v: Node,
    pub cost: Cost,
}

impl Edge {
    pub fn new(u: Node, v: Node, cost: Cost) -> Self {
        Edge { u, v, cost }
    }

    /// The endpoint of this edge that is not `x`.
    pub fn other(&self, x: Node) -> Node {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_incident(&self, x: Node) -> bool {
        self.u == x || self.v == x
    }
}

/// A simple graph on nodes `0..n` with terminals `s`, `t` and demand `k`.
///
/// Undirected edges are stored with `u < v`, and the edge list is kept sorted by
/// `(u, v)`, so edge indices are canonical for a given edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    edges: Vec<Edge>,
    directed: bool,
    s: Node,
    t: Node,
    k: usize,
}

impl Instance {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
        directed: bool,
        s: Node,
        t: Node,
        k: usize,
    ) -> Result<Self> {
        if s >= n || t >= n {
            return Err(Error::InvalidInstance(format!(
                "terminal out of range (s={s}, t={t}, n={n})"
            )));
        }
        if s == t {
            return Err(Error::InvalidInstance("s and t coincide".into()));
        }
        if k == 0 {
            return Err(Error::InvalidInstance("k must be at least 1".into()));
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| {
                if !directed && e.u > e.v {
                    Edge::new(e.v, e.u, e.cost)
                } else {
                    e
                }
            })
            .collect();
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({}, {}) has an endpoint outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidInstance(format!("self-loop at node {}", e.u)));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(Error::InvalidInstance(format!(
                "parallel edges between {} and {}",
                w[0].u, w[0].v
            )));
        }
        Ok(Instance {
            n,
            edges,
            directed,
            s,
            t,
            k,
        })
    }

    pub fn undirected(
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
        s: Node,
        t: Node,
        k: usize,
    ) -> Result<Self> {
        Self::new(n, edges, false, s, t, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn s(&self) -> Node {
        self.s
    }

    pub fn t(&self) -> Node {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Same graph with a different demand.
    pub fn with_k(&self, k: usize) -> Result<Instance> {
        if k == 0 {
            return Err(Error::InvalidInstance("k must be at least 1".into()));
        }
        Ok(Instance { k, ..self.clone() })
    }

    /// Same graph with every edge cost replaced by 1.
    pub fn with_unit_costs(&self) -> Instance {
        Instance {
            edges: self.edges.iter().map(|e| Edge::new(e.u, e.v, 1)).collect(),
            ..self.clone()
        }
    }

    /// Subgraph on the same node set keeping only the edges of `f`.
    ///
    /// Edge `i` of the result is edge `f.indices()[i]` of `self`.
    pub fn restrict(&self, f: &EdgeSet) -> Instance {
        Instance {
            edges: f.iter().map(|e| self.edges[e]).collect(),
            ..self.clone()
        }
    }

    pub fn full_edge_set(&self) -> EdgeSet {
        EdgeSet {
            members: (0..self.m()).collect(),
        }
    }

    /// Builds an edge set, rejecting indices outside this instance.
    pub fn edge_set(&self, indices: impl IntoIterator<Item = usize>) -> Result<EdgeSet> {
        let f = EdgeSet::from_indices(indices);
        self.check_edge_set(&f)?;
        Ok(f)
    }

    pub fn check_edge_set(&self, f: &EdgeSet) -> Result<()> {
        match f.members.last() {
            Some(&last) if last >= self.m() => Err(Error::InvalidInstance(format!(
                "edge index {last} out of range for {} edges",
                self.m()
            ))),
            _ => Ok(()),
        }
    }

    /// Index of the edge joining `u` and `v` (respecting direction when directed).
    pub fn find_edge(&self, u: Node, v: Node) -> Option<usize> {
        let (a, b) = if !self.directed && u > v {
            (v, u)
        } else {
            (u, v)
        };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
    }
}

/// A set of edge indices into an [`Instance`]'s canonical edge list. Kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    members: Vec<usize>,
}

impl EdgeSet {
    pub fn empty() -> Self {
        EdgeSet::default()
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = indices.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        EdgeSet { members }
    }

    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn without(&self, e: usize) -> EdgeSet {
        EdgeSet {
            members: self.members.iter().copied().filter(|&x| x != e).collect(),
        }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet::from_indices(self.iter().chain(other.iter()))
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        EdgeSet::from_indices(iter)
    }
}

/// Per-node power levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(Vec<Cost>);

impl Assignment {
    pub fn new(levels: Vec<Cost>) -> Self {
        Assignment(levels)
    }

    pub fn zeros(n: usize) -> Self {
        Assignment(vec![0; n])
    }

    pub fn level(&self, v: Node) -> Cost {
        self.0[v]
    }

    pub fn levels(&self) -> &[Cost] {
        &self.0
    }

    pub fn total(&self) -> u128 {
        self.0.iter().map(|&a| a as u128).sum()
    }
}

/// `c(F)`: the sum of edge costs in `f`.
pub fn total_cost(inst: &Instance, f: &EdgeSet) -> u128 {
    f.iter().map(|e| inst.edge(e).cost as u128).sum()
}

/// `p_c(F)`: over all nodes, the sum of the largest incident cost in `f` (0 if none).
pub fn power_cost(inst: &Instance, f: &EdgeSet) -> u128 {
    assignment_from_edges(inst, f).total()
}

/// The cheapest assignment activating `f`: each node gets its largest incident cost.
pub fn assignment_from_edges(inst: &Instance, f: &EdgeSet) -> Assignment {
    let mut levels = vec![0; inst.n()];
    for e in f.iter() {
        let edge = inst.edge(e);
        levels[edge.u] = levels[edge.u].max(edge.cost);
        levels[edge.v] = levels[edge.v].max(edge.cost);
    }
    Assignment(levels)
}

/// All edges `uv` with `c_e <= min(a_u, a_v)`.
pub fn activated_edges(inst: &Instance, a: &Assignment) -> EdgeSet {
    inst.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.cost <= a.level(e.u).min(a.level(e.v)))
        .map(|(i, _)| i)
        .collect()
}

/// Endpoints of the edges of `f`, ascending.
pub fn touched_nodes(inst: &Instance, f: &EdgeSet) -> Vec<Node> {
    let set: HashSet<Node> = f
        .iter()
        .flat_map(|e| {
            let edge = inst.edge(e);
            [edge.u, edge.v]
        })
        .collect();
    let mut nodes: Vec<Node> = set.into_iter().collect();
    nodes.sort_unstable();
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_sat() -> Instance {
        // s=0, a=1, t=2
        Instance::undirected(3, [Edge::new(0, 1, 3), Edge::new(1, 2, 4)], 0, 2, 1).unwrap()
    }

    #[test]
    fn power_of_empty_set_is_zero() {
        let inst = path_sat();
        assert_eq!(power_cost(&inst, &EdgeSet::empty()), 0);
        assert_eq!(total_cost(&inst, &EdgeSet::empty()), 0);
    }

    #[test]
    fn single_edge_counts_both_endpoints() {
        let inst = Instance::undirected(2, [Edge::new(0, 1, 5)], 0, 1, 1).unwrap();
        let f = inst.full_edge_set();
        assert_eq!(power_cost(&inst, &f), 10);
        assert_eq!(total_cost(&inst, &f), 5);
        assert_eq!(assignment_from_edges(&inst, &f).levels(), &[5, 5]);
    }

    #[test]
    fn path_power_and_assignment() {
        let inst = path_sat();
        let f = inst.full_edge_set();
        assert_eq!(power_cost(&inst, &f), 3 + 4 + 4);
        assert_eq!(total_cost(&inst, &f), 7);
        let a = assignment_from_edges(&inst, &f);
        assert_eq!(a.levels(), &[3, 4, 4]);
        assert_eq!(activated_edges(&inst, &a), f);
    }

    #[test]
    fn zero_assignment_activates_nothing_with_positive_costs() {
        let inst = path_sat();
        assert!(activated_edges(&inst, &Assignment::zeros(3)).is_empty());
        assert_eq!(
            assignment_from_edges(&inst, &EdgeSet::empty()),
            Assignment::zeros(3)
        );
    }

    #[test]
    fn activation_may_pick_up_extra_edges() {
        // triangle: the cheap edge 0-2 is activated by levels for 0-1 and 1-2
        let inst = Instance::undirected(
            3,
            [Edge::new(0, 1, 5), Edge::new(1, 2, 5), Edge::new(0, 2, 1)],
            0,
            2,
            1,
        )
        .unwrap();
        let f = inst.edge_set([0, 2]).unwrap();
        let a = assignment_from_edges(&inst, &f);
        let act = activated_edges(&inst, &a);
        assert!(f.is_subset(&act));
        assert_eq!(act, inst.full_edge_set());
    }

    #[test]
    fn constructor_canonicalises_and_sorts() {
        let inst =
            Instance::undirected(3, [Edge::new(2, 1, 4), Edge::new(1, 0, 3)], 0, 2, 1).unwrap();
        assert_eq!(inst.edges(), &[Edge::new(0, 1, 3), Edge::new(1, 2, 4)]);
        assert_eq!(inst.find_edge(2, 1), Some(1));
        assert_eq!(inst.find_edge(0, 2), None);
    }

    #[test]
    fn constructor_rejects_non_simple_input() {
        assert!(
            Instance::undirected(2, [Edge::new(0, 1, 1), Edge::new(1, 0, 2)], 0, 1, 1).is_err()
        );
        assert!(Instance::undirected(2, [Edge::new(1, 1, 1)], 0, 1, 1).is_err());
        assert!(Instance::undirected(2, [Edge::new(0, 2, 1)], 0, 1, 1).is_err());
        assert!(Instance::undirected(2, [], 0, 0, 1).is_err());
        assert!(Instance::undirected(2, [], 0, 1, 0).is_err());
        // antiparallel arcs are fine in a directed graph
        assert!(Instance::new(2, [Edge::new(0, 1, 1), Edge::new(1, 0, 2)], true, 0, 1, 1).is_ok());
    }

    #[test]
    fn edge_set_validation() {
        let inst = path_sat();
        assert!(inst.edge_set([0, 1]).is_ok());
        assert!(inst.edge_set([2]).is_err());
        let f = EdgeSet::from_indices([1, 0, 1]);
        assert_eq!(f.indices(), &[0, 1]);
        assert_eq!(f.without(0).indices(), &[1]);
    }

    #[test]
    fn restrict_keeps_nodes_and_maps_indices() {
        let inst = path_sat();
        let sub = inst.restrict(&EdgeSet::from_indices([1]));
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edges(), &[Edge::new(1, 2, 4)]);
        assert_eq!(touched_nodes(&inst, &inst.full_edge_set()), vec![0, 1, 2]);
    }
}
