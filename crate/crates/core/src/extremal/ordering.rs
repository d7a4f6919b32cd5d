use crate::error::{Error, Result};
use crate::flow::PathSet;
use crate::graphcore::{Edge, EdgeSet, Instance, Node};

/// Orients every edge of `f` along the path that uses it.
///
/// The paths must cover `f` exactly. The result is checked to be acyclic.
pub fn orient_minimal(inst: &Instance, f: &EdgeSet, paths: &PathSet) -> Result<Instance> {
    paths.validate(inst)?;
    if paths.edge_union() != *f || paths.total_edges() != f.len() {
        return Err(Error::Internal(format!(
            "paths cover {} edge slots, edge set has {} edges",
            paths.total_edges(),
            f.len()
        )));
    }
    let arcs = paths.paths().iter().flat_map(|p| {
        p.edges
            .iter()
            .enumerate()
            .map(|(i, &e)| Edge::new(p.nodes[i], p.nodes[i + 1], inst.edge(e).cost))
    });
    let dg = Instance::new(inst.n(), arcs, true, inst.s(), inst.t(), inst.k())?;
    if let Some(v) = find_cycle_node(&dg) {
        return Err(Error::Structure(format!(
            "orientation has a directed cycle through {v}"
        )));
    }
    Ok(dg)
}

/// Some node on a directed cycle, if any (Kahn's algorithm leftovers).
fn find_cycle_node(dg: &Instance) -> Option<Node> {
    let n = dg.n();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<Node>> = vec![Vec::new(); n];
    for e in dg.edges() {
        indeg[e.v] += 1;
        out[e.u].push(e.v);
    }
    let mut stack: Vec<Node> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(x) = stack.pop() {
        removed += 1;
        for &y in &out[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    (removed < n).then(|| (0..n).find(|&v| indeg[v] > 0).unwrap())
}

/// Number of arcs leaving and entering the prefix `{v_1, ..., v_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixStats {
    pub size: usize,
    pub d_out: usize,
    pub d_in: usize,
}

/// An ordering `s = v_1, ..., v_n = t` with statistics for each proper prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    nodes: Vec<Node>,
    prefixes: Vec<PrefixStats>,
}

impl Ordering {
    /// Wraps an arbitrary node sequence, computing prefix statistics over `dg`.
    pub fn from_sequence(dg: &Instance, nodes: Vec<Node>) -> Ordering {
        let arcs: Vec<(Node, Node)> = dg.edges().iter().map(|e| (e.u, e.v)).collect();
        let prefixes = prefix_profile(&arcs, &nodes);
        Ordering { nodes, prefixes }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn prefixes(&self) -> &[PrefixStats] {
        &self.prefixes
    }

    /// Position (0-based) of each node in the ordering.
    pub fn positions(&self, n: usize) -> Vec<Option<usize>> {
        let mut pos = vec![None; n];
        for (i, &v) in self.nodes.iter().enumerate() {
            pos[v] = Some(i);
        }
        pos
    }
}

/// Prefix cut counts for every proper prefix of `sequence`.
///
/// Arcs with an endpoint outside `sequence` are ignored.
pub fn prefix_profile(arcs: &[(Node, Node)], sequence: &[Node]) -> Vec<PrefixStats> {
    let len = sequence.len();
    if len < 2 {
        return Vec::new();
    }
    let max_node = sequence.iter().copied().max().unwrap_or(0);
    let mut pos = vec![usize::MAX; max_node + 1];
    for (i, &v) in sequence.iter().enumerate() {
        pos[v] = i;
    }
    let lookup = |v: Node| pos.get(v).copied().filter(|&p| p != usize::MAX);
    // prefix of size i (1..len) holds positions 0..i; an arc a -> b with
    // pos[a] < pos[b] leaves every prefix of size pos[a]+1 ..= pos[b]
    let mut out_diff = vec![0i64; len + 1];
    let mut in_diff = vec![0i64; len + 1];
    for &(a, b) in arcs {
        let (Some(pa), Some(pb)) = (lookup(a), lookup(b)) else {
            continue;
        };
        if pa < pb {
            out_diff[pa + 1] += 1;
            out_diff[pb + 1] -= 1;
        } else {
            in_diff[pb + 1] += 1;
            in_diff[pa + 1] -= 1;
        }
    }
    let (mut d_out, mut d_in) = (0i64, 0i64);
    (1..len)
        .map(|size| {
            d_out += out_diff[size];
            d_in += in_diff[size];
            PrefixStats {
                size,
                d_out: d_out as usize,
                d_in: d_in as usize,
            }
        })
        .collect()
}

/// Builds the cut-prefix ordering by repeatedly absorbing into `s` the
/// smallest-index node all of whose in-arcs already come from absorbed nodes.
pub fn compute_ordering(dg: &Instance) -> Result<Ordering> {
    if !dg.is_directed() {
        return Err(Error::Structure("ordering needs a directed graph".into()));
    }
    let n = dg.n();
    let (s, t) = (dg.s(), dg.t());
    let mut absorbed = vec![false; n];
    absorbed[s] = true;
    // in-arcs whose tail is not yet absorbed
    let mut pending = vec![0usize; n];
    let mut out: Vec<Vec<Node>> = vec![Vec::new(); n];
    for e in dg.edges() {
        out[e.u].push(e.v);
        if e.u != s {
            pending[e.v] += 1;
        }
    }
    let mut nodes = Vec::with_capacity(n);
    nodes.push(s);
    for _ in 0..n - 2 {
        let z = (0..n)
            .find(|&v| !absorbed[v] && v != t && pending[v] == 0)
            .ok_or_else(|| {
                Error::Structure(format!(
                    "no node can be absorbed after {} steps; graph is not acyclic and minimal",
                    nodes.len()
                ))
            })?;
        absorbed[z] = true;
        nodes.push(z);
        for &w in &out[z] {
            pending[w] -= 1;
        }
    }
    nodes.push(t);
    Ok(Ordering::from_sequence(dg, nodes))
}

/// What `d_out(C_i)` is required to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutExpectation {
    /// `d_out(C_i) == k` (minimal inputs).
    Exact,
    /// `d_out(C_i) <= k`, enough for the counting argument.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingReport {
    pub k: usize,
    pub expectation: CutExpectation,
    pub is_permutation: bool,
    pub endpoints_ok: bool,
    pub prefixes: Vec<PrefixStats>,
    pub failures: Vec<PrefixStats>,
}

impl OrderingReport {
    pub fn passed(&self) -> bool {
        self.is_permutation && self.endpoints_ok && self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&PrefixStats> {
        self.failures.first()
    }

    fn build(
        k: usize,
        expectation: CutExpectation,
        is_permutation: bool,
        endpoints_ok: bool,
        prefixes: Vec<PrefixStats>,
    ) -> Self {
        let failures = prefixes
            .iter()
            .copied()
            .filter(|p| {
                p.d_in != 0
                    || match expectation {
                        CutExpectation::Exact => p.d_out != k,
                        CutExpectation::AtMost => p.d_out > k,
                    }
            })
            .collect();
        OrderingReport {
            k,
            expectation,
            is_permutation,
            endpoints_ok,
            prefixes,
            failures,
        }
    }
}

/// Checks `d_in(C_i) = 0` and the `d_out` expectation on every proper prefix,
/// plus `v_1 = s`, `v_n = t`.
pub fn verify_ordering(
    dg: &Instance,
    ord: &Ordering,
    expectation: CutExpectation,
) -> OrderingReport {
    let n = dg.n();
    let mut seen = vec![false; n];
    let is_permutation = ord.nodes.len() == n
        && ord
            .nodes
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
    let endpoints_ok = ord.nodes.first() == Some(&dg.s()) && ord.nodes.last() == Some(&dg.t());
    let prefixes = if is_permutation {
        Ordering::from_sequence(dg, ord.nodes.clone()).prefixes
    } else {
        Vec::new()
    };
    OrderingReport::build(dg.k(), expectation, is_permutation, endpoints_ok, prefixes)
}

/// Restricts the ordering to `subset` and the arcs to those inside it, then checks
/// `d_in = 0` and `d_out <= k` on every prefix of the induced subsequence.
pub fn induced_subsequence_check(dg: &Instance, ord: &Ordering, subset: &[Node]) -> OrderingReport {
    let mut inside = vec![false; dg.n()];
    for &v in subset {
        inside[v] = true;
    }
    let sequence: Vec<Node> = ord.nodes.iter().copied().filter(|&v| inside[v]).collect();
    let arcs: Vec<(Node, Node)> = dg
        .edges()
        .iter()
        .filter(|e| inside[e.u] && inside[e.v])
        .map(|e| (e.u, e.v))
        .collect();
    let prefixes = prefix_profile(&arcs, &sequence);
    OrderingReport::build(
        dg.k(),
        CutExpectation::AtMost,
        sequence.len() == subset.len(),
        true,
        prefixes,
    )
}

/// Edge lengths `l(v_i -> v_j) = j - i` under an ordering, with both counts of their total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthProfile {
    /// Indexed like `dg.edges()`.
    pub lengths: Vec<u64>,
    /// Sum of edge lengths.
    pub total: u128,
    /// Sum of `d_out(C_i)` over proper prefixes.
    pub prefix_total: u128,
    /// `k (n - 1)`.
    pub budget: u128,
}

pub fn length_budget(ord: &Ordering, dg: &Instance) -> Result<LengthProfile> {
    let pos = ord.positions(dg.n());
    let mut lengths = Vec::with_capacity(dg.m());
    for e in dg.edges() {
        let (Some(a), Some(b)) = (pos[e.u], pos[e.v]) else {
            return Err(Error::Structure("ordering misses an edge endpoint".into()));
        };
        if b <= a {
            return Err(Error::Structure(format!(
                "arc {} -> {} points backwards in the ordering",
                e.u, e.v
            )));
        }
        lengths.push((b - a) as u64);
    }
    let total: u128 = lengths.iter().map(|&l| l as u128).sum();
    let prefix_total: u128 = ord.prefixes.iter().map(|p| p.d_out as u128).sum();
    let budget = dg.k() as u128 * (ord.nodes.len() as u128 - 1);
    if total != prefix_total {
        return Err(Error::Internal(format!(
            "edge-wise length {total} differs from prefix-wise {prefix_total}"
        )));
    }
    if total > budget {
        return Err(Error::Structure(format!(
            "total length {total} exceeds k(n-1) = {budget}"
        )));
    }
    Ok(LengthProfile {
        lengths,
        total,
        prefix_total,
        budget,
    })
}
