//! Inclusion-minimal k-st-edge-connected subgraphs.

use crate::error::{Error, Result};
use crate::flow::{max_flow_at_least, max_flow_value};
use crate::graphcore::{EdgeSet, Instance};

/// `f` contains `inst.k()` edge-disjoint st-paths.
pub fn is_feasible(inst: &Instance, f: &EdgeSet) -> bool {
    max_flow_at_least(inst, f, inst.k())
}

/// Deletes edges one at a time while feasibility survives.
///
/// Edges are tried in descending cost, ties by descending index. A single pass
/// suffices: once an edge is needed it stays needed as the set shrinks.
pub fn prune_to_minimal(inst: &Instance, f: &EdgeSet) -> Result<EdgeSet> {
    if !is_feasible(inst, f) {
        return Err(Error::Infeasible {
            max_flow: max_flow_value(inst, f),
            k: inst.k(),
        });
    }
    let mut order: Vec<usize> = f.iter().collect();
    order.sort_unstable_by_key(|&e| std::cmp::Reverse((inst.edge(e).cost, e)));
    let mut current = f.clone();
    for e in order {
        let candidate = current.without(e);
        if is_feasible(inst, &candidate) {
            current = candidate;
        }
    }
    Ok(current)
}

/// Feasible, and every single-edge deletion is infeasible.
pub fn is_minimal(inst: &Instance, f: &EdgeSet) -> bool {
    is_feasible(inst, f) && f.iter().all(|e| !is_feasible(inst, &f.without(e)))
}

/// Max-flow after deleting each edge of `f`, in edge order.
///
/// For a minimal `f` every entry is `k - 1`.
pub fn deletion_flows(inst: &Instance, f: &EdgeSet) -> Vec<(usize, usize)> {
    f.iter()
        .map(|e| (e, max_flow_value(inst, &f.without(e))))
        .collect()
}
