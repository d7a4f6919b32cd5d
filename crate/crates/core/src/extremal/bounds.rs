use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::squared_le;
use crate::graphcore::{power_cost, total_cost, touched_nodes, EdgeSet, Instance, Node};

/// `|E_U|^2 <= 2k |U|^2`, where `E_U` are the edges of `f` with both ends in `subset`.
pub fn check_subset_bound(inst: &Instance, f: &EdgeSet, subset: &[Node], k: usize) -> bool {
    let mut inside = vec![false; inst.n()];
    for &v in subset {
        inside[v] = true;
    }
    let inner = f
        .iter()
        .filter(|&e| {
            let edge = inst.edge(e);
            inside[edge.u] && inside[edge.v]
        })
        .count();
    let size = inside.iter().filter(|&&b| b).count();
    squared_le(inner as u128, 2 * k as u128, size as u128)
}

/// `c(F)^2 <= 2k p_c(F)^2`.
pub fn check_power_bound(inst: &Instance, f: &EdgeSet, k: usize) -> bool {
    squared_le(total_cost(inst, f), 2 * k as u128, power_cost(inst, f))
}

/// `|F|^2 <= 2k |V(F)|^2` with `V(F)` the endpoints of `f`.
pub fn check_density_bound(inst: &Instance, f: &EdgeSet, k: usize) -> bool {
    let nodes = touched_nodes(inst, f).len();
    squared_le(f.len() as u128, 2 * k as u128, nodes as u128)
}

/// `sum over xy in f of min(p(x), p(y))`.
pub fn weighted_min_sum(inst: &Instance, f: &EdgeSet, weights: &[u64]) -> u128 {
    f.iter()
        .map(|e| {
            let edge = inst.edge(e);
            weights[edge.u].min(weights[edge.v]) as u128
        })
        .sum()
}

/// `(sum_xy min(p(x), p(y)))^2 <= 2k (sum_v p(v))^2`, the node sum taken over `V(F)`.
pub fn check_weighted_inequality(inst: &Instance, f: &EdgeSet, weights: &[u64], k: usize) -> bool {
    let lhs = weighted_min_sum(inst, f, weights);
    let rhs: u128 = touched_nodes(inst, f)
        .into_iter()
        .map(|v| weights[v] as u128)
        .sum();
    squared_le(lhs, 2 * k as u128, rhs)
}

/// Lowering the top weight level to the next one.
///
/// `lhs == lowered_lhs + epsilon * top_edges` holds exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelingStep {
    pub epsilon: u64,
    pub top: Vec<Node>,
    pub lowered: Vec<u64>,
    pub lhs: u128,
    pub lowered_lhs: u128,
    /// Edges of `f` with both ends in `top`.
    pub top_edges: usize,
}

impl LevelingStep {
    pub fn identity_holds(&self) -> bool {
        self.lhs == self.lowered_lhs + self.epsilon as u128 * self.top_edges as u128
    }
}

/// `None` when the weights on `V(F)` take fewer than two distinct values.
pub fn leveling_step(inst: &Instance, f: &EdgeSet, weights: &[u64]) -> Option<LevelingStep> {
    let nodes = touched_nodes(inst, f);
    let mut values: Vec<u64> = nodes.iter().map(|&v| weights[v]).collect();
    values.sort_unstable();
    values.dedup();
    if values.len() < 2 {
        return None;
    }
    let max = values[values.len() - 1];
    let epsilon = max - values[values.len() - 2];
    let top: Vec<Node> = nodes
        .iter()
        .copied()
        .filter(|&v| weights[v] == max)
        .collect();
    let mut lowered = weights.to_vec();
    for &v in &top {
        lowered[v] -= epsilon;
    }
    let mut in_top = vec![false; inst.n()];
    for &v in &top {
        in_top[v] = true;
    }
    let top_edges = f
        .iter()
        .filter(|&e| in_top[inst.edge(e).u] && in_top[inst.edge(e).v])
        .count();
    Some(LevelingStep {
        epsilon,
        lhs: weighted_min_sum(inst, f, weights),
        lowered_lhs: weighted_min_sum(inst, f, &lowered),
        top,
        lowered,
        top_edges,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// Enumerate all subsets when the ground set has at most this many nodes (max 20).
    pub exhaustive_limit: usize,
    /// Random subsets drawn otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            exhaustive_limit: 20,
            samples: 4096,
            seed: 0x5eed,
        }
    }
}

const MAX_EXHAUSTIVE: usize = 20;
const KEPT_EXAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSweep {
    pub ground_set: usize,
    pub exhaustive: bool,
    /// Present when subsets were sampled.
    pub seed: Option<u64>,
    pub checked: u64,
    pub failures: u64,
    /// A few violating subsets.
    pub examples: Vec<Vec<Node>>,
}

impl SubsetSweep {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `|E_U|^2 <= 2k |U|^2` for subsets `U` of `ground`, where `pairs` are the
/// edge endpoints (direction is irrelevant to the bound).
pub fn sweep_subsets(
    pairs: &[(Node, Node)],
    ground: &[Node],
    k: usize,
    opts: &SweepOptions,
) -> SubsetSweep {
    let max_node = ground
        .iter()
        .chain(pairs.iter().flat_map(|(a, b)| [a, b]))
        .copied()
        .max()
        .unwrap_or(0);
    let mut bit = vec![None; max_node + 1];
    for (i, &v) in ground.iter().enumerate() {
        bit[v] = Some(i);
    }
    let edge_sets: Vec<Vec<usize>> = pairs
        .iter()
        .filter_map(|&(a, b)| Some(vec![bit[a]?, bit[b]?]))
        .collect();
    let factor = 2 * k as u128;
    let mut sweep = SubsetSweep {
        ground_set: ground.len(),
        exhaustive: false,
        seed: None,
        checked: 0,
        failures: 0,
        examples: Vec::new(),
    };
    let note =
        |sweep: &mut SubsetSweep, inner: usize, size: usize, members: &dyn Fn() -> Vec<Node>| {
            sweep.checked += 1;
            if !squared_le(inner as u128, factor, size as u128) {
                sweep.failures += 1;
                if sweep.examples.len() < KEPT_EXAMPLES {
                    sweep.examples.push(members());
                }
            }
        };
    let limit = opts.exhaustive_limit.min(MAX_EXHAUSTIVE);
    if ground.len() <= limit {
        sweep.exhaustive = true;
        let masks: Vec<u32> = edge_sets
            .iter()
            .map(|e| e.iter().fold(0u32, |m, &i| m | (1 << i)))
            .collect();
        for mask in 0u32..(1u32 << ground.len()) {
            let inner = masks.iter().filter(|&&em| em & !mask == 0).count();
            note(&mut sweep, inner, mask.count_ones() as usize, &|| {
                (0..ground.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| ground[i])
                    .collect()
            });
        }
    } else {
        sweep.seed = Some(opts.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for trial in 0..=opts.samples {
            // the whole ground set first, then random halves
            let chosen: Vec<bool> = (0..ground.len())
                .map(|_| trial == 0 || rng.gen_bool(0.5))
                .collect();
            let inner = edge_sets
                .iter()
                .filter(|e| e.iter().all(|&i| chosen[i]))
                .count();
            let size = chosen.iter().filter(|&&b| b).count();
            note(&mut sweep, inner, size, &|| {
                (0..ground.len())
                    .filter(|&i| chosen[i])
                    .map(|i| ground[i])
                    .collect()
            });
        }
    }
    sweep
}

/// Subset sweeps on the undirected minimal graph and on its orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetComparison {
    pub undirected: SubsetSweep,
    pub directed: SubsetSweep,
}

impl SubsetComparison {
    pub fn agree(&self) -> bool {
        self.undirected == self.directed
    }

    pub fn passed(&self) -> bool {
        self.agree() && self.undirected.passed() && self.directed.passed()
    }
}

pub fn compare_subset_sweeps(
    inst: &Instance,
    f: &EdgeSet,
    dg: &Instance,
    k: usize,
    opts: &SweepOptions,
) -> SubsetComparison {
    let undirected_pairs: Vec<(Node, Node)> =
        f.iter().map(|e| (inst.edge(e).u, inst.edge(e).v)).collect();
    let directed_pairs: Vec<(Node, Node)> = dg.edges().iter().map(|e| (e.u, e.v)).collect();
    SubsetComparison {
        undirected: sweep_subsets(&undirected_pairs, &touched_nodes(inst, f), k, opts),
        directed: sweep_subsets(
            &directed_pairs,
            &touched_nodes(dg, &dg.full_edge_set()),
            k,
            opts,
        ),
    }
}
