#![allow(dead_code)]

use kedp_core::flow::max_flow_at_least;
use kedp_core::generators::{random_instance, EdgeModel};
use kedp_core::graphcore::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Feasible random instances: `n` in `n_range`, `k` in `k_range`, at most `max_m` edges.
pub fn feasible_instances(
    count: usize,
    base_seed: u64,
    n_range: (usize, usize),
    k_range: (usize, usize),
    max_m: usize,
    costs: (u64, u64),
) -> Vec<(u64, Instance)> {
    let mut out = Vec::with_capacity(count);
    let mut seed = base_seed;
    while out.len() < count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        let n = rng.gen_range(n_range.0..=n_range.1);
        let k = rng.gen_range(k_range.0..=k_range.1);
        let pairs = n * (n - 1) / 2;
        let m = rng.gen_range(k.min(pairs)..=max_m.min(pairs));
        let inst = random_instance(seed, n, EdgeModel::Count(m), costs, k).unwrap();
        if max_flow_at_least(&inst, &inst.full_edge_set(), k) {
            out.push((seed, inst));
        }
        seed += 1;
    }
    out
}
