//! The layered near-extremal construction and seeded random instances.
//!
//! Base path: `s = 0`, internal nodes `1..=q`, `t = q + 1`. The length of a pair
//! `(a, b)` is `b - a`. Layer `F_ell` holds every pair of length `ell` plus the
//! pairs of length below `ell` touching `s` or `t`, and splits into `ell`
//! edge-disjoint st-paths.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graphcore::{Cost, Edge, Instance, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightParams {
    pub ell: usize,
    pub q: usize,
}

impl TightParams {
    pub fn new(ell: usize, q: usize) -> Result<Self> {
        if ell == 0 || 2 * ell > q {
            return Err(Error::Domain(format!(
                "need 1 <= ell <= q/2, got ell={ell}, q={q}"
            )));
        }
        Ok(TightParams { ell, q })
    }

    /// `ell (ell + 1) / 2`.
    pub fn k(&self) -> usize {
        self.ell * (self.ell + 1) / 2
    }

    /// `q ell + ell (ell + 1) / 2 + ell^2`.
    pub fn nominal_m(&self) -> usize {
        self.q * self.ell + self.k() + self.ell * self.ell
    }

    /// `q + ell^2 + 2`.
    pub fn nominal_n(&self) -> usize {
        self.q + self.ell * self.ell + 2
    }
}

/// Node pairs of layer `ell` over a base path with `q` internal nodes.
fn layer_pairs(ell: usize, q: usize) -> Vec<(Node, Node)> {
    let t = q + 1;
    let mut pairs: Vec<(Node, Node)> = (0..=t - ell).map(|a| (a, a + ell)).collect();
    pairs.extend((1..ell).map(|j| (0, j)));
    pairs.extend((1..ell).map(|j| (t - j, t)));
    pairs
}

/// Layer `F_ell` alone as a unit-cost instance with demand `ell`.
pub fn build_f_layer(ell: usize, q: usize) -> Result<Instance> {
    TightParams::new(ell, q)?;
    let edges = layer_pairs(ell, q)
        .into_iter()
        .map(|(a, b)| Edge::new(a, b, 1));
    Instance::undirected(q + 2, edges, 0, q + 1, ell)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TightCosts {
    Unit,
    /// Each edge costs its length along the base path; subdivided halves keep it.
    Length,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightExample {
    pub params: TightParams,
    pub instance: Instance,
    /// Duplicate terminal edges that were subdivided.
    pub subdivisions: usize,
}

impl TightExample {
    pub fn k(&self) -> usize {
        self.params.k()
    }

    pub fn realized_n(&self) -> usize {
        self.instance.n()
    }

    pub fn realized_m(&self) -> usize {
        self.instance.m()
    }

    /// Realized minus nominal node count.
    pub fn delta_n(&self) -> i64 {
        self.realized_n() as i64 - self.params.nominal_n() as i64
    }

    pub fn delta_m(&self) -> i64 {
        self.realized_m() as i64 - self.params.nominal_m() as i64
    }

    /// Nominal subdivision count `ell^2` versus the `ell (ell - 1)` duplicates actually present.
    pub fn subdivision_note(&self) -> String {
        let ell = self.params.ell;
        format!(
            "subdivided {} duplicate terminal edges (one kept per parallel class); nominal count ell^2 = {}",
            self.subdivisions,
            ell * ell
        )
    }

    /// `m / n > (ell^2 - 1) / ell` on realized counts.
    pub fn density_exceeds_target(&self) -> bool {
        let ell = self.params.ell as u128;
        let (m, n) = (self.realized_m() as u128, self.realized_n() as u128);
        m * ell > n * (ell * ell - 1)
    }

    /// Provenance lines for the text format.
    pub fn comments(&self, costs: TightCosts) -> Vec<String> {
        vec![
            format!(
                "tight example ell={} q={} k={} costs={}",
                self.params.ell,
                self.params.q,
                self.k(),
                match costs {
                    TightCosts::Unit => "unit",
                    TightCosts::Length => "length",
                }
            ),
            format!(
                "realized n={} m={}; nominal n={} m={}; delta n={} m={}",
                self.realized_n(),
                self.realized_m(),
                self.params.nominal_n(),
                self.params.nominal_m(),
                self.delta_n(),
                self.delta_m()
            ),
            self.subdivision_note(),
        ]
    }
}

/// Union of layers `1..=ell` made simple by subdividing repeated terminal edges.
pub fn build_tight_example(params: TightParams, costs: TightCosts) -> Result<TightExample> {
    let TightParams { ell, q } = TightParams::new(params.ell, params.q)?;
    let mut multiplicity: BTreeMap<(Node, Node), usize> = BTreeMap::new();
    for layer in 1..=ell {
        for pair in layer_pairs(layer, q) {
            *multiplicity.entry(pair).or_default() += 1;
        }
    }
    let cost_of = |a: Node, b: Node| -> Cost {
        match costs {
            TightCosts::Unit => 1,
            TightCosts::Length => (b - a) as Cost,
        }
    };
    let mut next = q + 2;
    let mut edges = Vec::new();
    let mut subdivisions = 0;
    for (&(a, b), &count) in &multiplicity {
        let c = cost_of(a, b);
        edges.push(Edge::new(a, b, c));
        for _ in 1..count {
            edges.push(Edge::new(a, next, c));
            edges.push(Edge::new(next, b, c));
            next += 1;
            subdivisions += 1;
        }
    }
    let instance = Instance::undirected(next, edges, 0, q + 1, params.k())?;
    Ok(TightExample {
        params,
        instance,
        subdivisions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeModel {
    /// Each pair independently with this probability.
    Probability(f64),
    /// Exactly this many distinct pairs, uniformly.
    Count(usize),
}

/// Seeded random simple graph with `s = 0`, `t = n - 1` and costs uniform in
/// `cost_range`. Feasibility is not guaranteed.
pub fn random_instance(
    seed: u64,
    n: usize,
    model: EdgeModel,
    cost_range: (Cost, Cost),
    k: usize,
) -> Result<Instance> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    let (lo, hi) = cost_range;
    if lo > hi {
        return Err(Error::Domain(format!("empty cost range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Node, Node)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let chosen: Vec<(Node, Node)> = match model {
        EdgeModel::Probability(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Domain(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            pairs.into_iter().filter(|_| rng.gen_bool(p)).collect()
        }
        EdgeModel::Count(m) => {
            if m > pairs.len() {
                return Err(Error::Domain(format!(
                    "{m} edges exceed the {} pairs",
                    pairs.len()
                )));
            }
            let mut idx = sample(&mut rng, pairs.len(), m).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| pairs[i]).collect()
        }
    };
    let edges: Vec<Edge> = chosen
        .into_iter()
        .map(|(u, v)| Edge::new(u, v, rng.gen_range(lo..=hi)))
        .collect();
    Instance::undirected(n, edges, 0, n - 1, k)
}
