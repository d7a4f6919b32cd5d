//! Batch experiments: one CSV row per seed.

use std::time::Instant;

use kedp_core::approx::{approximate_min_power_kedp, guarantee_check, PowerRatio};
use kedp_core::arith::ratio_lt;
use kedp_core::exact::{exact_min_power, OracleLimits};
use kedp_core::generators::{random_instance, EdgeModel};
use kedp_core::graphcore::Instance;
use kedp_core::pipeline::{run_pipeline, PipelineOptions};
use kedp_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "# kedp-experiment-csv v1";

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed_start: u64,
    pub seeds: u64,
    pub n_min: usize,
    pub n_max: usize,
    /// Independent edge probability; when absent the edge count is drawn from `m_min..=m_max`.
    #[serde(default)]
    pub edge_prob: Option<f64>,
    #[serde(default = "default_m_min")]
    pub m_min: usize,
    #[serde(default = "default_m_max")]
    pub m_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    #[serde(default = "default_cost_min")]
    pub cost_min: u64,
    #[serde(default = "default_cost_max")]
    pub cost_max: u64,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default = "default_max_oracle_edges")]
    pub max_oracle_edges: usize,
    #[serde(default = "default_true")]
    pub pipeline: bool,
    #[serde(default = "default_threads")]
    pub threads: usize,
    /// Adds a `wall_time_ms` column; output is then no longer byte-reproducible.
    #[serde(default)]
    pub record_timing: bool,
}

fn default_m_min() -> usize {
    1
}
fn default_m_max() -> usize {
    usize::MAX
}
fn default_cost_min() -> u64 {
    1
}
fn default_cost_max() -> u64 {
    100
}
fn default_max_oracle_edges() -> usize {
    OracleLimits::default().max_edges
}
fn default_true() -> bool {
    true
}
fn default_threads() -> usize {
    1
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(format!("bad node range {}..={}", self.n_min, self.n_max));
        }
        if self.k_min < 1 || self.k_min > self.k_max {
            return Err(format!("bad k range {}..={}", self.k_min, self.k_max));
        }
        if self.cost_min > self.cost_max {
            return Err(format!(
                "bad cost range {}..={}",
                self.cost_min, self.cost_max
            ));
        }
        if self.m_min > self.m_max {
            return Err(format!("bad edge range {}..={}", self.m_min, self.m_max));
        }
        if let Some(p) = self.edge_prob {
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("edge_prob {p} outside [0, 1]"));
            }
        }
        if self.threads == 0 {
            return Err("threads must be at least 1".into());
        }
        Ok(())
    }

    pub fn limits(&self) -> OracleLimits {
        OracleLimits {
            max_edges: self.max_oracle_edges,
            ..OracleLimits::default()
        }
    }
}

/// The instance for one seed: sizes are drawn from a stream derived from the seed,
/// the graph itself from `random_instance(seed, ..)`.
pub fn instance_for_seed(cfg: &ExperimentConfig, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b65_6470);
    let n = rng.gen_range(cfg.n_min..=cfg.n_max);
    let k = rng.gen_range(cfg.k_min..=cfg.k_max);
    let model = match cfg.edge_prob {
        Some(p) => EdgeModel::Probability(p),
        None => {
            let pairs = n * (n - 1) / 2;
            let hi = cfg.m_max.min(pairs);
            let lo = cfg.m_min.min(hi);
            EdgeModel::Count(rng.gen_range(lo..=hi))
        }
    };
    random_instance(seed, n, model, (cfg.cost_min, cfg.cost_max), k)
        .expect("validated config yields valid generator parameters")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentRecord {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub feasible: bool,
    pub alg_power: Option<u128>,
    pub alg_cost: Option<u128>,
    pub opt_power: Option<u128>,
    pub ratio_num: Option<u128>,
    pub ratio_den: Option<u128>,
    pub guarantee_ok: Option<bool>,
    pub power_bound_ok: Option<bool>,
    pub subset_bound_ok: Option<bool>,
    pub ordering_ok: Option<bool>,
    pub pipeline_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl ExperimentRecord {
    /// A checked guarantee or bound failed.
    pub fn violation(&self) -> bool {
        [self.guarantee_ok, self.pipeline_ok].contains(&Some(false))
    }

    fn sort_key(&self) -> (u64, usize, usize, usize) {
        (self.seed, self.n, self.m, self.k)
    }
}

pub fn run_seed(cfg: &ExperimentConfig, seed: u64) -> ExperimentRecord {
    let started = Instant::now();
    let inst = instance_for_seed(cfg, seed);
    let mut rec = ExperimentRecord {
        seed,
        n: inst.n(),
        m: inst.m(),
        k: inst.k(),
        feasible: false,
        alg_power: None,
        alg_cost: None,
        opt_power: None,
        ratio_num: None,
        ratio_den: None,
        guarantee_ok: None,
        power_bound_ok: None,
        subset_bound_ok: None,
        ordering_ok: None,
        pipeline_ok: None,
        wall_time_ms: None,
    };
    let Ok(alg) = approximate_min_power_kedp(&inst) else {
        return finish(cfg, rec, started);
    };
    rec.feasible = true;
    rec.alg_power = Some(alg.power);
    rec.alg_cost = Some(alg.cost);
    if cfg.oracle {
        match exact_min_power(&inst, &cfg.limits()) {
            Ok(opt) => {
                let (num, den) = PowerRatio {
                    alg_power: alg.power,
                    opt_power: opt.power,
                }
                .reduced();
                rec.opt_power = Some(opt.power);
                rec.ratio_num = Some(num);
                rec.ratio_den = Some(den);
                rec.guarantee_ok = Some(guarantee_check(inst.k(), alg.power, opt.power));
            }
            Err(Error::OracleTooLarge(_)) => {}
            Err(e) => unreachable!("oracle failed on a feasible instance: {e}"),
        }
    }
    if cfg.pipeline {
        let opts = PipelineOptions {
            seed,
            ..PipelineOptions::default()
        };
        let report = run_pipeline(&inst, &opts).expect("feasible instance");
        rec.power_bound_ok = Some(report.power_bound_ok);
        rec.subset_bound_ok = Some(report.subset_ok());
        rec.ordering_ok = Some(report.ordering_ok());
        rec.pipeline_ok = Some(report.all_passed());
    }
    finish(cfg, rec, started)
}

fn finish(cfg: &ExperimentConfig, mut rec: ExperimentRecord, started: Instant) -> ExperimentRecord {
    if cfg.record_timing {
        rec.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    }
    rec
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSummary {
    pub instances: usize,
    pub feasible: usize,
    pub oracle_runs: usize,
    /// Largest `alg / opt` seen, in lowest terms.
    pub max_ratio: Option<(u128, u128)>,
    pub violations: usize,
}

impl ExperimentSummary {
    pub fn of(records: &[ExperimentRecord]) -> Self {
        let mut max_ratio: Option<(u128, u128)> = None;
        for r in records {
            if let (Some(a), Some(b)) = (r.ratio_num, r.ratio_den) {
                if max_ratio.is_none_or(|(c, d)| ratio_lt(c, d, a, b)) {
                    max_ratio = Some((a, b));
                }
            }
        }
        ExperimentSummary {
            instances: records.len(),
            feasible: records.iter().filter(|r| r.feasible).count(),
            oracle_runs: records.iter().filter(|r| r.opt_power.is_some()).count(),
            max_ratio,
            violations: records.iter().filter(|r| r.violation()).count(),
        }
    }

    pub fn line(&self) -> String {
        let ratio = match self.max_ratio {
            Some((a, b)) => format!("{a}/{b}"),
            None => "-".into(),
        };
        format!(
            "# summary instances={} feasible={} oracle_runs={} max_ratio={} violations={}",
            self.instances, self.feasible, self.oracle_runs, ratio, self.violations
        )
    }
}

/// Runs every seed on `threads` workers; rows come back sorted by `(seed, n, m, k)`.
pub fn run_experiment(cfg: &ExperimentConfig, threads: usize) -> Vec<ExperimentRecord> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    let mut records: Vec<ExperimentRecord> = pool.install(|| {
        (cfg.seed_start..cfg.seed_start + cfg.seeds)
            .into_par_iter()
            .map(|seed| run_seed(cfg, seed))
            .collect()
    });
    records.sort_by_key(ExperimentRecord::sort_key);
    records
}

pub fn render_csv(records: &[ExperimentRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer.serialize(r).expect("in-memory csv write");
    }
    if records.is_empty() {
        writer
            .write_record([
                "seed",
                "n",
                "m",
                "k",
                "feasible",
                "alg_power",
                "alg_cost",
                "opt_power",
                "ratio_num",
                "ratio_den",
                "guarantee_ok",
                "power_bound_ok",
                "subset_bound_ok",
                "ordering_ok",
                "pipeline_ok",
            ])
            .expect("in-memory csv write");
    }
    let body = String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8 csv");
    format!(
        "{SCHEMA}\n{body}{}\n",
        ExperimentSummary::of(records).line()
    )
}
