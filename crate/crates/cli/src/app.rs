//! Command definitions and dispatch for the `kedp` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use kedp_core::approx::{approximate_min_power_kedp, guarantee_check, PowerRatio};
use kedp_core::exact::{exact_min_power, OracleLimits};
use kedp_core::extremal::{compute_ordering, orient_minimal, verify_ordering, CutExpectation};
use kedp_core::flow::min_cost_k_flow_within;
use kedp_core::generators::{
    build_tight_example, random_instance, EdgeModel, TightCosts, TightParams,
};
use kedp_core::graphcore::{
    parse_instance, power_cost, serialize_instance_with_comments, total_cost, Instance,
};
use kedp_core::minimal::prune_to_minimal;
use kedp_core::pipeline::{run_pipeline, PipelineOptions};
use kedp_core::Error;
use thiserror::Error as ThisError;

use crate::experiment::{render_csv, run_experiment, ExperimentConfig, ExperimentSummary};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_BOUND: i32 = 4;
pub const EXIT_ORACLE: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "kedp",
    version,
    about = "Min-power k edge-disjoint st-paths toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance file
    #[arg(short, long)]
    pub input: PathBuf,
    /// Write here instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Override the demand k from the file
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Min-cost k edge-disjoint paths as a min-power solution
    Solve(InstanceArgs),
    /// Exact minimum power by exhaustive search (small instances)
    Exact {
        #[command(flatten)]
        io: InstanceArgs,
        #[arg(long, default_value_t = 20)]
        max_oracle_edges: usize,
    },
    /// Prune the solution to a minimal subgraph and emit it as an instance
    Prune(InstanceArgs),
    /// Cut-prefix ordering of the pruned, oriented solution
    Order(InstanceArgs),
    /// Generate an instance
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run the full pipeline and every bound check
    Verify {
        #[command(flatten)]
        io: InstanceArgs,
        /// Seed for sampled subsets and random weights
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Also compare against the exact optimum
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 20)]
        max_oracle_edges: usize,
    },
    /// Batch experiment from a TOML config, CSV output
    Experiment {
        /// Config file
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads (overrides the config)
        #[arg(long)]
        threads: Option<usize>,
        /// Force the oracle on
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        max_oracle_edges: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CostKind {
    Unit,
    Length,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Layered near-extremal example
    Tight {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value = "unit")]
        costs: CostKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded random graph with s = 0, t = n - 1
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        /// Edge probability
        #[arg(long, conflicts_with = "m", required_unless_present = "m")]
        p: Option<f64>,
        /// Exact edge count
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        cost_min: u64,
        #[arg(long, default_value_t = 100)]
        cost_max: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, ThisError)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidInstance(_) | Error::Domain(_) => EXIT_PARSE,
            Error::Infeasible { .. } => EXIT_INFEASIBLE,
            Error::OracleTooLarge(_) => EXIT_ORACLE,
            Error::Structure(_) => EXIT_BOUND,
            Error::Internal(_) => EXIT_INTERNAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Rendered output, its destination, and the exit code to finish with.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub output: Option<PathBuf>,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String, output: Option<PathBuf>) -> Self {
        Outcome {
            text,
            output,
            code: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn load(args: &InstanceArgs) -> Result<Instance, CliError> {
    let text = read(&args.input)?;
    let inst = parse_instance(&text).map_err(|e| CliError {
        code: EXIT_PARSE,
        message: format!("{}: {e}", args.input.display()),
    })?;
    Ok(match args.k {
        Some(k) => inst.with_k(k)?,
        None => inst,
    })
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Solve(io) => {
            let inst = load(&io)?;
            let sol = approximate_min_power_kedp(&inst)?;
            let text = match io.format {
                Format::Text => report::solution_text("solve", &inst, &sol),
                Format::Csv => report::edge_csv(&inst, &sol.edges),
            };
            Ok(Outcome::ok(text, io.output))
        }
        Command::Exact {
            io,
            max_oracle_edges,
        } => {
            let inst = load(&io)?;
            let limits = OracleLimits {
                max_edges: max_oracle_edges,
                ..OracleLimits::default()
            };
            let sol = exact_min_power(&inst, &limits)?;
            let text = match io.format {
                Format::Text => report::solution_text("exact", &inst, &sol),
                Format::Csv => report::edge_csv(&inst, &sol.edges),
            };
            Ok(Outcome::ok(text, io.output))
        }
        Command::Prune(io) => {
            let inst = load(&io)?;
            let sol = approximate_min_power_kedp(&inst)?;
            let pruned = prune_to_minimal(&inst, &sol.edges)?;
            let text = match io.format {
                Format::Text => {
                    let comments = vec![
                        format!(
                            "pruned min-cost solution: {} of {} edges kept",
                            pruned.len(),
                            inst.m()
                        ),
                        format!(
                            "cost {} power {}",
                            total_cost(&inst, &pruned),
                            power_cost(&inst, &pruned)
                        ),
                    ];
                    serialize_instance_with_comments(&inst.restrict(&pruned), &comments)
                }
                Format::Csv => report::edge_csv(&inst, &pruned),
            };
            Ok(Outcome::ok(text, io.output))
        }
        Command::Order(io) => {
            let inst = load(&io)?;
            let sol = approximate_min_power_kedp(&inst)?;
            let pruned = prune_to_minimal(&inst, &sol.edges)?;
            let paths = min_cost_k_flow_within(&inst, &pruned)?;
            let dg = orient_minimal(&inst, &pruned, &paths)?;
            let ord = compute_ordering(&dg)?;
            let rep = verify_ordering(&dg, &ord, CutExpectation::Exact);
            let code = if rep.passed() { EXIT_OK } else { EXIT_BOUND };
            Ok(Outcome {
                text: report::ordering_text(&inst, &ord, &rep),
                output: io.output,
                code,
            })
        }
        Command::Gen { kind } => gen(kind),
        Command::Verify {
            io,
            seed,
            oracle,
            max_oracle_edges,
        } => {
            let inst = load(&io)?;
            let opts = PipelineOptions {
                seed,
                sweep: kedp_core::extremal::SweepOptions {
                    seed,
                    ..Default::default()
                },
                ..PipelineOptions::default()
            };
            let rep = run_pipeline(&inst, &opts)?;
            let mut ok = rep.all_passed();
            let oracle_line = if oracle {
                let limits = OracleLimits {
                    max_edges: max_oracle_edges,
                    ..OracleLimits::default()
                };
                let opt = exact_min_power(&inst, &limits)?;
                let ratio = PowerRatio {
                    alg_power: rep.solution.power,
                    opt_power: opt.power,
                };
                let g = guarantee_check(inst.k(), ratio.alg_power, ratio.opt_power);
                ok &= g;
                Some(report::ratio_line(inst.k(), &ratio, g))
            } else {
                None
            };
            Ok(Outcome {
                text: report::pipeline_text(&inst, &rep, oracle_line),
                output: io.output,
                code: if ok { EXIT_OK } else { EXIT_BOUND },
            })
        }
        Command::Experiment {
            input,
            output,
            threads,
            oracle,
            max_oracle_edges,
            format,
        } => {
            let mut cfg = ExperimentConfig::from_toml(&read(&input)?).map_err(|m| CliError {
                code: EXIT_PARSE,
                message: format!("{}: {m}", input.display()),
            })?;
            cfg.oracle |= oracle;
            if let Some(m) = max_oracle_edges {
                cfg.max_oracle_edges = m;
            }
            let records = run_experiment(&cfg, threads.unwrap_or(cfg.threads));
            let summary = ExperimentSummary::of(&records);
            let text = match format {
                Format::Csv => render_csv(&records),
                Format::Text => format!("{}\n", summary.line()),
            };
            Ok(Outcome {
                text,
                output,
                code: if summary.violations == 0 {
                    EXIT_OK
                } else {
                    EXIT_BOUND
                },
            })
        }
    }
}

fn gen(kind: GenKind) -> Result<Outcome, CliError> {
    match kind {
        GenKind::Tight {
            ell,
            q,
            costs,
            output,
        } => {
            let costs = match costs {
                CostKind::Unit => TightCosts::Unit,
                CostKind::Length => TightCosts::Length,
            };
            let ex = build_tight_example(TightParams::new(ell, q)?, costs)?;
            let text = serialize_instance_with_comments(&ex.instance, &ex.comments(costs));
            Ok(Outcome::ok(text, output))
        }
        GenKind::Random {
            seed,
            n,
            p,
            m,
            k,
            cost_min,
            cost_max,
            output,
        } => {
            let (model, desc) = match (p, m) {
                (Some(p), _) => (EdgeModel::Probability(p), format!("p={p}")),
                (None, Some(m)) => (EdgeModel::Count(m), format!("m={m}")),
                (None, None) => unreachable!("clap requires p or m"),
            };
            let inst = random_instance(seed, n, model, (cost_min, cost_max), k)?;
            let comments = vec![format!(
                "random seed={seed} n={n} {desc} k={k} costs=[{cost_min},{cost_max}]"
            )];
            Ok(Outcome::ok(
                serialize_instance_with_comments(&inst, &comments),
                output,
            ))
        }
    }
}
