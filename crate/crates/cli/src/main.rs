//! `hyperorient`: thresholds, tables, simulations and cross-checks from the
//! command line.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 invalid configuration,
//! 3 a `verify` check failed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperorient::asymptotics::{xi_star, ModelParams, curly_f, inf_f, load_table};
use hyperorient::graph::{incidence_graph, Constrained, ConstrainedBipartiteGraph};
use hyperorient::harness::{
    emit_curve, emit_table, message_trace, records_csv, run_mp_vs_oracle, run_orientability_experiment, to_json,
    verify_suite, HarnessError, Model, MpCheckConfig, RunConfig,
};
use hyperorient::io::{parse_bipartite, parse_hypergraph, write_hypergraph};
use hyperorient::oracle::{brute_force_m, max_flow_m, partition_polynomial, ENUMERATION_LIMIT};
use hyperorient::random::{sample_h_n_m_h, sample_h_n_p_h, stream_rng};
use hyperorient::Exec;

#[derive(Parser)]
#[command(name = "hyperorient", version, about = "Orientability of random hypergraphs")]
struct Cli {
    /// Base seed; trial t uses stream t of this seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (each command has its own default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    UniformM,
    BinomialP,
}

#[derive(Args, Clone, Copy)]
struct Triple {
    #[arg(long)]
    h: u32,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    k: u32,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file in the text format.
    input: PathBuf,
    /// Read a hypergraph and use its incidence graph with caps --l/--k.
    #[arg(long, requires_all = ["l", "k"])]
    hypergraph: bool,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for ξ* and the threshold density c*.
    Threshold(Triple),
    /// Critical-load table 1 (h = 4) or 2 (l = 2).
    Table {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
    },
    /// Sample (q, F(q, c)) on [0, 1].
    Curve {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Monte Carlo orientability experiment.
    Simulate {
        #[command(flatten)]
        triple: Triple,
        /// Density in hyperedges per vertex.
        #[arg(long, conflicts_with = "c_factor", required_unless_present = "c_factor")]
        c: Option<f64>,
        /// Density as a multiple of c*.
        #[arg(long)]
        c_factor: Option<f64>,
        #[arg(long, default_value_t = 20_000)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, value_enum, default_value = "uniform-m")]
        model: ModelArg,
    },
    /// Message passing: trace the rounds on a graph, or check against max flow.
    #[command(subcommand)]
    Mp(MpCommand),
    /// Maximum admissible subgraph size of a graph file.
    Oracle {
        #[command(flatten)]
        graph: GraphInput,
        /// Also enumerate (at most 22 edges): brute-force M and the partition polynomial.
        #[arg(long)]
        enumerate: bool,
    },
    /// Draw a random hypergraph and write it in the text format.
    Sample {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: f64,
        #[arg(long, value_enum, default_value = "uniform-m")]
        model: ModelArg,
    },
    /// Run the built-in self-checks.
    Verify,
}

#[derive(Subcommand)]
enum MpCommand {
    /// Every message of every round as `round,src,dst,value`.
    Trace {
        #[command(flatten)]
        graph: GraphInput,
        /// Activity; omit for the 0/1 (z = ∞) dynamics.
        #[arg(long)]
        z: Option<f64>,
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
    /// Compare message passing with max flow on random trees and sparse graphs.
    Check {
        #[arg(long, default_value_t = 500)]
        trees: usize,
        #[arg(long, default_value_t = 200)]
        max_tree_size: usize,
        #[arg(long, default_value_t = 4)]
        max_cap: u32,
        /// Densities c of H(n, cn, 2); repeat for several.
        #[arg(long = "density", default_values_t = [0.3])]
        densities: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }

    fn runtime(message: impl ToString) -> Self {
        Failure { code: 1, message: message.to_string() }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::InvalidConfig(_) | HarnessError::Asymptotics(_) => Failure::config(e),
            _ => Failure::runtime(e),
        }
    }
}

fn json_string(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn load_graph(input: &GraphInput) -> Result<ConstrainedBipartiteGraph, Failure> {
    let text = fs::read_to_string(&input.input).map_err(|e| Failure::runtime(format!("{}: {e}", input.input.display())))?;
    if input.hypergraph {
        let h = parse_hypergraph(&text).map_err(Failure::config)?;
        incidence_graph(&h, input.l.unwrap(), input.k.unwrap()).map_err(Failure::config)
    } else {
        parse_bipartite(&text).map_err(Failure::config)
    }
}

fn model(m: ModelArg) -> Model {
    match m {
        ModelArg::UniformM => Model::UniformM,
        ModelArg::BinomialP => Model::BinomialP,
    }
}

/// Runs the command; returns the output text and the exit code.
fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    if cli.workers == Some(0) {
        return Err(Failure::config("--workers must be at least 1"));
    }
    let format = cli.format;
    let out = match &cli.command {
        Command::Threshold(t) => {
            let r = xi_star(t.h, t.l, t.k).map_err(Failure::config)?;
            if format == Some(Format::Csv) {
                format!(
                    "h,l,k,xi_star,c_star,load,residual,degenerate\n{},{},{},{},{},{},{},{}\n",
                    r.h, r.l, r.k, r.xi_star, r.c_star, r.load, r.residual, r.degenerate
                )
            } else {
                to_json(&r)?
            }
        }
        Command::Table { which } => {
            if format == Some(Format::Json) {
                to_json(&load_table(*which, exec).map_err(Failure::config)?)?
            } else {
                emit_table(*which, exec)?
            }
        }
        Command::Curve { triple, c, samples } => {
            let p = ModelParams::new(triple.h, triple.l, triple.k, *c).map_err(Failure::config)?;
            if format == Some(Format::Json) {
                if *samples < 2 {
                    return Err(Failure::config("a curve needs at least 2 samples"));
                }
                let points: Vec<_> = (0..*samples)
                    .map(|i| {
                        let q = i as f64 / (*samples - 1) as f64;
                        json!({ "q": q, "F": curly_f(q, &p) })
                    })
                    .collect();
                let inf = inf_f(&p).map_err(Failure::runtime)?;
                to_json(&json!({ "params": p, "inf_f": inf, "points": points }))?
            } else {
                emit_curve(&p, *samples)?
            }
        }
        Command::Simulate { triple, c, c_factor, n, trials, model: m } => {
            let c = match (c, c_factor) {
                (Some(c), _) => *c,
                (None, Some(f)) => f * xi_star(triple.h, triple.l, triple.k).map_err(Failure::config)?.c_star,
                (None, None) => unreachable!("clap requires one of --c and --c-factor"),
            };
            let cfg = RunConfig::new(triple.h, triple.l, triple.k, c, *n)
                .trials(*trials)
                .seed(cli.seed)
                .model(model(*m))
                .workers(cli.workers)
                .exec(exec);
            let report = run_orientability_experiment(&cfg)?;
            if format == Some(Format::Json) {
                to_json(&report)?
            } else {
                records_csv(&report.records)?
            }
        }
        Command::Mp(MpCommand::Trace { graph, z, rounds }) => {
            if z.is_some_and(|z| !(z > 0.0 && z.is_finite())) {
                return Err(Failure::config("--z must be positive and finite"));
            }
            let g = load_graph(graph)?.to_general();
            let rows = exec.with_workers(cli.workers, || message_trace(&g, *z, *rounds, exec));
            if format == Some(Format::Json) {
                to_json(&json!({ "rows": rows }))?
            } else {
                records_csv(&rows)?
            }
        }
        Command::Mp(MpCommand::Check { trees, max_tree_size, max_cap, densities, n, trials, l, k }) => {
            if *max_tree_size == 0 || *max_cap == 0 || *l == 0 || *k == 0 {
                return Err(Failure::config("tree size, caps, --l and --k must be positive"));
            }
            let cfg = MpCheckConfig {
                seed: cli.seed,
                trees: *trees,
                tree_sizes: 1..=*max_tree_size,
                tree_caps: 1..=*max_cap,
                densities: densities.clone(),
                sparse_n: *n,
                sparse_trials: *trials,
                l: *l,
                k: *k,
                exec,
                ..MpCheckConfig::default()
            };
            let report = exec.with_workers(cli.workers, || run_mp_vs_oracle(&cfg));
            if format == Some(Format::Csv) {
                records_csv(&report.sparse)?
            } else {
                to_json(&report)?
            }
        }
        Command::Oracle { graph, enumerate } => {
            let g = load_graph(graph)?;
            let flow = max_flow_m(&g);
            let mut body = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "M": flow.size,
                "saturates_a_side": flow.size as u64 == g.caps_a().iter().map(|&w| w as u64).sum::<u64>(),
                "subgraph": flow.subgraph.bits().iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
            });
            if *enumerate {
                if g.edge_count() > ENUMERATION_LIMIT {
                    return Err(Failure::config(format!("--enumerate needs at most {ENUMERATION_LIMIT} edges")));
                }
                body["brute_force_M"] = json!(brute_force_m(&g).map_err(Failure::runtime)?);
                body["partition_polynomial"] = json!(partition_polynomial(&g).map_err(Failure::runtime)?.coefficients);
            }
            if format == Some(Format::Csv) {
                format!("vertices,edges,M\n{},{},{}\n", g.vertex_count(), g.edge_count(), flow.size)
            } else {
                to_json(&body)?
            }
        }
        Command::Sample { h, n, c, model: m } => {
            let mut rng = stream_rng(cli.seed, 0);
            let sampled = match m {
                ModelArg::UniformM => sample_h_n_m_h(&mut rng, *n, (c * *n as f64).floor() as usize, *h),
                ModelArg::BinomialP => sample_h_n_p_h(&mut rng, *n, *c, *h),
            };
            write_hypergraph(&sampled.map_err(Failure::config)?)
        }
        Command::Verify => {
            let checks = exec.with_workers(cli.workers, || verify_suite(cli.seed, exec));
            let all = checks.iter().all(|c| c.passed);
            let text = if format == Some(Format::Json) {
                json_string(&json!({ "schema_version": hyperorient::harness::SCHEMA_VERSION, "passed": all, "checks": checks }))
            } else {
                checks
                    .iter()
                    .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                    .collect()
            };
            return Ok((text, if all { 0 } else { 3 }));
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            let text = if text.ends_with('\n') { text } else { text + "\n" };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
