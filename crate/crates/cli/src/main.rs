use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use polar_cli::checks::{run_oracle_check, scale_query};
use polar_cli::io::{emit, write_edge_list};
use polar_cli::{query, run_experiment, CliError, CliResult, ExperimentConfig, QueryConfig};
use polar_core::synthgen::{generate, SynthParams};
use polar_core::SolverConfig;

#[derive(Parser)]
#[command(name = "polar", version, about = "Seeded polarized communities in signed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one seeded query and print the community as JSON.
    Query(QueryArgs),
    /// Generate a planted polarized graph.
    Synth(SynthArgs),
    /// Run a synthetic recovery campaign and write a CSV.
    Experiment(ExperimentArgs),
    /// Brute-force bound checks on random small graphs.
    OracleCheck(OracleArgs),
    /// Time one query on a large generated graph.
    Bench(BenchArgs),
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Treat lines as directed arcs and symmetrize as (A + Aᵀ)/2.
    #[arg(long)]
    directed: bool,
    /// Comma-separated labels of the first seed set.
    #[arg(long, value_delimiter = ',', default_value = "")]
    s1: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "")]
    s2: Vec<String>,
    #[arg(long, default_value_t = 0.9, conflicts_with = "k")]
    kappa: f64,
    /// Volume budget; sets kappa = sqrt(1/k).
    #[arg(long)]
    k: Option<f64>,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, default_value_t = 1e-8)]
    cg_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    emit_vector: bool,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 8)]
    pairs: usize,
    #[arg(long, default_value_t = 20)]
    band_size: usize,
    #[arg(long, default_value_t = 0)]
    outliers: usize,
    #[arg(long, default_value_t = 0.05)]
    eta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge list destination (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ground-truth JSON destination.
    #[arg(long)]
    truth_out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_delimiter = ',', default_value = "0,0.05,0.1,0.2,0.3")]
    eta: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    seed_size: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.9")]
    kappa: Vec<f64>,
    /// Graphs per configuration.
    #[arg(long, default_value_t = 10)]
    graphs: usize,
    /// Queries per graph.
    #[arg(long, default_value_t = 10)]
    queries: usize,
    #[arg(long, default_value_t = 8)]
    pairs: usize,
    #[arg(long, default_value_t = 20)]
    band_size: usize,
    #[arg(long, default_value_t = 0)]
    outliers: usize,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, default_value_t = 1e-8)]
    cg_tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-cell timing CSV (kept apart from the reproducible main CSV).
    #[arg(long)]
    timings_out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 30)]
    count: usize,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 3.0)]
    k: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    #[arg(long, default_value_t = 0.05)]
    eta: f64,
    #[arg(long, default_value_t = 0.9)]
    kappa: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Query(a) => {
            let kappa = match a.k {
                Some(k) if k > 1.0 => (1.0 / k).sqrt(),
                Some(k) => return Err(CliError::Usage(format!("--k must exceed 1, got {k}"))),
                None => a.kappa,
            };
            let non_empty = |v: Vec<String>| v.into_iter().filter(|s| !s.is_empty()).collect();
            let cfg = QueryConfig {
                graph_path: a.graph,
                directed: a.directed,
                s1_labels: non_empty(a.s1),
                s2_labels: non_empty(a.s2),
                kappa,
                eps: a.eps,
                cg_tol: a.cg_tol,
                output_path: a.out,
                emit_vector: a.emit_vector,
            };
            let res = query(&cfg)?;
            for w in &res.warnings {
                eprintln!("warning: {w}");
            }
            emit(cfg.output_path.as_deref(), &to_json(&res))
        }
        Command::Synth(a) => {
            let syn = generate(&SynthParams {
                p: a.pairs,
                m: a.band_size,
                r: a.outliers,
                eta: a.eta,
                rng_seed: a.seed,
            })?;
            if syn.was_restricted() {
                eprintln!(
                    "warning: sample was disconnected; kept the largest component ({} nodes dropped)",
                    syn.dropped_nodes
                );
            }
            let mut buf = Vec::new();
            write_edge_list(&syn.graph, &mut buf).map_err(|e| CliError::Data(e.to_string()))?;
            emit(a.out.as_deref(), &String::from_utf8(buf).expect("utf-8 labels"))?;
            if let Some(path) = a.truth_out {
                let (pairs, outliers) = syn.truth.labelled(&syn.graph);
                let pairs: Vec<_> = pairs.into_iter().map(|(x, y)| vec![x, y]).collect();
                let doc = json!({
                    "pairs": pairs,
                    "outliers": outliers,
                    "restricted": syn.was_restricted(),
                });
                emit(Some(&path), &to_json(&doc))?;
            }
            Ok(())
        }
        Command::Experiment(a) => {
            let cfg = ExperimentConfig {
                etas: a.eta,
                seed_sizes: a.seed_size,
                kappas: a.kappa,
                graphs: a.graphs,
                queries: a.queries,
                p: a.pairs,
                m: a.band_size,
                r: a.outliers,
                eps: a.eps,
                cg_tol: a.cg_tol,
                rng_seed: a.seed,
            };
            let out = run_experiment(&cfg)?;
            for c in out.cells.iter().filter(|c| c.failed > 0) {
                eprintln!(
                    "warning: cell eta={} seed_size={} kappa={}: {} failed queries ({})",
                    c.eta,
                    c.seed_size,
                    c.kappa,
                    c.failed,
                    c.errors.first().map(String::as_str).unwrap_or("")
                );
            }
            emit(a.out.as_deref(), &out.csv)?;
            if let Some(p) = a.timings_out {
                emit(Some(&p), &out.timings_csv)?;
            }
            Ok(())
        }
        Command::OracleCheck(a) => {
            let summary = run_oracle_check(a.count, a.n, a.k, a.seed, a.eps)?;
            emit(None, &to_json(&summary))?;
            if summary.violations.is_empty() {
                Ok(())
            } else {
                Err(CliError::Solver(format!("{} bound violations", summary.violations.len())))
            }
        }
        Command::Bench(a) => {
            let t = scale_query(a.n, a.eta, a.seed, a.kappa, a.repeats, SolverConfig::default())?;
            emit(a.out.as_deref(), &to_json(&t))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
