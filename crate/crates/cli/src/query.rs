//! One seeded query: solve, round, score.

use std::path::PathBuf;
use std::time::Instant;

use polar_core::metrics::report;
use polar_core::sweep::fast_sweep_detailed;
use polar_core::{seed_vector, Community, LocalPolar, NodeSet, SignedGraph, SolverConfig};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::io::ingest;

#[derive(Clone, Debug)]
pub struct QueryConfig {
    pub graph_path: PathBuf,
    pub directed: bool,
    pub s1_labels: Vec<String>,
    pub s2_labels: Vec<String>,
    pub kappa: f64,
    pub eps: f64,
    pub cg_tol: f64,
    pub output_path: Option<PathBuf>,
    pub emit_vector: bool,
}

impl QueryConfig {
    pub fn new(graph_path: impl Into<PathBuf>, s1: &[&str], s2: &[&str]) -> Self {
        QueryConfig {
            graph_path: graph_path.into(),
            directed: false,
            s1_labels: s1.iter().map(|s| s.to_string()).collect(),
            s2_labels: s2.iter().map(|s| s.to_string()).collect(),
            kappa: 0.9,
            eps: 1e-3,
            cg_tol: 1e-8,
            output_path: None,
            emit_vector: false,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(0.0..1.0).contains(&self.kappa) {
            return Err(CliError::Usage(format!("--kappa must lie in [0, 1), got {}", self.kappa)));
        }
        if !(self.eps > 0.0) {
            return Err(CliError::Usage(format!("--eps must be positive, got {}", self.eps)));
        }
        if !(self.cg_tol > 0.0) {
            return Err(CliError::Usage(format!("--cg-tol must be positive, got {}", self.cg_tol)));
        }
        Ok(())
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            eps: self.eps,
            cg_tol: self.cg_tol,
            ..SolverConfig::default()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Metrics {
    pub ham: f64,
    pub cohesion: f64,
    pub opposition: f64,
    pub polarity: f64,
    pub sizes: (usize, usize),
    pub volume: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub solve_ms: f64,
    pub round_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QueryResult {
    pub c1: Vec<String>,
    pub c2: Vec<String>,
    pub beta: f64,
    pub alpha: f64,
    pub correlation: f64,
    pub lambda1: f64,
    pub kappa: f64,
    pub constraint_active: bool,
    pub metrics: Metrics,
    pub timings: Timings,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(skip)]
    pub community: Option<Community>,
}

pub fn resolve_labels(g: &SignedGraph, labels: &[String]) -> CliResult<NodeSet> {
    labels
        .iter()
        .map(|l| {
            g.index_of(l)
                .ok_or_else(|| CliError::Data(format!("unknown node label `{l}`")))
        })
        .collect()
}

/// Solve and round for index seeds on an existing solver. `solve_ms` covers only the
/// α search; the eigenpair is shared across queries.
pub fn run_seeded(
    solver: &LocalPolar<'_>,
    s1: &NodeSet,
    s2: &NodeSet,
    kappa: f64,
    emit_vector: bool,
) -> CliResult<QueryResult> {
    let g = solver.graph();
    let s = seed_vector(g, s1, s2)?;
    let t = Instant::now();
    let sol = solver.solve(&s, kappa)?;
    let solve_ms = t.elapsed().as_secs_f64() * 1e3;
    let t = Instant::now();
    let out = fast_sweep_detailed(g, &sol.x)?;
    let round_ms = t.elapsed().as_secs_f64() * 1e3;
    let c = out.community;
    let m = report(g, &c, None)?;
    let names = |s: &NodeSet| s.iter().map(|u| g.label(u).to_string()).collect();
    Ok(QueryResult {
        c1: names(&c.c1),
        c2: names(&c.c2),
        beta: c.beta,
        alpha: sol.alpha,
        correlation: sol.correlation,
        lambda1: sol.lambda1,
        kappa,
        constraint_active: sol.constraint_active,
        metrics: Metrics {
            ham: m.ham,
            cohesion: m.cohesion,
            opposition: m.opposition,
            polarity: m.polarity,
            sizes: m.sizes,
            volume: m.volume,
        },
        timings: Timings { solve_ms, round_ms },
        warnings: sol.warnings,
        x: emit_vector.then_some(sol.x),
        community: Some(c),
    })
}

/// Query on an in-memory graph with label seeds. The eigenpair time counts toward `solve_ms`.
pub fn query_graph(g: &SignedGraph, config: &QueryConfig) -> CliResult<QueryResult> {
    config.validate()?;
    let s1 = resolve_labels(g, &config.s1_labels)?;
    let s2 = resolve_labels(g, &config.s2_labels)?;
    if let Some(u) = s1.iter().find(|&u| s2.contains(u)) {
        return Err(CliError::Data(format!("seed `{}` is in both --s1 and --s2", g.label(u))));
    }
    if s1.is_empty() && s2.is_empty() {
        return Err(CliError::Usage("at least one seed is required".into()));
    }
    let t = Instant::now();
    let solver = LocalPolar::new(g, config.solver_config())?;
    let eig_ms = t.elapsed().as_secs_f64() * 1e3;
    let mut res = run_seeded(&solver, &s1, &s2, config.kappa, config.emit_vector)?;
    res.timings.solve_ms += eig_ms;
    Ok(res)
}

/// Read the graph file, run the query and return the result with ingestion warnings.
pub fn query(config: &QueryConfig) -> CliResult<QueryResult> {
    config.validate()?;
    let ing = ingest(&config.graph_path, config.directed)?;
    let mut res = query_graph(&ing.graph, config)?;
    let mut warnings = ing.warnings;
    warnings.append(&mut res.warnings);
    res.warnings = warnings;
    Ok(res)
}
