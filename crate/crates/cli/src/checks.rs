//! Self-checks run by the `oracle-check` and `bench` subcommands.

use std::time::Instant;

use polar_core::oracle::{random_connected_graph, tight_config, verify_approximation, verify_relaxation, Weights};
use polar_core::synthgen::generate_scaled;
use polar_core::sweep::fast_sweep_detailed;
use polar_core::{seed_vector, LocalPolar, NodeSet, SolverConfig};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Serialize)]
pub struct BoundViolation {
    pub instance: usize,
    pub bound: &'static str,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub instances: usize,
    pub nodes: usize,
    pub k: f64,
    pub max_relaxation_gap: f64,
    pub max_sweep_gap: f64,
    pub max_cheeger_gap: f64,
    pub violations: Vec<BoundViolation>,
}

/// Random brute-forceable instances seeded on nodes 0 and 1; checks `λ ≤ 4h`,
/// `β ≤ √(2R)` and `β ≤ √(8h)`, each with slack `eps`. Gaps are `lhs - rhs`.
pub fn run_oracle_check(count: usize, n: usize, k: f64, seed: u64, eps: f64) -> CliResult<OracleSummary> {
    if !(2..=polar_core::oracle::MAX_BRUTE_FORCE).contains(&n) {
        return Err(CliError::Usage(format!(
            "--n must lie in 2..={}",
            polar_core::oracle::MAX_BRUTE_FORCE
        )));
    }
    let cfg = tight_config();
    let mut summary = OracleSummary {
        instances: count,
        nodes: n,
        k,
        max_relaxation_gap: f64::NEG_INFINITY,
        max_sweep_gap: f64::NEG_INFINITY,
        max_cheeger_gap: f64::NEG_INFINITY,
        violations: Vec::new(),
    };
    for i in 0..count {
        let g = random_connected_graph(n, 0.35, 0.4, Weights::Unit, seed.wrapping_add(i as u64));
        let (s1, s2) = (NodeSet::new([0]), NodeSet::new([1]));
        let rel = verify_relaxation(&g, &s1, &s2, k, eps, &cfg)?;
        let apx = verify_approximation(&g, &s1, &s2, k, eps, &cfg)?;
        let checks = [
            ("lambda <= 4h", rel.lambda, 4.0 * rel.h, &mut summary.max_relaxation_gap),
            ("beta <= sqrt(2R)", apx.beta_out, apx.sweep_bound, &mut summary.max_sweep_gap),
            ("beta <= sqrt(8h)", apx.beta_out, apx.cheeger_bound, &mut summary.max_cheeger_gap),
        ];
        for (bound, lhs, rhs, gap) in checks {
            *gap = gap.max(lhs - rhs);
            if lhs > rhs + eps {
                summary.violations.push(BoundViolation {
                    instance: i,
                    bound,
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(summary)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScaleTiming {
    pub nodes: usize,
    pub edges: usize,
    pub generate_ms: f64,
    pub eigen_ms: f64,
    /// α search only.
    pub search_ms: f64,
    /// Eigenpair plus α search.
    pub solve_ms: f64,
    /// Median over repeats of the sweep.
    pub round_ms: f64,
    pub beta: f64,
    pub community_size: usize,
    pub edge_visits: usize,
}

/// One query on a generated graph of `n` nodes; seeds are one node from each band of
/// the first planted pair.
pub fn scale_query(n: usize, eta: f64, seed: u64, kappa: f64, round_repeats: usize, config: SolverConfig) -> CliResult<ScaleTiming> {
    let t = Instant::now();
    let syn = generate_scaled(n, 20, eta, seed)?;
    let generate_ms = ms(t);
    let g = &syn.graph;
    let t = Instant::now();
    let solver = LocalPolar::new(g, config)?;
    let eigen_ms = ms(t);
    let (a, b) = &syn.truth.pairs[0];
    let s = seed_vector(g, &NodeSet::new([a.as_slice()[0]]), &NodeSet::new([b.as_slice()[0]]))?;
    let t = Instant::now();
    let sol = solver.solve(&s, kappa)?;
    let search_ms = ms(t);
    let mut rounds = Vec::new();
    let mut last = None;
    for _ in 0..round_repeats.max(1) {
        let t = Instant::now();
        let out = fast_sweep_detailed(g, &sol.x)?;
        rounds.push(ms(t));
        last = Some(out);
    }
    rounds.sort_by(f64::total_cmp);
    let out = last.expect("at least one sweep");
    Ok(ScaleTiming {
        nodes: g.node_count(),
        edges: g.edge_count(),
        generate_ms,
        eigen_ms,
        search_ms,
        solve_ms: eigen_ms + search_ms,
        round_ms: rounds[rounds.len() / 2],
        beta: out.community.beta,
        community_size: out.community.size(),
        edge_visits: out.edge_visits,
    })
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}
