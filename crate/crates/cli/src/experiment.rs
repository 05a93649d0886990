//! Synthetic recovery campaigns over a grid of noise, seed size and κ.
//!
//! CSV columns (one row per cell, rows ordered by eta, seed_size, kappa):
//! `eta,seed_size,kappa,queries,failed,ap_mean,ap_std,beta_ratio_mean,beta_ratio_std,volume_mean,volume_std`.
//! Timings go to a separate CSV so that the main output is reproducible byte for byte.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use polar_core::metrics::average_precision;
use polar_core::synthgen::{generate, SynthParams, Synthetic};
use polar_core::{LocalPolar, NodeSet, SolverConfig};

use crate::error::{CliError, CliResult};
use crate::query::run_seeded;

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub etas: Vec<f64>,
    pub seed_sizes: Vec<usize>,
    pub kappas: Vec<f64>,
    pub graphs: usize,
    pub queries: usize,
    pub p: usize,
    pub m: usize,
    pub r: usize,
    pub eps: f64,
    pub cg_tol: f64,
    pub rng_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            etas: vec![0.0, 0.05, 0.1, 0.2, 0.3],
            seed_sizes: vec![2],
            kappas: vec![0.9],
            graphs: 10,
            queries: 10,
            p: 8,
            m: 20,
            r: 0,
            eps: 1e-3,
            cg_tol: 1e-8,
            rng_seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Usage(msg));
        if self.etas.is_empty() || self.seed_sizes.is_empty() || self.kappas.is_empty() {
            return bad("eta, seed-size and kappa lists must be nonempty".into());
        }
        if let Some(e) = self.etas.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            return bad(format!("eta {e} outside [0, 1]"));
        }
        if let Some(k) = self.kappas.iter().find(|k| !(0.0..1.0).contains(*k)) {
            return bad(format!("kappa {k} outside [0, 1)"));
        }
        if let Some(s) = self.seed_sizes.iter().find(|&&s| s == 0 || s > 2 * self.m) {
            return bad(format!("seed size {s} must lie in 1..={}", 2 * self.m));
        }
        if self.p == 0 || self.m == 0 || self.graphs == 0 || self.queries == 0 {
            return bad("pairs, band size, graphs and queries must be positive".into());
        }
        Ok(())
    }
}

/// SplitMix64 finalizer, used to derive independent stream seeds from a tuple of indices.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn derive(base: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(mix(base), |acc, &t| mix(acc ^ mix(t)))
}

/// Score of one query against its planted pair.
#[derive(Clone, Debug)]
pub struct QueryScore {
    pub ap: f64,
    pub beta_ratio: f64,
    pub volume: f64,
    pub solve_ms: f64,
    pub round_ms: f64,
}

/// Per-cell result.
#[derive(Clone, Debug)]
pub struct CellSummary {
    pub eta: f64,
    pub seed_size: usize,
    pub kappa: f64,
    pub scores: Vec<QueryScore>,
    pub failed: usize,
    pub errors: Vec<String>,
}

fn mean_std(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.clone().sum::<f64>() / n as f64;
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
    (mean, var.sqrt())
}

impl CellSummary {
    pub fn ap(&self) -> (f64, f64) {
        mean_std(self.scores.iter().map(|s| s.ap))
    }
    pub fn beta_ratio(&self) -> (f64, f64) {
        mean_std(self.scores.iter().map(|s| s.beta_ratio))
    }
    pub fn volume(&self) -> (f64, f64) {
        mean_std(self.scores.iter().map(|s| s.volume))
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub cells: Vec<CellSummary>,
    pub csv: String,
    pub timings_csv: String,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        if a == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        a / b
    }
}

/// Seeds inside a uniformly chosen planted pair: `⌈size/2⌉` from one band, `⌊size/2⌋`
/// from the other. Pairs too small after component restriction are skipped.
fn pick_seeds(syn: &Synthetic, size: usize, rng: &mut ChaCha8Rng) -> Option<(usize, NodeSet, NodeSet)> {
    let (a, b) = (size.div_ceil(2), size / 2);
    let usable: Vec<usize> = (0..syn.truth.pairs.len())
        .filter(|&i| {
            let (c1, c2) = &syn.truth.pairs[i];
            c1.len() >= a && c2.len() >= b && !c1.is_empty() && !c2.is_empty()
        })
        .collect();
    if usable.is_empty() {
        return None;
    }
    let pair = usable[rng.random_range(0..usable.len())];
    let (c1, c2) = &syn.truth.pairs[pair];
    let take = |set: &NodeSet, k: usize, rng: &mut ChaCha8Rng| -> NodeSet {
        sample(rng, set.len(), k).into_iter().map(|i| set.as_slice()[i]).collect()
    };
    let s1 = take(c1, a, rng);
    let s2 = take(c2, b, rng);
    Some((pair, s1, s2))
}

struct Unit {
    eta_idx: usize,
    graph_idx: usize,
}

type UnitResult = Vec<(usize, usize, Result<QueryScore, String>)>;

fn run_unit(cfg: &ExperimentConfig, unit: &Unit) -> Result<UnitResult, String> {
    let eta = cfg.etas[unit.eta_idx];
    let params = SynthParams {
        p: cfg.p,
        m: cfg.m,
        r: cfg.r,
        eta,
        rng_seed: derive(cfg.rng_seed, &[1, unit.eta_idx as u64, unit.graph_idx as u64]),
    };
    let syn = generate(&params).map_err(|e| e.to_string())?;
    let solver_cfg = SolverConfig {
        eps: cfg.eps,
        cg_tol: cfg.cg_tol,
        ..SolverConfig::default()
    };
    let solver = LocalPolar::new(&syn.graph, solver_cfg).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for (si, &size) in cfg.seed_sizes.iter().enumerate() {
        for (ki, &kappa) in cfg.kappas.iter().enumerate() {
            for q in 0..cfg.queries {
                let mut rng = ChaCha8Rng::seed_from_u64(derive(
                    cfg.rng_seed,
                    &[2, unit.eta_idx as u64, unit.graph_idx as u64, si as u64, ki as u64, q as u64],
                ));
                let res = (|| -> Result<QueryScore, String> {
                    let (pair, s1, s2) = pick_seeds(&syn, size, &mut rng)
                        .ok_or_else(|| format!("no planted pair can host {size} seeds"))?;
                    let r = run_seeded(&solver, &s1, &s2, kappa, false).map_err(|e| e.to_string())?;
                    let found = r.community.expect("run_seeded sets the community");
                    let truth = syn.truth.community(&syn.graph, pair).map_err(|e| e.to_string())?;
                    Ok(QueryScore {
                        ap: average_precision(&found, &truth).map_err(|e| e.to_string())?,
                        beta_ratio: ratio(found.beta, truth.beta),
                        volume: found.volume,
                        solve_ms: r.timings.solve_ms,
                        round_ms: r.timings.round_ms,
                    })
                })();
                out.push((si, ki, res));
            }
        }
    }
    Ok(out)
}

fn fmt(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.9}")
    }
}

/// Run every cell. Graphs run in parallel; results are keyed and emitted in grid order.
pub fn run_experiment(cfg: &ExperimentConfig) -> CliResult<ExperimentOutput> {
    cfg.validate()?;
    let units: Vec<Unit> = (0..cfg.etas.len())
        .flat_map(|e| (0..cfg.graphs).map(move |g| Unit { eta_idx: e, graph_idx: g }))
        .collect();
    let results: Vec<Result<UnitResult, String>> = units.par_iter().map(|u| run_unit(cfg, u)).collect();

    let (ns, nk) = (cfg.seed_sizes.len(), cfg.kappas.len());
    let mut cells: Vec<CellSummary> = Vec::with_capacity(cfg.etas.len() * ns * nk);
    for &eta in &cfg.etas {
        for &seed_size in &cfg.seed_sizes {
            for &kappa in &cfg.kappas {
                cells.push(CellSummary {
                    eta,
                    seed_size,
                    kappa,
                    scores: Vec::new(),
                    failed: 0,
                    errors: Vec::new(),
                });
            }
        }
    }
    for (unit, res) in units.iter().zip(results) {
        let base = unit.eta_idx * ns * nk;
        match res {
            Ok(rows) => {
                for (si, ki, r) in rows {
                    let cell = &mut cells[base + si * nk + ki];
                    match r {
                        Ok(s) => cell.scores.push(s),
                        Err(e) => {
                            cell.failed += 1;
                            cell.errors.push(e);
                        }
                    }
                }
            }
            Err(e) => {
                for cell in &mut cells[base..base + ns * nk] {
                    cell.failed += cfg.queries;
                    cell.errors.push(e.clone());
                }
            }
        }
    }

    let mut csv = String::from(
        "eta,seed_size,kappa,queries,failed,ap_mean,ap_std,beta_ratio_mean,beta_ratio_std,volume_mean,volume_std\n",
    );
    let mut timings_csv = String::from("eta,seed_size,kappa,solve_ms_mean,solve_ms_std,round_ms_mean,round_ms_std\n");
    for c in &cells {
        let (am, asd) = c.ap();
        let (bm, bsd) = c.beta_ratio();
        let (vm, vsd) = c.volume();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            c.eta,
            c.seed_size,
            c.kappa,
            c.scores.len(),
            c.failed,
            fmt(am),
            fmt(asd),
            fmt(bm),
            fmt(bsd),
            fmt(vm),
            fmt(vsd)
        ));
        let (sm, ssd) = mean_std(c.scores.iter().map(|s| s.solve_ms));
        let (rm, rsd) = mean_std(c.scores.iter().map(|s| s.round_ms));
        timings_csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            c.eta,
            c.seed_size,
            c.kappa,
            fmt(sm),
            fmt(ssd),
            fmt(rm),
            fmt(rsd)
        ));
    }
    Ok(ExperimentOutput {
        cells,
        csv,
        timings_csv,
    })
}
