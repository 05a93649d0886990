//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polar_cli::checks::scale_query;
use polar_cli::{run_experiment, ExperimentConfig};
use polar_core::oracle::{
    grid_minimum, random_balanced_graph, random_connected_graph, tight_config, verify_approximation, verify_relaxation,
    ShiftFamily, Weights,
};
use polar_core::sweep::{build_sweep_table, fast_sweep_detailed, naive_prefix_betas, naive_sweep};
use polar_core::{rayleigh, seed_vector, Community, LocalPolar, NodeSet, SolverConfig};

// tolerances
const SWEEP_REL_TOL: f64 = 1e-12;
const SWEEP_TIME_LIMIT_S: f64 = 10.0;
const FAMILY_REL_TOL: f64 = 1e-3;
const FAMILY_EPS: f64 = 1e-6;
const RELAXATION_SLACK: f64 = 1e-6;
const SWEEP_BOUND_SLACK: f64 = 1e-9;
const CHEEGER_SLACK: f64 = 1e-6;
const BOUNDS_TIME_LIMIT_S: f64 = 120.0;
const BALANCED_LAMBDA_TOL: f64 = 1e-8;
const SCALE_TOTAL_LIMIT_S: f64 = 120.0;
const SCALE_ROUND_GROWTH: f64 = 2.5;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: &str, name: &str, o: &Outcome) -> bool {
    println!("{} {id} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    o.pass
}

fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, ties: bool) -> Vec<f64> {
    if ties {
        (0..n).map(|_| rng.random_range(-4i32..=4) as f64 * 0.25).collect()
    } else {
        (0..n)
            .map(|_| (0..4).map(|_| rng.random::<f64>() - 0.5).sum())
            .collect()
    }
}

fn c1_sweep_equivalence() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut worst, mut mismatches, mut visit_excess, mut vectors) = (0.0f64, 0usize, 0usize, 0usize);
    for gi in 0..50u64 {
        let n = rng.random_range(10..=300);
        let weights = [Weights::Real, Weights::Dyadic, Weights::Integer(5)][gi as usize % 3];
        let density = rng.random_range(0.01..0.1);
        let g = random_connected_graph(n, density, 0.4, weights, 1000 + gi);
        for v in 0..5 {
            let x = random_vector(&mut rng, n, v == 4);
            if x.iter().all(|&a| a == 0.0) {
                continue;
            }
            vectors += 1;
            let table = build_sweep_table(&g, &x).unwrap();
            let fast = table.prefix_betas();
            let naive = naive_prefix_betas(&g, &x).unwrap();
            for (a, b) in fast.iter().zip(&naive) {
                if a.is_finite() && b.is_finite() {
                    worst = worst.max(rel_diff(*a, *b));
                } else if a != b {
                    worst = f64::INFINITY;
                }
            }
            let f = fast_sweep_detailed(&g, &x).unwrap();
            let r = naive_sweep(&g, &x).unwrap();
            if f.community.c1 != r.c1 || f.community.c2 != r.c2 {
                mismatches += 1;
            }
            if f.edge_visits > 3 * g.edge_count() {
                visit_excess += 1;
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: worst <= SWEEP_REL_TOL && mismatches == 0 && visit_excess == 0 && secs < SWEEP_TIME_LIMIT_S,
        detail: format!(
            "{vectors} vectors on 50 graphs; max prefix rel diff {worst:.2e} (tol {SWEEP_REL_TOL:e}); argmin mismatches {mismatches}; runs over 3m visits {visit_excess}; {secs:.2}s (limit {SWEEP_TIME_LIMIT_S}s)"
        ),
    }
}

fn c2_rayleigh_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let (mut exact_fail, mut sandwich_fail, mut done) = (0usize, 0usize, 0usize);
    let graphs: Vec<_> = (0..20u64)
        .map(|i| {
            let n = 5 + (i as usize * 13) % 90;
            random_connected_graph(n, 0.15, 0.45, Weights::Integer(4), 2000 + i)
        })
        .collect();
    while done < 1000 {
        let g = &graphs[done % graphs.len()];
        let n = g.node_count();
        let labels: Vec<u8> = (0..n).map(|_| rng.random_range(0..3)).collect();
        let c1 = NodeSet::new((0..n).filter(|&u| labels[u] == 1));
        let c2 = NodeSet::new((0..n).filter(|&u| labels[u] == 2));
        if c1.is_empty() && c2.is_empty() {
            continue;
        }
        done += 1;
        let c = Community::evaluate(g, c1, c2).unwrap();
        let r = rayleigh(g, &c.indicator(n)).unwrap();
        if r != c.counts.rayleigh_numerator() / c.volume {
            exact_fail += 1;
        }
        if !(c.beta <= r && r <= 4.0 * c.beta) {
            sandwich_fail += 1;
        }
    }
    Outcome {
        pass: exact_fail == 0 && sandwich_fail == 0,
        detail: format!("{done} indicators; closed-form mismatches {exact_fail}; sandwich violations {sandwich_fail}"),
    }
}

fn c3_family_optimality() -> Outcome {
    let mut worst = 0.0f64;
    let mut fails = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let cfg = SolverConfig {
        eps: FAMILY_EPS,
        ..SolverConfig::default()
    };
    for gi in 0..20u64 {
        let n = rng.random_range(3..=8);
        let g = random_connected_graph(n, 0.4, 0.4, Weights::Real, 3000 + gi);
        let s1 = NodeSet::new([0]);
        let s2 = if gi % 4 == 3 { NodeSet::empty() } else { NodeSet::new([n - 1]) };
        let s = seed_vector(&g, &s1, &s2).unwrap();
        let fam = ShiftFamily::new(&g, &s).unwrap();
        let solver = LocalPolar::new(&g, cfg.clone()).unwrap();
        for kappa in [0.3, 0.6, 0.9] {
            let ok = match (solver.solve(&s, kappa), grid_minimum(&fam, kappa, 10_000)) {
                (Ok(sol), Some(best)) => {
                    let rel = (sol.objective - best.objective).abs() / best.objective.abs().max(1e-12);
                    worst = worst.max(rel);
                    rel <= FAMILY_REL_TOL && sol.correlation >= kappa - FAMILY_EPS
                }
                _ => false,
            };
            if !ok {
                fails += 1;
            }
        }
    }
    Outcome {
        pass: fails == 0,
        detail: format!("60 solves (eps {FAMILY_EPS:e}); max rel objective gap vs grid {worst:.2e} (tol {FAMILY_REL_TOL:e}); failures {fails}"),
    }
}

fn c4_bound_suite() -> Outcome {
    let t = Instant::now();
    let cfg = tight_config();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let (mut v_relax, mut v_sweep, mut v_cheeger, mut errors) = (0, 0, 0, 0);
    let (mut g_relax, mut g_sweep, mut g_cheeger) = (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for i in 0..30u64 {
        let n = rng.random_range(6..=12);
        let g = random_connected_graph(n, 0.35, 0.4, Weights::Unit, 4000 + i);
        let k = [1.5, 2.0, 3.0, 5.0][i as usize % 4];
        let s1 = NodeSet::new([0]);
        let s2 = if i % 5 == 4 { NodeSet::empty() } else { NodeSet::new([1]) };
        let rel = verify_relaxation(&g, &s1, &s2, k, RELAXATION_SLACK, &cfg);
        let apx = verify_approximation(&g, &s1, &s2, k, 0.0, &cfg);
        match (rel, apx) {
            (Ok(rel), Ok(apx)) => {
                g_relax = g_relax.max(rel.lambda - 4.0 * rel.h);
                g_sweep = g_sweep.max(apx.beta_out - apx.sweep_bound);
                g_cheeger = g_cheeger.max(apx.beta_out - apx.cheeger_bound);
                v_relax += usize::from(rel.lambda > 4.0 * rel.h + RELAXATION_SLACK);
                v_sweep += usize::from(apx.beta_out > apx.sweep_bound + SWEEP_BOUND_SLACK);
                v_cheeger += usize::from(apx.beta_out > apx.cheeger_bound + CHEEGER_SLACK);
            }
            _ => errors += 1,
        }
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: v_relax + v_sweep + v_cheeger + errors == 0 && secs < BOUNDS_TIME_LIMIT_S,
        detail: format!(
            "30 instances; violations lambda<=4h {v_relax}, beta<=sqrt(2R) {v_sweep}, beta<=sqrt(8h) {v_cheeger}; errors {errors}; max gaps {g_relax:.2e}/{g_sweep:.2e}/{g_cheeger:.2e}; {secs:.2}s (limit {BOUNDS_TIME_LIMIT_S}s)"
        ),
    }
}

fn c5_balanced() -> Outcome {
    let (mut worst_lambda, mut worst_beta, mut errors) = (0.0f64, 0.0f64, 0);
    for i in 0..10u64 {
        let n = 20 + 15 * i as usize;
        let weights = if i % 2 == 0 { Weights::Unit } else { Weights::Integer(4) };
        let (g, a, b) = random_balanced_graph(n, 0.1, weights, 5000 + i);
        let solver = match LocalPolar::new(&g, SolverConfig::default()) {
            Ok(s) => s,
            Err(_) => {
                errors += 1;
                continue;
            }
        };
        worst_lambda = worst_lambda.max(solver.eigenpair().lambda1);
        let s1 = NodeSet::new(a.iter().take(1));
        let s2 = NodeSet::new(b.iter().take(1));
        let s = seed_vector(&g, &s1, &s2).unwrap();
        match solver.solve(&s, 0.0).and_then(|sol| polar_core::fast_sweep(&g, &sol.x)) {
            Ok(c) => worst_beta = worst_beta.max(c.beta),
            Err(_) => errors += 1,
        }
    }
    Outcome {
        pass: worst_lambda <= BALANCED_LAMBDA_TOL && worst_beta == 0.0 && errors == 0,
        detail: format!(
            "10 graphs; max lambda1 {worst_lambda:.2e} (tol {BALANCED_LAMBDA_TOL:e}); max beta at kappa=0 {worst_beta:e}; errors {errors}"
        ),
    }
}

fn c6_recovery_ordering() -> Outcome {
    let cfg = ExperimentConfig {
        etas: vec![0.0, 0.01, 0.3],
        seed_sizes: vec![2],
        kappas: vec![0.9],
        graphs: 10,
        queries: 10,
        p: 8,
        m: 20,
        r: 0,
        eps: 1e-3,
        cg_tol: 1e-8,
        rng_seed: 606,
    };
    match run_experiment(&cfg) {
        Ok(out) => {
            let ap: Vec<f64> = out.cells.iter().map(|c| c.ap().0).collect();
            let failed: usize = out.cells.iter().map(|c| c.failed).sum();
            Outcome {
                pass: failed == 0 && ap[0] == 1.0 && ap[1] > ap[2],
                detail: format!(
                    "mean AP eta=0 {:.6}, eta=0.01 {:.6}, eta=0.3 {:.6}; failed queries {failed}",
                    ap[0], ap[1], ap[2]
                ),
            }
        }
        Err(e) => Outcome {
            pass: false,
            detail: format!("experiment failed: {e}"),
        },
    }
}

fn c7_scale() -> Outcome {
    let run = |n| scale_query(n, 0.05, 707, 0.9, 5, SolverConfig::default());
    let t = Instant::now();
    let small = run(100_000);
    let total_small = t.elapsed().as_secs_f64();
    let large = run(200_000);
    match (small, large) {
        (Ok(a), Ok(b)) => {
            let growth = b.round_ms / a.round_ms;
            let pass = a.round_ms < a.solve_ms && total_small < SCALE_TOTAL_LIMIT_S && growth < SCALE_ROUND_GROWTH;
            Outcome {
                pass,
                detail: format!(
                    "n={} m={} solve {:.0} ms (eigen {:.0} + search {:.0}), round {:.1} ms, total incl. generation {:.1}s (limit {SCALE_TOTAL_LIMIT_S}s); n={} round {:.1} ms, growth {growth:.2}x (limit {SCALE_ROUND_GROWTH}x)",
                    a.nodes, a.edges, a.solve_ms, a.eigen_ms, a.search_ms, a.round_ms, total_small, b.nodes, b.round_ms
                ),
            }
        }
        (a, b) => Outcome {
            pass: false,
            detail: format!("query failed: {:?} / {:?}", a.err(), b.err()),
        },
    }
}

fn c8_determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let run = |name: &str| -> Option<Vec<u8>> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_polar"))
            .args(["experiment", "--eta", "0,0.05,0.2", "--seed-size", "2,4", "--kappa", "0.5,0.9"])
            .args(["--graphs", "3", "--queries", "4", "--seed", "808", "--out"])
            .arg(&path)
            .status()
            .ok()?;
        status.success().then(|| std::fs::read(&path).ok()).flatten()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    let cfg = ExperimentConfig {
        etas: vec![0.1],
        graphs: 2,
        queries: 3,
        rng_seed: 809,
        ..ExperimentConfig::default()
    };
    let lib_same = matches!((run_experiment(&cfg), run_experiment(&cfg)), (Ok(x), Ok(y)) if x.csv == y.csv);
    let pass = a.is_some() && a == b && lib_same;
    Outcome {
        pass,
        detail: format!(
            "binary CSV identical: {}, {} bytes; library CSV identical: {lib_same}",
            a.is_some() && a == b,
            a.as_ref().map_or(0, |v| v.len())
        ),
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("C1", "sweep oracle equivalence", c1_sweep_equivalence),
        ("C2", "indicator Rayleigh identities", c2_rayleigh_identities),
        ("C3", "shifted-family optimality", c3_family_optimality),
        ("C4", "relaxation and rounding bounds", c4_bound_suite),
        ("C5", "balanced-graph sanity", c5_balanced),
        ("C6", "synthetic recovery ordering", c6_recovery_ordering),
        ("C7", "scale smoke test", c7_scale),
        ("C8", "experiment determinism", c8_determinism),
    ];
    let mut all = true;
    for (id, name, f) in criteria {
        all &= report(id, name, &f());
    }
    println!("acceptance: {}", if all { "all criteria passed" } else { "some criteria FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
