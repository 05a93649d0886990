use polar_core::oracle::{random_connected_graph, Weights};
use polar_core::sweep::{build_sweep_table, fast_sweep, fast_sweep_detailed, naive_prefix_betas, naive_sweep};
use polar_core::{rayleigh, NodeSet, SignedGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gaussian_like(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    // sum of uniforms is close enough to normal for a test vector
    (0..n)
        .map(|_| (0..4).map(|_| rng.random::<f64>() - 0.5).sum())
        .collect()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

fn check(g: &SignedGraph, x: &[f64]) {
    let table = build_sweep_table(g, x).unwrap();
    let fast = table.prefix_betas();
    let naive = naive_prefix_betas(g, x).unwrap();
    for (i, (a, b)) in fast.iter().zip(&naive).enumerate() {
        assert!(rel_close(*a, *b, 1e-12), "prefix {}: {a} vs {b}", i + 1);
    }
    let out = fast_sweep_detailed(g, x).unwrap();
    let reference = naive_sweep(g, x).unwrap();
    assert_eq!(out.community.c1, reference.c1);
    assert_eq!(out.community.c2, reference.c2);
    assert!(out.edge_visits <= 3 * g.edge_count());
    let r = rayleigh(g, x).unwrap();
    assert!(out.community.beta <= (2.0 * r).sqrt() + 1e-12);
}

#[test]
fn random_graphs_real_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for t in 0..20 {
        let n = rng.random_range(2..200);
        let g = random_connected_graph(n, 0.05, 0.4, Weights::Real, 100 + t);
        for _ in 0..3 {
            let x = gaussian_like(&mut rng, n);
            check(&g, &x);
        }
    }
}

#[test]
fn ties_and_zero_entries() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for t in 0..20 {
        let n = rng.random_range(3..120);
        let g = random_connected_graph(n, 0.08, 0.5, Weights::Dyadic, 200 + t);
        // few distinct magnitudes, some zeros
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-3i32..=3) as f64).collect();
        if x.iter().all(|&v| v == 0.0) {
            continue;
        }
        check(&g, &x);
    }
}

#[test]
fn balanced_indicator_reaches_zero() {
    let (g, a, b) = polar_core::oracle::random_balanced_graph(40, 0.2, Weights::Integer(3), 5);
    let mut x = vec![0.0; 40];
    a.iter().for_each(|u| x[u] = 1.0);
    b.iter().for_each(|u| x[u] = -1.0);
    let c = fast_sweep(&g, &x).unwrap();
    assert_eq!(c.beta, 0.0);
    assert_eq!(c.nodes(), NodeSet::new(0..40));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn fast_equals_naive(n in 2usize..60, seed in any::<u64>(), density in 0.02f64..0.5) {
        let g = random_connected_graph(n, density, 0.45, Weights::Real, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let x = gaussian_like(&mut rng, n);
        check(&g, &x);
    }
}
