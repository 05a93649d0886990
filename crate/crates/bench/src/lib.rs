//! Fixtures shared by the benches.

use polar_core::synthgen::{generate_scaled, Synthetic};
use polar_core::{seed_vector, NodeSet, SeedVector};

/// Planted band-20 graph with `η = 0.05` background noise.
pub fn planted(n: usize, seed: u64) -> Synthetic {
    generate_scaled(n, 20, 0.05, seed).expect("valid generator parameters")
}

/// Deterministic dense vector with plenty of distinct magnitudes and both signs.
pub fn test_vector(n: usize) -> Vec<f64> {
    (0..n).map(|i| ((i as f64 + 0.5) * 0.618_033_988_75).sin()).collect()
}

/// One node from each band of the first planted pair.
pub fn seed(s: &Synthetic) -> SeedVector {
    let (a, b) = &s.truth.pairs[0];
    let s1 = NodeSet::new(a.iter().take(1));
    let s2 = NodeSet::new(b.iter().take(1));
    seed_vector(&s.graph, &s1, &s2).expect("seed nodes have positive degree")
}
