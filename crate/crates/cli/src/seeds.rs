//! Seed-pair sampling and overlap filtering for multi-query runs.

use polar_core::{Community, SignedGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub struct SeedSample {
    pub pairs: Vec<(usize, usize)>,
    pub warning: Option<String>,
}

/// Negative edges `(u, v)` with `deg⁺(u) ≥ t` and `deg⁺(v) ≥ t`, sampled uniformly
/// without replacement.
pub fn sample_seed_pairs(g: &SignedGraph, t: f64, count: usize, rng_seed: u64) -> CliResult<SeedSample> {
    if !(t >= 0.0) {
        return Err(CliError::Usage(format!("threshold must be nonnegative, got {t}")));
    }
    let mut cands: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| e.w < 0.0 && g.pos_degree(e.u) >= t && g.pos_degree(e.v) >= t)
        .map(|e| (e.u, e.v))
        .collect();
    if cands.is_empty() {
        return Err(CliError::Data(format!(
            "no negative edge has both endpoints with positive degree >= {t}; try a lower threshold"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    cands.shuffle(&mut rng);
    let warning = (count > cands.len()).then(|| {
        format!(
            "requested {count} seed pairs but only {} qualify; returning all",
            cands.len()
        )
    });
    cands.truncate(count);
    Ok(SeedSample { pairs: cands, warning })
}

/// Scan in a seeded random order, keeping each community disjoint from all kept so far.
pub fn filter_overlaps(communities: &[Community], rng_seed: u64) -> Vec<Community> {
    let mut order: Vec<usize> = (0..communities.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    order.shuffle(&mut rng);
    scan_disjoint(communities, &order)
}

/// The greedy rule on an explicit scan order.
pub fn scan_disjoint(communities: &[Community], order: &[usize]) -> Vec<Community> {
    let mut covered = std::collections::HashSet::new();
    let mut kept = Vec::new();
    for &i in order {
        let c = &communities[i];
        if c.c1.iter().chain(c.c2.iter()).any(|u| covered.contains(&u)) {
            continue;
        }
        covered.extend(c.c1.iter().chain(c.c2.iter()));
        kept.push(c.clone());
    }
    kept
}
