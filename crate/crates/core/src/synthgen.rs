//! Planted polarized communities with edge noise.
//!
//! Node layout: pair `i` occupies `[2mi, 2mi + m)` (band 1) and `[2mi + m, 2m(i+1))`
//! (band 2), outliers follow. Labels are `n{index}`.
//!
//! Stream order: one `f64` draw from `ChaCha8Rng::seed_from_u64(rng_seed)` per unordered
//! pair `(u, v)`, `u < v`, in lexicographic order. With `q = 1 - η`:
//!
//! | pair class        | `+`      | `-`      | none     |
//! |-------------------|----------|----------|----------|
//! | same band         | `q`      | `η/2`    | `η/2`    |
//! | opposite bands    | `η/2`    | `q`      | `η/2`    |
//! | anything else     | `η/2`    | `η/2`    | `q`      |

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Community, NodeSet, SignedGraph};

#[derive(Clone, Debug, PartialEq)]
pub struct SynthParams {
    pub p: usize,
    pub m: usize,
    pub r: usize,
    pub eta: f64,
    pub rng_seed: u64,
}

impl SynthParams {
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.m == 0 {
            return Err(Error::InvalidParameter("need p >= 1 and m >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::InvalidParameter(format!("eta = {} outside [0, 1]", self.eta)));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        2 * self.p * self.m + self.r
    }
}

/// Band labels of one planted pair.
pub type LabelledPair = (Vec<String>, Vec<String>);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroundTruth {
    pub pairs: Vec<(NodeSet, NodeSet)>,
    pub outliers: NodeSet,
}

impl GroundTruth {
    /// Planted pair `i` scored against `g`.
    pub fn community(&self, g: &SignedGraph, i: usize) -> Result<Community> {
        let (a, b) = &self.pairs[i];
        Community::evaluate(g, a.clone(), b.clone())
    }

    /// Keep only `kept` (sorted original indices) and renumber densely.
    fn restrict(&self, n: usize, kept: &[usize]) -> GroundTruth {
        let mut remap = vec![usize::MAX; n];
        for (i, &u) in kept.iter().enumerate() {
            remap[u] = i;
        }
        let map = |s: &NodeSet| -> NodeSet {
            s.iter().filter(|&u| remap[u] != usize::MAX).map(|u| remap[u]).collect()
        };
        GroundTruth {
            pairs: self.pairs.iter().map(|(a, b)| (map(a), map(b))).collect(),
            outliers: map(&self.outliers),
        }
    }

    /// `{"pairs": [[[labels], [labels]], ...], "outliers": [...]}` built from graph labels.
    pub fn labelled(&self, g: &SignedGraph) -> (Vec<LabelledPair>, Vec<String>) {
        let names = |s: &NodeSet| s.iter().map(|u| g.label(u).to_string()).collect::<Vec<_>>();
        (
            self.pairs.iter().map(|(a, b)| (names(a), names(b))).collect(),
            names(&self.outliers),
        )
    }
}

/// A generated graph. `truth` indexes into `graph`.
#[derive(Clone, Debug)]
pub struct Synthetic {
    pub graph: SignedGraph,
    pub truth: GroundTruth,
    /// Number of sampled nodes outside the kept component.
    pub dropped_nodes: usize,
}

impl Synthetic {
    pub fn was_restricted(&self) -> bool {
        self.dropped_nodes > 0
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Band(usize, u8),
    Outlier,
}

fn slot(u: usize, m: usize, p: usize) -> Slot {
    let pair = u / (2 * m);
    if pair >= p {
        Slot::Outlier
    } else {
        Slot::Band(pair, ((u % (2 * m)) / m) as u8)
    }
}

fn planted_truth(p: usize, m: usize, n: usize) -> GroundTruth {
    GroundTruth {
        pairs: (0..p)
            .map(|i| {
                let b = 2 * m * i;
                (NodeSet::new(b..b + m), NodeSet::new(b + m..b + 2 * m))
            })
            .collect(),
        outliers: NodeSet::new(2 * m * p..n),
    }
}

fn finish(n: usize, edges: Vec<(usize, usize, f64)>, truth: GroundTruth) -> Result<Synthetic> {
    let labels = (0..n).map(|i| format!("n{i}")).collect();
    let full = SignedGraph::from_labeled_indexed(labels, &edges)?;
    let (graph, kept) = full.largest_component()?;
    Ok(Synthetic {
        truth: truth.restrict(n, &kept),
        dropped_nodes: n - kept.len(),
        graph,
    })
}

/// Sample every pair per the three-case rule and keep the largest component.
pub fn generate(params: &SynthParams) -> Result<Synthetic> {
    params.validate()?;
    let (p, m) = (params.p, params.m);
    let n = params.node_count();
    let eta = params.eta;
    let q = 1.0 - eta;
    let half = 1.0 - eta / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let mut edges = Vec::new();
    for u in 0..n {
        let su = slot(u, m, p);
        for v in u + 1..n {
            let draw: f64 = rng.random();
            let sv = slot(v, m, p);
            let sign = match (su, sv) {
                (Slot::Band(pu, bu), Slot::Band(pv, bv)) if pu == pv => {
                    let (first, second) = if bu == bv { (1.0, -1.0) } else { (-1.0, 1.0) };
                    if draw < q {
                        first
                    } else if draw < half {
                        second
                    } else {
                        0.0
                    }
                }
                _ => {
                    if draw < q {
                        0.0
                    } else if draw < half {
                        1.0
                    } else {
                        -1.0
                    }
                }
            };
            if sign != 0.0 {
                edges.push((u, v, sign));
            }
        }
    }
    finish(n, edges, planted_truth(p, m, n))
}

/// Sparse analogue for large `n`: planted pairs are sampled exactly as in [`generate`],
/// while the background is a fixed number `round(n·d/2)` of distinct uniformly random
/// pairs with random sign, `d = η·(320 - 40)` matching the 8-pair, band-20 configuration.
///
/// The stream order differs from [`generate`]: planted pairs first, then background.
pub fn generate_scaled(n: usize, m: usize, eta: f64, rng_seed: u64) -> Result<Synthetic> {
    if m == 0 || n < 2 * m {
        return Err(Error::InvalidParameter(format!("need n >= 2m, got n = {n}, m = {m}")));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!("eta = {eta} outside [0, 1]")));
    }
    let p = n / (2 * m);
    let q = 1.0 - eta;
    let half = 1.0 - eta / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut edges = Vec::new();
    for i in 0..p {
        let base = 2 * m * i;
        for u in base..base + 2 * m {
            for v in u + 1..base + 2 * m {
                let same = (u - base < m) == (v - base < m);
                let (first, second) = if same { (1.0, -1.0) } else { (-1.0, 1.0) };
                let draw: f64 = rng.random();
                if draw < q {
                    edges.push((u, v, first));
                } else if draw < half {
                    edges.push((u, v, second));
                }
            }
        }
    }
    let background_degree = eta * (320.0 - 40.0);
    let target = (n as f64 * background_degree / 2.0).round() as usize;
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(target);
    let same_pair = |u: usize, v: usize| u / (2 * m) == v / (2 * m) && u / (2 * m) < p;
    let mut attempts = 0usize;
    while seen.len() < target && attempts < 20 * target + 100 {
        attempts += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let (u, v) = (a.min(b), a.max(b));
        if same_pair(u, v) || !seen.insert((u, v)) {
            continue;
        }
        let w = if rng.random::<bool>() { 1.0 } else { -1.0 };
        edges.push((u, v, w));
    }
    finish(n, edges, planted_truth(p, m, n))
}
