use polar_core::synthgen::{generate, SynthParams};

fn params(eta: f64, seed: u64) -> SynthParams {
    SynthParams {
        p: 8,
        m: 20,
        r: 0,
        eta,
        rng_seed: seed,
    }
}

/// Counts of (+, -, none) per pair class, in original node numbering.
fn class_counts(eta: f64, seed: u64) -> [[u64; 3]; 3] {
    let s = generate(&params(eta, seed)).unwrap();
    assert_eq!(s.dropped_nodes, 0);
    let g = &s.graph;
    let n = g.node_count();
    let class = |u: usize, v: usize| {
        let (pu, pv) = (u / 40, v / 40);
        if pu != pv {
            2
        } else if (u % 40 < 20) == (v % 40 < 20) {
            0
        } else {
            1
        }
    };
    let id = |u: usize| g.label(u)[1..].parse::<usize>().unwrap();
    let mut counts = [[0u64; 3]; 3];
    for e in g.edges() {
        let c = class(id(e.u), id(e.v));
        counts[c][if e.w > 0.0 { 0 } else { 1 }] += 1;
    }
    let mut totals = [0u64; 3];
    for u in 0..n {
        for v in u + 1..n {
            totals[class(id(u), id(v))] += 1;
        }
    }
    for c in 0..3 {
        counts[c][2] = totals[c] - counts[c][0] - counts[c][1];
    }
    counts
}

#[test]
fn within_band_positive_fraction() {
    let eta = 0.05;
    for seed in 0..10 {
        let c = class_counts(eta, seed);
        let total = (c[0][0] + c[0][1] + c[0][2]) as f64;
        let frac = c[0][0] as f64 / total;
        let sigma = (eta * (1.0 - eta) / total).sqrt();
        assert!((frac - (1.0 - eta)).abs() <= 3.0 * sigma, "seed {seed}: {frac}");
    }
}

#[test]
fn class_frequencies_chi_square() {
    // 51,040 pairs per graph; df = 2 per class, 99.9% quantile is 13.8
    let eta = 0.3;
    let c = class_counts(eta, 99);
    let probs = [
        [1.0 - eta, eta / 2.0, eta / 2.0],
        [eta / 2.0, 1.0 - eta, eta / 2.0],
        [eta / 2.0, eta / 2.0, 1.0 - eta],
    ];
    for k in 0..3 {
        let total: u64 = c[k].iter().sum();
        let chi: f64 = (0..3)
            .map(|j| {
                let e = probs[k][j] * total as f64;
                (c[k][j] as f64 - e).powi(2) / e
            })
            .sum();
        assert!(chi < 13.8, "class {k}: chi2 = {chi}, counts {:?}", c[k]);
    }
}

#[test]
fn full_noise_reads_the_rule_at_eta_one() {
    let s = generate(&SynthParams {
        p: 4,
        m: 10,
        r: 20,
        eta: 1.0,
        rng_seed: 5,
    })
    .unwrap();
    let g = &s.graph;
    let id = |u: usize| g.label(u)[1..].parse::<usize>().unwrap();
    let (mut planted, mut planted_pairs, mut other) = (0usize, 0usize, 0usize);
    for e in g.edges() {
        let (a, b) = (id(e.u), id(e.v));
        if a < 80 && b < 80 && a / 10 == b / 10 {
            // within a band nothing is positive
            assert!(e.w < 0.0);
        }
        if a < 80 && b < 80 && a / 20 == b / 20 {
            planted += 1;
        } else {
            other += 1;
        }
    }
    for a in 0..80 {
        for b in a + 1..80 {
            if a / 20 == b / 20 {
                planted_pairs += 1;
            }
        }
    }
    let frac = planted as f64 / planted_pairs as f64;
    assert!((frac - 0.5).abs() < 0.05, "{frac}");
    // every pair outside the planted structure is an edge
    assert_eq!(other, 100 * 99 / 2 - planted_pairs);
}

#[test]
fn planted_pair_is_balanced_without_noise() {
    let s = generate(&params(0.0, 3)).unwrap();
    let c = s.truth.community(&s.graph, 0).unwrap();
    assert_eq!(c.beta, 0.0);
    assert_eq!(s.graph.node_count(), 40);
}
