use polar_core::oracle::{random_connected_graph, Weights};
use polar_core::{edge_counts, rayleigh, seed_vector, Community, NodeSet};
use proptest::prelude::*;

fn split(n: usize, labels: &[u8]) -> (NodeSet, NodeSet) {
    let c1 = NodeSet::new((0..n).filter(|&u| labels[u % labels.len()] == 1));
    let c2 = NodeSet::new((0..n).filter(|&u| labels[u % labels.len()] == 2));
    (c1, c2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rayleigh_of_indicator_is_closed_form(
        n in 2usize..40,
        seed in any::<u64>(),
        labels in prop::collection::vec(0u8..3, 40),
    ) {
        let g = random_connected_graph(n, 0.2, 0.5, Weights::Integer(4), seed);
        let (c1, c2) = split(n, &labels);
        prop_assume!(c1.len() + c2.len() > 0);
        let c = Community::evaluate(&g, c1, c2).unwrap();
        let r = rayleigh(&g, &c.indicator(n)).unwrap();
        prop_assert_eq!(r, c.counts.rayleigh_numerator() / c.volume);
        prop_assert!(c.beta <= r && r <= 4.0 * c.beta);
    }

    #[test]
    fn counts_cover_incident_edges_once(
        n in 2usize..40,
        seed in any::<u64>(),
        labels in prop::collection::vec(0u8..3, 40),
    ) {
        let g = random_connected_graph(n, 0.2, 0.5, Weights::Real, seed);
        let (c1, c2) = split(n, &labels);
        let counts = edge_counts(&g, &c1, &c2).unwrap();
        let union = c1.union(&c2);
        let incident: f64 = g
            .edges()
            .iter()
            .filter(|e| union.contains(e.u) || union.contains(e.v))
            .map(|e| e.w.abs())
            .sum();
        let total = counts.pos_across + counts.pos_in_1 + counts.pos_in_2 + counts.neg_across
            + counts.neg_in_1 + counts.neg_in_2 + counts.boundary;
        prop_assert!((total - incident).abs() <= 1e-12 * incident.max(1.0));
    }

    #[test]
    fn seed_vector_is_degree_normalized(
        n in 2usize..40,
        seed in any::<u64>(),
        labels in prop::collection::vec(0u8..3, 40),
    ) {
        let g = random_connected_graph(n, 0.2, 0.5, Weights::Real, seed);
        let (s1, s2) = split(n, &labels);
        prop_assume!(s1.len() + s2.len() > 0);
        let s = seed_vector(&g, &s1, &s2).unwrap();
        let q = polar_core::degree_norm_sq(&g, s.values()).unwrap();
        prop_assert!((q - 1.0).abs() <= 1e-10);
        for u in 0..n {
            let v = s.values()[u];
            prop_assert_eq!(v > 0.0, s1.contains(u));
            prop_assert_eq!(v < 0.0, s2.contains(u));
        }
    }
}
