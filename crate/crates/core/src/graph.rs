//! Signed graph storage and the basic accounting on top of it: degrees, volumes,
//! edge-class weights, the signed bipartiteness ratio, the Laplacian Rayleigh
//! quotient and degree-normalized seed vectors.
//!
//! Weights are signed reals. Every "edge count" in this crate is a sum of absolute
//! weights, so unweighted graphs are the unit-weight special case.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// One undirected edge stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Immutable undirected signed graph in CSR form with cached degrees.
#[derive(Clone, Debug)]
pub struct SignedGraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    edges: Vec<Edge>,
    degree: Vec<f64>,
    pos_degree: Vec<f64>,
    neg_degree: Vec<f64>,
    total_volume: f64,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// Build a graph from labelled signed edges.
///
/// Labels are interned in first-seen order. Repeated undirected pairs are merged by
/// summing their weights and dropped when the sum is exactly zero.
pub fn build_graph<S: AsRef<str>>(edges: &[(S, S, f64)]) -> Result<SignedGraph> {
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut intern = |s: &str| -> usize {
        if let Some(&i) = index.get(s) {
            return i;
        }
        let i = labels.len();
        labels.push(s.to_string());
        index.insert(s.to_string(), i);
        i
    };
    let mut indexed = Vec::with_capacity(edges.len());
    for (a, b, w) in edges {
        let (a, b) = (a.as_ref(), b.as_ref());
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        if !w.is_finite() || *w == 0.0 {
            return Err(Error::BadWeight(a.to_string(), b.to_string()));
        }
        let u = intern(a);
        let v = intern(b);
        indexed.push((u, v, *w));
    }
    SignedGraph::assemble(labels, indexed)
}

impl SignedGraph {
    /// Build from dense indices `0..n`; labels become the decimal indices.
    pub fn from_indexed(n: usize, edges: &[(usize, usize, f64)]) -> Result<SignedGraph> {
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u.to_string()));
            }
            if !w.is_finite() || w == 0.0 {
                return Err(Error::BadWeight(u.to_string(), v.to_string()));
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::assemble(labels, edges.to_vec())
    }

    /// Same as [`SignedGraph::from_indexed`] with caller-supplied labels.
    pub fn from_labeled_indexed(
        labels: Vec<String>,
        edges: &[(usize, usize, f64)],
    ) -> Result<SignedGraph> {
        let n = labels.len();
        for &(u, v, _) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(labels[u].clone()));
            }
        }
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Self::assemble(labels, edges.to_vec())
    }

    fn assemble(labels: Vec<String>, raw: Vec<(usize, usize, f64)>) -> Result<SignedGraph> {
        let n = labels.len();
        let mut merged: HashMap<(usize, usize), f64> = HashMap::with_capacity(raw.len());
        for (u, v, w) in raw {
            let key = if u < v { (u, v) } else { (v, u) };
            *merged.entry(key).or_insert(0.0) += w;
        }
        let mut edges: Vec<Edge> = merged
            .into_iter()
            .filter(|&(_, w)| w != 0.0)
            .map(|((u, v), w)| Edge { u, v, w })
            .collect();
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        edges.sort_unstable_by_key(|e| (e.u, e.v));

        let mut counts = vec![0usize; n + 1];
        for e in &edges {
            counts[e.u + 1] += 1;
            counts[e.v + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts;
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; 2 * edges.len()];
        let mut weights = vec![0.0; 2 * edges.len()];
        let mut degree = vec![0.0; n];
        let mut pos_degree = vec![0.0; n];
        let mut neg_degree = vec![0.0; n];
        for e in &edges {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                targets[fill[a]] = b;
                weights[fill[a]] = e.w;
                fill[a] += 1;
                degree[a] += e.w.abs();
                if e.w > 0.0 {
                    pos_degree[a] += e.w;
                } else {
                    neg_degree[a] -= e.w;
                }
            }
        }
        let total_volume = degree.iter().sum();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Ok(SignedGraph {
            offsets,
            targets,
            weights,
            edges,
            degree,
            pos_degree,
            neg_degree,
            total_volume,
            labels,
            index,
        })
    }

    pub fn node_count(&self) -> usize {
        self.degree.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, sorted by `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, signed weight)` pairs of node `u`.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.offsets[u]..self.offsets[u + 1];
        self.targets[r.clone()]
            .iter()
            .copied()
            .zip(self.weights[r].iter().copied())
    }

    pub fn neighbor_count(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// `deg(u) = sum_v |A_uv|`.
    pub fn degree(&self, u: usize) -> f64 {
        self.degree[u]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degree
    }

    /// Total positive weight at `u`.
    pub fn pos_degree(&self, u: usize) -> f64 {
        self.pos_degree[u]
    }

    /// Total absolute negative weight at `u`.
    pub fn neg_degree(&self, u: usize) -> f64 {
        self.neg_degree[u]
    }

    /// `vol(G) = sum_u deg(u)`.
    pub fn total_volume(&self) -> f64 {
        self.total_volume
    }

    pub fn volume(&self, set: &NodeSet) -> f64 {
        set.iter().map(|u| self.degree[u]).sum()
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for (v, _) in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced by `nodes` (sorted, distinct), relabelled densely in that order.
    pub fn induced(&self, nodes: &[usize]) -> Result<SignedGraph> {
        let n = self.node_count();
        let mut remap = vec![usize::MAX; n];
        for (i, &u) in nodes.iter().enumerate() {
            if u >= n {
                return Err(Error::NodeOutOfRange { index: u, n });
            }
            remap[u] = i;
        }
        let edges: Vec<(usize, usize, f64)> = self
            .edges
            .iter()
            .filter(|e| remap[e.u] != usize::MAX && remap[e.v] != usize::MAX)
            .map(|e| (remap[e.u], remap[e.v], e.w))
            .collect();
        let labels = nodes.iter().map(|&u| self.labels[u].clone()).collect();
        Self::from_labeled_indexed(labels, &edges)
    }

    /// The component with the largest volume (ties: more nodes, then lowest member).
    /// Returns the induced subgraph and the original index of each kept node.
    pub fn largest_component(&self) -> Result<(SignedGraph, Vec<usize>)> {
        let comps = self.components();
        let best = comps
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| {
                let va: f64 = a.iter().map(|&u| self.degree[u]).sum();
                let vb: f64 = b.iter().map(|&u| self.degree[u]).sum();
                va.total_cmp(&vb)
                    .then(a.len().cmp(&b.len()))
                    .then(ib.cmp(ia))
            })
            .map(|(_, c)| c.clone())
            .ok_or(Error::EmptyGraph)?;
        let g = self.induced(&best)?;
        Ok((g, best))
    }
}

/// Sorted set of distinct node indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new<I: IntoIterator<Item = usize>>(items: I) -> NodeSet {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }

    pub fn empty() -> NodeSet {
        NodeSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.0.binary_search(&u).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        let (mut i, mut j, mut k) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    k += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        k
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.intersection_len(other) == self.len()
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet::new(self.iter().chain(other.iter()))
    }

    pub(crate) fn check_bounds(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&u) if u >= n => Err(Error::NodeOutOfRange { index: u, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::new(iter)
    }
}

/// Per-node band label: 0 outside, 1 in `c1`, 2 in `c2`.
pub(crate) fn band_labels(n: usize, c1: &NodeSet, c2: &NodeSet) -> Result<Vec<u8>> {
    c1.check_bounds(n)?;
    c2.check_bounds(n)?;
    let mut label = vec![0u8; n];
    for u in c1.iter() {
        label[u] = 1;
    }
    for u in c2.iter() {
        if label[u] != 0 {
            return Err(Error::Overlap(u));
        }
        label[u] = 2;
    }
    Ok(label)
}

/// Absolute edge weight per edge class of a pair of disjoint bands.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EdgeCounts {
    /// Positive weight between the bands.
    pub pos_across: f64,
    /// Negative weight inside band 1.
    pub neg_in_1: f64,
    /// Negative weight inside band 2.
    pub neg_in_2: f64,
    /// Weight (either sign) leaving `c1 ∪ c2`.
    pub boundary: f64,
    pub pos_in_1: f64,
    pub pos_in_2: f64,
    pub neg_across: f64,
}

impl EdgeCounts {
    /// Numerator of the signed bipartiteness ratio.
    pub fn beta_numerator(&self) -> f64 {
        2.0 * self.pos_across + self.neg_in_1 + self.neg_in_2 + self.boundary
    }

    /// Numerator of `x^T L x` for the ±1/0 indicator of the bands.
    pub fn rayleigh_numerator(&self) -> f64 {
        4.0 * self.pos_across + 4.0 * self.neg_in_1 + 4.0 * self.neg_in_2 + self.boundary
    }
}

/// Edge-class weights for disjoint `c1`, `c2`, visiting only edges incident to the union.
pub fn edge_counts(g: &SignedGraph, c1: &NodeSet, c2: &NodeSet) -> Result<EdgeCounts> {
    let label = band_labels(g.node_count(), c1, c2)?;
    let mut c = EdgeCounts::default();
    for u in c1.iter().chain(c2.iter()) {
        let lu = label[u];
        for (v, w) in g.neighbors(u) {
            let lv = label[v];
            let a = w.abs();
            if lv == 0 {
                c.boundary += a;
                continue;
            }
            // internal edges are seen from both ends
            if v < u {
                continue;
            }
            match (lu == lv, w > 0.0, lu) {
                (true, true, 1) => c.pos_in_1 += a,
                (true, true, _) => c.pos_in_2 += a,
                (true, false, 1) => c.neg_in_1 += a,
                (true, false, _) => c.neg_in_2 += a,
                (false, true, _) => c.pos_across += a,
                (false, false, _) => c.neg_across += a,
            }
        }
    }
    Ok(c)
}

/// Signed bipartiteness ratio of disjoint bands.
pub fn beta(g: &SignedGraph, c1: &NodeSet, c2: &NodeSet) -> Result<f64> {
    let counts = edge_counts(g, c1, c2)?;
    let vol = g.volume(c1) + g.volume(c2);
    if vol <= 0.0 {
        return Err(Error::ZeroVolume);
    }
    Ok(counts.beta_numerator() / vol)
}

/// A disjoint pair of bands with its ratio and edge breakdown.
#[derive(Clone, Debug, PartialEq)]
pub struct Community {
    pub c1: NodeSet,
    pub c2: NodeSet,
    pub beta: f64,
    pub counts: EdgeCounts,
    pub volume: f64,
}

impl Community {
    /// Count the edges of `(c1, c2)` from scratch and evaluate its ratio.
    pub fn evaluate(g: &SignedGraph, c1: NodeSet, c2: NodeSet) -> Result<Community> {
        let counts = edge_counts(g, &c1, &c2)?;
        let volume = g.volume(&c1) + g.volume(&c2);
        if volume <= 0.0 {
            return Err(Error::ZeroVolume);
        }
        Ok(Community {
            beta: counts.beta_numerator() / volume,
            c1,
            c2,
            counts,
            volume,
        })
    }

    pub fn size(&self) -> usize {
        self.c1.len() + self.c2.len()
    }

    pub fn nodes(&self) -> NodeSet {
        self.c1.union(&self.c2)
    }

    /// The ±1/0 indicator of the bands.
    pub fn indicator(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for u in self.c1.iter() {
            x[u] = 1.0;
        }
        for u in self.c2.iter() {
            x[u] = -1.0;
        }
        x
    }
}

fn check_len(g: &SignedGraph, x: &[f64]) -> Result<()> {
    if x.len() != g.node_count() {
        return Err(Error::LengthMismatch {
            expected: g.node_count(),
            got: x.len(),
        });
    }
    Ok(())
}

/// `x^T L x = sum_{E+} w (x_u - x_v)^2 + sum_{E-} |w| (x_u + x_v)^2`, one pass over the edges.
pub fn laplacian_quadratic_form(g: &SignedGraph, x: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    Ok(g.edges()
        .iter()
        .map(|e| {
            if e.w > 0.0 {
                let d = x[e.u] - x[e.v];
                e.w * d * d
            } else {
                let s = x[e.u] + x[e.v];
                -e.w * s * s
            }
        })
        .sum())
}

/// `x^T D x`.
pub fn degree_norm_sq(g: &SignedGraph, x: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    Ok(x.iter().zip(g.degrees()).map(|(xi, d)| d * xi * xi).sum())
}

/// `x^T D y`.
pub fn degree_dot(g: &SignedGraph, x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    check_len(g, y)?;
    Ok(x.iter()
        .zip(y)
        .zip(g.degrees())
        .map(|((a, b), d)| d * a * b)
        .sum())
}

/// Rayleigh quotient `x^T L x / x^T D x`.
pub fn rayleigh(g: &SignedGraph, x: &[f64]) -> Result<f64> {
    let den = degree_norm_sq(g, x)?;
    if den == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(laplacian_quadratic_form(g, x)? / den)
}

/// Degree-normalized seed vector: `+1/sqrt(vol(S))` on `s1`, `-1/sqrt(vol(S))` on `s2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedVector {
    values: Vec<f64>,
    support: Vec<usize>,
}

impl SeedVector {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Nodes with a nonzero entry, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// `D s`, the right-hand side of the shifted systems.
    pub fn degree_weighted(&self, g: &SignedGraph) -> Vec<f64> {
        self.values
            .iter()
            .zip(g.degrees())
            .map(|(s, d)| s * d)
            .collect()
    }
}

pub fn seed_vector(g: &SignedGraph, s1: &NodeSet, s2: &NodeSet) -> Result<SeedVector> {
    let label = band_labels(g.node_count(), s1, s2)?;
    if s1.is_empty() && s2.is_empty() {
        return Err(Error::EmptySeed);
    }
    let vol = g.volume(s1) + g.volume(s2);
    if vol <= 0.0 {
        return Err(Error::ZeroVolume);
    }
    let a = 1.0 / vol.sqrt();
    let values = label
        .iter()
        .map(|&l| match l {
            1 => a,
            2 => -a,
            _ => 0.0,
        })
        .collect();
    Ok(SeedVector {
        values,
        support: s1.union(s2).as_slice().to_vec(),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn t3() -> SignedGraph {
        build_graph(&[("a", "b", 1.0), ("a", "c", 1.0), ("b", "c", -1.0)]).unwrap()
    }

    fn set(xs: &[usize]) -> NodeSet {
        NodeSet::new(xs.iter().copied())
    }

    #[test]
    fn triangle_degrees() {
        let g = t3();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.degrees(), &[2.0, 2.0, 2.0]);
        assert_eq!(g.total_volume(), 6.0);
        assert_eq!(g.index_of("c"), Some(2));
    }

    #[test]
    fn duplicates_merge() {
        let g = build_graph(&[("a", "b", 1.0), ("b", "a", 1.0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].w, 2.0);
        assert_eq!(g.degree(0), 2.0);
        assert_eq!(g.degree(1), 2.0);
    }

    #[test]
    fn cancelling_duplicates_drop_the_edge() {
        let g = build_graph(&[("a", "b", 1.0), ("b", "a", -1.0), ("a", "c", 1.0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(g.index_of("b").unwrap()), 0.0);
    }

    #[test]
    fn rejects_self_loop_and_empty() {
        assert_eq!(
            build_graph(&[("a", "a", 1.0)]).unwrap_err(),
            Error::SelfLoop("a".into())
        );
        let none: [(&str, &str, f64); 0] = [];
        assert_eq!(build_graph(&none).unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn counts_on_triangle() {
        let g = t3();
        let c = edge_counts(&g, &set(&[0, 1]), &set(&[2])).unwrap();
        assert_eq!(c.pos_across, 1.0);
        assert_eq!(c.neg_across, 1.0);
        assert_eq!(c.pos_in_1, 1.0);
        assert_eq!((c.neg_in_1, c.neg_in_2, c.boundary), (0.0, 0.0, 0.0));

        let c = edge_counts(&g, &set(&[0]), &NodeSet::empty()).unwrap();
        assert_eq!(c.boundary, 2.0);
        assert_eq!(c.beta_numerator(), 2.0);

        let c = edge_counts(&g, &NodeSet::empty(), &NodeSet::empty()).unwrap();
        assert_eq!(c, EdgeCounts::default());
    }

    #[test]
    fn overlap_is_an_error() {
        let g = t3();
        assert_eq!(
            edge_counts(&g, &set(&[0, 1]), &set(&[1])).unwrap_err(),
            Error::Overlap(1)
        );
    }

    #[test]
    fn beta_on_triangle() {
        let g = t3();
        assert_eq!(beta(&g, &set(&[0, 1]), &set(&[2])).unwrap(), 1.0 / 3.0);
        assert_eq!(beta(&g, &set(&[0]), &set(&[2])).unwrap(), 1.0);
        assert_eq!(
            beta(&g, &NodeSet::empty(), &NodeSet::empty()).unwrap_err(),
            Error::ZeroVolume
        );
    }

    #[test]
    fn beta_zero_on_balanced_split() {
        // a -(+)- b -(-)- c: bands {a,b} | {c}
        let g = build_graph(&[("a", "b", 1.0), ("b", "c", -1.0)]).unwrap();
        assert_eq!(beta(&g, &set(&[0, 1]), &set(&[2])).unwrap(), 0.0);
    }

    #[test]
    fn rayleigh_on_triangle() {
        let g = t3();
        let r = rayleigh(&g, &[1.0, 1.0, -1.0]).unwrap();
        assert_eq!(r, 2.0 / 3.0);
        let b = beta(&g, &set(&[0, 1]), &set(&[2])).unwrap();
        assert!(b <= r && r <= 4.0 * b);
        assert_eq!(rayleigh(&g, &[0.0; 3]).unwrap_err(), Error::ZeroVector);
        assert!(matches!(
            rayleigh(&g, &[1.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rayleigh_zero_for_constant_on_positive_graph() {
        let g = build_graph(&[("a", "b", 1.0), ("b", "c", 2.0), ("c", "d", 0.5)]).unwrap();
        assert_eq!(rayleigh(&g, &[1.0; 4]).unwrap(), 0.0);
    }

    #[test]
    fn seed_vectors() {
        let g = t3();
        let s = seed_vector(&g, &set(&[0]), &set(&[2])).unwrap();
        assert_eq!(s.values(), &[0.5, 0.0, -0.5]);
        assert_eq!(s.support(), &[0, 2]);
        assert!((degree_norm_sq(&g, s.values()).unwrap() - 1.0).abs() < 1e-12);

        let s = seed_vector(&g, &set(&[0]), &NodeSet::empty()).unwrap();
        assert!((s.values()[0] - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(&s.values()[1..], &[0.0, 0.0]);

        assert_eq!(
            seed_vector(&g, &set(&[0]), &set(&[0])).unwrap_err(),
            Error::Overlap(0)
        );
        assert_eq!(
            seed_vector(&g, &NodeSet::empty(), &NodeSet::empty()).unwrap_err(),
            Error::EmptySeed
        );
    }

    #[test]
    fn largest_component_by_volume() {
        let g = build_graph(&[
            ("a", "b", 1.0),
            ("b", "c", 1.0),
            ("a", "c", -1.0),
            ("x", "y", 3.0),
            ("y", "z", 3.0),
            ("x", "z", 3.0),
        ])
        .unwrap();
        assert_eq!(g.components().len(), 2);
        let (h, kept) = g.largest_component().unwrap();
        assert_eq!(h.node_count(), 3);
        assert_eq!(h.label(0), "x");
        assert_eq!(kept, vec![3, 4, 5]);
        assert!(h.is_connected());
    }
}
