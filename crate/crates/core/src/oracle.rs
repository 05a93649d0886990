//! Exhaustive and dense reference computations for small instances.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{
    degree_dot, degree_norm_sq, laplacian_quadratic_form, rayleigh, seed_vector, Community, NodeSet,
    SeedVector, SignedGraph,
};
use crate::spectral::{LocalPolar, SolverConfig, SpectralSolution};
use crate::sweep::fast_sweep;

/// Largest instance accepted by [`brute_force_cheeger`].
pub const MAX_BRUTE_FORCE: usize = 16;

pub fn dense_adjacency(g: &SignedGraph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut a = DMatrix::zeros(n, n);
    for e in g.edges() {
        a[(e.u, e.v)] = e.w;
        a[(e.v, e.u)] = e.w;
    }
    a
}

/// `L = D - A`.
pub fn dense_laplacian(g: &SignedGraph) -> DMatrix<f64> {
    let mut l = -dense_adjacency(g);
    for u in 0..g.node_count() {
        l[(u, u)] += g.degree(u);
    }
    l
}

/// `𝓛 = I - D^{-1/2} A D^{-1/2}`.
pub fn dense_normalized_laplacian(g: &SignedGraph) -> Result<DMatrix<f64>> {
    let n = g.node_count();
    if let Some(u) = (0..n).find(|&u| g.degree(u) <= 0.0) {
        return Err(Error::IsolatedNode(u));
    }
    let a = dense_adjacency(g);
    let s: Vec<f64> = g.degrees().iter().map(|d| 1.0 / d.sqrt()).collect();
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - s[i] * a[(i, j)] * s[j]
    }))
}

/// Full spectrum of `𝓛`, ascending, with orthonormal eigenvectors as columns.
pub fn dense_spectrum(g: &SignedGraph) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let eig = SymmetricEigen::new(dense_normalized_laplacian(g)?);
    let n = g.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((vals, vecs))
}

/// Dense LU solve of `(L - αD) x = b`.
pub fn dense_solve_shifted(g: &SignedGraph, alpha: f64, b: &[f64]) -> Result<Vec<f64>> {
    let mut m = dense_laplacian(g);
    for u in 0..g.node_count() {
        m[(u, u)] -= alpha * g.degree(u);
    }
    let rhs = DVector::from_column_slice(b);
    m.lu()
        .solve(&rhs)
        .map(|x| x.as_slice().to_vec())
        .ok_or(Error::Indefinite { alpha })
}

/// The shifted-solution family `x(α) ∝ (L - αD)⁻¹ Ds` expressed in the eigenbasis of `𝓛`.
///
/// With `𝓛 = Σ λᵢ uᵢuᵢᵀ` and `ŝ = Uᵀ D^{1/2} s`, `D^{1/2} x(α) ∝ Σ ŝᵢ/(λᵢ - α) uᵢ`, so the
/// correlation and objective are rational functions of `α` that can be evaluated exactly.
#[derive(Clone, Debug)]
pub struct ShiftFamily {
    pub lambdas: Vec<f64>,
    pub weights: Vec<f64>,
    pub volume: f64,
}

/// One member of the family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyPoint {
    pub alpha: f64,
    pub correlation: f64,
    pub objective: f64,
}

impl ShiftFamily {
    pub fn new(g: &SignedGraph, s: &SeedVector) -> Result<ShiftFamily> {
        let (lambdas, vecs) = dense_spectrum(g)?;
        let n = g.node_count();
        let ds: DVector<f64> =
            DVector::from_iterator(n, (0..n).map(|u| s.values()[u] * g.degree(u).sqrt()));
        let proj = vecs.transpose() * ds;
        Ok(ShiftFamily {
            lambdas,
            weights: proj.iter().map(|v| v * v).collect(),
            volume: g.total_volume(),
        })
    }

    pub fn lambda1(&self) -> f64 {
        self.lambdas[0]
    }

    pub fn at(&self, alpha: f64) -> FamilyPoint {
        let (mut c_num, mut norm, mut obj) = (0.0, 0.0, 0.0);
        for (&l, &w) in self.lambdas.iter().zip(&self.weights) {
            let d = l - alpha;
            c_num += w / d;
            norm += w / (d * d);
            obj += l * w / (d * d);
        }
        FamilyPoint {
            alpha,
            correlation: c_num / norm.sqrt(),
            objective: obj / norm,
        }
    }

    /// `α → λ₁⁻` limit: the normalized projection of the seed on the bottom eigenspace.
    pub fn limit(&self, tol: f64) -> Option<FamilyPoint> {
        let l1 = self.lambda1();
        let mass: f64 = self
            .lambdas
            .iter()
            .zip(&self.weights)
            .filter(|(l, _)| **l - l1 <= tol)
            .map(|(_, w)| w)
            .sum();
        (mass > 0.0).then(|| FamilyPoint {
            alpha: l1,
            correlation: mass.sqrt(),
            objective: l1,
        })
    }
}

/// Grid search over the family for the least objective with correlation at least `kappa`.
///
/// A log-spaced pass over the gap `λ₁ - α ∈ [1e-9, λ₁ + vol(G)]` is followed by a uniform
/// refinement between the last feasible and first infeasible grid points.
pub fn grid_minimum(family: &ShiftFamily, kappa: f64, points: usize) -> Option<FamilyPoint> {
    let l1 = family.lambda1();
    let top = l1 + family.volume;
    let bottom: f64 = 1e-9;
    let mut best: Option<FamilyPoint> = None;
    let consider = |p: FamilyPoint, best: &mut Option<FamilyPoint>| {
        if p.correlation >= kappa && best.is_none_or(|b| p.objective < b.objective) {
            *best = Some(p);
        }
    };
    let ratio = (bottom / top).ln();
    let mut gaps = Vec::with_capacity(points);
    for i in 0..points {
        let t = i as f64 / (points - 1).max(1) as f64;
        gaps.push(top * (ratio * t).exp());
    }
    let mut boundary: Option<(f64, f64)> = None;
    for w in gaps.windows(2) {
        let a = family.at(l1 - w[0]);
        let b = family.at(l1 - w[1]);
        consider(a, &mut best);
        if a.correlation >= kappa && b.correlation < kappa {
            boundary = Some((w[0], w[1]));
        }
    }
    if let Some(&g) = gaps.last() {
        consider(family.at(l1 - g), &mut best);
    }
    if let Some((g0, g1)) = boundary {
        for i in 0..points {
            let t = i as f64 / (points - 1).max(1) as f64;
            consider(family.at(l1 - (g0 + (g1 - g0) * t)), &mut best);
        }
    }
    if let Some(lim) = family.limit(1e-10) {
        consider(lim, &mut best);
    }
    best
}

/// Exact minimizer of the local signed Cheeger problem.
#[derive(Clone, Debug)]
pub struct CheegerCertificate {
    pub h_value: f64,
    pub argmin: Community,
    pub feasible_count: usize,
    pub k: f64,
    pub seeds: (NodeSet, NodeSet),
}

/// Minimum `β(C₁, C₂)` over `S₁ ⊆ C₁`, `S₂ ⊆ C₂`, `vol(C₁ ∪ C₂) ≤ k·vol(S₁ ∪ S₂)`, by
/// enumerating all `3^(n - |S|)` labelings of the non-seed nodes.
///
/// The band-swapped seeding `(S₂, S₁)` is not enumerated separately: `β` is symmetric
/// in its bands, so it yields the same values.
pub fn brute_force_cheeger(g: &SignedGraph, s1: &NodeSet, s2: &NodeSet, k: f64) -> Result<CheegerCertificate> {
    let n = g.node_count();
    if n > MAX_BRUTE_FORCE {
        return Err(Error::TooLarge {
            n,
            max: MAX_BRUTE_FORCE,
        });
    }
    let seed = seed_vector(g, s1, s2)?;
    let seed_vol = g.volume(s1) + g.volume(s2);
    if !(k.is_finite()) {
        return Err(Error::InvalidParameter(format!("k = {k}")));
    }
    let budget = k * seed_vol * (1.0 + 1e-12);
    let seeds: Vec<u8> = (0..n)
        .map(|u| {
            if s1.contains(u) {
                1
            } else if s2.contains(u) {
                2
            } else {
                0
            }
        })
        .collect();
    let free: Vec<usize> = (0..n).filter(|&u| seeds[u] == 0).collect();
    debug_assert_eq!(free.len() + seed.support().len(), n);
    let total = 3usize.pow(free.len() as u32);

    let mut label = seeds.clone();
    let mut digits = vec![0u8; free.len()];
    let mut feasible = 0usize;
    let mut best: Option<(f64, Vec<u8>)> = None;
    for step in 0..total {
        if step > 0 {
            // base-3 increment
            for (d, &u) in digits.iter_mut().zip(&free) {
                *d += 1;
                if *d == 3 {
                    *d = 0;
                    label[u] = 0;
                } else {
                    label[u] = *d;
                    break;
                }
            }
        }
        let vol: f64 = (0..n).filter(|&u| label[u] != 0).map(|u| g.degree(u)).sum();
        if vol > budget || vol <= 0.0 {
            continue;
        }
        feasible += 1;
        let mut num = 0.0;
        for e in g.edges() {
            let (a, b) = (label[e.u], label[e.v]);
            let w = e.w.abs();
            num += match (a, b) {
                (0, 0) => 0.0,
                (0, _) | (_, 0) => w,
                _ if a == b => {
                    if e.w < 0.0 {
                        w
                    } else {
                        0.0
                    }
                }
                _ => {
                    if e.w > 0.0 {
                        2.0 * w
                    } else {
                        0.0
                    }
                }
            };
        }
        let b = num / vol;
        if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
            best = Some((b, label.clone()));
        }
    }
    let (_, lab) = best.ok_or(Error::Infeasible)?;
    let c1 = NodeSet::new((0..n).filter(|&u| lab[u] == 1));
    let c2 = NodeSet::new((0..n).filter(|&u| lab[u] == 2));
    let argmin = Community::evaluate(g, c1, c2)?;
    Ok(CheegerCertificate {
        h_value: argmin.beta,
        argmin,
        feasible_count: feasible,
        k,
        seeds: (s1.clone(), s2.clone()),
    })
}

/// Solver settings used by the bound checks: a much narrower stopping window than the
/// default, so the continuous objective is close to the true constrained minimum.
pub fn tight_config() -> SolverConfig {
    SolverConfig {
        eps: 1e-7,
        cg_tol: 1e-12,
        max_search_steps: 400,
        eigen: crate::spectral::EigenOptions {
            tol: 1e-11,
            ..Default::default()
        },
        ..SolverConfig::default()
    }
}

/// Solve at `κ = √(1/k)`. For `k ≤ 1` the only feasible vector is the seed itself.
pub fn solve_for_budget(g: &SignedGraph, s: &SeedVector, k: f64, config: &SolverConfig) -> Result<SpectralSolution> {
    let kappa = (1.0 / k).sqrt();
    if kappa >= 1.0 {
        let x = s.values().to_vec();
        let objective = laplacian_quadratic_form(g, &x)?;
        return Ok(SpectralSolution {
            correlation: degree_dot(g, &x, s.values())?,
            x,
            alpha: f64::NEG_INFINITY,
            kappa_target: kappa,
            lambda1: f64::NAN,
            objective,
            cg_iterations: 0,
            search_steps: 0,
            constraint_active: true,
            warnings: vec!["k <= 1: the seed vector is the only feasible point".into()],
        });
    }
    LocalPolar::new(g, config.clone())?.solve(s, kappa)
}

#[derive(Clone, Debug)]
pub struct RelaxationReport {
    /// Continuous objective at `κ = √(1/k)`.
    pub lambda: f64,
    pub h: f64,
    pub holds: bool,
}

/// `λ(s, √(1/k)) ≤ 4·h(S₁, S₂, k) + eps`.
pub fn verify_relaxation(
    g: &SignedGraph,
    s1: &NodeSet,
    s2: &NodeSet,
    k: f64,
    eps: f64,
    config: &SolverConfig,
) -> Result<RelaxationReport> {
    let cert = brute_force_cheeger(g, s1, s2, k)?;
    let s = seed_vector(g, s1, s2)?;
    let sol = solve_for_budget(g, &s, k, config)?;
    Ok(RelaxationReport {
        lambda: sol.objective,
        h: cert.h_value,
        holds: sol.objective <= 4.0 * cert.h_value + eps,
    })
}

#[derive(Clone, Debug)]
pub struct ApproximationReport {
    pub community: Community,
    pub beta_out: f64,
    pub rayleigh: f64,
    pub h: f64,
    /// `√(2·R(x*))`.
    pub sweep_bound: f64,
    /// `√(8h)`.
    pub cheeger_bound: f64,
    pub holds_sweep: bool,
    pub holds_cheeger: bool,
}

/// Full pipeline at `κ = √(1/k)`; checks `β_out ≤ √(2R(x*)) + eps` and `β_out ≤ √(8h) + eps`.
pub fn verify_approximation(
    g: &SignedGraph,
    s1: &NodeSet,
    s2: &NodeSet,
    k: f64,
    eps: f64,
    config: &SolverConfig,
) -> Result<ApproximationReport> {
    let cert = brute_force_cheeger(g, s1, s2, k)?;
    let s = seed_vector(g, s1, s2)?;
    let sol = solve_for_budget(g, &s, k, config)?;
    let community = fast_sweep(g, &sol.x)?;
    let r = rayleigh(g, &sol.x)?;
    let sweep_bound = (2.0 * r).sqrt();
    let cheeger_bound = (8.0 * cert.h_value).sqrt();
    Ok(ApproximationReport {
        beta_out: community.beta,
        holds_sweep: community.beta <= sweep_bound + eps,
        holds_cheeger: community.beta <= cheeger_bound + eps,
        community,
        rayleigh: r,
        h: cert.h_value,
        sweep_bound,
        cheeger_bound,
    })
}

/// First-order optimality residuals of a candidate solution.
#[derive(Clone, Debug, PartialEq)]
pub struct KktReport {
    /// `|xᵀDx - 1|`.
    pub primal_norm_residual: f64,
    /// `xᵀDs - κ`.
    pub correlation_slack: f64,
    /// `‖(L - αD)x - c·Ds‖₂` for the least-squares `c`.
    pub stationarity_residual: f64,
    /// The fitted `c`, standing in for the constraint multiplier.
    pub multiplier: f64,
    /// `|slack · multiplier|`.
    pub complementary_slackness: f64,
    /// All residuals within `tol` (stationarity relative to `‖Ds‖`) and slack `≥ -tol`.
    pub passed: bool,
}

pub fn kkt_check(g: &SignedGraph, x: &[f64], s: &SeedVector, alpha: f64, kappa: f64, tol: f64) -> Result<KktReport> {
    let primal = (degree_norm_sq(g, x)? - 1.0).abs();
    let slack = degree_dot(g, x, s.values())? - kappa;
    let ds = s.degree_weighted(g);
    let mut r = vec![0.0; x.len()];
    let scale = 1.0 - alpha;
    for (u, ru) in r.iter_mut().enumerate() {
        let mut acc = scale * g.degree(u) * x[u];
        for (v, w) in g.neighbors(u) {
            acc -= w * x[v];
        }
        *ru = acc;
    }
    let ds_sq: f64 = ds.iter().map(|v| v * v).sum();
    let c = r.iter().zip(&ds).map(|(a, b)| a * b).sum::<f64>() / ds_sq;
    let stat = r
        .iter()
        .zip(&ds)
        .map(|(a, b)| (a - c * b).powi(2))
        .sum::<f64>()
        .sqrt();
    let comp = (slack * c).abs();
    Ok(KktReport {
        primal_norm_residual: primal,
        correlation_slack: slack,
        stationarity_residual: stat,
        multiplier: c,
        complementary_slackness: comp,
        passed: primal <= tol && slack >= -tol && stat <= tol * ds_sq.sqrt() && comp <= tol,
    })
}

/// Weight distribution for [`random_connected_graph`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weights {
    /// `±1`.
    Unit,
    /// `±{1, .., max}`.
    Integer(u32),
    /// `±j/8` for `j` in `1..=32`; sums of these are exact in binary floating point.
    Dyadic,
    /// `±` uniform in `[0.1, 3)`.
    Real,
}

/// Random connected signed graph: a random spanning tree plus each other pair with
/// probability `density`; each edge is negative with probability `neg_frac`.
pub fn random_connected_graph(n: usize, density: f64, neg_frac: f64, weights: Weights, seed: u64) -> SignedGraph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> f64 {
        let mag = match weights {
            Weights::Unit => 1.0,
            Weights::Integer(max) => rng.random_range(1..=max.max(1)) as f64,
            Weights::Dyadic => rng.random_range(1..=32) as f64 / 8.0,
            Weights::Real => rng.random_range(0.1..3.0),
        };
        if rng.random::<f64>() < neg_frac {
            -mag
        } else {
            mag
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut tree = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = perm[rng.random_range(0..i)];
        let (u, v) = (perm[i].min(parent), perm[i].max(parent));
        tree.insert((u, v));
        edges.push((u, v, draw(&mut rng)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !tree.contains(&(u, v)) && rng.random::<f64>() < density {
                edges.push((u, v, draw(&mut rng)));
            }
        }
    }
    SignedGraph::from_indexed(n, &edges).expect("random graph has at least one edge")
}

/// Perfectly balanced graph: random sides, positive edges within, negative across.
/// Returns the graph and its split.
pub fn random_balanced_graph(n: usize, density: f64, weights: Weights, seed: u64) -> (SignedGraph, NodeSet, NodeSet) {
    use rand::{Rng, SeedableRng};
    let unsigned = random_connected_graph(n, density, 0.0, weights, seed);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let side: Vec<bool> = (0..n).map(|_| rng.random()).collect();
    let edges: Vec<(usize, usize, f64)> = unsigned
        .edges()
        .iter()
        .map(|e| {
            let w = e.w.abs();
            (e.u, e.v, if side[e.u] == side[e.v] { w } else { -w })
        })
        .collect();
    let g = SignedGraph::from_indexed(n, &edges).expect("nonempty");
    let a = NodeSet::new((0..n).filter(|&u| side[u]));
    let b = NodeSet::new((0..n).filter(|&u| !side[u]));
    (g, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::t3;

    #[test]
    fn triangle_cheeger() {
        let g = t3();
        let cert = brute_force_cheeger(&g, &NodeSet::new([0]), &NodeSet::new([2]), 3.0).unwrap();
        assert!((cert.h_value - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(cert.argmin.c1, NodeSet::new([0, 1]));
        assert_eq!(cert.argmin.c2, NodeSet::new([2]));
        assert_eq!(cert.feasible_count, 3);
    }

    #[test]
    fn budget_below_one_is_infeasible() {
        let g = t3();
        let r = brute_force_cheeger(&g, &NodeSet::new([0]), &NodeSet::new([2]), 0.5);
        assert_eq!(r.unwrap_err(), Error::Infeasible);
    }

    #[test]
    fn spectrum_of_triangle() {
        let (vals, _) = dense_spectrum(&t3()).unwrap();
        for (v, want) in vals.iter().zip([0.5, 0.5, 2.0]) {
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn family_matches_dense_solve() {
        let g = t3();
        let s = seed_vector(&g, &NodeSet::new([0]), &NodeSet::new([2])).unwrap();
        let fam = ShiftFamily::new(&g, &s).unwrap();
        let y = dense_solve_shifted(&g, 0.1, &s.degree_weighted(&g)).unwrap();
        let nrm = degree_norm_sq(&g, &y).unwrap().sqrt();
        let c = degree_dot(&g, &y, s.values()).unwrap() / nrm;
        let p = fam.at(0.1);
        assert!((p.correlation - c).abs() < 1e-12);
        let lim = fam.limit(1e-10).unwrap();
        assert!((lim.correlation - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn perturbed_vector_norm_residual() {
        let g = t3();
        let s = seed_vector(&g, &NodeSet::new([0]), &NodeSet::new([2])).unwrap();
        let x: Vec<f64> = s.values().iter().map(|v| 1.1 * v).collect();
        let rep = kkt_check(&g, &x, &s, -6.0, 0.9, 1e-8).unwrap();
        assert!((rep.primal_norm_residual - 0.21).abs() < 1e-12);
        assert!(!rep.passed);
    }
}
