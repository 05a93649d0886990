//! Matrix-free spectral machinery on the signed Laplacian `L = D - A`.
//!
//! The locally-biased optimum has the closed form `x ∝ (L - αD)^+ D s` for some
//! shift `α < λ₁`, where `λ₁` is the smallest eigenvalue of the normalized
//! Laplacian. [`LocalPolar`] finds that shift by bisection on the correlation
//! `xᵀDs`, solving each shifted system with preconditioned conjugate gradients.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{degree_dot, degree_norm_sq, laplacian_quadratic_form, SeedVector, SignedGraph};

fn check_len(g: &SignedGraph, x: &[f64]) -> Result<()> {
    if x.len() != g.node_count() {
        return Err(Error::LengthMismatch {
            expected: g.node_count(),
            got: x.len(),
        });
    }
    Ok(())
}

fn check_degrees(g: &SignedGraph) -> Result<()> {
    match g.degrees().iter().position(|&d| d <= 0.0) {
        Some(u) => Err(Error::IsolatedNode(u)),
        None => Ok(()),
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `out = ((1 - alpha) D - A) x`, i.e. `(L - alpha D) x`.
fn shifted_apply_into(g: &SignedGraph, alpha: f64, x: &[f64], out: &mut [f64]) {
    let scale = 1.0 - alpha;
    for (u, o) in out.iter_mut().enumerate() {
        let mut acc = scale * g.degree(u) * x[u];
        for (v, w) in g.neighbors(u) {
            acc -= w * x[v];
        }
        *o = acc;
    }
}

/// `L x` in one adjacency pass.
pub fn laplacian_apply(g: &SignedGraph, x: &[f64]) -> Result<Vec<f64>> {
    check_len(g, x)?;
    let mut out = vec![0.0; x.len()];
    shifted_apply_into(g, 0.0, x, &mut out);
    Ok(out)
}

/// Smallest eigenpair of the normalized Laplacian.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub lambda1: f64,
    /// Eigenvector in the original coordinates, scaled so that `v1ᵀ D v1 = 1`.
    pub v1: Vec<f64>,
    /// `‖𝓛 y - λ₁ y‖₂` for `y = D^{1/2} v1`.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug)]
pub struct EigenOptions {
    pub tol: f64,
    /// Matrix-vector product budget; `None` means `50·√n` (at least 200).
    pub max_iter: Option<usize>,
    /// Largest search subspace kept between restarts.
    pub max_basis: usize,
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            tol: 1e-8,
            max_iter: None,
            max_basis: 40,
            seed: 0x5eed_1a2c,
        }
    }
}

pub fn smallest_eigpair(g: &SignedGraph, tol: f64) -> Result<EigenPair> {
    smallest_eigpair_with(
        g,
        &EigenOptions {
            tol,
            ..EigenOptions::default()
        },
    )
}

/// Thick-restart Lanczos for the top eigenpair of `M = 2I - 𝓛 = I + D^{-1/2} A D^{-1/2}`.
///
/// `M` has spectrum in `[0, 2]`, so its largest eigenvalue is `2 - λ₁`. The basis is
/// fully reorthogonalized and the Rayleigh-Ritz step uses the projected matrix `VᵀMV`.
pub fn smallest_eigpair_with(g: &SignedGraph, opts: &EigenOptions) -> Result<EigenPair> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("eigen tolerance {}", opts.tol)));
    }
    check_degrees(g)?;
    let n = g.node_count();
    let inv_sqrt_d: Vec<f64> = g.degrees().iter().map(|d| 1.0 / d.sqrt()).collect();
    let mut scratch = vec![0.0; n];
    let mut apply = |y: &[f64], out: &mut Vec<f64>| {
        for u in 0..n {
            scratch[u] = y[u] * inv_sqrt_d[u];
        }
        out.clear();
        for u in 0..n {
            let mut acc = 0.0;
            for (v, w) in g.neighbors(u) {
                acc += w * scratch[v];
            }
            out.push(y[u] + acc * inv_sqrt_d[u]);
        }
    };

    let max_matvec = opts
        .max_iter
        .unwrap_or_else(|| ((50.0 * (n as f64).sqrt()).ceil() as usize).max(200));
    let max_basis = opts.max_basis.clamp(2, n.max(2)).min(n);
    let keep = (max_basis / 3).max(1);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let s = norm(&start);
    start.iter_mut().for_each(|x| *x /= s);

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_basis + 1);
    let mut images: Vec<Vec<f64>> = Vec::with_capacity(max_basis + 1);
    let mut matvecs = 0usize;
    let mut best_residual = f64::INFINITY;

    let mut w = Vec::with_capacity(n);
    apply(&start, &mut w);
    matvecs += 1;
    basis.push(start);
    images.push(w);

    loop {
        // expand with the image of the newest basis vector
        while basis.len() < max_basis && matvecs < max_matvec {
            let mut cand = images.last().unwrap().clone();
            let before = norm(&cand);
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&cand, b);
                    cand.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
            }
            let nrm = norm(&cand);
            if nrm <= 1e-10 * before.max(1.0) {
                break;
            }
            cand.iter_mut().for_each(|x| *x /= nrm);
            let mut img = Vec::with_capacity(n);
            apply(&cand, &mut img);
            matvecs += 1;
            basis.push(cand);
            images.push(img);
        }

        let k = basis.len();
        let mut h = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = 0.5 * (dot(&basis[i], &images[j]) + dot(&basis[j], &images[i]));
                h[(i, j)] = v;
                h[(j, i)] = v;
            }
        }
        let eig = SymmetricEigen::new(h);
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

        let combine = |vecs: &[Vec<f64>], col: usize| -> Vec<f64> {
            let mut out = vec![0.0; n];
            for (i, v) in vecs.iter().enumerate() {
                let c = eig.eigenvectors[(i, col)];
                out.iter_mut().zip(v).for_each(|(o, x)| *o += c * x);
            }
            out
        };
        let top = order[0];
        let theta = eig.eigenvalues[top];
        let ritz = combine(&basis, top);
        let ritz_img = combine(&images, top);
        let resid: Vec<f64> = ritz_img
            .iter()
            .zip(&ritz)
            .map(|(a, b)| a - theta * b)
            .collect();
        let res = norm(&resid);
        best_residual = best_residual.min(res);

        if res <= opts.tol || k == n {
            let scale = norm(&ritz);
            let v1: Vec<f64> = ritz
                .iter()
                .zip(&inv_sqrt_d)
                .map(|(y, s)| y * s / scale)
                .collect();
            let lambda1 = (2.0 - theta).clamp(0.0, 2.0);
            if res > opts.tol {
                // full basis: Rayleigh-Ritz is exact up to rounding
                if res > 1e3 * opts.tol {
                    return Err(Error::EigenNotConverged {
                        iterations: matvecs,
                        residual: res,
                    });
                }
            }
            return Ok(EigenPair {
                lambda1,
                v1,
                residual: res,
                iterations: matvecs,
            });
        }
        if matvecs >= max_matvec {
            return Err(Error::EigenNotConverged {
                iterations: matvecs,
                residual: best_residual,
            });
        }

        // thick restart: keep the leading Ritz vectors, continue from the top residual
        let kept = keep.min(k);
        let mut new_basis = Vec::with_capacity(max_basis + 1);
        let mut new_images = Vec::with_capacity(max_basis + 1);
        for &col in order.iter().take(kept) {
            new_basis.push(combine(&basis, col));
            new_images.push(combine(&images, col));
        }
        let mut dir = resid;
        for _ in 0..2 {
            for b in &new_basis {
                let c = dot(&dir, b);
                dir.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let mut nrm = norm(&dir);
        if nrm <= 1e-14 {
            // residual lies in the kept span; perturb with a fresh random direction
            dir = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
            for _ in 0..2 {
                for b in &new_basis {
                    let c = dot(&dir, b);
                    dir.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
            }
            nrm = norm(&dir);
        }
        dir.iter_mut().for_each(|x| *x /= nrm);
        let mut img = Vec::with_capacity(n);
        apply(&dir, &mut img);
        matvecs += 1;
        new_basis.push(dir);
        new_images.push(img);
        basis = new_basis;
        images = new_images;
    }
}

/// Outcome of one conjugate-gradient solve.
#[derive(Clone, Debug)]
pub struct CgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Final `‖b - (L - αD)x‖₂ / ‖b‖₂`.
    pub residual: f64,
}

/// Degree-preconditioned CG on `(L - αD) x = b`.
///
/// Detects loss of positive definiteness through nonpositive curvature `pᵀAp ≤ 0`.
pub fn pcg_shifted(
    g: &SignedGraph,
    alpha: f64,
    b: &[f64],
    x0: Option<&[f64]>,
    tol: f64,
    max_iter: usize,
) -> Result<CgOutcome> {
    check_len(g, b)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("cg tolerance {tol}")));
    }
    let n = g.node_count();
    let bnorm = norm(b);
    if bnorm == 0.0 {
        return Ok(CgOutcome {
            x: vec![0.0; n],
            iterations: 0,
            residual: 0.0,
        });
    }
    check_degrees(g)?;
    if alpha >= 1.0 {
        return Err(Error::Indefinite { alpha });
    }
    let inv_diag: Vec<f64> = g
        .degrees()
        .iter()
        .map(|d| 1.0 / ((1.0 - alpha) * d))
        .collect();

    let mut ax = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    if let Some(x0) = x0 {
        check_len(g, x0)?;
        shifted_apply_into(g, alpha, x0, &mut ax);
        let r0: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        if norm(&r0) < bnorm {
            x.copy_from_slice(x0);
            r = r0;
        }
    }
    let mut rnorm = norm(&r);
    if rnorm <= tol * bnorm {
        return Ok(CgOutcome {
            x,
            iterations: 0,
            residual: rnorm / bnorm,
        });
    }
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(a, m)| a * m).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    for it in 1..=max_iter {
        shifted_apply_into(g, alpha, &p, &mut ap);
        let curv = dot(&p, &ap);
        if curv <= 0.0 {
            return Err(Error::Indefinite { alpha });
        }
        let step = rz / curv;
        for i in 0..n {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        rnorm = norm(&r);
        if rnorm <= tol * bnorm {
            return Ok(CgOutcome {
                x,
                iterations: it,
                residual: rnorm / bnorm,
            });
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::CgNotConverged {
        iterations: max_iter,
        residual: rnorm / bnorm,
    })
}

fn default_cg_cap(n: usize) -> usize {
    (20 * n).max(100)
}

/// Solve `(L - αD) x = b` to relative residual `tol` with the default iteration cap `20n`.
pub fn solve_shifted(g: &SignedGraph, alpha: f64, b: &[f64], tol: f64) -> Result<(Vec<f64>, usize)> {
    let out = pcg_shifted(g, alpha, b, None, tol, default_cg_cap(g.node_count()))?;
    Ok((out.x, out.iterations))
}

/// Solve `(L - αD) y = Ds`, scale to `xᵀDx = 1` with `xᵀDs ≥ 0`, and return `(xᵀDs, x)`.
pub fn correlation_at(
    g: &SignedGraph,
    alpha: f64,
    s: &SeedVector,
    tol: f64,
) -> Result<(f64, Vec<f64>)> {
    let rhs = s.degree_weighted(g);
    let p = evaluate(g, alpha, &rhs, None, tol, default_cg_cap(g.node_count()))?;
    Ok((p.correlation, p.x))
}

struct Probe {
    alpha: f64,
    correlation: f64,
    x: Vec<f64>,
    raw: Vec<f64>,
    iterations: usize,
}

fn evaluate(
    g: &SignedGraph,
    alpha: f64,
    rhs: &[f64],
    warm: Option<&[f64]>,
    tol: f64,
    cap: usize,
) -> Result<Probe> {
    let out = pcg_shifted(g, alpha, rhs, warm, tol, cap)?;
    let nsq = degree_norm_sq(g, &out.x)?;
    if nsq <= 0.0 {
        return Err(Error::ZeroVector);
    }
    let scale = 1.0 / nsq.sqrt();
    // for a positive definite operator yᵀ(Ds) = (Ds)ᵀ(L-αD)⁻¹(Ds) > 0
    let raw_corr = dot(&out.x, rhs);
    if raw_corr <= 0.0 {
        return Err(Error::Indefinite { alpha });
    }
    let x: Vec<f64> = out.x.iter().map(|v| v * scale).collect();
    Ok(Probe {
        alpha,
        correlation: raw_corr * scale,
        x,
        raw: out.x,
        iterations: out.iterations,
    })
}

/// Solver knobs.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Accept a shift once `κ ≤ xᵀDs ≤ κ + eps`.
    pub eps: f64,
    pub cg_tol: f64,
    /// `None` means `20n`.
    pub cg_max_iter: Option<usize>,
    pub eigen: EigenOptions,
    pub max_search_steps: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            eps: 1e-3,
            cg_tol: 1e-8,
            cg_max_iter: None,
            eigen: EigenOptions::default(),
            max_search_steps: 200,
        }
    }
}

/// Continuous optimum of the locally-biased problem for one seed.
#[derive(Clone, Debug)]
pub struct SpectralSolution {
    /// `xᵀDx = 1`, `xᵀDs ≥ 0`.
    pub x: Vec<f64>,
    pub alpha: f64,
    pub correlation: f64,
    pub kappa_target: f64,
    pub lambda1: f64,
    /// `xᵀLx`.
    pub objective: f64,
    pub cg_iterations: usize,
    pub search_steps: usize,
    pub constraint_active: bool,
    pub warnings: Vec<String>,
}

/// Solver bound to one graph; the eigenpair is computed once and shared by all queries.
#[derive(Clone, Debug)]
pub struct LocalPolar<'g> {
    graph: &'g SignedGraph,
    eigen: EigenPair,
    config: SolverConfig,
}

impl<'g> LocalPolar<'g> {
    pub fn new(graph: &'g SignedGraph, config: SolverConfig) -> Result<Self> {
        let eigen = smallest_eigpair_with(graph, &config.eigen)?;
        Ok(LocalPolar {
            graph,
            eigen,
            config,
        })
    }

    pub fn with_eigenpair(graph: &'g SignedGraph, eigen: EigenPair, config: SolverConfig) -> Self {
        LocalPolar {
            graph,
            eigen,
            config,
        }
    }

    pub fn graph(&self) -> &'g SignedGraph {
        self.graph
    }

    pub fn eigenpair(&self) -> &EigenPair {
        &self.eigen
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Shift guard: `α` never exceeds `λ₁ - δ`.
    pub fn delta(&self) -> f64 {
        (10.0 * self.config.eigen.tol).max(1e-9 * self.graph.total_volume())
    }

    /// Minimize `xᵀLx` subject to `xᵀDx = 1`, `xᵀDs ≥ κ`.
    pub fn solve(&self, s: &SeedVector, kappa: f64) -> Result<SpectralSolution> {
        let g = self.graph;
        let cfg = &self.config;
        if !(0.0..1.0).contains(&kappa) {
            return Err(Error::InvalidKappa(kappa));
        }
        if !(cfg.eps > 0.0) {
            return Err(Error::InvalidParameter(format!("eps {}", cfg.eps)));
        }
        check_len(g, s.values())?;
        let cap = cfg.cg_max_iter.unwrap_or_else(|| default_cg_cap(g.node_count()));
        let lambda1 = self.eigen.lambda1;
        let mut warnings = Vec::new();

        let mut v1 = self.eigen.v1.clone();
        let mut c_v1 = degree_dot(g, &v1, s.values())?;
        if c_v1 < 0.0 {
            v1.iter_mut().for_each(|x| *x = -*x);
            c_v1 = -c_v1;
        }
        if c_v1 < 1e-8 {
            warnings.push(format!(
                "seed is numerically orthogonal to the computed eigenvector (|sᵀDv₁| = {c_v1:.2e})"
            ));
        }
        if kappa <= c_v1 {
            let objective = laplacian_quadratic_form(g, &v1)?;
            return Ok(SpectralSolution {
                x: v1,
                alpha: lambda1,
                correlation: c_v1,
                kappa_target: kappa,
                lambda1,
                objective,
                cg_iterations: 0,
                search_steps: 0,
                constraint_active: false,
                warnings,
            });
        }

        let rhs = s.degree_weighted(g);
        let delta = self.delta();
        let vol = g.total_volume();
        let mut cg_iterations = 0usize;
        let mut steps = 0usize;

        let finish = |p: Probe,
                      active: bool,
                      cg_iterations: usize,
                      steps: usize,
                      warnings: Vec<String>|
         -> Result<SpectralSolution> {
            let objective = laplacian_quadratic_form(g, &p.x)?;
            Ok(SpectralSolution {
                x: p.x,
                alpha: p.alpha,
                correlation: p.correlation,
                kappa_target: kappa,
                lambda1,
                objective,
                cg_iterations,
                search_steps: steps,
                constraint_active: active,
                warnings,
            })
        };

        // lower end of the bracket, extended if the seed is very concentrated
        let mut lo_alpha = -vol;
        let mut lo = evaluate(g, lo_alpha, &rhs, None, cfg.cg_tol, cap)?;
        cg_iterations += lo.iterations;
        steps += 1;
        while lo.correlation < kappa && lo_alpha > -64.0 * vol {
            lo_alpha *= 2.0;
            lo = evaluate(g, lo_alpha, &rhs, Some(&lo.raw), cfg.cg_tol, cap)?;
            cg_iterations += lo.iterations;
            steps += 1;
        }
        if lo.correlation < kappa {
            return Err(Error::CorrelationUnreachable {
                kappa,
                best: lo.correlation,
            });
        }
        if lo.correlation <= kappa + cfg.eps {
            return finish(lo, true, cg_iterations, steps, warnings);
        }

        // bisection on the gap λ₁ - α: geometric while the bracket spans orders of magnitude
        let mut gap_lo = lambda1 - lo.alpha;
        let mut gap_hi = delta;
        let mut hi_c: Option<(f64, f64)> = None;
        let mut warm: Vec<f64> = lo.raw.clone();
        while steps < cfg.max_search_steps {
            let gap_mid = if gap_lo > 2.0 * gap_hi {
                (gap_lo * gap_hi).sqrt()
            } else {
                0.5 * (gap_lo + gap_hi)
            };
            if gap_mid >= gap_lo || gap_mid <= gap_hi {
                break;
            }
            let alpha = lambda1 - gap_mid;
            steps += 1;
            let probe = match evaluate(g, alpha, &rhs, Some(&warm), cfg.cg_tol, cap) {
                Ok(p) => p,
                Err(Error::Indefinite { .. }) => {
                    warnings.push(format!(
                        "operator indefinite at alpha = {alpha:.6e}; eigenvalue estimate is high"
                    ));
                    gap_hi = gap_mid;
                    hi_c = Some((alpha, f64::NEG_INFINITY));
                    continue;
                }
                Err(e) => return Err(e),
            };
            cg_iterations += probe.iterations;
            let mono_tol = 1e-9;
            if probe.correlation > lo.correlation + mono_tol {
                return Err(Error::NonMonotone {
                    lo_alpha: lo.alpha,
                    lo_c: lo.correlation,
                    hi_alpha: alpha,
                    hi_c: probe.correlation,
                });
            }
            if let Some((ha, hc)) = hi_c {
                if probe.correlation + mono_tol < hc {
                    return Err(Error::NonMonotone {
                        lo_alpha: alpha,
                        lo_c: probe.correlation,
                        hi_alpha: ha,
                        hi_c: hc,
                    });
                }
            }
            if probe.correlation >= kappa && probe.correlation <= kappa + cfg.eps {
                return finish(probe, true, cg_iterations, steps, warnings);
            }
            warm = probe.raw.clone();
            if probe.correlation > kappa {
                gap_lo = gap_mid;
                lo = probe;
            } else {
                gap_hi = gap_mid;
                hi_c = Some((alpha, probe.correlation));
            }
        }
        if hi_c.is_none() {
            // correlation stays above κ right up to λ₁ - δ: the seed projects strongly on a
            // degenerate bottom eigenspace and the constraint is slack
            warnings.push("correlation exceeds kappa up to the shift guard; constraint inactive".into());
            return finish(lo, false, cg_iterations, steps, warnings);
        }
        warnings.push(format!(
            "bisection stopped before reaching the eps window (c = {:.6})",
            lo.correlation
        ));
        finish(lo, true, cg_iterations, steps, warnings)
    }
}

/// One-shot solve: eigenpair, bracket and bisection with the given tolerances.
pub fn localpolar_solve(
    g: &SignedGraph,
    s: &SeedVector,
    kappa: f64,
    eps: f64,
    tol: f64,
) -> Result<SpectralSolution> {
    let config = SolverConfig {
        eps,
        cg_tol: tol,
        ..SolverConfig::default()
    };
    LocalPolar::new(g, config)?.solve(s, kappa)
}
