//! Locally-biased polarized community detection in signed graphs.
//!
//! Given seed sets `S₁`, `S₂`, [`spectral::LocalPolar`] computes the spectral optimum
//! `x = (L - αD)⁻¹Ds` (normalized) whose correlation with the seed is `κ`, and
//! [`sweep::fast_sweep`] rounds it to a pair of antagonistic bands.

pub mod error;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod spectral;
pub mod sweep;
pub mod synthgen;

pub use error::{Error, Result};
pub use graph::{
    beta, build_graph, degree_dot, degree_norm_sq, edge_counts, laplacian_quadratic_form, rayleigh,
    seed_vector, Community, Edge, EdgeCounts, NodeSet, SeedVector, SignedGraph,
};
pub use metrics::{average_precision, ham, polarity, MetricReport};
pub use spectral::{
    correlation_at, laplacian_apply, localpolar_solve, smallest_eigpair, solve_shifted, EigenOptions,
    EigenPair, LocalPolar, SolverConfig, SpectralSolution,
};
pub use sweep::{build_sweep_table, fast_sweep, naive_sweep, SweepTable};
pub use synthgen::{generate, GroundTruth, SynthParams, Synthetic};
