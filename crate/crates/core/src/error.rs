use thiserror::Error;

/// Errors produced by graph construction, the spectral solver, rounding and the oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("edge list is empty")]
    EmptyGraph,
    #[error("edge ({0}, {1}) has a non-finite or zero weight")]
    BadWeight(String, String),
    #[error("node index {index} out of range for a graph with {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },
    #[error("node sets overlap at node {0}")]
    Overlap(usize),
    #[error("node set union has zero volume")]
    ZeroVolume,
    #[error("seed sets are both empty")]
    EmptySeed,
    #[error("vector is identically zero")]
    ZeroVector,
    #[error("vector length {got} does not match node count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("node {0} has zero degree; the solver needs a connected graph")]
    IsolatedNode(usize),
    #[error("eigensolver did not converge after {iterations} iterations (best residual {residual:.3e})")]
    EigenNotConverged { iterations: usize, residual: f64 },
    #[error("conjugate gradient did not converge after {iterations} iterations (relative residual {residual:.3e})")]
    CgNotConverged { iterations: usize, residual: f64 },
    #[error("shifted operator is not positive definite at alpha = {alpha}")]
    Indefinite { alpha: f64 },
    #[error("kappa must lie in [0, 1), got {0}")]
    InvalidKappa(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("correlation unreachable: kappa = {kappa} but the most negative shift reaches only {best}")]
    CorrelationUnreachable { kappa: f64, best: f64 },
    #[error("correlation is not monotone in alpha: c({lo_alpha}) = {lo_c} < c({hi_alpha}) = {hi_c}")]
    NonMonotone {
        lo_alpha: f64,
        lo_c: f64,
        hi_alpha: f64,
        hi_c: f64,
    },
    #[error("instance has {n} nodes, brute force is limited to {max}")]
    TooLarge { n: usize, max: usize },
    #[error("no labeling satisfies the seed and volume constraints")]
    Infeasible,
    #[error("community band is empty")]
    EmptyBand,
}

pub type Result<T> = std::result::Result<T, Error>;
