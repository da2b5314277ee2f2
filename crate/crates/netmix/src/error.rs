//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which side of an edge a moment or variance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Source => write!(f, "source"),
            Side::Target => write!(f, "target"),
        }
    }
}

/// Why a single coefficient is undefined. Distinguishes "no tendency"
/// (a value near zero) from "not a number at all".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// The graph has no edges, so every edge-weighted moment is undefined.
    NoEdges,
    /// The source-side feature is constant over edge endpoints.
    ZeroSourceVariance,
    /// The target-side feature is constant over edge endpoints.
    ZeroTargetVariance,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degeneracy::NoEdges => write!(f, "no_edges"),
            Degeneracy::ZeroSourceVariance => write!(f, "zero_source_variance"),
            Degeneracy::ZeroTargetVariance => write!(f, "zero_target_variance"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("edge {from}->{to} has non-positive weight {weight}")]
    NonPositiveWeight { from: usize, to: usize, weight: f64 },

    #[error("vertex id {id} out of range for a graph with {count} vertices")]
    VertexOutOfRange { id: usize, count: usize },

    #[error("feature column has {got} values but the graph has {expected} vertices")]
    FeatureLengthMismatch { expected: usize, got: usize },

    #[error("feature value for vertex {vertex} is not finite")]
    NonFiniteFeature { vertex: usize },

    #[error("graph has no edges; edge-weighted moments are undefined")]
    EdgelessGraph,

    #[error("degenerate {side} variance: the {side} feature is constant over edge endpoints")]
    DegenerateVariance { side: Side },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "target assortativity {xi} is unattainable for this strength distribution; \
         the attainable range is [{min:.6}, 1)"
    )]
    InfeasibleTarget { xi: f64, min: f64 },

    #[error(
        "transition-matrix solve stalled at constraint residual {residual:.3e} \
         (tolerance {tolerance:.1e}); target {xi} is too close to the feasibility boundary"
    )]
    SolverPrecision {
        xi: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("could not pair strength stubs without a self-loop; the remaining stubs all belong to one vertex")]
    StubPairing,

    #[error("significance level must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),

    #[error("vertex strength {0} is not in the rewiring support")]
    OffSupportStrength(u64),

    #[error("edge weights are not integer-valued after undirected merging (pair {from}-{to} sums to {weight})")]
    NonIntegerUndirectedWeight { from: usize, to: usize, weight: f64 },
}

impl From<Degeneracy> for Error {
    fn from(d: Degeneracy) -> Self {
        match d {
            Degeneracy::NoEdges => Error::EdgelessGraph,
            Degeneracy::ZeroSourceVariance => Error::DegenerateVariance { side: Side::Source },
            Degeneracy::ZeroTargetVariance => Error::DegenerateVariance { side: Side::Target },
        }
    }
}
