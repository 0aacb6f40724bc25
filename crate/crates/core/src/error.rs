use thiserror::Error;

/// Errors produced by the analysis routines.
///
/// Vertex numbers carried in error payloads are 1-based labels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty induced set")]
    EmptyVertexSet,

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}: loops not allowed")]
    SelfLoop(usize),

    #[error("family class {0} is empty")]
    EmptyClass(usize),

    #[error("family classes overlap at vertex {0}")]
    OverlappingClasses(usize),

    #[error("family has no classes")]
    EmptyFamily,

    #[error("family does not partition the support: {0}")]
    NotAPartition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point is not on the standard simplex: {0}")]
    NotOnSimplex(String),

    #[error("point is not representable over the family: {0}")]
    NotRepresentable(String),

    #[error("automorphism search limit: {n} vertices exceeds limit {limit}")]
    AutomorphismLimit { n: usize, limit: usize },

    #[error("automorphism group larger than {0} elements")]
    AutomorphismGroupTooLarge(usize),

    #[error("point is not a generalized KKT point")]
    NotGeneralizedKkt,

    #[error("permutation {0} is not an automorphism of the support subgraph")]
    NotAutomorphism(usize),

    #[error("permutation set is not a group: {0}")]
    NotAGroup(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("c not unique or membership c-independent: point is a characteristic vector")]
    CharacteristicVector,

    #[error("discrete map undefined; shift c (payoff {payoff} at vertex {vertex})")]
    DiscreteMapUndefined { vertex: usize, payoff: f64 },

    #[error("invalid integration parameters: {0}")]
    InvalidIntegration(String),

    #[error("reduced program is defined over the relative interior; point has a zero coordinate")]
    BoundaryPoint,

    #[error("converse reduction requires a highly regular partition")]
    NotHighlyRegular,

    #[error("generalized star construction inapplicable: c = {c} lies in [1, {b}]")]
    StarInapplicable { c: String, b: u64 },

    #[error("shared-core hypothesis failed: {0}")]
    SharedCore(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
