use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative weight at vertex index {vertex}")]
    NegativeWeight { vertex: u32 },

    #[error("duplicate vertex index {vertex}")]
    DuplicateVertex { vertex: u32 },

    #[error("vertex index {vertex} out of range for dimension {d}")]
    VertexOutOfRange { vertex: u32, d: usize },

    #[error("weights sum to {sum}, expected exactly 1 (pass normalize to rescale)")]
    SumNotOne { sum: String },

    #[error("cannot normalize: total weight is zero")]
    ZeroTotal,

    #[error("dimension {d} outside supported range 1..={cap}")]
    DimensionTooLarge { d: usize, cap: usize },

    #[error("probability parameter must lie strictly between 0 and 1")]
    ProbabilityOutOfRange,

    #[error("mix parameters must satisfy 0 < alpha < 1 and 0 < p1 < 1/2 < p2 < 1")]
    ParameterOutOfRange,

    #[error("coordinate {coord} out of range for dimension {d}")]
    CoordinateOutOfRange { coord: usize, d: usize },

    #[error("m = {m} out of range for a coordinate set of size {size}")]
    BadM { m: usize, size: usize },

    #[error("coordinate set must be nonempty")]
    EmptySet,

    #[error("coordinate {coord} is exactly balanced; no majority point exists")]
    BalancedCoordinate { coord: usize },

    #[error("radius {k} out of range for dimension {d}")]
    BadRadius { k: usize, d: usize },

    #[error("invalid rule parameters t={t}, m={m} at layer k={k}: need 1 <= t <= k and m <= t/2")]
    BadParameters { t: usize, m: usize, k: usize },

    #[error("dimension {d} has the wrong parity for this construction")]
    BadDimensionParity { d: usize },

    #[error("epsilon parameter out of the admissible open interval")]
    EpsOutOfRange,

    #[error("positions must be distinct")]
    EqualPoints,

    #[error("majority point is not at the all-zeros vertex; swap the roles of 0 and 1 first")]
    MajorityNotAtZero,

    #[error("step limit must be at least 1")]
    BadStepLimit,

    #[error("parse error: {message}")]
    Parse { message: String },
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            message: message.into(),
        }
    }
}
