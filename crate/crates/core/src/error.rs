use thiserror::Error;

/// Everything that can go wrong while building graphs or evaluating curvatures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex `{0}` listed more than once")]
    DuplicateVertex(String),
    #[error("vertex `{0}` has non-positive measure")]
    NonPositiveMeasure(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("edge {{{u}, {v}}} listed twice with different weights")]
    AsymmetricDuplicateEdge { u: String, v: String },
    #[error("edge {{{u}, {v}}} has negative weight")]
    NonPositiveEdgeWeight { u: String, v: String },
    #[error("graph is disconnected: `{unreachable}` cannot be reached from `{from}`")]
    DisconnectedGraph { from: String, unreachable: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("function has no value at vertex `{0}`")]
    PartialFunction(String),
    #[error("radius {radius} is beyond the valid range (last valid radius: {limit:?})")]
    HorizonExceeded { radius: usize, limit: Option<usize> },
    #[error("curvature needs two distinct vertices, got `{0}` twice")]
    SameVertex(String),
    #[error("sphere {0} has no inner neighbour sphere")]
    EmptySphere(usize),
    #[error("radii must satisfy r < R, got r = {r}, R = {big_r}")]
    BadRadiusOrder { r: usize, big_r: usize },
    #[error("invalid birth-death chain: {0}")]
    InvalidChain(String),
    #[error("sequence increases at index {index}")]
    SequenceNotNonincreasing { index: usize },
    #[error("sequence entry {index} is not positive")]
    NonPositiveEntry { index: usize },
    #[error("sequence must start with 1")]
    SequenceStart,
    #[error("no shared radius range to compare (horizons {left} and {right})")]
    HorizonMismatch { left: usize, right: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyGraph => "EmptyGraph",
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::NonPositiveMeasure(_) => "NonPositiveMeasure",
            Error::SelfLoop(_) => "SelfLoop",
            Error::AsymmetricDuplicateEdge { .. } => "AsymmetricDuplicateEdge",
            Error::NonPositiveEdgeWeight { .. } => "NonPositiveEdgeWeight",
            Error::DisconnectedGraph { .. } => "DisconnectedGraph",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::PartialFunction(_) => "PartialFunction",
            Error::HorizonExceeded { .. } => "HorizonExceeded",
            Error::SameVertex(_) => "SameVertex",
            Error::EmptySphere(_) => "EmptySphere",
            Error::BadRadiusOrder { .. } => "BadRadiusOrder",
            Error::InvalidChain(_) => "InvalidChain",
            Error::SequenceNotNonincreasing { .. } => "SequenceNotNonincreasing",
            Error::NonPositiveEntry { .. } => "NonPositiveEntry",
            Error::SequenceStart => "SequenceStart",
            Error::HorizonMismatch { .. } => "HorizonMismatch",
            Error::HypothesisFailed(_) => "HypothesisFailed",
            Error::InvalidRational(_) => "InvalidRational",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
