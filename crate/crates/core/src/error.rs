use crate::coord::Coord;

/// Errors produced by the geometry, sweep, oracle, generator and io layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polygon {id:?} has {count} vertices, at least 3 are required")]
    TooFewVertices { id: String, count: usize },

    #[error("polygon {id:?} repeats vertex {index} consecutively")]
    DuplicateConsecutiveVertex { id: String, index: usize },

    #[error("polygon {id:?} has all vertices on one line")]
    DegenerateAllCollinear { id: String },

    #[error("x = {xi} lies outside the admissible interval [{lo}, {hi}]")]
    OutOfDomain { xi: Coord, lo: Coord, hi: Coord },

    #[error("segment parities of polygon {id:?} are inconsistent (is the polygon simple?)")]
    ParityInconsistency { id: String },

    #[error("segment has no parity assigned")]
    MissingParity,

    #[error("polygons {first:?} and {second:?} overlap")]
    OverlapDetected { first: String, second: String },

    #[error("sweep invariant violated: {0}")]
    InternalOrderViolation(String),

    #[error("polygon id {0:?} is used more than once")]
    DuplicateId(String),

    #[error("containment between {0:?} and {1:?} is cyclic")]
    ContainmentCycle(String, String),

    #[error("cannot find an interior point of polygon {0:?}")]
    DegeneratePolygon(String),

    #[error("instance generation failed: {0}")]
    GenerationFailed(String),

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid instance ({}): {message}", polygon.as_deref().unwrap_or("document"))]
    Semantic { polygon: Option<String>, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
