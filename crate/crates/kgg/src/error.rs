use thiserror::Error;

/// Errors raised by graph builders, matching engines, and generators.
#[derive(Debug, Error)]
pub enum Error {
    /// A disk-with-diameter predicate was asked about a degenerate diameter.
    #[error("degenerate diameter: the two endpoints coincide within tolerance")]
    DegenerateDiameter,

    /// Two points of a set coincide within the predicate tolerance.
    #[error("duplicate points: indices {i} and {j} coincide within tolerance")]
    DuplicatePoints { i: usize, j: usize },

    /// A point has a non-finite coordinate.
    #[error("non-finite coordinate at point index {index}")]
    NonFinitePoint { index: usize },

    /// An operation that needs at least two points got fewer.
    #[error("point set too small: got {n}, need at least {min}")]
    TooFewPoints { n: usize, min: usize },

    /// Perfect-matching operations require an even number of vertices.
    #[error("odd vertex count {n}: perfect matchings need an even count")]
    OddCardinality { n: usize },

    /// No perfect matching exists in the allowed edge set.
    #[error("no perfect matching exists in the allowed edge set")]
    NoPerfectMatching,

    /// Input exceeds the cap of an exhaustive oracle.
    #[error("instance too large for exhaustive oracle: n = {n}, cap = {cap}")]
    TooLarge { n: usize, cap: usize },

    /// A partition class is empty.
    #[error("partition class {class} is empty")]
    EmptyClass { class: usize },

    /// A partition is not a partition: repeated or out-of-range indices.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A generator parameter violates one of its stated constraints.
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    /// A self-verifying generator failed its own check.
    #[error("generator self-check failed: {0}")]
    SelfCheckFailed(String),

    /// Point-file parse error.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A caller-supplied argument is out of contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
