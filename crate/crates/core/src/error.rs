use thiserror::Error;

/// Errors raised by the kernel, the loop machinery and the catalog loader.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("cycle notation parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid loop table: {0}")]
    InvalidLoop(String),

    /// Some quotient `r_i r_j^{-1}` fixes a point, so the right section is not a loop.
    #[error("translations for {first} and {second} agree on point {point}")]
    NotALoop {
        first: usize,
        second: usize,
        point: usize,
    },

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: String, limit: u64 },

    #[error("catalog line {line}: {message}")]
    Catalog { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
