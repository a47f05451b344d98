use thiserror::Error;

/// Errors raised by the geometry, graph and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Rank-deficient simplices and coincident point sets.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("projection undefined: point lies on the pole pair of the hyperplane")]
    UndefinedProjection,
    #[error("boundary classification failed: {0}")]
    Classification(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("rejection sampling gave up after {attempts} attempts")]
    Sampling { attempts: usize },
    #[error("case preconditions unmet: {0}")]
    Case(String),
    #[error("procedure failed: {0}")]
    Procedure(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
