use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("diagonal entry {index} must be strictly positive, got {value}")]
    NonPositiveDiagonal { index: usize, value: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertex `{0}` is isolated; curvature is +infinity there")]
    IsolatedVertex(String),

    #[error("invalid dimension parameter {0}: must be > 0 or infinite")]
    InvalidDimension(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
