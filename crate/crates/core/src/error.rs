use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Evaluation point lies within tolerance of the active branch cut.
    #[error("evaluation point is on the branch cut (distance {distance:e})")]
    OnCut { distance: f64 },

    /// S-curve branch mode was requested without supplying a curve.
    #[error("branch mode requires a traced curve")]
    BranchCurveRequired,

    /// The requested tolerance could not be certified.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Argument outside the operation's domain.
    #[error("domain error: {0}")]
    DomainError(String),

    /// The formal orthogonal polynomial of this degree does not exist.
    #[error("orthogonal polynomial of degree {degree} does not exist (pivot magnitude {pivot:e})")]
    ExistenceFailure { degree: usize, pivot: f64 },

    /// An iteration failed to converge.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// A quadrature node with vanishing p_n' was encountered.
    #[error("degenerate quadrature node {index}")]
    DegenerateNode { index: usize },

    /// Evaluation at a pole of the function.
    #[error("pole at z = {0}")]
    PoleAt(String),

    /// Point outside the region where an asymptotic formula is valid.
    #[error("region violation: {0}")]
    RegionViolation(String),

    /// Point within tolerance of a region boundary.
    #[error("point is on the region boundary")]
    OnBoundary,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
