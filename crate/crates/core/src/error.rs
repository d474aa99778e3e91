use thiserror::Error;

/// Errors produced while building or evaluating the construction.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation (non-finite angle,
    /// `r >= 1` for a kernel, empty point set, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A boundary-set or run configuration document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A document parsed but describes an invalid object.
    #[error("validation error: {0}")]
    Validation(String),

    /// The boundary set is empty; callers should take the trivial path.
    #[error("degenerate input: the boundary set is empty")]
    Degenerate,

    /// The requested depth cannot be certified for this descriptor.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A cover level violates the structure the bump builder relies on.
    #[error("malformed cover at level {level}, arc {arc}: {reason}")]
    MalformedCover {
        level: usize,
        arc: usize,
        reason: String,
    },

    /// A derivative was requested too close to the zero set.
    #[error("angle {theta} lies within {distance:e} of the boundary set")]
    Proximity { theta: f64, distance: f64 },

    /// A precondition of a verification operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
