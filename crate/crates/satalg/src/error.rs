use thiserror::Error;

/// Error type shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A function argument lies outside the mathematical domain of the
    /// operation (gamma poles, |w| >= 1 series requests, m = 0 ladders, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Model or state parameters violate a documented constraint. The message
    /// names the constraint so CLI users see exactly what was rejected.
    #[error("invalid parameters: {0}")]
    Validation(String),

    /// A quantity needed by the requested operation is degenerate
    /// (zero denominator in a closed-form coefficient, empty chain, ...).
    #[error("degenerate case: {0}")]
    Degenerate(String),

    /// An iterative routine failed to converge within its iteration cap.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// The requested quantity has no closed form for this model; the message
    /// names the substitute verification route.
    #[error("unavailable: {0}")]
    Unavailable(String),

    /// Malformed input files or flags.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
