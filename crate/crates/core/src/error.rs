use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
///
/// Validation routines that are expected to find problems (category axioms,
/// diagram functoriality, naturality) return reports instead of errors; an
/// `Error` means the caller handed in something the operation cannot work on.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain/codomain mismatch: {0}")]
    Mismatch(String),

    #[error("value {value} out of range 0..={max} ({context})")]
    OutOfRange { value: usize, max: usize, context: String },

    #[error("truncation exceeded: {0}")]
    Truncation(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("missing component: {0}")]
    MissingComponent(String),

    #[error("enumeration budget of {budget} candidates exceeded")]
    BudgetExceeded { budget: usize },

    #[error("counit is not well defined on class {class} at object {object}")]
    InconsistentCounit { object: usize, class: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
