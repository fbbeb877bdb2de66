use thiserror::Error;

/// Errors raised by the library.
///
/// Input problems (bad files, unknown labels, malformed expressions) and
/// internal invariant failures are kept apart so front-ends can map them to
/// different exit statuses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("{op} requires {expected}")]
    WrongCharacteristic {
        op: &'static str,
        expected: &'static str,
    },
    #[error("degree cap exceeded: degree {degree} > cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("invalid scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: String },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("element is not in the endomorphism algebra")]
    NotAnEndomorphism,
    #[error("budget exceeded: {needed} elements needed, cap is {cap}")]
    BudgetExceeded { needed: String, cap: u64 },
    #[error("module has dimension 0")]
    EmptyModule,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{0}")]
    InvalidInput(String),
    #[error("closure violated: {0}")]
    ClosureViolation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than a broken
    /// internal invariant.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
