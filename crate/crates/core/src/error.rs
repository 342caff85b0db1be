use thiserror::Error;

/// Errors raised by the library.
///
/// `NotOnInvariantSet` and `NoAdmissibleAngle` are physics outcomes rather than
/// tool failures: a parameter the model cannot represent.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not on the invariant set: {0}")]
    NotOnInvariantSet(String),

    #[error("no admissible angle within {window} turns of {requested}")]
    NoAdmissibleAngle { requested: String, window: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("bit string carries no constructed orbit descriptor")]
    MissingDescriptor,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for outcomes that mean "the model excludes this", as opposed to misuse.
    pub fn is_exclusion(&self) -> bool {
        matches!(self, Error::NotOnInvariantSet(_) | Error::NoAdmissibleAngle { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
