use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A mathematical identity that must hold did not.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("no element of degree {0} in the ideal")]
    NoElementOfDegree(i64),

    #[error("gave up after {attempts} random attempts: {what}")]
    RetriesExhausted { attempts: usize, what: String },

    #[error("saturation did not stabilize within {0} rounds")]
    SaturationCap(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the error reports a failed mathematical check rather than bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(self, Error::Verification(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
