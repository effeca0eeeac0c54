use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch { expected: String, found: String },

    /// An exhaustive enumeration would exceed its configured cap.
    #[error("capacity exceeded: {what} needs {required}, cap is {cap}")]
    Capacity {
        what: &'static str,
        required: String,
        cap: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The hypotheses needed to construct a not-c.u.p. witness do not hold.
    #[error("witness not guaranteed: {0}")]
    WitnessNotGuaranteed(String),

    /// A search algorithm proposed a visited or out-of-range point.
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, required: impl ToString, cap: impl ToString) -> Self {
        Error::Capacity {
            what,
            required: required.to_string(),
            cap: cap.to_string(),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
