use thiserror::Error;

/// Errors raised by the library. The CLI maps these onto its exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{what} budget of {limit} exceeded")]
    Budget { what: &'static str, limit: u64 },

    #[error("marking is incoherent: {0}")]
    IncoherentMarking(String),

    #[error(
        "box bound {bound} is insufficient for the Hilbert basis; retry with --bound {suggested}"
    )]
    BoundInsufficient { bound: u32, suggested: u32 },

    #[error("incidence matrix is not negative definite")]
    NotNegativeDefinite,

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
