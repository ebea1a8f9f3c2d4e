use thiserror::Error;

/// Errors raised by the lattice, measure and aggregation operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live on different scales.
    #[error("chain mismatch: `{left}` vs `{right}`")]
    ChainMismatch { left: String, right: String },

    #[error("rank {rank} out of range for chain `{chain}` of size {size}")]
    OutOfRange {
        chain: String,
        rank: i64,
        size: usize,
    },

    /// A value failed its construction invariants (non-monotone measure,
    /// non-increasing commensurability function, malformed chain, ...).
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    /// An operation was called outside its domain.
    #[error("{0}")]
    Domain(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
