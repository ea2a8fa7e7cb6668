use thiserror::Error;

use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FriezeError {
    #[error("invalid parameters: {0}")]
    Parameters(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("incomplete input: missing value for {0}")]
    Missing(Subset),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cluster count exceeded the cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("search exhausted after visiting {visited} collections")]
    SearchExhausted { visited: usize },

    #[error("no square move available at {0}")]
    MoveUnavailable(Subset),

    #[error("construction failed at {subset}: {reason}")]
    Construction { subset: Subset, reason: String },

    #[error("degenerate point: interval minor {0} vanishes")]
    Degenerate(Subset),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = FriezeError> = std::result::Result<T, E>;
