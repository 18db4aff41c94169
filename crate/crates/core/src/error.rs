use thiserror::Error;

use crate::weights::Weights;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("weights {0} are not well-formed")]
    NotWellFormed(Weights),

    #[error("subset {subset:?} has gcd 1 and is not a singular stratum")]
    NoSingularity { subset: Vec<usize> },

    #[error("index {index} is not in subset {subset:?}")]
    IndexNotInSubset { index: usize, subset: Vec<usize> },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("amplitude {0} is not positive")]
    NonPositiveAmplitude(i64),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("no result: {0}")]
    EmptyResult(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
