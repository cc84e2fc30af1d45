use thiserror::Error;

use crate::model::ModelError;

/// Errors shared by solvers, oracles and generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance is infeasible")]
    Infeasible,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("memo table exceeded {limit} entries")]
    MemoLimit { limit: usize },
    #[error("brute-force search exceeded {limit} nodes")]
    SearchSpaceExceeded { limit: u64 },
    #[error("constrained level planarity with height {height} is NP-hard already for four levels; only heights up to 3 are supported")]
    UnsupportedHeight { height: usize },
    #[error("sweeping sequence is invalid: {0}")]
    SequenceInvalid(String),
    #[error("invalid parameter: {0}")]
    ParameterInvalid(String),
    #[error("invalid witness: {0}")]
    WitnessInvalid(String),
}

impl Error {
    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Infeasible => "Infeasible",
            Error::Model(_) => "InvalidInstance",
            Error::MemoLimit { .. } => "MemoLimit",
            Error::SearchSpaceExceeded { .. } => "SearchSpaceExceeded",
            Error::UnsupportedHeight { .. } => "UnsupportedHeight",
            Error::SequenceInvalid(_) => "SequenceInvalid",
            Error::ParameterInvalid(_) => "ParameterInvalid",
            Error::WitnessInvalid(_) => "WitnessInvalid",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
