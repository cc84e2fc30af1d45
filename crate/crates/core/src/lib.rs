//! Exact solvers and certified drawings for constrained and ordered level
//! planarity, together with hardness-instance generators and brute-force
//! oracles used to cross-check them.

pub mod model;
pub mod order;

pub use model::*;
pub mod cli;
pub mod clp2;
pub mod clp3;
pub mod error;
pub mod generators;
pub mod olp;
pub mod oracle;

pub use error::{Error, Result};
