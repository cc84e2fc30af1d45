//! Ground truth for small instances: an independent drawing verifier and
//! exhaustive searches.

mod brute;
mod verify;

pub use brute::{brute_clp, brute_olp, Limits};
pub use verify::{verify_drawing, Violation, ViolationKind};
