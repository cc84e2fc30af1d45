//! Ordered level planarity: a memoized search over separations of the
//! levels, and drawing construction from the resulting sweeping sequence.

mod dp;
mod realize;

pub use dp::{
    classify, on_vertex, position_index, solve, step_back, uses_edge, OlpOptions, OlpStats,
    Separation, Side, SweepingSequence, UsedEdgeSet,
};
pub use realize::realize;

use crate::error::Result;
use crate::model::{LevelEmbedding, OrderedLevelGraph};

/// Decides the instance and returns a drawing when one exists.
pub fn solve_and_draw(g: &OrderedLevelGraph, options: &OlpOptions) -> Result<LevelEmbedding> {
    let (seq, _) = solve(g, options)?;
    realize(g, &seq)
}
