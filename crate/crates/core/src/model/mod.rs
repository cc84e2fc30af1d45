//! Instance types, embeddings, file formats and graph transformations.

mod compact;
mod components;
mod embedding;
mod error;
mod graph;
mod io;
mod isolated;
mod proper;
mod svg;

pub use compact::{compact_constrained, compact_graph, compact_ordered, level_renumbering};
pub use components::{components, Components};
pub use embedding::{Coordinates, EdgePolyline, Item, LevelEmbedding};
pub use error::ModelError;
pub use graph::{ConstrainedLevelGraph, Instance, LevelGraph, OrderedLevelGraph, Vertex};
pub use io::{
    instance_to_json, parse_instance, to_raw, validate_instance, RawConstraint, RawInstance,
    RawVertex,
};
pub use isolated::{reinsert_isolated, strip_isolated, Stripped};
pub use proper::{make_proper, subdivide, SubdivisionMap};
pub use svg::render_svg;
