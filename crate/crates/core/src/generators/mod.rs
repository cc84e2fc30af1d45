//! Instance generators: hardness reductions with witness drawings, and random
//! instances for testing.

mod gadgets;
mod mcis;
mod partition;
mod random;
mod sketch;

pub use gadgets::{
    double_link_admissible, fits, link_instance, place_plug, place_socket, Frame, PlacedPlug,
    PlugSpec, SocketSpec, Template,
};
pub use mcis::{
    color_classes, gen_mcis, mcis_layout, realize_mcis_witness, GridLayout, McisInstance,
    COLLISION_BAND, COLOR_BAND,
};
pub use partition::{
    gen_3partition, realize_3partition_witness, ClipSpec, MountainChainSpec, ThreePartition,
    MAX_TOTAL,
};
pub use random::{planar_ordered_instance, random_instance, random_instance_with, RandomParams};
pub use sketch::{Route, Sketch};
