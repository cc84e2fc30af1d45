use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("vertex `{id}` has level {level} outside 1..={height}")]
    LevelOutOfRange {
        id: String,
        level: usize,
        height: usize,
    },
    #[error("edge ({0}, {1}) does not point upward")]
    EdgeNotUpward(String, String),
    #[error("edge ({0}, {1}) joins two vertices of the same level")]
    SameLevelEdge(String, String),
    #[error("edge ({0}, {1}) appears twice")]
    DuplicateEdge(String, String),
    #[error("rank {rank} used twice on level {level}")]
    DuplicateRank { level: usize, rank: usize },
    #[error("vertex `{id}` has rank {rank}, expected 1..={width}")]
    RankOutOfRange {
        id: String,
        rank: usize,
        width: usize,
    },
    #[error("ranks must be given for all vertices or for none")]
    IncompleteRanks,
    #[error("constraints are not allowed together with ranks")]
    MixedModes,
    #[error("constraint ({0}, {1}) does not lie on a single level")]
    ConstraintAcrossLevels(String, String),
    #[error("constraint ({0}, {0}) is reflexive")]
    ReflexiveConstraint(String),
    #[error("level {0} is empty")]
    EmptyLevel(usize),
    #[error("merged order on level {0} is cyclic")]
    OrderCycle(usize),
    #[error("malformed input: {0}")]
    Malformed(String),
}
