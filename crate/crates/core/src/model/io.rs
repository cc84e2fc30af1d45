use serde::{Deserialize, Serialize};

use super::{ConstrainedLevelGraph, Instance, LevelGraph, ModelError, OrderedLevelGraph};

/// Instance file as parsed from JSON, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RawInstance {
    pub height: usize,
    #[serde(default)]
    pub vertices: Vec<RawVertex>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<RawConstraint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVertex {
    pub id: String,
    pub level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawConstraint {
    pub level: usize,
    pub before: String,
    pub after: String,
}

/// Type-checks a parsed instance. With `strict`, every level must be occupied.
pub fn validate_instance(raw: &RawInstance, strict: bool) -> Result<Instance, ModelError> {
    let mut graph = LevelGraph::new(raw.height);
    for v in &raw.vertices {
        graph.add_vertex(v.id.clone(), v.level)?;
    }
    let lookup = |id: &String| {
        graph
            .vertex(id)
            .ok_or_else(|| ModelError::UnknownVertex(id.clone()))
    };
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (a, b) in &raw.edges {
        edges.push((lookup(a)?, lookup(b)?));
    }
    let mut constraints = Vec::with_capacity(raw.constraints.len());
    for c in &raw.constraints {
        let (a, b) = (lookup(&c.before)?, lookup(&c.after)?);
        if graph.level(a) != c.level || graph.level(b) != c.level {
            return Err(ModelError::ConstraintAcrossLevels(
                c.before.clone(),
                c.after.clone(),
            ));
        }
        constraints.push((a, b));
    }
    for (a, b) in edges {
        graph.add_edge(a, b)?;
    }
    if strict {
        let by_level = graph.by_level();
        if let Some(i) = by_level.iter().position(Vec::is_empty) {
            return Err(ModelError::EmptyLevel(i + 1));
        }
    }
    let ranked = raw.vertices.iter().filter(|v| v.rank.is_some()).count();
    if ranked == 0 || raw.vertices.is_empty() {
        let mut out = ConstrainedLevelGraph::new(graph);
        for (a, b) in constraints {
            out.add_constraint(a, b)?;
        }
        return Ok(Instance::Constrained(out));
    }
    if ranked != raw.vertices.len() {
        return Err(ModelError::IncompleteRanks);
    }
    if !constraints.is_empty() {
        return Err(ModelError::MixedModes);
    }
    let by_level = graph.by_level();
    let mut order: Vec<Vec<Option<usize>>> = by_level.iter().map(|l| vec![None; l.len()]).collect();
    for (v, raw_v) in raw.vertices.iter().enumerate() {
        let rank = raw_v.rank.expect("all ranked");
        let width = by_level[raw_v.level - 1].len();
        if rank == 0 || rank > width {
            return Err(ModelError::RankOutOfRange {
                id: raw_v.id.clone(),
                rank,
                width,
            });
        }
        let slot = &mut order[raw_v.level - 1][rank - 1];
        if slot.is_some() {
            return Err(ModelError::DuplicateRank {
                level: raw_v.level,
                rank,
            });
        }
        *slot = Some(v);
    }
    let order = order
        .into_iter()
        .map(|l| l.into_iter().map(|v| v.expect("permutation")).collect())
        .collect();
    Ok(Instance::Ordered(OrderedLevelGraph::new(graph, order)?))
}

/// Parses and validates instance JSON.
pub fn parse_instance(text: &str, strict: bool) -> Result<Instance, ModelError> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| ModelError::Malformed(e.to_string()))?;
    validate_instance(&raw, strict)
}

/// Canonical raw form: vertices by (level, rank, id), edges and constraints sorted.
pub fn to_raw(instance: &Instance) -> RawInstance {
    let graph = instance.graph();
    let mut vertices: Vec<RawVertex> = graph
        .vertices()
        .map(|v| RawVertex {
            id: graph.id(v).to_string(),
            level: graph.level(v),
            rank: match instance {
                Instance::Ordered(o) => Some(o.rank(v)),
                Instance::Constrained(_) => None,
            },
        })
        .collect();
    vertices.sort_by(|a, b| (a.level, a.rank, &a.id).cmp(&(b.level, b.rank, &b.id)));
    let mut edges: Vec<(String, String)> = graph
        .edges()
        .iter()
        .map(|&(u, v)| (graph.id(u).to_string(), graph.id(v).to_string()))
        .collect();
    edges.sort();
    let mut constraints: Vec<RawConstraint> = match instance {
        Instance::Constrained(c) => c
            .constraints()
            .iter()
            .map(|&(u, v)| RawConstraint {
                level: graph.level(u),
                before: graph.id(u).to_string(),
                after: graph.id(v).to_string(),
            })
            .collect(),
        Instance::Ordered(_) => Vec::new(),
    };
    constraints.sort_by(|a, b| (a.level, &a.before, &a.after).cmp(&(b.level, &b.before, &b.after)));
    RawInstance {
        height: graph.height(),
        vertices,
        edges,
        constraints,
    }
}

/// Canonical pretty JSON for an instance.
pub fn instance_to_json(instance: &Instance) -> String {
    serde_json::to_string_pretty(&to_raw(instance)).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(text: &str) -> RawInstance {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn empty_instance_is_valid() {
        let inst = validate_instance(&raw(r#"{"height":0}"#), true).unwrap();
        assert!(inst.graph().is_empty());
    }

    #[test]
    fn same_level_edge_rejected() {
        let r = raw(
            r#"{"height":2,"vertices":[{"id":"a","level":2},{"id":"b","level":2}],"edges":[["a","b"]]}"#,
        );
        assert_eq!(
            validate_instance(&r, false).unwrap_err(),
            ModelError::SameLevelEdge("a".into(), "b".into())
        );
    }

    #[test]
    fn partial_ranks_rejected() {
        let r =
            raw(r#"{"height":1,"vertices":[{"id":"a","level":1,"rank":1},{"id":"b","level":1}]}"#);
        assert_eq!(
            validate_instance(&r, false).unwrap_err(),
            ModelError::IncompleteRanks
        );
    }

    #[test]
    fn duplicate_rank_rejected() {
        let r = raw(
            r#"{"height":1,"vertices":[{"id":"a","level":1,"rank":1},{"id":"b","level":1,"rank":1}]}"#,
        );
        assert!(matches!(
            validate_instance(&r, false).unwrap_err(),
            ModelError::DuplicateRank { level: 1, rank: 1 }
        ));
    }

    #[test]
    fn empty_level_only_when_strict() {
        let r = raw(r#"{"height":2,"vertices":[{"id":"a","level":1}]}"#);
        assert!(validate_instance(&r, false).is_ok());
        assert_eq!(
            validate_instance(&r, true).unwrap_err(),
            ModelError::EmptyLevel(2)
        );
    }
}
