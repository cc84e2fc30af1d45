use std::collections::HashMap;

use serde::Serialize;

use crate::model::{Instance, Item, LevelEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    ConstraintViolated,
    EdgeCrossing,
    RankMismatch,
    StructureMismatch,
}

/// A concrete defect of a drawing, naming the items involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub level: usize,
    pub items: Vec<String>,
}

impl Violation {
    fn new(kind: ViolationKind, level: usize, items: Vec<String>) -> Self {
        Self { kind, level, items }
    }
}

fn edge_label(a: &str, b: &str) -> String {
    format!("{a}->{b}")
}

/// Checks that `emb` is a crossing-free drawing of `instance` that respects
/// its constraints or ranks. Structural problems are reported alone since the
/// remaining checks are meaningless without a matching structure.
pub fn verify_drawing(instance: &Instance, emb: &LevelEmbedding) -> Result<(), Vec<Violation>> {
    let graph = instance.graph();
    let h = graph.height();
    let mut structural = Vec::new();
    if emb.levels.len() != h {
        structural.push(Violation::new(
            ViolationKind::StructureMismatch,
            0,
            vec![format!(
                "embedding has {} levels, instance has {h}",
                emb.levels.len()
            )],
        ));
        return Err(structural);
    }

    // Position of every vertex and of every edge marker, per level.
    let mut vertex_pos: HashMap<&str, (usize, usize)> = HashMap::new();
    let mut marker_pos: HashMap<(&str, &str, usize), usize> = HashMap::new();
    for (i, items) in emb.levels.iter().enumerate() {
        let level = i + 1;
        for (p, item) in items.iter().enumerate() {
            match item {
                Item::Vertex(id) => match graph.vertex(id) {
                    Some(v) if graph.level(v) == level => {
                        if vertex_pos.insert(id, (level, p)).is_some() {
                            structural.push(Violation::new(
                                ViolationKind::StructureMismatch,
                                level,
                                vec![id.clone()],
                            ));
                        }
                    }
                    _ => structural.push(Violation::new(
                        ViolationKind::StructureMismatch,
                        level,
                        vec![id.clone()],
                    )),
                },
                Item::Edge(a, b) => {
                    let ok = match (graph.vertex(a), graph.vertex(b)) {
                        (Some(u), Some(v)) => {
                            graph.adjacent(u, v) && graph.level(u) < level && level < graph.level(v)
                        }
                        _ => false,
                    };
                    if !ok || marker_pos.insert((a, b, level), p).is_some() {
                        structural.push(Violation::new(
                            ViolationKind::StructureMismatch,
                            level,
                            vec![edge_label(a, b)],
                        ));
                    }
                }
            }
        }
    }
    for v in graph.vertices() {
        if !vertex_pos.contains_key(graph.id(v)) {
            structural.push(Violation::new(
                ViolationKind::StructureMismatch,
                graph.level(v),
                vec![graph.id(v).to_string()],
            ));
        }
    }
    for &(u, v) in graph.edges() {
        for level in graph.level(u) + 1..graph.level(v) {
            if !marker_pos.contains_key(&(graph.id(u), graph.id(v), level)) {
                structural.push(Violation::new(
                    ViolationKind::StructureMismatch,
                    level,
                    vec![edge_label(graph.id(u), graph.id(v))],
                ));
            }
        }
    }
    if !structural.is_empty() {
        return Err(structural);
    }

    let mut found = Vec::new();
    let pos = |v: usize| vertex_pos[graph.id(v)].1;
    match instance {
        Instance::Constrained(c) => {
            for &(a, b) in c.constraints() {
                if pos(a) > pos(b) {
                    found.push(Violation::new(
                        ViolationKind::ConstraintViolated,
                        graph.level(a),
                        vec![graph.id(a).to_string(), graph.id(b).to_string()],
                    ));
                }
            }
        }
        Instance::Ordered(o) => {
            for level in 1..=h {
                let drawn: Vec<&str> = emb.levels[level - 1]
                    .iter()
                    .filter_map(Item::vertex_id)
                    .collect();
                let wanted: Vec<&str> = o.level_order(level).iter().map(|&v| graph.id(v)).collect();
                if drawn != wanted {
                    found.push(Violation::new(
                        ViolationKind::RankMismatch,
                        level,
                        drawn.iter().map(|s| s.to_string()).collect(),
                    ));
                }
            }
        }
    }

    // Each edge contributes one segment per band it spans; an endpoint of a
    // segment is the position of the vertex or marker on that level.
    let point = |a: &str, b: &str, end: &str, level: usize| -> usize {
        match vertex_pos.get(end) {
            Some(&(l, p)) if l == level => p,
            _ => marker_pos[&(a, b, level)],
        }
    };
    let mut bands: Vec<Vec<(usize, usize, String)>> = vec![Vec::new(); h.saturating_sub(1)];
    for &(u, v) in graph.edges() {
        let (a, b) = (graph.id(u), graph.id(v));
        for level in graph.level(u)..graph.level(v) {
            let lo = if level == graph.level(u) {
                point(a, b, a, level)
            } else {
                marker_pos[&(a, b, level)]
            };
            let hi = if level + 1 == graph.level(v) {
                point(a, b, b, level + 1)
            } else {
                marker_pos[&(a, b, level + 1)]
            };
            bands[level - 1].push((lo, hi, edge_label(a, b)));
        }
    }
    for (i, segs) in bands.iter().enumerate() {
        for x in 0..segs.len() {
            for y in x + 1..segs.len() {
                let (p1, q1, ref e1) = segs[x];
                let (p2, q2, ref e2) = segs[y];
                if (p1 < p2 && q1 > q2) || (p1 > p2 && q1 < q2) {
                    found.push(Violation::new(
                        ViolationKind::EdgeCrossing,
                        i + 1,
                        vec![e1.clone(), e2.clone()],
                    ));
                }
            }
        }
    }
    if found.is_empty() {
        Ok(())
    } else {
        Err(found)
    }
}
