use std::collections::HashMap;

use super::{ConstrainedLevelGraph, Item, LevelEmbedding, ModelError, Vertex};
use crate::order::linear_extension;

/// Result of removing isolated vertices.
#[derive(Debug, Clone)]
pub struct Stripped {
    /// Instance induced by the non-isolated vertices. Constraints implied
    /// through removed vertices are kept as direct pairs.
    pub instance: ConstrainedLevelGraph,
    /// `kept[new] = old` handle.
    pub kept: Vec<Vertex>,
    pub removed: Vec<Vertex>,
}

pub fn strip_isolated(g: &ConstrainedLevelGraph) -> Stripped {
    let graph = &g.graph;
    let (kept, removed): (Vec<Vertex>, Vec<Vertex>) =
        graph.vertices().partition(|&v| graph.degree(v) > 0);
    let (mut instance, _) = g.induced(&kept);
    if !removed.is_empty() {
        let local: HashMap<Vertex, Vertex> =
            kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut succ = vec![Vec::new(); graph.len()];
        for &(a, b) in g.constraints() {
            succ[a].push(b);
        }
        let pred = pred_lists(g);
        // Only paths through a removed vertex can add anything new.
        for &w in &removed {
            let preds = reach(&pred, w);
            let succs = reach(&succ, w);
            for &a in preds.iter().filter(|a| local.contains_key(a)) {
                for &b in succs.iter().filter(|b| local.contains_key(b)) {
                    if a != b {
                        let _ = instance.add_constraint(local[&a], local[&b]);
                    }
                }
            }
        }
    }
    Stripped {
        instance,
        kept,
        removed,
    }
}

fn pred_lists(g: &ConstrainedLevelGraph) -> Vec<Vec<Vertex>> {
    let mut pred = vec![Vec::new(); g.graph.len()];
    for &(a, b) in g.constraints() {
        pred[b].push(a);
    }
    pred
}

fn reach(adj: &[Vec<Vertex>], start: Vertex) -> Vec<Vertex> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    let mut out = Vec::new();
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                out.push(w);
                stack.push(w);
            }
        }
    }
    out
}

/// Adds every vertex of `full` missing from `emb` by a linear extension of
/// the drawing order merged with the constraints of `full`. Unconstrained
/// vertices go as far left as possible, smallest id first.
pub fn reinsert_isolated(
    full: &ConstrainedLevelGraph,
    emb: &LevelEmbedding,
) -> Result<LevelEmbedding, ModelError> {
    let graph = &full.graph;
    let mut out = LevelEmbedding {
        levels: Vec::with_capacity(graph.height()),
        coordinates: None,
    };
    let by_level = graph.by_level();
    let constraints = full.constraints_by_level();
    for level in 1..=graph.height() {
        let drawn: &[Item] = emb.levels.get(level - 1).map(Vec::as_slice).unwrap_or(&[]);
        let mut node_of: HashMap<&str, usize> = HashMap::new();
        for (i, item) in drawn.iter().enumerate() {
            if let Item::Vertex(id) = item {
                node_of.insert(id, i);
            }
        }
        let missing: Vec<Vertex> = by_level[level - 1]
            .iter()
            .copied()
            .filter(|&v| !node_of.contains_key(graph.id(v)))
            .collect();
        if missing.is_empty() {
            out.levels.push(drawn.to_vec());
            continue;
        }
        for (k, &v) in missing.iter().enumerate() {
            node_of.insert(graph.id(v), drawn.len() + k);
        }
        let n = drawn.len() + missing.len();
        let chain = (1..drawn.len()).map(|i| (i - 1, i));
        let extra = constraints[level - 1]
            .iter()
            .map(|&(a, b)| (node_of[graph.id(a)], node_of[graph.id(b)]));
        let order = linear_extension(n, chain.chain(extra), |i| {
            if i < drawn.len() {
                (1, i, "")
            } else {
                (0, 0, graph.id(missing[i - drawn.len()]))
            }
        })
        .ok_or(ModelError::OrderCycle(level))?;
        out.levels.push(
            order
                .into_iter()
                .map(|i| {
                    if i < drawn.len() {
                        drawn[i].clone()
                    } else {
                        Item::Vertex(graph.id(missing[i - drawn.len()]).to_string())
                    }
                })
                .collect(),
        );
    }
    Ok(out)
}
