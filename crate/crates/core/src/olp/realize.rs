use std::collections::HashMap;

use super::dp::{on_vertex, SweepingSequence};
use crate::error::{Error, Result};
use crate::model::{Coordinates, EdgePolyline, Item, LevelEmbedding, OrderedLevelGraph, Vertex};

/// Step, then 0 for a vertex skipped before the curve or 1 for an item on
/// it, then rank.
type SortKey = (usize, usize, usize);

/// Builds a drawing from a sweeping sequence that uses every edge. A vertex is
/// placed at the first step where it lies on the separation, and an edge is
/// routed along the first separation that uses it; the step index is the x
/// coordinate.
pub fn realize(g: &OrderedLevelGraph, seq: &SweepingSequence) -> Result<LevelEmbedding> {
    let graph = &g.graph;
    let h = graph.height();
    let mut seps = seq.separations.clone();
    if seps.first().is_none_or(|s| s.iter().any(|&p| p != 0)) {
        seps.insert(0, vec![0; h]);
    }
    for (t, s) in seps.iter().enumerate() {
        if s.len() != h {
            return Err(Error::SequenceInvalid(format!(
                "separation {t} has {} entries",
                s.len()
            )));
        }
        for (i, &p) in s.iter().enumerate() {
            if p > 2 * g.width(i + 1) {
                return Err(Error::SequenceInvalid(format!(
                    "separation {t} is out of range on level {}",
                    i + 1
                )));
            }
        }
    }
    if seps
        .windows(2)
        .any(|w| w[0].iter().zip(&w[1]).any(|(a, b)| a > b))
    {
        return Err(Error::SequenceInvalid(
            "separations are not monotone".into(),
        ));
    }

    let mut vertex_step: Vec<Option<usize>> = vec![None; graph.len()];
    let mut edge_step: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for (t, s) in seps.iter().enumerate() {
        let on: Vec<(usize, Vertex)> = (0..h)
            .filter_map(|i| Some((i, on_vertex(g, s, i)?)))
            .collect();
        for &(_, v) in &on {
            vertex_step[v].get_or_insert(t);
        }
        for w in on.windows(2) {
            let (a, b) = (w[0].1, w[1].1);
            if graph.adjacent(a, b) {
                edge_step.entry((a, b)).or_insert(t);
            }
        }
    }
    // Vertices the sequence jumps over are isolated or the input is invalid;
    // they sit just after the last separation left of them.
    for v in graph.vertices() {
        if vertex_step[v].is_none() {
            let idx = 2 * g.rank(v) - 1;
            let level = graph.level(v) - 1;
            let t = seps.iter().position(|s| s[level] > idx).ok_or_else(|| {
                Error::SequenceInvalid(format!("vertex `{}` is never passed", graph.id(v)))
            })?;
            if graph.degree(v) > 0 {
                return Err(Error::SequenceInvalid(format!(
                    "vertex `{}` is skipped",
                    graph.id(v)
                )));
            }
            vertex_step[v] = Some(t);
        }
    }
    for &(u, v) in graph.edges() {
        if !edge_step.contains_key(&(u, v)) {
            return Err(Error::SequenceInvalid(format!(
                "edge ({}, {}) is never used",
                graph.id(u),
                graph.id(v)
            )));
        }
    }

    // Sort keys: skipped isolated vertices come before the curve of their
    // step, by rank; items on a curve are unique per level.
    let mut rows: Vec<Vec<(SortKey, Item)>> = vec![Vec::new(); h];
    let mut coords = Coordinates::default();
    let mut vertex_x = vec![0.0; graph.len()];
    for v in graph.vertices() {
        let t = vertex_step[v].expect("assigned");
        let level = graph.level(v);
        let on_curve = seps[t][level - 1] == 2 * g.rank(v) - 1;
        let key = if on_curve {
            (t, 1, 0)
        } else {
            (t, 0, g.rank(v))
        };
        vertex_x[v] = if on_curve {
            t as f64
        } else {
            t as f64 - 0.5 + 0.4 * g.rank(v) as f64 / (g.width(level) + 1) as f64
        };
        rows[level - 1].push((key, Item::Vertex(graph.id(v).to_string())));
    }
    let mut polylines = Vec::new();
    for &(u, v) in graph.edges() {
        let t = edge_step[&(u, v)];
        let (a, b) = (graph.id(u).to_string(), graph.id(v).to_string());
        let mut points = vec![(vertex_x[u], graph.level(u) as f64)];
        for level in graph.level(u) + 1..graph.level(v) {
            rows[level - 1].push(((t, 1, 0), Item::Edge(a.clone(), b.clone())));
            points.push((t as f64, level as f64));
        }
        points.push((vertex_x[v], graph.level(v) as f64));
        polylines.push(EdgePolyline {
            edge: (a, b),
            points,
        });
    }
    for v in graph.vertices() {
        coords.vertices.insert(
            graph.id(v).to_string(),
            (vertex_x[v], graph.level(v) as f64),
        );
    }
    polylines.sort_by(|x, y| x.edge.cmp(&y.edge));
    coords.edges = polylines;
    let levels = rows
        .into_iter()
        .map(|mut row| {
            row.sort_by_key(|(k, _)| *k);
            row.into_iter().map(|(_, item)| item).collect()
        })
        .collect();
    Ok(LevelEmbedding {
        levels,
        coordinates: Some(coords),
    })
}
