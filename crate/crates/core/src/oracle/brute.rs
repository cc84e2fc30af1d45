use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{make_proper, ConstrainedLevelGraph, LevelEmbedding, OrderedLevelGraph, Vertex};

/// Bounds for the exhaustive search.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of partial placements explored.
    pub max_nodes: u64,
    /// When set, candidates are tried in a seeded random order instead of by index.
    pub shuffle: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_nodes: 10_000_000,
            shuffle: None,
        }
    }
}

/// Exhaustive search for a constrained level planar drawing. Enumerates the
/// linear extensions level by level, bottom to top, on the proper subdivision,
/// and prunes a placement as soon as it creates a crossing with the band below.
pub fn brute_clp(instance: &ConstrainedLevelGraph, limits: Limits) -> Result<LevelEmbedding> {
    let (proper, map) = make_proper(instance);
    let orders = search(&proper, limits)?.ok_or(Error::Infeasible)?;
    Ok(LevelEmbedding::from_proper_orders(
        &instance.graph,
        &proper.graph,
        &map,
        &orders,
    ))
}

/// Exhaustive search for an ordered level planar drawing: ranked vertices are
/// fixed and only the positions of long edges are enumerated.
pub fn brute_olp(instance: &OrderedLevelGraph, limits: Limits) -> Result<LevelEmbedding> {
    brute_clp(&instance.to_constrained(), limits)
}

struct Search {
    levels: Vec<Vec<Vertex>>,
    preds: Vec<Vec<Vertex>>,
    lower: Vec<Vec<Vertex>>,
    pos: Vec<usize>,
    placed: Vec<bool>,
    nodes: u64,
    limit: u64,
}

fn search(g: &ConstrainedLevelGraph, limits: Limits) -> Result<Option<Vec<Vec<Vertex>>>> {
    let graph = &g.graph;
    let mut levels = graph.by_level();
    if let Some(seed) = limits.shuffle {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for l in &mut levels {
            l.shuffle(&mut rng);
        }
    }
    let mut preds = vec![Vec::new(); graph.len()];
    for &(a, b) in g.constraints() {
        preds[b].push(a);
    }
    let lower = graph
        .vertices()
        .map(|v| {
            graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| graph.level(w) + 1 == graph.level(v))
                .collect()
        })
        .collect();
    let mut s = Search {
        levels,
        preds,
        lower,
        pos: vec![usize::MAX; graph.len()],
        placed: vec![false; graph.len()],
        nodes: 0,
        limit: limits.max_nodes,
    };
    let mut orders: Vec<Vec<Vertex>> = vec![Vec::new(); graph.height()];
    if s.level(0, &mut orders, 0)? {
        Ok(Some(orders))
    } else {
        Ok(None)
    }
}

impl Search {
    /// Fills level `li` (0-based) after `orders[li]`, then the levels above.
    /// `max_lower` is the largest lower-neighbor position among vertices
    /// already placed on this level.
    fn level(
        &mut self,
        li: usize,
        orders: &mut Vec<Vec<Vertex>>,
        max_lower: usize,
    ) -> Result<bool> {
        if li == self.levels.len() {
            return Ok(true);
        }
        if orders[li].len() == self.levels[li].len() {
            return self.level(li + 1, orders, 0);
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::SearchSpaceExceeded { limit: self.limit });
        }
        for k in 0..self.levels[li].len() {
            let x = self.levels[li][k];
            if self.placed[x] || self.preds[x].iter().any(|&p| !self.placed[p]) {
                continue;
            }
            // A new rightmost vertex must not reach below the lower endpoint of
            // any segment already placed in the band beneath.
            let lows = self.lower[x].iter().map(|&y| self.pos[y]);
            let min_low = lows.clone().min();
            if let Some(m) = min_low {
                if m < max_lower {
                    continue;
                }
            }
            let new_max = lows.max().map_or(max_lower, |m| m.max(max_lower));
            self.placed[x] = true;
            self.pos[x] = orders[li].len();
            orders[li].push(x);
            if self.level(li, orders, new_max)? {
                return Ok(true);
            }
            orders[li].pop();
            self.placed[x] = false;
            self.pos[x] = usize::MAX;
        }
        Ok(false)
    }
}
