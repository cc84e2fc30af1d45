use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConstrainedLevelGraph, Instance, LevelGraph, OrderedLevelGraph};

/// Parameters for random test instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RandomParams {
    pub height: usize,
    pub vertices: usize,
    pub max_width: usize,
    /// Probability of an edge between two vertices on different levels.
    pub edge_prob: f64,
    /// Probability of a constraint between two vertices of one level.
    pub constraint_prob: f64,
    /// Only join adjacent levels.
    pub proper: bool,
    /// Ranks instead of constraints.
    pub ordered: bool,
    /// Orient constraints along a hidden order so no level is cyclic.
    pub acyclic: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            height: 3,
            vertices: 8,
            max_width: 4,
            edge_prob: 0.3,
            constraint_prob: 0.2,
            proper: false,
            ordered: false,
            acyclic: true,
        }
    }
}

/// Draws a random instance; every level is occupied.
pub fn random_instance(params: &RandomParams, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance_with(params, &mut rng)
}

pub fn random_instance_with<R: Rng>(params: &RandomParams, rng: &mut R) -> Result<Instance> {
    let RandomParams {
        height: h,
        vertices: n,
        max_width,
        ..
    } = *params;
    if n < h || (h > 0 && max_width == 0) || n > h * max_width {
        return Err(Error::ParameterInvalid(format!(
            "cannot place {n} vertices on {h} levels of width at most {max_width}"
        )));
    }
    for p in [params.edge_prob, params.constraint_prob] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ParameterInvalid(format!(
                "probability {p} outside [0, 1]"
            )));
        }
    }
    let mut level_of: Vec<usize> = (1..=h).collect();
    let mut width = vec![1usize; h + 1];
    while level_of.len() < n {
        let l = rng.random_range(1..=h);
        if width[l] < max_width {
            width[l] += 1;
            level_of.push(l);
        }
    }
    level_of.shuffle(rng);
    let mut graph = LevelGraph::new(h);
    for (i, &l) in level_of.iter().enumerate() {
        graph.add_vertex(format!("v{i}"), l)?;
    }
    for u in 0..n {
        for v in 0..n {
            let (lu, lv) = (level_of[u], level_of[v]);
            if lu < lv && (!params.proper || lv == lu + 1) && rng.random_bool(params.edge_prob) {
                graph.add_edge(u, v)?;
            }
        }
    }
    let by_level = graph.by_level();
    if params.ordered {
        let order = by_level
            .into_iter()
            .map(|mut l| {
                l.shuffle(rng);
                l
            })
            .collect();
        return Ok(Instance::Ordered(OrderedLevelGraph::new(graph, order)?));
    }
    let mut out = ConstrainedLevelGraph::new(graph);
    for mut level in by_level {
        level.shuffle(rng);
        for a in 0..level.len() {
            for b in a + 1..level.len() {
                if rng.random_bool(params.constraint_prob) {
                    let (x, y) = if params.acyclic || rng.random_bool(0.5) {
                        (level[a], level[b])
                    } else {
                        (level[b], level[a])
                    };
                    out.add_constraint(x, y)?;
                }
            }
        }
    }
    Ok(Instance::Constrained(out))
}

/// A random ordered instance that has a drawing by construction: edges are
/// sampled without crossings between consecutive levels of a line-up that
/// also holds subdivision slots, and chains through those slots become long
/// edges. Every level has exactly `width` vertices.
pub fn planar_ordered_instance(
    height: usize,
    width: usize,
    seed: u64,
) -> Result<OrderedLevelGraph> {
    if height == 0 || width == 0 {
        return Err(Error::ParameterInvalid(
            "height and width must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Slot lists per level; `Some(i)` is real vertex `i`, `None` a subdivision slot.
    let slots: Vec<Vec<Option<usize>>> = (1..=height)
        .map(|l| {
            let spare = if l == 1 || l == height { 0 } else { width / 2 };
            let mut s: Vec<Option<usize>> = (0..width).map(Some).collect();
            for _ in 0..spare {
                let at = rng.random_range(0..=s.len());
                s.insert(at, None);
            }
            s
        })
        .collect();
    // up[l][a] / down[l + 1][b]: edges of the band between levels l and l + 1.
    let mut up: Vec<Vec<Vec<usize>>> = slots.iter().map(|s| vec![Vec::new(); s.len()]).collect();
    let mut down = up.clone();
    for l in 0..height.saturating_sub(1) {
        let mut band: Vec<(usize, usize)> = Vec::new();
        // Offer every subdivision slot one edge first so that long edges are common.
        let (lower, upper) = (slots[l].len(), slots[l + 1].len());
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for (a, slot) in slots[l].iter().enumerate() {
            if slot.is_none() {
                candidates.push((a, rng.random_range(0..upper)));
            }
        }
        for (b, slot) in slots[l + 1].iter().enumerate() {
            if slot.is_none() {
                candidates.push((rng.random_range(0..lower), b));
            }
        }
        // Sorted endpoint lists zipped together never cross, which keeps bands dense.
        let mut lows: Vec<usize> = (0..2 * width).map(|_| rng.random_range(0..lower)).collect();
        let mut highs: Vec<usize> = (0..2 * width).map(|_| rng.random_range(0..upper)).collect();
        lows.sort_unstable();
        highs.sort_unstable();
        candidates.extend(lows.into_iter().zip(highs));
        for _ in 0..width {
            candidates.push((rng.random_range(0..lower), rng.random_range(0..upper)));
        }
        for (a, b) in candidates {
            let crosses = band
                .iter()
                .any(|&(c, d)| (a < c && b > d) || (a > c && b < d) || (a, b) == (c, d));
            let taken = (slots[l][a].is_none() && !up[l][a].is_empty())
                || (slots[l + 1][b].is_none() && !down[l + 1][b].is_empty());
            if !crosses && !taken {
                band.push((a, b));
                up[l][a].push(b);
                down[l + 1][b].push(a);
            }
        }
    }
    // A subdivision slot survives when it has exactly one surviving edge on
    // each side.
    let mut alive: Vec<Vec<bool>> = slots.iter().map(|s| vec![true; s.len()]).collect();
    loop {
        let mut changed = false;
        for l in 0..height {
            for (i, slot) in slots[l].iter().enumerate() {
                if slot.is_some() || !alive[l][i] {
                    continue;
                }
                let below = down[l][i].iter().filter(|&&a| alive[l - 1][a]).count();
                let above = up[l][i].iter().filter(|&&b| alive[l + 1][b]).count();
                if below != 1 || above != 1 {
                    alive[l][i] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut graph = LevelGraph::new(height);
    for l in 0..height {
        for i in 0..width {
            graph.add_vertex(format!("v{}.{i}", l + 1), l + 1)?;
        }
    }
    let id = |l: usize, i: usize| l * width + i;
    for l in 0..height {
        for (a, slot) in slots[l].iter().enumerate() {
            let Some(u) = *slot else { continue };
            for &b0 in &up[l][a] {
                let (mut m, mut b) = (l + 1, b0);
                while slots[m][b].is_none() && alive[m][b] {
                    b = *up[m][b]
                        .iter()
                        .find(|&&c| alive[m + 1][c])
                        .expect("one edge up");
                    m += 1;
                }
                if let Some(v) = slots[m][b] {
                    if !graph.adjacent(id(l, u), id(m, v)) {
                        graph.add_edge(id(l, u), id(m, v))?;
                    }
                }
            }
        }
    }
    let order = (0..height)
        .map(|l| slots[l].iter().flatten().map(|&i| id(l, i)).collect())
        .collect();
    Ok(OrderedLevelGraph::new(graph, order)?)
}
