//! Four-level constrained instances from 3-Partition: one clip per number and
//! a row of mountain chains, one chain per bucket.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConstrainedLevelGraph, LevelEmbedding, LevelGraph, Vertex};

/// Largest accepted sum of the numbers; the instance has size linear in it.
pub const MAX_TOTAL: usize = 1 << 20;

/// A 3-Partition instance: `numbers` split into `m` triples of sum `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartition {
    pub numbers: Vec<usize>,
    pub m: usize,
    #[serde(rename = "B")]
    pub bound: usize,
}

/// Sizes of the gadgets: one `k`-clip per number and `chains` mountain chains
/// of `length` mountains each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MountainChainSpec {
    pub chains: usize,
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClipSpec {
    pub size: usize,
}

impl ClipSpec {
    /// Level-2 vertices, then level 3, level 1 and the level-4 center.
    pub fn vertex_count(&self) -> usize {
        (2 * self.size + 1) + (self.size + 1) + self.size + 1
    }
}

impl ThreePartition {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ParameterInvalid(msg));
        if self.m == 0 {
            return bad("m must be positive".into());
        }
        if self.numbers.len() != 3 * self.m {
            return bad(format!(
                "expected {} numbers, got {}",
                3 * self.m,
                self.numbers.len()
            ));
        }
        let total: usize = self.numbers.iter().sum();
        if total > MAX_TOTAL {
            return bad(format!("sum {total} exceeds the cap {MAX_TOTAL}"));
        }
        if total != self.m * self.bound {
            return bad(format!(
                "numbers sum to {total}, expected m * B = {}",
                self.m * self.bound
            ));
        }
        if let Some(&x) = self
            .numbers
            .iter()
            .find(|&&x| 4 * x <= self.bound || 2 * x >= self.bound)
        {
            return bad(format!("{x} is not strictly between B/4 and B/2"));
        }
        Ok(())
    }

    pub fn chain_spec(&self) -> MountainChainSpec {
        MountainChainSpec {
            chains: self.m,
            length: self.bound,
        }
    }

    pub fn clip_specs(&self) -> Vec<ClipSpec> {
        self.numbers.iter().map(|&size| ClipSpec { size }).collect()
    }
}

fn wall(i: usize, level: usize) -> String {
    format!("w{i}.{level}")
}

/// Level-1 vertex between mountains `t` and `t + 1` of chain `c`; the ends
/// of a chain are wall bases.
fn foot(c: usize, t: usize, length: usize) -> String {
    if t == 0 {
        wall(c, 1)
    } else if t == length {
        wall(c + 1, 1)
    } else {
        format!("m{c}.{t}.p")
    }
}

fn mountain(c: usize, t: usize, part: &str) -> String {
    format!("m{c}.{t}.{part}")
}

fn clip(j: usize, part: &str, t: usize) -> String {
    format!("k{j}.{part}{t}")
}

fn center(j: usize) -> String {
    format!("k{j}.x")
}

/// The constrained instance of height 4 for `params`.
pub fn gen_3partition(params: &ThreePartition) -> Result<ConstrainedLevelGraph> {
    params.validate()?;
    let (m, len) = (params.m, params.bound);
    let mut g = LevelGraph::new(4);
    let add = |g: &mut LevelGraph, id: String, level: usize| g.add_vertex(id, level);
    for i in 0..=m {
        for level in 1..=4 {
            add(&mut g, wall(i, level), level)?;
        }
        for level in 1..4 {
            let (a, b) = (g.vertex(&wall(i, level)), g.vertex(&wall(i, level + 1)));
            g.add_edge(a.expect("wall"), b.expect("wall"))?;
        }
    }
    for c in 0..m {
        for t in 1..len {
            add(&mut g, foot(c, t, len), 1)?;
        }
        for t in 1..=len {
            let a = add(&mut g, mountain(c, t, "a"), 2)?;
            let top = add(&mut g, mountain(c, t, "c"), 3)?;
            let d = add(&mut g, mountain(c, t, "d"), 2)?;
            let left = g.vertex(&foot(c, t - 1, len)).expect("foot");
            let right = g.vertex(&foot(c, t, len)).expect("foot");
            g.add_edge(left, a)?;
            g.add_edge(a, top)?;
            g.add_edge(d, top)?;
            g.add_edge(right, d)?;
        }
    }
    let mut second_level: Vec<Vec<Vertex>> = Vec::new();
    for (j, &k) in params.numbers.iter().enumerate() {
        let x = add(&mut g, center(j), 4)?;
        let mut chain = Vec::new();
        for t in 0..=2 * k {
            let q = add(&mut g, clip(j, "q", t), 2)?;
            chain.push(q);
            if t % 2 == 0 {
                let r = add(&mut g, clip(j, "r", t / 2), 3)?;
                g.add_edge(q, r)?;
                g.add_edge(r, x)?;
            } else {
                let f = add(&mut g, clip(j, "f", t / 2 + 1), 1)?;
                g.add_edge(f, q)?;
            }
        }
        second_level.push(chain);
    }
    let mut out = ConstrainedLevelGraph::new(g);
    let top = |out: &ConstrainedLevelGraph, i: usize| out.graph.vertex(&wall(i, 4)).expect("wall");
    let (first, last) = (top(&out, 0), top(&out, m));
    out.add_constraint(first, last)?;
    for (j, chain) in second_level.iter().enumerate() {
        let x = out.graph.vertex(&center(j)).expect("center");
        out.add_constraint(first, x)?;
        out.add_constraint(x, last)?;
        for w in chain.windows(2) {
            out.add_constraint(w[0], w[1])?;
        }
    }
    Ok(out)
}

/// Draws the instance of `params` with the numbers indexed by each triple of
/// `triples` placed side by side in one mountain chain.
pub fn realize_3partition_witness(
    params: &ThreePartition,
    triples: &[[usize; 3]],
) -> Result<LevelEmbedding> {
    params.validate()?;
    let (m, len) = (params.m, params.bound);
    if triples.len() != m {
        return Err(Error::WitnessInvalid(format!(
            "expected {m} triples, got {}",
            triples.len()
        )));
    }
    let mut used = vec![false; params.numbers.len()];
    for t in triples {
        for &j in t {
            if j >= used.len() || std::mem::replace(&mut used[j], true) {
                return Err(Error::WitnessInvalid(format!(
                    "index {j} is out of range or repeated"
                )));
            }
        }
        let sum: usize = t.iter().map(|&j| params.numbers[j]).sum();
        if sum != len {
            return Err(Error::WitnessInvalid(format!(
                "triple {t:?} sums to {sum}, not {len}"
            )));
        }
    }

    // Clip edges at each mountain (under it) and each valley (before mountain t).
    let mut under: Vec<Vec<(usize, usize)>> = vec![vec![(0, 0); len + 1]; m];
    let mut valley: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![Vec::new(); len + 1]; m];
    for (c, t) in triples.iter().enumerate() {
        let mut start = 1;
        for &j in t {
            let k = params.numbers[j];
            for s in 0..=k {
                valley[c][start - 1 + s].push((j, s));
            }
            for s in 1..=k {
                under[c][start + s - 1] = (j, s);
            }
            start += k;
        }
    }

    let mut levels: Vec<Vec<String>> = vec![Vec::new(); 4];
    for c in 0..m {
        levels[0].push(wall(c, 1));
        levels[1].push(wall(c, 2));
        levels[2].push(wall(c, 3));
        levels[3].push(wall(c, 4));
        for t in 0..=len {
            for &(j, s) in &valley[c][t] {
                levels[1].push(clip(j, "q", 2 * s));
                levels[2].push(clip(j, "r", s));
            }
            if t == len {
                break;
            }
            let (j, s) = under[c][t + 1];
            if t > 0 {
                levels[0].push(foot(c, t, len));
            }
            levels[0].push(clip(j, "f", s));
            levels[1].push(mountain(c, t + 1, "a"));
            levels[1].push(clip(j, "q", 2 * s - 1));
            levels[1].push(mountain(c, t + 1, "d"));
            levels[2].push(mountain(c, t + 1, "c"));
        }
        for &j in &triples[c] {
            levels[3].push(center(j));
        }
    }
    levels[0].push(wall(m, 1));
    levels[1].push(wall(m, 2));
    levels[2].push(wall(m, 3));
    levels[3].push(wall(m, 4));
    Ok(LevelEmbedding {
        levels: levels
            .into_iter()
            .map(|l| l.into_iter().map(crate::model::Item::Vertex).collect())
            .collect(),
        coordinates: None,
    })
}
