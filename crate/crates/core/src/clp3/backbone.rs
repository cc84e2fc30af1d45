//! The backbone spanned by the first and last middle vertex: the union of
//! all simple paths between them, read off the block-cut tree.

use std::collections::{BTreeSet, VecDeque};

use super::work::{reject, Reject, Stage, Work};
use crate::model::Vertex;

/// A biconnected block on the block-cut path from `s` to `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub entry: Vertex,
    pub exit: Vertex,
}

/// A component of the main component minus the backbone, with its anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub anchor: Vertex,
    pub body: Vec<Vertex>,
}

impl Piece {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = self.body.clone();
        out.push(self.anchor);
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Band {
    Lower,
    Upper,
}

impl Band {
    pub fn outer(self) -> usize {
        match self {
            Band::Lower => 1,
            Band::Upper => 3,
        }
    }

    pub fn of_outer(level: usize) -> Band {
        if level == 1 {
            Band::Lower
        } else {
            Band::Upper
        }
    }
}

/// The part of a band between two consecutive backbone edges of that band.
/// Bounds are exclusive; `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub band: Band,
    pub mid: (Option<Vertex>, Option<Vertex>),
    pub outer: (Option<Vertex>, Option<Vertex>),
    /// Gap group index, from 1, of a region that can hold a component.
    pub group: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum GapKind {
    /// The upper band is free between the two separators.
    Upper,
    Lower,
    Closed,
}

/// Consecutive separator vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub left: Vertex,
    pub right: Vertex,
    pub kind: GapKind,
}

#[derive(Debug, Clone)]
pub struct BackboneDecomposition {
    pub s: Vertex,
    pub t: Vertex,
    /// Vertices of the component holding `s` and `t`.
    pub main: Vec<Vertex>,
    pub on_backbone: Vec<bool>,
    pub blocks: Vec<Block>,
    pub edges: Vec<(Vertex, Vertex)>,
    /// Backbone vertices per level, left to right; index 0 is level 1.
    pub order: Vec<Vec<Vertex>>,
    pub position: Vec<usize>,
    pub separators: Vec<Vertex>,
    pub pieces: Vec<Piece>,
    pub enclosed: Vec<Vec<Vertex>>,
    /// Regions of both bands; usable ones carry a gap group.
    pub regions: Vec<Region>,
    pub gaps: Vec<Gap>,
    /// Number of gap groups.
    pub groups: usize,
}

impl BackboneDecomposition {
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.order.iter().flatten().copied()
    }

    /// Band edges of the backbone as (middle, outer), sorted left to right.
    pub fn band_edges(&self, work: &Work, band: Band) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                let (m, o) = if work.level(a) == 2 { (a, b) } else { (b, a) };
                (work.level(o) == band.outer()).then_some((m, o))
            })
            .collect();
        out.sort_by_key(|&(m, o)| (self.position[m], self.position[o]));
        out
    }

    /// Pieces and enclosed components of the current graph.
    pub fn refresh(&mut self, work: &Work) {
        let main_set: Vec<bool> = {
            let mut m = vec![false; work.len()];
            for v in work.reach(&[self.s], |_| false) {
                m[v] = true;
            }
            m
        };
        self.main = (0..work.len()).filter(|&v| main_set[v]).collect();
        self.pieces.clear();
        let mut seen = vec![false; work.len()];
        for &v in &self.main {
            if self.on_backbone[v] || seen[v] {
                continue;
            }
            let body = work.reach(&[v], |w| self.on_backbone[w]);
            for &w in &body {
                seen[w] = true;
            }
            let anchors: BTreeSet<Vertex> = body
                .iter()
                .flat_map(|&w| work.nbrs(w).iter().copied())
                .filter(|&w| self.on_backbone[w])
                .collect();
            let anchor = *anchors.iter().next().expect("piece touches the backbone");
            debug_assert_eq!(anchors.len(), 1);
            self.pieces.push(Piece { anchor, body });
        }
        self.enclosed = work
            .components()
            .into_iter()
            .filter(|c| !main_set[c[0]])
            .collect();
    }

    /// Effective exclusive middle bounds of a region.
    pub fn middle_bounds(&self, r: &Region) -> (Vertex, Vertex) {
        (r.mid.0.unwrap_or(self.s), r.mid.1.unwrap_or(self.t))
    }

    /// Constraints placing the middle and outer vertices of `set` strictly
    /// inside region `r`.
    pub fn placement(&self, work: &Work, r: &Region, set: &[Vertex]) -> Vec<(Vertex, Vertex)> {
        let (lo, hi) = self.middle_bounds(r);
        let mut out = Vec::new();
        for &v in set {
            if work.level(v) == 2 {
                out.push((lo, v));
                out.push((v, hi));
            } else if work.level(v) == r.band.outer() {
                if let Some(a) = r.outer.0 {
                    out.push((a, v));
                }
                if let Some(b) = r.outer.1 {
                    out.push((v, b));
                }
            }
        }
        out.retain(|&(a, b)| a != b);
        out
    }
}

/// Blocks of the graph induced by `vertices`, as vertex sets.
fn blocks(work: &Work, vertices: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = work.len();
    let mut inside = vec![false; n];
    for &v in vertices {
        inside[v] = true;
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut out = Vec::new();
    // Iterative DFS: frames hold (vertex, parent, next neighbor index).
    for &root in vertices {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            let nbrs = work.nbrs(v);
            if *idx < nbrs.len() {
                let w = nbrs[*idx];
                *idx += 1;
                if !inside[w] || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        out.push(block.into_iter().collect());
                    }
                }
            }
        }
    }
    out
}

/// Block-cut path from `s` to `t` as blocks with entry and exit vertices.
fn block_path(work: &Work, comp: &[Vertex], s: Vertex, t: Vertex) -> Option<Vec<Block>> {
    if s == t {
        return Some(Vec::new());
    }
    let blocks = blocks(work, comp);
    let n = work.len();
    // Nodes 0..n are vertices, n + i is block i.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + blocks.len()];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            adj[v].push(n + i);
            adj[n + i].push(v);
        }
    }
    let mut prev = vec![usize::MAX; n + blocks.len()];
    let mut seen = vec![false; n + blocks.len()];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if !seen[t] {
        return None;
    }
    let mut path = vec![t];
    while *path.last().expect("nonempty") != s {
        path.push(prev[*path.last().expect("nonempty")]);
    }
    path.reverse();
    Some(
        path.windows(3)
            .step_by(2)
            .map(|w| Block {
                vertices: blocks[w[1] - n].clone(),
                entry: w[0],
                exit: w[2],
            })
            .collect(),
    )
}

/// Fixes `s` and `t` as the ends of the middle level, extracts the backbone,
/// and makes the order of its middle vertices total.
pub fn orient_backbone(
    work: &mut Work,
    s: Vertex,
    t: Vertex,
) -> Result<BackboneDecomposition, Reject> {
    let middle = work.level_vertices(2);
    let mut pairs = Vec::new();
    for &v in &middle {
        if v != s {
            pairs.push((s, v));
        }
        if v != t {
            pairs.push((v, t));
        }
    }
    work.constrain(Stage::Backbone, pairs)?;

    let main = work.reach(&[s], |_| false);
    if !main.contains(&t) {
        return reject(Stage::Backbone, "s and t lie in different components");
    }
    let Some(path) = block_path(work, &main, s, t) else {
        return reject(Stage::Backbone, "no path from s to t");
    };
    let mut on_backbone = vec![false; work.len()];
    on_backbone[s] = true;
    on_backbone[t] = true;
    for b in &path {
        for &v in &b.vertices {
            on_backbone[v] = true;
        }
    }
    let mut edges = Vec::new();
    for b in &path {
        for &v in &b.vertices {
            for &w in work.nbrs(v) {
                if v < w && b.vertices.binary_search(&w).is_ok() {
                    edges.push((v, w));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    // Middle backbone vertices: fix one extension per class of mutually
    // permutable vertices.
    let bb_middle: Vec<Vertex> = middle.iter().copied().filter(|&v| on_backbone[v]).collect();
    let mut class = vec![usize::MAX; work.len()];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for &v in &bb_middle {
        if class[v] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![v];
        class[v] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &y in &bb_middle {
                if class[y] == usize::MAX && !work.rel.comparable(x, y) {
                    class[y] = id;
                    members.push(y);
                }
            }
        }
        classes.push(members);
    }
    for members in classes.iter().filter(|c| c.len() > 1) {
        let Some(seq) = work.extension(members) else {
            return reject(Stage::Backbone, "backbone order is cyclic");
        };
        work.constrain(Stage::Backbone, Work::chain(&seq))?;
    }

    let mut order = vec![Vec::new(); 3];
    let mut position = vec![usize::MAX; work.len()];
    for level in 1..=3 {
        let set: Vec<Vertex> = work
            .level_vertices(level)
            .into_iter()
            .filter(|&v| on_backbone[v])
            .collect();
        let Some(seq) = work.rel.total_order(&set) else {
            return reject(
                Stage::Backbone,
                format!("backbone not totally ordered on level {level}"),
            );
        };
        for (i, &v) in seq.iter().enumerate() {
            position[v] = i;
        }
        order[level - 1] = seq;
    }
    let has_band = |v: Vertex, l: usize| {
        edges
            .iter()
            .any(|&(a, b)| (a == v && work.level(b) == l) || (b == v && work.level(a) == l))
    };
    let separators: Vec<Vertex> = order[1]
        .iter()
        .copied()
        .filter(|&v| has_band(v, 1) && has_band(v, 3))
        .collect();

    let mut bb = BackboneDecomposition {
        s,
        t,
        main,
        on_backbone,
        blocks: path,
        edges,
        order,
        position,
        separators,
        pieces: Vec::new(),
        enclosed: Vec::new(),
        regions: Vec::new(),
        gaps: Vec::new(),
        groups: 0,
    };
    bb.refresh(work);
    build_regions(work, &mut bb);
    Ok(bb)
}

fn build_regions(work: &Work, bb: &mut BackboneDecomposition) {
    let mut regions = Vec::new();
    for band in [Band::Lower, Band::Upper] {
        let e = bb.band_edges(work, band);
        for i in 0..=e.len() {
            let before = i.checked_sub(1).map(|j| e[j]);
            let after = e.get(i).copied();
            regions.push(Region {
                band,
                mid: (before.map(|x| x.0), after.map(|x| x.0)),
                outer: (before.map(|x| x.1), after.map(|x| x.1)),
                group: None,
            });
        }
    }
    let usable = |r: &Region| {
        let (lo, hi) = bb.middle_bounds(r);
        lo != hi
            && bb.position[lo] < bb.position[hi]
            && !(r.outer.0.is_some() && r.outer.0 == r.outer.1)
    };
    let mut idx: Vec<usize> = (0..regions.len())
        .filter(|&i| usable(&regions[i]))
        .collect();
    idx.sort_by_key(|&i| {
        let (lo, _) = bb.middle_bounds(&regions[i]);
        (bb.position[lo], regions[i].band)
    });
    let mut group = 0;
    let mut last_band = None;
    for &i in &idx {
        if last_band != Some(regions[i].band) {
            group += 1;
            last_band = Some(regions[i].band);
        }
        regions[i].group = Some(group);
    }
    bb.groups = group;
    let mut gaps = Vec::new();
    for w in bb.separators.windows(2) {
        let (a, c) = (bb.position[w[0]], bb.position[w[1]]);
        let free = |band: Band| {
            regions.iter().any(|r| {
                let (lo, hi) = bb.middle_bounds(r);
                r.band == band && r.group.is_some() && bb.position[lo] < c && bb.position[hi] > a
            })
        };
        let kind = match (free(Band::Upper), free(Band::Lower)) {
            (true, _) => GapKind::Upper,
            (_, true) => GapKind::Lower,
            _ => GapKind::Closed,
        };
        gaps.push(Gap {
            left: w[0],
            right: w[1],
            kind,
        });
    }
    bb.regions = regions;
    bb.gaps = gaps;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_instance, RandomParams};
    use crate::model::Instance;

    fn sample(seed: u64) -> Work {
        let params = RandomParams {
            height: 3,
            vertices: 4 + (seed % 5) as usize,
            max_width: 4,
            edge_prob: 0.3 + (seed % 4) as f64 * 0.1,
            constraint_prob: 0.0,
            proper: true,
            ..RandomParams::default()
        };
        let Instance::Constrained(g) = random_instance(&params, seed).unwrap() else {
            unreachable!()
        };
        Work::from_part(&g).unwrap()
    }

    fn connected(work: &Work, set: &[Vertex]) -> bool {
        let reached = work.reach(&set[..1], |v| !set.contains(&v));
        reached.len() == set.len()
    }

    /// Maximal vertex sets whose induced graph is connected without a cut vertex.
    fn brute_blocks(work: &Work) -> BTreeSet<Vec<Vertex>> {
        let n = work.len();
        let mut good: Vec<Vec<Vertex>> = Vec::new();
        for mask in 1u32..1 << n {
            let set: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if set.len() < 2 || !connected(work, &set) {
                continue;
            }
            let biconnected = set.len() == 2
                || set.iter().all(|&x| {
                    let rest: Vec<Vertex> = set.iter().copied().filter(|&v| v != x).collect();
                    connected(work, &rest)
                });
            if biconnected {
                good.push(set);
            }
        }
        good.iter()
            .filter(|s| {
                !good
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v)))
            })
            .cloned()
            .collect()
    }

    /// Vertices on some simple path from `s` to `t`.
    fn on_simple_paths(work: &Work, s: Vertex, t: Vertex) -> BTreeSet<Vertex> {
        fn walk(work: &Work, path: &mut Vec<Vertex>, t: Vertex, out: &mut BTreeSet<Vertex>) {
            let v = *path.last().unwrap();
            if v == t {
                out.extend(path.iter().copied());
                return;
            }
            for &w in work.nbrs(v) {
                if !path.contains(&w) {
                    path.push(w);
                    walk(work, path, t, out);
                    path.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(work, &mut vec![s], t, &mut out);
        out
    }

    #[test]
    fn blocks_match_brute_force() {
        for seed in 0..300 {
            let work = sample(seed);
            let all: Vec<Vertex> = work.vertices().collect();
            let got: BTreeSet<Vec<Vertex>> = blocks(&work, &all).into_iter().collect();
            assert_eq!(got, brute_blocks(&work), "seed {seed}");
        }
    }

    #[test]
    fn block_path_covers_exactly_the_simple_paths() {
        let mut checked = 0;
        for seed in 0..200 {
            let work = sample(seed);
            for comp in work.components() {
                for &s in &comp {
                    for &t in &comp {
                        if s == t {
                            continue;
                        }
                        let path = block_path(&work, &comp, s, t).expect("same component");
                        let covered: BTreeSet<Vertex> = path
                            .iter()
                            .flat_map(|b| b.vertices.iter().copied())
                            .collect();
                        assert_eq!(covered, on_simple_paths(&work, s, t), "seed {seed}");
                        assert_eq!(path.first().map(|b| b.entry), Some(s));
                        assert_eq!(path.last().map(|b| b.exit), Some(t));
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 1000);
    }
}
