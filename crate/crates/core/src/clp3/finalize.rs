//! Ordering the contents of every gap, fixing groups of leaves, and reading
//! off total orders that draw the rewritten graph.

use std::collections::BTreeMap;

use super::backbone::BackboneDecomposition;
use super::gaps::{orient, PlacedObject};
use super::work::{reject, Reject, Stage, Work};
use crate::model::Vertex;
use crate::order::linear_extension;

/// Nodes of one gap in left-to-right order: each is the vertex set of an
/// object together with the backbone vertices it covers, or a single
/// uncovered backbone vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapOrderGraph {
    pub region: usize,
    pub nodes: Vec<Vec<Vertex>>,
    pub arcs: Vec<(usize, usize)>,
}

impl GapOrderGraph {
    pub fn build(
        work: &Work,
        bb: &BackboneDecomposition,
        region: usize,
        objects: &[&PlacedObject],
    ) -> Result<Self, Reject> {
        let r = &bb.regions[region];
        let (lo, hi) = bb.middle_bounds(r);
        let (plo, phi) = (bb.position[lo], bb.position[hi]);
        let inner: Vec<Vertex> = bb.order[1][plo + 1..phi].to_vec();
        let mut nodes: Vec<Vec<Vertex>> = objects.iter().map(|o| o.vertices.clone()).collect();
        for &b in &inner {
            let covering: Vec<usize> = (0..objects.len())
                .filter(|&k| {
                    let mids = objects[k].vertices.iter().filter(|&&v| work.level(v) == 2);
                    mids.clone().any(|&a| work.before(a, b))
                        && mids.into_iter().any(|&c| work.before(b, c))
                })
                .collect();
            match covering.as_slice() {
                [] => nodes.push(vec![b]),
                [k] => nodes[*k].push(b),
                _ => return reject(Stage::Finalize, "a backbone vertex is covered twice"),
            }
        }
        let mut arcs = Vec::new();
        for (a, x) in nodes.iter().enumerate() {
            for (b, y) in nodes.iter().enumerate() {
                if a != b && x.iter().any(|&u| y.iter().any(|&v| work.before(u, v))) {
                    arcs.push((a, b));
                }
            }
        }
        Ok(Self {
            region,
            nodes,
            arcs,
        })
    }

    /// Constraints fixing the nodes in a linear extension, smallest name first.
    pub fn sequence(&self, work: &Work) -> Result<Vec<(Vertex, Vertex)>, Reject> {
        let keys: Vec<String> = self
            .nodes
            .iter()
            .map(|n| {
                n.iter()
                    .map(|&v| work.name(v))
                    .min()
                    .expect("nonempty")
                    .to_string()
            })
            .collect();
        let Some(seq) = linear_extension(self.nodes.len(), self.arcs.iter().copied(), |i| {
            keys[i].clone()
        }) else {
            return reject(
                Stage::Finalize,
                "contents of a gap are cyclically constrained",
            );
        };
        let mut pairs = Vec::new();
        for w in seq.windows(2) {
            for &u in &self.nodes[w[0]] {
                for &v in &self.nodes[w[1]] {
                    if work.level(u) == work.level(v) {
                        pairs.push((u, v));
                    }
                }
            }
        }
        Ok(pairs)
    }
}

/// True when two edges between the same pair of levels cross in `pos`.
fn crossing(pos: &[usize], e: (Vertex, Vertex), f: (Vertex, Vertex)) -> bool {
    let (a, b) = e;
    let (c, d) = f;
    if a == c || b == d {
        return false;
    }
    (pos[a] < pos[c]) != (pos[b] < pos[d])
}

/// Total orders of every level, or the first crossing.
pub fn read_orders(work: &Work) -> Result<Vec<Vec<Vertex>>, Reject> {
    let mut orders = Vec::with_capacity(3);
    let mut pos = vec![usize::MAX; work.len()];
    for level in 1..=3 {
        let set = work.level_vertices(level);
        let Some(seq) = work.rel.total_order(&set) else {
            return reject(
                Stage::Finalize,
                format!("level {level} is not totally ordered"),
            );
        };
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        orders.push(seq);
    }
    let mut bands: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); 2];
    for v in work.vertices() {
        for &w in work.nbrs(v) {
            if work.level(v) + 1 == work.level(w) {
                bands[work.level(v) - 1].push((v, w));
            }
        }
    }
    for band in &bands {
        for (i, &e) in band.iter().enumerate() {
            for &f in &band[i + 1..] {
                if crossing(&pos, e, f) {
                    return reject(Stage::Finalize, "the final orders force a crossing");
                }
            }
        }
    }
    Ok(orders)
}

/// Orders the contents of every gap and every group of leaves, completes
/// what remains, and returns the per-level orders of the live graph.
pub fn finalize(
    work: &mut Work,
    bb: &BackboneDecomposition,
    placed: &[PlacedObject],
) -> Result<Vec<Vec<Vertex>>, Reject> {
    let mut by_region: BTreeMap<usize, Vec<&PlacedObject>> = BTreeMap::new();
    for p in placed {
        by_region.entry(p.region).or_default().push(p);
    }
    for (&region, objects) in &by_region {
        let gog = GapOrderGraph::build(work, bb, region, objects)?;
        let pairs = gog.sequence(work)?;
        work.constrain(Stage::Finalize, pairs)?;
    }
    for p in placed.iter().filter(|p| p.enclosed) {
        orient(work, Stage::Finalize, &p.vertices)?;
    }

    // Leaves grouped by neighbor and level.
    let mut groups: BTreeMap<(Vertex, usize), Vec<Vertex>> = BTreeMap::new();
    for v in work.vertices() {
        if work.degree(v) == 1 {
            groups
                .entry((work.nbrs(v)[0], work.level(v)))
                .or_default()
                .push(v);
        }
    }
    for ((_, level), mut members) in groups {
        if level == 2 {
            members.extend(bb.order[1].iter().copied());
            members.sort_unstable();
            members.dedup();
        }
        let Some(seq) = work.extension(&members) else {
            return reject(Stage::Finalize, "leaf group is cyclically constrained");
        };
        work.constrain(Stage::Finalize, Work::chain(&seq))?;
    }

    complete(work)?;
    read_orders(work)
}

/// Orders every remaining incomparable pair, preferring the smaller name first.
fn complete(work: &mut Work) -> Result<(), Reject> {
    for level in 1..=3 {
        let mut set = work.level_vertices(level);
        work.sort_by_name(&mut set);
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let (u, v) = (set[i], set[j]);
                if work.rel.comparable(u, v) {
                    continue;
                }
                if work.admits([(u, v)]) {
                    work.constrain(Stage::Finalize, [(u, v)])?;
                } else {
                    work.constrain(Stage::Finalize, [(v, u)])?;
                }
            }
        }
    }
    Ok(())
}
