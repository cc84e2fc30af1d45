//! Assigning pieces and enclosed components to regions of the bands.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::backbone::{BackboneDecomposition, Band, Region};
use super::work::{reject, Reject, Stage, Work};
use crate::clp2::{caterpillar_by, Caterpillar};
use crate::model::Vertex;
use crate::order::linear_extension;

/// Putting an object into one region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub region: usize,
    pub group: usize,
    pub pairs: Vec<(Vertex, Vertex)>,
}

/// A piece or an enclosed component to be placed.
#[derive(Debug, Clone)]
pub struct GapObject {
    pub band: Band,
    pub vertices: Vec<Vertex>,
    /// Index into the pieces of the backbone decomposition.
    pub piece: Option<usize>,
    /// A piece has a left and a right side of its anchor; an enclosed
    /// component has one option per admissible region.
    pub options: Vec<Option<Placement>>,
}

impl GapObject {
    fn valid(&self) -> impl Iterator<Item = &Placement> {
        self.options.iter().flatten()
    }

    fn interval(&self) -> Option<(usize, usize)> {
        let lo = self.valid().map(|p| p.group).min()?;
        let hi = self.valid().map(|p| p.group).max()?;
        Some((lo, hi))
    }

    /// A piece that can sit on either side of its anchor.
    fn is_variable(&self) -> bool {
        self.piece.is_some() && self.options.iter().all(Option::is_some)
    }
}

/// Objects, the ordering graph between them and the gap groups, and the
/// longest path lengths in it.
#[derive(Debug, Clone)]
pub struct GapAssignmentProblem {
    pub groups: usize,
    pub objects: Vec<GapObject>,
    /// Arcs over nodes `0..=groups + 1` for gap groups, then one per object.
    pub arcs: Vec<(usize, usize)>,
    pub longest: Vec<Vec<Option<usize>>>,
}

impl GapAssignmentProblem {
    fn node(&self, object: usize) -> usize {
        self.groups + 2 + object
    }
}

/// Where every object ended up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedObject {
    pub vertices: Vec<Vertex>,
    pub region: usize,
    pub enclosed: bool,
}

fn band_regions(bb: &BackboneDecomposition, band: Band) -> Vec<usize> {
    (0..bb.regions.len())
        .filter(|&i| bb.regions[i].band == band)
        .collect()
}

fn option(
    work: &Work,
    bb: &BackboneDecomposition,
    region: usize,
    set: &[Vertex],
    extra: &[(Vertex, Vertex)],
) -> Option<Placement> {
    let r: &Region = &bb.regions[region];
    let group = r.group?;
    let mut pairs = bb.placement(work, r, set);
    pairs.extend_from_slice(extra);
    work.admits(pairs.iter().copied()).then_some(Placement {
        region,
        group,
        pairs,
    })
}

fn piece_object(
    work: &Work,
    bb: &BackboneDecomposition,
    index: usize,
) -> Result<GapObject, Reject> {
    let p = &bb.pieces[index];
    let outer = p
        .vertices()
        .into_iter()
        .map(|v| work.level(v))
        .find(|&l| l != 2)
        .expect("pieces are not single middle vertices");
    let band = Band::of_outer(outer);
    let regions = band_regions(bb, band);
    let edges = bb.band_edges(work, band);
    let touching: Vec<usize> = (0..edges.len())
        .filter(|&i| edges[i].0 == p.anchor || edges[i].1 == p.anchor)
        .collect();
    let options = if let (Some(&j), Some(&k)) = (touching.first(), touching.last()) {
        vec![
            option(work, bb, regions[j], &p.body, &[]),
            option(work, bb, regions[k + 1], &p.body, &[]),
        ]
    } else {
        let pos = bb.position[p.anchor];
        let Some(&r) = regions.iter().find(|&&r| {
            let (lo, hi) = bb.regions[r].mid;
            lo.is_none_or(|x| bb.position[x] < pos) && hi.is_none_or(|x| pos < bb.position[x])
        }) else {
            return reject(Stage::Gaps, "a middle anchor lies in no region");
        };
        let mids: Vec<Vertex> = p
            .body
            .iter()
            .copied()
            .filter(|&v| work.level(v) == 2)
            .collect();
        let left: Vec<(Vertex, Vertex)> = mids.iter().map(|&m| (m, p.anchor)).collect();
        let right: Vec<(Vertex, Vertex)> = mids.iter().map(|&m| (p.anchor, m)).collect();
        vec![
            option(work, bb, r, &p.body, &left),
            option(work, bb, r, &p.body, &right),
        ]
    };
    if options.iter().all(Option::is_none) {
        return reject(Stage::Gaps, "a piece fits no side of its anchor");
    }
    Ok(GapObject {
        band,
        vertices: p.body.clone(),
        piece: Some(index),
        options,
    })
}

fn enclosed_object(
    work: &Work,
    bb: &BackboneDecomposition,
    comp: &[Vertex],
) -> Result<GapObject, Reject> {
    let outer = comp
        .iter()
        .map(|&v| work.level(v))
        .find(|&l| l != 2)
        .expect("two levels");
    let band = Band::of_outer(outer);
    let options: Vec<Option<Placement>> = band_regions(bb, band)
        .into_iter()
        .map(|r| option(work, bb, r, comp, &[]))
        .filter(Option::is_some)
        .collect();
    if options.is_empty() {
        return reject(Stage::Gaps, "an enclosed component fits no region");
    }
    Ok(GapObject {
        band,
        vertices: comp.to_vec(),
        piece: None,
        options,
    })
}

fn constrained(work: &Work, xs: &[Vertex], ys: &[Vertex]) -> bool {
    xs.iter().any(|&x| ys.iter().any(|&y| work.before(x, y)))
}

impl GapAssignmentProblem {
    pub fn build(work: &Work, bb: &BackboneDecomposition) -> Result<Self, Reject> {
        let mut objects = Vec::new();
        for i in 0..bb.pieces.len() {
            objects.push(piece_object(work, bb, i)?);
        }
        for c in &bb.enclosed {
            objects.push(enclosed_object(work, bb, c)?);
        }
        let groups = bb.groups;
        let n = groups + 2 + objects.len();
        let mut arcs = Vec::new();
        for (k, x) in objects.iter().enumerate() {
            let (f, l) = x.interval().expect("objects have an option");
            arcs.push((f - 1, groups + 2 + k));
            arcs.push((groups + 2 + k, l + 1));
            for (m, y) in objects.iter().enumerate() {
                if x.band != y.band && constrained(work, &x.vertices, &y.vertices) {
                    arcs.push((groups + 2 + k, groups + 2 + m));
                }
            }
        }
        let Some(topo) = linear_extension(n, arcs.iter().copied(), |v| v) else {
            return reject(
                Stage::Gaps,
                "objects and gap groups are cyclically constrained",
            );
        };
        let mut out_arcs = vec![Vec::new(); n];
        for &(a, b) in &arcs {
            out_arcs[a].push(b);
        }
        let mut longest = vec![vec![None; n]; n];
        for src in 0..n {
            let row = &mut longest[src];
            row[src] = Some(0);
            for &v in &topo {
                if let Some(d) = row[v] {
                    for &w in &out_arcs[v] {
                        if row[w].is_none_or(|e| e < d + 1) {
                            row[w] = Some(d + 1);
                        }
                    }
                }
            }
        }
        Ok(Self {
            groups,
            objects,
            arcs,
            longest,
        })
    }

    /// Whether placing object `k` in group `g` respects all paths from and
    /// to gap groups.
    fn group_fits(&self, k: usize, g: usize) -> bool {
        let x = self.node(k);
        (0..=self.groups + 1).all(|i| {
            let from = self.longest[i][x].is_none_or(|len| g >= i + len);
            let to = self.longest[x][i].is_none_or(|len| g + len <= i);
            from && to
        })
    }

    /// Chooses a side for every piece that can take either one; `None`
    /// when no consistent choice exists. Entry `k` is the option index of
    /// object `k`, or `None` for objects decided later.
    pub fn solve(&self, bb: &BackboneDecomposition) -> Option<Vec<Option<usize>>> {
        let vars: Vec<usize> = (0..self.objects.len())
            .filter(|&k| self.objects[k].is_variable())
            .collect();
        let mut var_of = vec![usize::MAX; self.objects.len()];
        for (i, &k) in vars.iter().enumerate() {
            var_of[k] = i;
        }
        // Literal 2i: variable i takes option 0; 2i + 1: option 1.
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..2 * vars.len()).map(|_| g.add_node(())).collect();
        let lit = |i: usize, o: usize| 2 * i + o;
        let neg = |l: usize| l ^ 1;
        let clause = |a: usize, b: usize, g: &mut DiGraph<(), ()>| {
            g.add_edge(nodes[neg(a)], nodes[b], ());
            g.add_edge(nodes[neg(b)], nodes[a], ());
        };
        let group = |k: usize, o: usize| self.objects[k].options[o].as_ref().map(|p| p.group);
        for (i, &k) in vars.iter().enumerate() {
            for o in 0..2 {
                if !self.group_fits(k, group(k, o).expect("variable")) {
                    // Not o.
                    clause(neg(lit(i, o)), neg(lit(i, o)), &mut g);
                }
            }
        }
        for (i, &p) in vars.iter().enumerate() {
            for (j, &q) in vars.iter().enumerate() {
                if i == j {
                    continue;
                }
                if let Some(len) = self.longest[self.node(p)][self.node(q)] {
                    for op in 0..2 {
                        for oq in 0..2 {
                            let (gp, gq) = (group(p, op).expect("var"), group(q, oq).expect("var"));
                            if gq < gp + len {
                                clause(neg(lit(i, op)), neg(lit(j, oq)), &mut g);
                            }
                        }
                    }
                }
            }
        }
        // Pieces sharing an anchor and a band take opposite sides; a piece
        // bound to one side pushes its sibling to the other.
        for a in 0..self.objects.len() {
            for b in a + 1..self.objects.len() {
                let (Some(pa), Some(pb)) = (self.objects[a].piece, self.objects[b].piece) else {
                    continue;
                };
                if bb.pieces[pa].anchor != bb.pieces[pb].anchor
                    || self.objects[a].band != self.objects[b].band
                {
                    continue;
                }
                match (var_of[a], var_of[b]) {
                    (usize::MAX, usize::MAX) => {
                        let sa = self.objects[a].options.iter().position(Option::is_some);
                        let sb = self.objects[b].options.iter().position(Option::is_some);
                        if sa == sb {
                            return None;
                        }
                    }
                    (i, usize::MAX) | (usize::MAX, i) => {
                        let fixed = if var_of[a] == usize::MAX { a } else { b };
                        let side = self.objects[fixed]
                            .options
                            .iter()
                            .position(Option::is_some)?;
                        let l = neg(lit(i, side));
                        clause(l, l, &mut g);
                    }
                    (i, j) => {
                        clause(lit(i, 0), lit(j, 0), &mut g);
                        clause(lit(i, 1), lit(j, 1), &mut g);
                    }
                }
            }
        }
        // Objects outside the formula must still fit their groups.
        for (k, object) in self.objects.iter().enumerate() {
            if var_of[k] == usize::MAX && !object.valid().any(|p| self.group_fits(k, p.group)) {
                return None;
            }
        }
        let sccs = tarjan_scc(&g);
        let mut comp = vec![0; nodes.len()];
        for (c, members) in sccs.iter().enumerate() {
            for n in members {
                comp[n.index()] = c;
            }
        }
        let mut out = vec![None; self.objects.len()];
        for (i, &k) in vars.iter().enumerate() {
            let (t, f) = (comp[lit(i, 0)], comp[lit(i, 1)]);
            if t == f {
                return None;
            }
            // Components come in reverse topological order.
            out[k] = Some(if t < f { 0 } else { 1 });
        }
        for k in 0..self.objects.len() {
            if var_of[k] == usize::MAX && self.objects[k].piece.is_some() {
                out[k] = self.objects[k].options.iter().position(Option::is_some);
            }
        }
        Some(out)
    }
}

fn zigzags(work: &Work, vertices: &[Vertex]) -> Vec<Vec<(Vertex, Vertex)>> {
    let Some(cat): Option<Caterpillar> =
        caterpillar_by(vertices, |v| work.nbrs(v), |v| work.level(v))
    else {
        return Vec::new();
    };
    if cat.spine.len() < 2 {
        return vec![cat.zigzag_constraints()];
    }
    vec![
        cat.zigzag_constraints(),
        cat.reversed().zigzag_constraints(),
    ]
}

/// Fixes the drawing of a caterpillar to the first orientation the current
/// constraints admit.
pub fn orient(work: &mut Work, stage: Stage, vertices: &[Vertex]) -> Result<(), Reject> {
    for pairs in zigzags(work, vertices) {
        if work.admits(pairs.iter().copied()) {
            return work.constrain(stage, pairs);
        }
    }
    reject(stage, "no orientation of a caterpillar fits")
}

/// Places pieces by the 2-SAT solution and a greedy pass for the rest,
/// then enclosed components into their leftmost admissible region.
pub fn assign_gaps(
    work: &mut Work,
    bb: &BackboneDecomposition,
) -> Result<Vec<PlacedObject>, Reject> {
    let problem = GapAssignmentProblem::build(work, bb)?;
    let Some(choice) = problem.solve(bb) else {
        return reject(
            Stage::Gaps,
            "no consistent assignment of pieces to gap groups",
        );
    };
    let objects = &problem.objects;
    let mut side: Vec<Option<usize>> = vec![None; objects.len()];
    // Sides determined by groups first.
    for (k, x) in objects.iter().enumerate() {
        if let Some(o) = choice[k] {
            let groups_differ = x.is_variable()
                && x.options[0].as_ref().map(|p| p.group) != x.options[1].as_ref().map(|p| p.group);
            if !x.is_variable() || groups_differ {
                let p = x.options[o].as_ref().expect("valid option");
                work.constrain(Stage::Gaps, p.pairs.iter().copied())?;
                side[k] = Some(o);
            }
        }
    }
    // Remaining pieces: siblings take opposite sides, otherwise the first
    // side that still fits.
    for (k, x) in objects.iter().enumerate() {
        let Some(pk) = x.piece else { continue };
        if side[k].is_some() {
            continue;
        }
        let sibling_side = objects.iter().enumerate().find_map(|(m, y)| {
            let pm = y.piece?;
            (m != k && y.band == x.band && bb.pieces[pm].anchor == bb.pieces[pk].anchor)
                .then_some(side[m]?)
        });
        let order: Vec<usize> = match sibling_side {
            Some(s) => vec![1 - s],
            None => vec![0, 1],
        };
        let chosen = order.into_iter().find(|&o| {
            x.options[o]
                .as_ref()
                .is_some_and(|p| work.admits(p.pairs.iter().copied()))
        });
        let Some(o) = chosen else {
            return reject(Stage::Gaps, "a piece fits neither side");
        };
        let p = x.options[o].as_ref().expect("valid option");
        work.constrain(Stage::Gaps, p.pairs.iter().copied())?;
        side[k] = Some(o);
    }
    let mut placed = Vec::new();
    for (k, x) in objects.iter().enumerate() {
        if let Some(pk) = x.piece {
            orient(work, Stage::Gaps, &bb.pieces[pk].vertices())?;
            let p = x.options[side[k].expect("placed")]
                .as_ref()
                .expect("valid option");
            placed.push(PlacedObject {
                vertices: x.vertices.clone(),
                region: p.region,
                enclosed: false,
            });
        }
    }

    // Enclosed components in an order compatible with their constraints.
    let enclosed: Vec<&GapObject> = objects.iter().filter(|x| x.piece.is_none()).collect();
    let mut arcs = Vec::new();
    for (a, x) in enclosed.iter().enumerate() {
        for (b, y) in enclosed.iter().enumerate() {
            if a != b && constrained(work, &x.vertices, &y.vertices) {
                arcs.push((a, b));
            }
        }
    }
    let names: Vec<String> = enclosed
        .iter()
        .map(|x| {
            x.vertices
                .iter()
                .map(|&v| work.name(v))
                .min()
                .expect("nonempty")
                .to_string()
        })
        .collect();
    let Some(seq) = linear_extension(enclosed.len(), arcs, |i| names[i].clone()) else {
        return reject(
            Stage::Gaps,
            "enclosed components are cyclically constrained",
        );
    };
    for i in seq {
        let x = enclosed[i];
        let mut regions: Vec<usize> = band_regions(bb, x.band)
            .into_iter()
            .filter(|&r| bb.regions[r].group.is_some())
            .collect();
        regions.sort_by_key(|&r| bb.regions[r].group);
        let chosen = regions.into_iter().find_map(|r| {
            let pairs = bb.placement(work, &bb.regions[r], &x.vertices);
            work.admits(pairs.iter().copied()).then_some((r, pairs))
        });
        let Some((region, pairs)) = chosen else {
            return reject(Stage::Gaps, "an enclosed component fits no region");
        };
        work.constrain(Stage::Gaps, pairs)?;
        placed.push(PlacedObject {
            vertices: x.vertices.clone(),
            region,
            enclosed: true,
        });
    }
    Ok(placed)
}
