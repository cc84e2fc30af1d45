//! Components, the constraint arcs between them, and the chain of components
//! that hook into each other along the middle level.

use std::collections::{BTreeSet, VecDeque};

use super::work::{reject, Reject, Stage, Work};
use crate::clp2::caterpillar_by;
use crate::model::Vertex;

/// Components of the live graph with an arc `C -> D` whenever a vertex of `C`
/// is constrained before a vertex of `D`.
#[derive(Debug, Clone)]
pub struct ComponentConstraintGraph {
    pub components: Vec<Vec<Vertex>>,
    /// Component index per vertex; `usize::MAX` for removed vertices.
    pub membership: Vec<usize>,
    pub arcs: BTreeSet<(usize, usize)>,
}

impl ComponentConstraintGraph {
    pub fn build(work: &Work) -> Self {
        let components = work.components();
        let mut membership = vec![usize::MAX; work.len()];
        for (i, c) in components.iter().enumerate() {
            for &v in c {
                membership[v] = i;
            }
        }
        let mut arcs = BTreeSet::new();
        for a in work.vertices() {
            for b in work.rel.successors(a) {
                let (ca, cb) = (membership[a], membership[b]);
                if ca != cb && cb != usize::MAX {
                    arcs.insert((ca, cb));
                }
            }
        }
        Self {
            components,
            membership,
            arcs,
        }
    }

    /// Shortest directed path of components, ties broken by component index.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.components.len();
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(c) = queue.pop_front() {
            if c == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &(_, d) in self.arcs.range((c, 0)..(c + 1, 0)) {
                if !seen[d] {
                    seen[d] = true;
                    prev[d] = c;
                    queue.push_back(d);
                }
            }
        }
        None
    }
}

/// One side of a hooking pair: the anchor of a component towards its
/// neighbor in the chain, the hook piece behind it, and the end of the
/// piece's spine farthest from the anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookEnd {
    pub component: usize,
    pub anchor: Vertex,
    pub piece: Vec<Vertex>,
    pub spine_end: Vertex,
}

/// `right` hooks into `left` from the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookPair {
    pub left: HookEnd,
    pub right: HookEnd,
}

/// The chain of components from the one holding `s` to the one holding `t`
/// together with one choice of hook anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookStructure {
    pub chain: Vec<usize>,
    pub pairs: Vec<HookPair>,
}

impl HookStructure {
    pub fn anchors(&self) -> Vec<Vertex> {
        self.pairs
            .iter()
            .flat_map(|p| [p.left.anchor, p.right.anchor])
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Middle vertices of `from` constrained relative to `other`; `toward` picks
/// whether they come before (`true`) or after the vertices of `other`.
fn constrained_middle(work: &Work, from: &[Vertex], other: &[Vertex], toward: bool) -> Vec<Vertex> {
    from.iter()
        .copied()
        .filter(|&v| work.level(v) == 2)
        .filter(|&v| {
            other.iter().any(|&w| {
                if toward {
                    work.before(v, w)
                } else {
                    work.before(w, v)
                }
            })
        })
        .collect()
}

fn constrained_any(work: &Work, from: &[Vertex], other: &[Vertex], toward: bool) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = from
        .iter()
        .copied()
        .filter(|&v| {
            other.iter().any(|&w| {
                if toward {
                    work.before(v, w)
                } else {
                    work.before(w, v)
                }
            })
        })
        .collect();
    work.sort_by_name(&mut out);
    out
}

/// The single outer level holding every neighbor of `set`, if any.
fn outer_level(work: &Work, set: &[Vertex]) -> Option<usize> {
    let levels: BTreeSet<usize> = set
        .iter()
        .flat_map(|&v| work.nbrs(v).iter().map(|&w| work.level(w)))
        .collect();
    (levels.len() == 1).then(|| *levels.iter().next().expect("one level"))
}

/// Anchor and hook piece of `comp` found from a BFS tree rooted in `root`.
fn anchor_from(
    work: &Work,
    comp: &[Vertex],
    root: Vertex,
    hook: &[Vertex],
    outer: usize,
) -> Option<(Vertex, Vec<Vertex>)> {
    let mut parent = vec![usize::MAX; work.len()];
    let mut depth = vec![usize::MAX; work.len()];
    let mut queue = VecDeque::from([root]);
    depth[root] = 0;
    while let Some(v) = queue.pop_front() {
        for w in work.sorted_nbrs(v) {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let lca = |mut a: Vertex, mut b: Vertex| {
        while depth[a] > depth[b] {
            a = parent[a];
        }
        while depth[b] > depth[a] {
            b = parent[b];
        }
        while a != b {
            a = parent[a];
            b = parent[b];
        }
        a
    };
    let mut anchor = hook.iter().copied().reduce(lca)?;
    if work.level(anchor) == 2 {
        anchor = parent[anchor];
        if anchor == usize::MAX {
            return None;
        }
    }
    if work.level(anchor) != outer {
        return None;
    }
    let mut piece = work.reach(hook, |v| v == anchor);
    if piece.contains(&root) || piece.iter().any(|&v| !comp.contains(&v)) {
        return None;
    }
    piece.push(anchor);
    piece.sort_unstable();
    if piece
        .iter()
        .any(|&v| work.level(v) != 2 && work.level(v) != outer)
    {
        return None;
    }
    caterpillar_by(&piece, |v| work.nbrs(v), |v| work.level(v))?;
    Some((anchor, piece))
}

/// Spine vertex of `piece` farthest from `anchor`; the farthest vertex when
/// the spine is empty.
fn spine_end(work: &Work, piece: &[Vertex], anchor: Vertex) -> Vertex {
    let inside = |v: Vertex| piece.contains(&v);
    let mut dist = vec![usize::MAX; work.len()];
    dist[anchor] = 0;
    let mut queue = VecDeque::from([anchor]);
    while let Some(v) = queue.pop_front() {
        for &w in work.nbrs(v) {
            if inside(w) && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let deg = |v: Vertex| work.nbrs(v).iter().filter(|&&w| inside(w)).count();
    let spine: Vec<Vertex> = piece.iter().copied().filter(|&v| deg(v) >= 2).collect();
    let pool = if spine.is_empty() {
        piece.to_vec()
    } else {
        spine
    };
    pool.into_iter()
        .max_by(|&a, &b| {
            dist[a]
                .cmp(&dist[b])
                .then_with(|| work.name(b).cmp(work.name(a)))
        })
        .expect("nonempty piece")
}

/// BFS roots for the anchor of `comp` towards a neighbor in the chain.
/// `away` lists vertices constrained towards the other chain neighbor; an
/// end of the chain uses a vertex on the far outer level or a spine end.
fn roots(work: &Work, comp: &[Vertex], away: Option<Vec<Vertex>>, outer: usize) -> Vec<Vertex> {
    if let Some(away) = away {
        return away.into_iter().take(1).collect();
    }
    let far = 4 - outer;
    let mut opposite: Vec<Vertex> = comp
        .iter()
        .copied()
        .filter(|&v| work.level(v) == far)
        .collect();
    work.sort_by_name(&mut opposite);
    if let Some(&u) = opposite.first() {
        return vec![u];
    }
    match caterpillar_by(comp, |v| work.nbrs(v), |v| work.level(v)) {
        Some(cat) if !cat.spine.is_empty() => {
            let mut ends = vec![cat.spine[0], *cat.spine.last().expect("nonempty")];
            work.sort_by_name(&mut ends);
            ends.dedup();
            ends
        }
        _ => Vec::new(),
    }
}

fn hook_end_options(
    work: &Work,
    ccg: &ComponentConstraintGraph,
    comp_idx: usize,
    hook: &[Vertex],
    outer: usize,
    away: Option<Vec<Vertex>>,
) -> Vec<HookEnd> {
    let comp = &ccg.components[comp_idx];
    roots(work, comp, away, outer)
        .into_iter()
        .filter_map(|root| anchor_from(work, comp, root, hook, outer))
        .map(|(anchor, piece)| HookEnd {
            component: comp_idx,
            anchor,
            spine_end: spine_end(work, &piece, anchor),
            piece,
        })
        .collect()
}

/// Candidate hook structures for a chain from the component of `s` to the
/// component of `t`, at most four.
pub fn hook_candidates(work: &Work, s: Vertex, t: Vertex) -> Result<Vec<HookStructure>, Reject> {
    let ccg = ComponentConstraintGraph::build(work);
    let (first, last) = (ccg.membership[s], ccg.membership[t]);
    if first == last {
        return Ok(vec![HookStructure {
            chain: vec![first],
            pairs: Vec::new(),
        }]);
    }
    let Some(mut chain) = ccg.shortest_path(last, first) else {
        return reject(Stage::Hooks, "no constraint path closes the hook chain");
    };
    chain.reverse();
    let k = chain.len();
    // options[i] = (left end choices, right end choices) of pair i.
    let mut options: Vec<(Vec<HookEnd>, Vec<HookEnd>)> = Vec::with_capacity(k - 1);
    for i in 0..k - 1 {
        let (ci, cj) = (chain[i], chain[i + 1]);
        let (left, right) = (&ccg.components[ci], &ccg.components[cj]);
        let into_left = constrained_middle(work, left, right, false);
        let into_right = constrained_middle(work, right, left, true);
        if into_left.is_empty() || into_right.is_empty() {
            return reject(
                Stage::Hooks,
                "consecutive chain components lack hooking constraints",
            );
        }
        let (Some(lo), Some(ro)) = (
            outer_level(work, &into_left),
            outer_level(work, &into_right),
        ) else {
            return reject(Stage::Hooks, "hook vertices see both outer levels");
        };
        if lo == ro || lo == 2 || ro == 2 {
            return reject(Stage::Hooks, "hook vertices of a pair share a band");
        }
        let left_away =
            (i > 0).then(|| constrained_any(work, left, &ccg.components[chain[i - 1]], true));
        let right_away =
            (i + 2 < k).then(|| constrained_any(work, right, &ccg.components[chain[i + 2]], false));
        let l = hook_end_options(work, &ccg, ci, &into_left, lo, left_away);
        let r = hook_end_options(work, &ccg, cj, &into_right, ro, right_away);
        if l.is_empty() || r.is_empty() {
            return reject(Stage::Hooks, "no hook anchor separates the hook vertices");
        }
        options.push((l, r));
    }
    // Only the chain ends can have two choices.
    let firsts = options[0].0.clone();
    let lasts = options[k - 2].1.clone();
    let mut out = Vec::new();
    for f in &firsts {
        for l in &lasts {
            let pairs = options
                .iter()
                .enumerate()
                .map(|(i, (ls, rs))| HookPair {
                    left: if i == 0 { f.clone() } else { ls[0].clone() },
                    right: if i == k - 2 { l.clone() } else { rs[0].clone() },
                })
                .collect();
            out.push(HookStructure {
                chain: chain.clone(),
                pairs,
            });
        }
    }
    Ok(out)
}

/// Links consecutive chain components through their hook anchors so that
/// the chain becomes one main component.
pub fn resolve_hooks(work: &mut Work, hooks: &HookStructure) -> Result<(), Reject> {
    for pair in &hooks.pairs {
        work.link(pair.left.anchor, pair.right.spine_end);
        work.link(pair.right.anchor, pair.left.spine_end);
    }
    work.settle(Stage::Hooks)
}
