//! Constrained level planarity for three levels.
//!
//! The instance is made proper and its constraints are closed. Components
//! are grouped by the strongly connected parts of the graph of constraints
//! between them; parts are solved separately and placed side by side. A part
//! is solved by guessing the first and last middle vertex `s` and `t` and a
//! choice of hook anchors, then rewriting the graph in stages that keep
//! drawability unchanged until every level is totally ordered.

pub mod backbone;
pub mod closure;
pub mod finalize;
pub mod gaps;
pub mod hooks;
pub mod prune;
pub mod work;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

pub use backbone::{
    orient_backbone, BackboneDecomposition, Band, Block, Gap, GapKind, Piece, Region,
};
pub use closure::{close_constraints, ClosedConstraints, Cycle};
pub use finalize::{finalize, GapOrderGraph};
pub use gaps::{assign_gaps, GapAssignmentProblem, GapObject, PlacedObject, Placement};
pub use hooks::{
    hook_candidates, resolve_hooks, ComponentConstraintGraph, HookEnd, HookPair, HookStructure,
};
pub use prune::detach_and_prune;
pub use work::{Reject, Stage, Work};

use crate::error::{Error, Result};
use crate::model::{
    components, make_proper, reinsert_isolated, strip_isolated, ConstrainedLevelGraph, Instance,
    LevelEmbedding, Vertex,
};
use crate::oracle::verify_drawing;
use crate::order::linear_extension;

/// Branch index, rejecting stage and reason.
type BranchLog = (usize, Option<Stage>, String);
type PairSlot = Mutex<Option<(PairOutcome, Vec<BranchLog>)>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clp3Options {
    /// Worker threads for trying branches; the result never depends on it.
    pub jobs: usize,
    /// Record one trace entry per branch tried.
    pub trace: bool,
}

impl Default for Clp3Options {
    fn default() -> Self {
        Self {
            jobs: 1,
            trace: false,
        }
    }
}

/// How one branch of one part ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchTrace {
    pub part: usize,
    pub branch: usize,
    pub s: String,
    pub t: String,
    pub hooks: usize,
    /// Stage that rejected the branch, or `None` on success.
    pub stage: Option<Stage>,
    pub reason: String,
}

/// Sub-instances whose components form one strongly connected part of the
/// component-constraint graph, in an order compatible with the constraints
/// between parts. Each comes with its `new -> old` vertex map.
pub fn decompose_scc(g: &ConstrainedLevelGraph) -> Vec<(ConstrainedLevelGraph, Vec<Vertex>)> {
    let comps = components(g);
    let mut h: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = comps.parts.iter().map(|_| h.add_node(())).collect();
    for &(a, b) in &comps.cross {
        h.update_edge(nodes[comps.membership[a]], nodes[comps.membership[b]], ());
    }
    let sccs = tarjan_scc(&h);
    let mut scc_of = vec![0; comps.parts.len()];
    for (i, members) in sccs.iter().enumerate() {
        for n in members {
            scc_of[n.index()] = i;
        }
    }
    let vertex_sets: Vec<Vec<Vertex>> = sccs
        .iter()
        .map(|members| {
            let mut vs: Vec<Vertex> = members
                .iter()
                .flat_map(|n| comps.parts[n.index()].1.iter().copied())
                .collect();
            vs.sort_unstable();
            vs
        })
        .collect();
    let arcs: Vec<(usize, usize)> = comps
        .cross
        .iter()
        .map(|&(a, b)| (scc_of[comps.membership[a]], scc_of[comps.membership[b]]))
        .filter(|&(x, y)| x != y)
        .collect();
    let order =
        linear_extension(sccs.len(), arcs, |i| vertex_sets[i][0]).expect("condensation is acyclic");
    order
        .into_iter()
        .map(|i| g.induced(&vertex_sets[i]))
        .collect()
}

/// The rewriting pipeline of one branch up to total orders of the live graph.
pub fn run_branch(
    base: &Work,
    s: Vertex,
    t: Vertex,
    hooks: &HookStructure,
) -> std::result::Result<(Work, Vec<Vec<Vertex>>), Reject> {
    let mut work = base.clone();
    resolve_hooks(&mut work, hooks)?;
    let mut bb = orient_backbone(&mut work, s, t)?;
    detach_and_prune(&mut work, &mut bb)?;
    let placed = assign_gaps(&mut work, &bb)?;
    let orders = finalize(&mut work, &bb, &placed)?;
    Ok((work, orders))
}

/// True when `orders` draw the proper instance `part` without crossings and
/// respecting its constraints.
fn draws(part: &ConstrainedLevelGraph, orders: &[Vec<Vertex>]) -> bool {
    let graph = &part.graph;
    let mut pos = vec![usize::MAX; graph.len()];
    for (i, level) in orders.iter().enumerate() {
        for (p, &v) in level.iter().enumerate() {
            if graph.level(v) != i + 1 || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = p;
        }
    }
    if pos.contains(&usize::MAX) || part.constraints().iter().any(|&(a, b)| pos[a] >= pos[b]) {
        return false;
    }
    let edges = graph.edges();
    edges.iter().enumerate().all(|(i, &(a, b))| {
        edges[i + 1..].iter().all(|&(c, d)| {
            graph.level(a) != graph.level(c)
                || a == c
                || b == d
                || (pos[a] < pos[c]) == (pos[b] < pos[d])
        })
    })
}

/// Undoes the rewriting: drops vertices added for hooks, restores detached
/// edges, and slots every removed leaf back next to its constraints.
fn reconstruct(
    part: &ConstrainedLevelGraph,
    work: &Work,
    orders: &[Vec<Vertex>],
) -> Option<Vec<Vec<Vertex>>> {
    let graph = &part.graph;
    let mut out: Vec<Vec<Vertex>> = orders
        .iter()
        .map(|l| l.iter().copied().filter(|&v| v < work.base).collect())
        .collect();
    let mut placed = vec![false; graph.len()];
    for &v in out.iter().flatten() {
        placed[v] = true;
    }
    for &(leaf, anchor) in work.removed_leaves.iter().rev() {
        let (li, ai) = (graph.level(leaf) - 1, graph.level(anchor) - 1);
        let pos_of = |level: &[Vertex], v: Vertex| level.iter().position(|&x| x == v);
        let anchor_pos = pos_of(&out[ai], anchor)?;
        let mut lower: Option<usize> = None;
        let mut upper: Option<usize> = None;
        let mut bound = |p: usize, below: bool| {
            if below {
                lower = Some(lower.map_or(p, |l| l.max(p)));
            } else {
                upper = Some(upper.map_or(p, |u| u.min(p)));
            }
        };
        for (p, &v) in out[li].iter().enumerate() {
            if work.before(v, leaf) {
                bound(p, true);
            }
            if work.before(leaf, v) {
                bound(p, false);
            }
        }
        for &(a, b) in graph.edges() {
            let (c, d) = if graph.level(a) - 1 == ai && graph.level(b) - 1 == li {
                (a, b)
            } else if graph.level(b) - 1 == ai && graph.level(a) - 1 == li {
                (b, a)
            } else {
                continue;
            };
            if c == anchor || !placed[c] || !placed[d] {
                continue;
            }
            let (pc, pd) = (pos_of(&out[ai], c)?, pos_of(&out[li], d)?);
            bound(pd, pc < anchor_pos);
        }
        let slot = lower.map_or(0, |l| l + 1);
        if upper.is_some_and(|u| slot > u) {
            return None;
        }
        out[li].insert(slot, leaf);
        placed[leaf] = true;
    }
    draws(part, &out).then_some(out)
}

/// Branch inputs of a part: pairs `(s, t)` of middle vertices that can be
/// first and last, in name order.
fn endpoint_pairs(work: &Work) -> Vec<(Vertex, Vertex)> {
    let mut middle = work.level_vertices(2);
    work.sort_by_name(&mut middle);
    if middle.len() == 1 {
        return vec![(middle[0], middle[0])];
    }
    let firsts: Vec<Vertex> = middle
        .iter()
        .copied()
        .filter(|&v| middle.iter().all(|&w| !work.before(w, v)))
        .collect();
    let lasts: Vec<Vertex> = middle
        .iter()
        .copied()
        .filter(|&v| middle.iter().all(|&w| !work.before(v, w)))
        .collect();
    firsts
        .iter()
        .flat_map(|&s| lasts.iter().filter(move |&&t| t != s).map(move |&t| (s, t)))
        .collect()
}

enum PairOutcome {
    Drawn(Vec<Vec<Vertex>>),
    /// The pipeline succeeded but the drawing could not be rebuilt.
    Decided,
    Rejected,
}

fn try_pair(
    part: &ConstrainedLevelGraph,
    base: &Work,
    s: Vertex,
    t: Vertex,
    decide_only: bool,
    trace: &mut Vec<BranchLog>,
) -> PairOutcome {
    let candidates = match hook_candidates(base, s, t) {
        Ok(c) => c,
        Err(r) => {
            trace.push((0, Some(r.stage), r.reason));
            return PairOutcome::Rejected;
        }
    };
    let mut decided = false;
    for (k, hooks) in candidates.iter().enumerate() {
        match run_branch(base, s, t, hooks) {
            Ok((work, orders)) => {
                if decide_only {
                    trace.push((k, None, "decided".into()));
                    return PairOutcome::Decided;
                }
                if let Some(drawn) = reconstruct(part, &work, &orders) {
                    trace.push((k, None, "drawn".into()));
                    return PairOutcome::Drawn(drawn);
                }
                trace.push((
                    k,
                    Some(Stage::Finalize),
                    "drawing could not be rebuilt".into(),
                ));
                decided = true;
            }
            Err(r) => trace.push((k, Some(r.stage), r.reason)),
        }
    }
    if decided {
        PairOutcome::Decided
    } else {
        PairOutcome::Rejected
    }
}

struct PartResult {
    outcome: PairOutcome,
    traces: Vec<BranchTrace>,
}

/// Runs the branches of one part, lowest index first; with several jobs the
/// lowest-index success is kept so the result matches a sequential run.
fn search_part(
    part: &ConstrainedLevelGraph,
    index: usize,
    opts: &Clp3Options,
    decide_only: bool,
) -> PartResult {
    let mut traces = Vec::new();
    let base = match Work::from_part(part) {
        Ok(w) => w,
        Err(Cycle(a, b)) => {
            if opts.trace {
                traces.push(BranchTrace {
                    part: index,
                    branch: 0,
                    s: String::new(),
                    t: String::new(),
                    hooks: 0,
                    stage: Some(Stage::Closure),
                    reason: format!(
                        "order cycle through {} and {}",
                        part.graph.id(a),
                        part.graph.id(b)
                    ),
                });
            }
            return PartResult {
                outcome: PairOutcome::Rejected,
                traces,
            };
        }
    };
    let pairs = endpoint_pairs(&base);
    let results: Vec<PairSlot> = pairs.iter().map(|_| Mutex::new(None)).collect();
    let best = AtomicUsize::new(usize::MAX);
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= pairs.len() || i > best.load(Ordering::SeqCst) {
            break;
        }
        let (s, t) = pairs[i];
        let mut log = Vec::new();
        let outcome = try_pair(part, &base, s, t, decide_only, &mut log);
        let success = match outcome {
            PairOutcome::Drawn(_) => true,
            PairOutcome::Decided => decide_only,
            PairOutcome::Rejected => false,
        };
        if success {
            best.fetch_min(i, Ordering::SeqCst);
        }
        *results[i].lock().expect("unpoisoned") = Some((outcome, log));
    };
    let jobs = opts.jobs.max(1).min(pairs.len().max(1));
    if jobs == 1 {
        worker();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(worker);
            }
        });
    }
    let stop = best.load(Ordering::SeqCst);
    let mut chosen = PairOutcome::Rejected;
    let mut decided = false;
    for (i, slot) in results.into_iter().enumerate() {
        if i > stop {
            break;
        }
        let Some((outcome, log)) = slot.into_inner().expect("unpoisoned") else {
            continue;
        };
        if opts.trace {
            let (s, t) = pairs[i];
            traces.extend(log.into_iter().map(|(hooks, stage, reason)| BranchTrace {
                part: index,
                branch: i,
                s: base.name(s).to_string(),
                t: base.name(t).to_string(),
                hooks,
                stage,
                reason,
            }));
        }
        match outcome {
            PairOutcome::Drawn(d) if i == stop => chosen = PairOutcome::Drawn(d),
            PairOutcome::Decided if decide_only && i == stop => chosen = PairOutcome::Decided,
            PairOutcome::Decided => decided = true,
            _ => {}
        }
    }
    if matches!(chosen, PairOutcome::Rejected) && decided {
        chosen = PairOutcome::Decided;
    }
    PartResult {
        outcome: chosen,
        traces,
    }
}

/// Fixes the order of every pair on a level one at a time, keeping the part
/// drawable, until the orders are total.
fn self_reduce(
    part: &ConstrainedLevelGraph,
    index: usize,
    opts: &Clp3Options,
) -> Option<Vec<Vec<Vertex>>> {
    let mut current = part.clone();
    let graph = &part.graph;
    for level in 1..=3 {
        let mut set = graph.level_vertices(level);
        set.sort_by(|&a, &b| graph.id(a).cmp(graph.id(b)));
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let (u, v) = (set[i], set[j]);
                let closed = close_constraints(&current).ok()?;
                if closed.comparable(u, v) {
                    continue;
                }
                let mut trial = current.clone();
                trial.add_constraint(u, v).ok()?;
                let feasible = |g: &ConstrainedLevelGraph| {
                    matches!(
                        search_part(g, index, opts, true).outcome,
                        PairOutcome::Decided | PairOutcome::Drawn(_)
                    )
                };
                if feasible(&trial) {
                    current = trial;
                } else {
                    current.add_constraint(v, u).ok()?;
                }
            }
        }
    }
    let closed = close_constraints(&current).ok()?;
    let orders: Option<Vec<Vec<Vertex>>> = (1..=3)
        .map(|l| closed.total_order(&graph.level_vertices(l)))
        .collect();
    orders.filter(|o| draws(part, o))
}

fn solve_part(
    part: &ConstrainedLevelGraph,
    index: usize,
    opts: &Clp3Options,
    traces: &mut Vec<BranchTrace>,
) -> Option<Vec<Vec<Vertex>>> {
    let result = search_part(part, index, opts, false);
    traces.extend(result.traces);
    match result.outcome {
        PairOutcome::Drawn(d) => Some(d),
        PairOutcome::Decided => self_reduce(part, index, opts),
        PairOutcome::Rejected => None,
    }
}

/// Decides an instance of height at most three and draws it, recording the
/// branches tried.
pub fn solve_traced(
    g: &ConstrainedLevelGraph,
    opts: &Clp3Options,
) -> (Result<LevelEmbedding>, Vec<BranchTrace>) {
    let mut traces = Vec::new();
    let result = solve_inner(g, opts, &mut traces);
    (result, traces)
}

/// Decides an instance of height at most three and draws it.
pub fn solve(g: &ConstrainedLevelGraph) -> Result<LevelEmbedding> {
    solve_with(g, &Clp3Options::default())
}

pub fn solve_with(g: &ConstrainedLevelGraph, opts: &Clp3Options) -> Result<LevelEmbedding> {
    solve_inner(g, opts, &mut Vec::new())
}

fn solve_inner(
    g: &ConstrainedLevelGraph,
    opts: &Clp3Options,
    traces: &mut Vec<BranchTrace>,
) -> Result<LevelEmbedding> {
    let height = g.graph.height();
    if height > 3 {
        return Err(Error::UnsupportedHeight { height });
    }
    if height <= 2 {
        return crate::clp2::solve(g);
    }
    if !g.is_acyclic() {
        return Err(Error::Infeasible);
    }
    let stripped = strip_isolated(g);
    let (proper, map) = make_proper(&stripped.instance);
    let closed = close_constraints(&proper).map_err(|_| Error::Infeasible)?;
    let mut inst = ConstrainedLevelGraph::new(proper.graph.clone());
    for (a, b) in closed.pairs() {
        inst.add_constraint(a, b)?;
    }
    let mut levels: Vec<Vec<Vertex>> = vec![Vec::new(); 3];
    for (index, (part, back)) in decompose_scc(&inst).into_iter().enumerate() {
        let orders = solve_part(&part, index, opts, traces).ok_or(Error::Infeasible)?;
        for (l, order) in orders.into_iter().enumerate() {
            levels[l].extend(order.into_iter().map(|v| back[v]));
        }
    }
    let emb =
        LevelEmbedding::from_proper_orders(&stripped.instance.graph, &proper.graph, &map, &levels);
    let emb = reinsert_isolated(g, &emb)?;
    verify_drawing(&Instance::Constrained(g.clone()), &emb).map_err(|violations| {
        Error::WitnessInvalid(format!(
            "internal drawing check failed: {:?}",
            violations.first()
        ))
    })?;
    Ok(emb)
}
