//! Per-level order relations closed under transitivity and planarity
//! propagation over a proper level graph whose edge set may change.

use std::collections::VecDeque;

use thiserror::Error;

use crate::model::{ConstrainedLevelGraph, Vertex};

/// Two vertices forced before each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("constraints force a cycle through vertices {0} and {1}")]
pub struct Cycle(pub Vertex, pub Vertex);

/// A strict order per level, kept transitively closed, plus the rule that
/// edges `ab`, `cd` with `a` before `c` force `b` before `d` unless `b = d`.
/// New pairs wait in a dirty queue until [`ClosedConstraints::propagate`].
#[derive(Debug, Clone)]
pub struct ClosedConstraints {
    level: Vec<usize>,
    adj: Vec<Vec<Vertex>>,
    succ: Vec<Vec<u64>>,
    pred: Vec<Vec<u64>>,
    words: usize,
    dirty: VecDeque<(Vertex, Vertex)>,
}

fn bit(set: &[u64], v: usize) -> bool {
    set[v / 64] >> (v % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], v: usize) {
    set[v / 64] |= 1 << (v % 64);
}

fn members(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &bits)| {
        let mut rest = bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

impl ClosedConstraints {
    /// Empty relation over vertices with the given levels and no edges.
    pub fn with_levels(level: Vec<usize>) -> Self {
        let n = level.len();
        let words = n.div_ceil(64).max(1);
        Self {
            adj: vec![Vec::new(); n],
            succ: vec![vec![0; words]; n],
            pred: vec![vec![0; words]; n],
            level,
            words,
            dirty: VecDeque::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    pub fn level(&self, v: Vertex) -> usize {
        self.level[v]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.adj[a].contains(&b)
    }

    /// `a` strictly before `b`.
    pub fn before(&self, a: Vertex, b: Vertex) -> bool {
        bit(&self.succ[a], b)
    }

    pub fn comparable(&self, a: Vertex, b: Vertex) -> bool {
        a == b || self.before(a, b) || self.before(b, a)
    }

    pub fn successors(&self, v: Vertex) -> Vec<Vertex> {
        members(&self.succ[v]).collect()
    }

    pub fn predecessors(&self, v: Vertex) -> Vec<Vertex> {
        members(&self.pred[v]).collect()
    }

    /// All pairs of the relation, sorted.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.len())
            .flat_map(|a| members(&self.succ[a]).map(move |b| (a, b)))
            .collect()
    }

    pub fn add_vertex(&mut self, level: usize) -> Vertex {
        let v = self.level.len();
        self.level.push(level);
        self.adj.push(Vec::new());
        if v + 1 > self.words * 64 {
            self.words += 1;
            for row in self.succ.iter_mut().chain(self.pred.iter_mut()) {
                row.push(0);
            }
        }
        self.succ.push(vec![0; self.words]);
        self.pred.push(vec![0; self.words]);
        v
    }

    /// Adds an edge and schedules every pair touching its endpoints, since
    /// the new edge can turn existing pairs into new planarity consequences.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) {
        if a == b || self.adjacent(a, b) {
            return;
        }
        self.adj[a].push(b);
        self.adj[b].push(a);
        for v in [a, b] {
            for w in members(&self.succ[v]) {
                self.dirty.push_back((v, w));
            }
            for w in members(&self.pred[v]) {
                self.dirty.push_back((w, v));
            }
        }
    }

    /// Removing an edge keeps every pair derived so far.
    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) {
        self.adj[a].retain(|&x| x != b);
        self.adj[b].retain(|&x| x != a);
    }

    /// Records `a` before `b` together with its transitive consequences and
    /// queues the new pairs; planarity consequences follow on `propagate`.
    pub fn insert(&mut self, a: Vertex, b: Vertex) -> Result<(), Cycle> {
        debug_assert_eq!(self.level[a], self.level[b]);
        if a == b || self.before(b, a) {
            return Err(Cycle(a, b));
        }
        if self.before(a, b) {
            return Ok(());
        }
        let mut left: Vec<Vertex> = members(&self.pred[a]).collect();
        left.push(a);
        let mut right: Vec<Vertex> = members(&self.succ[b]).collect();
        right.push(b);
        for &p in &left {
            for &q in &right {
                if p == q || self.before(q, p) {
                    return Err(Cycle(p, q));
                }
                if !self.before(p, q) {
                    set_bit(&mut self.succ[p], q);
                    set_bit(&mut self.pred[q], p);
                    self.dirty.push_back((p, q));
                }
            }
        }
        Ok(())
    }

    /// Drains the dirty queue, applying the planarity rule to every pair.
    pub fn propagate(&mut self) -> Result<(), Cycle> {
        while let Some((p, q)) = self.dirty.pop_front() {
            let lp = self.level[p];
            for i in 0..self.adj[p].len() {
                let x = self.adj[p][i];
                let lx = self.level[x];
                debug_assert!(lx.abs_diff(lp) == 1, "graph must be proper");
                for j in 0..self.adj[q].len() {
                    let y = self.adj[q][j];
                    if x != y && self.level[y] == lx {
                        self.insert(x, y)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Inserts and propagates.
    pub fn add(&mut self, a: Vertex, b: Vertex) -> Result<(), Cycle> {
        self.insert(a, b)?;
        self.propagate()
    }

    pub fn add_all(
        &mut self,
        pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<(), Cycle> {
        for (a, b) in pairs {
            self.insert(a, b)?;
        }
        self.propagate()
    }

    /// Whether adding `pairs` keeps the relation acyclic.
    pub fn admits(&self, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> bool {
        self.clone().add_all(pairs).is_ok()
    }

    /// The vertices of `set` in a left-to-right order, when the relation is
    /// total on them.
    pub fn total_order(&self, set: &[Vertex]) -> Option<Vec<Vertex>> {
        let mut keyed: Vec<(usize, Vertex)> = set
            .iter()
            .map(|&v| (set.iter().filter(|&&w| self.before(w, v)).count(), v))
            .collect();
        keyed.sort_unstable();
        keyed
            .iter()
            .enumerate()
            .all(|(i, &(k, _))| k == i)
            .then(|| keyed.into_iter().map(|(_, v)| v).collect())
    }
}

/// Closes the constraints of a proper instance of height at most three.
pub fn close_constraints(g: &ConstrainedLevelGraph) -> Result<ClosedConstraints, Cycle> {
    let graph = &g.graph;
    let mut closed =
        ClosedConstraints::with_levels(graph.vertices().map(|v| graph.level(v)).collect());
    for &(a, b) in graph.edges() {
        closed.adj[a].push(b);
        closed.adj[b].push(a);
    }
    closed.add_all(g.constraints().iter().copied())?;
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LevelGraph;

    fn instance(
        vs: &[(&str, usize)],
        es: &[(&str, &str)],
        cs: &[(&str, &str)],
    ) -> ConstrainedLevelGraph {
        let mut g = LevelGraph::new(3);
        for &(id, l) in vs {
            g.add_vertex(id, l).unwrap();
        }
        for &(a, b) in es {
            g.connect(g.vertex(a).unwrap(), g.vertex(b).unwrap())
                .unwrap();
        }
        let mut c = ConstrainedLevelGraph::new(g);
        for &(a, b) in cs {
            let (a, b) = (c.graph.vertex(a).unwrap(), c.graph.vertex(b).unwrap());
            c.add_constraint(a, b).unwrap();
        }
        c
    }

    #[test]
    fn leaves_fixture_closes_as_expected() {
        let g = instance(
            &[
                ("b1", 1),
                ("b2", 1),
                ("m1", 2),
                ("m2", 2),
                ("m3", 2),
                ("t1", 3),
                ("t2", 3),
            ],
            &[
                ("b1", "m1"),
                ("b2", "m2"),
                ("m1", "t1"),
                ("m2", "t2"),
                ("m3", "t2"),
            ],
            &[("b1", "b2")],
        );
        let c = close_constraints(&g).unwrap();
        let id = |s: &str| g.graph.vertex(s).unwrap();
        let got: Vec<(&str, &str)> = c
            .pairs()
            .into_iter()
            .map(|(a, b)| (g.graph.id(a), g.graph.id(b)))
            .collect();
        let mut want = vec![("b1", "b2"), ("m1", "m2"), ("m1", "m3"), ("t1", "t2")];
        want.sort_by_key(|&(a, b)| (id(a), id(b)));
        assert_eq!(got, want);
    }

    #[test]
    fn opposite_pairs_cycle() {
        let g = instance(&[("a", 2), ("b", 2)], &[], &[("a", "b"), ("b", "a")]);
        assert!(close_constraints(&g).is_err());
    }

    #[test]
    fn forced_crossing_cycles() {
        let g = instance(
            &[("a", 1), ("b", 1), ("c", 2), ("d", 2)],
            &[("a", "d"), ("b", "c")],
            &[("a", "b"), ("c", "d")],
        );
        assert!(close_constraints(&g).is_err());
    }

    #[test]
    fn grows_past_word_boundary() {
        let mut c = ClosedConstraints::with_levels(vec![2; 63]);
        let a = c.add_vertex(2);
        let b = c.add_vertex(2);
        c.add(0, a).unwrap();
        c.add(a, b).unwrap();
        assert!(c.before(0, b));
        assert_eq!(c.total_order(&[b, 0, a]), Some(vec![0, a, b]));
    }
}
