//! Mutable branch state shared by the pipeline stages.

use std::collections::VecDeque;

use thiserror::Error;

use super::closure::{close_constraints, ClosedConstraints, Cycle};
use crate::model::{ConstrainedLevelGraph, Vertex};

/// Pipeline stage at which a branch was abandoned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Stage {
    Closure,
    Hooks,
    Backbone,
    Prune,
    Gaps,
    Finalize,
}

/// A branch ends without a drawing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{stage:?}: {reason}")]
pub struct Reject {
    pub stage: Stage,
    pub reason: String,
}

impl Reject {
    pub fn new(stage: Stage, reason: impl Into<String>) -> Self {
        Self {
            stage,
            reason: reason.into(),
        }
    }
}

pub(crate) fn reject<T>(stage: Stage, reason: impl Into<String>) -> Result<T, Reject> {
    Err(Reject::new(stage, reason))
}

/// Graph and closed relation of one connected sub-instance while a branch
/// rewrites it. Vertices `0..base` are those of the sub-instance; later ones
/// were added by the hook stage.
#[derive(Debug, Clone)]
pub struct Work {
    pub names: Vec<String>,
    pub rel: ClosedConstraints,
    pub alive: Vec<bool>,
    pub base: usize,
    /// Edges added when linking hooks, in insertion order.
    pub added_edges: Vec<(Vertex, Vertex)>,
    /// Edges between a finger anchor and its hand, removed before gap assignment.
    pub detached: Vec<(Vertex, Vertex)>,
    /// Leaves removed from the backbone, in removal order.
    pub removed_leaves: Vec<(Vertex, Vertex)>,
}

impl Work {
    pub fn from_part(part: &ConstrainedLevelGraph) -> Result<Work, Cycle> {
        let graph = &part.graph;
        Ok(Work {
            names: graph.vertices().map(|v| graph.id(v).to_string()).collect(),
            rel: close_constraints(part)?,
            alive: vec![true; graph.len()],
            base: graph.len(),
            added_edges: Vec::new(),
            detached: Vec::new(),
            removed_leaves: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn level(&self, v: Vertex) -> usize {
        self.rel.level(v)
    }

    pub fn nbrs(&self, v: Vertex) -> &[Vertex] {
        self.rel.neighbors(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.nbrs(v).len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn before(&self, a: Vertex, b: Vertex) -> bool {
        self.rel.before(a, b)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len()).filter(|&v| self.alive[v])
    }

    pub fn level_vertices(&self, level: usize) -> Vec<Vertex> {
        self.vertices()
            .filter(|&v| self.level(v) == level)
            .collect()
    }

    pub fn sort_by_name(&self, vs: &mut [Vertex]) {
        vs.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
    }

    /// Neighbors sorted by name, for deterministic traversals.
    pub fn sorted_nbrs(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = self.nbrs(v).to_vec();
        self.sort_by_name(&mut out);
        out
    }

    /// Vertices reachable from `starts` without entering `blocked`.
    pub fn reach(&self, starts: &[Vertex], blocked: impl Fn(Vertex) -> bool) -> Vec<Vertex> {
        let mut seen = vec![false; self.len()];
        let mut queue: VecDeque<Vertex> = VecDeque::new();
        for &s in starts {
            if !blocked(s) && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &w in self.nbrs(v) {
                if !seen[w] && !blocked(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected components of the live graph, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for v in self.vertices() {
            if !seen[v] {
                let comp = self.reach(&[v], |_| false);
                for &w in &comp {
                    seen[w] = true;
                }
                out.push(comp);
            }
        }
        out
    }

    fn add_vertex(&mut self, name: String, level: usize) -> Vertex {
        let v = self.rel.add_vertex(level);
        self.names.push(name);
        self.alive.push(true);
        v
    }

    /// Joins `a` and `b`, subdividing when they are two levels apart.
    pub fn link(&mut self, a: Vertex, b: Vertex) {
        if self.rel.adjacent(a, b) {
            return;
        }
        if self.level(a).abs_diff(self.level(b)) == 2 {
            let name = format!("~link{}", self.len());
            let m = self.add_vertex(name, 2);
            self.link(a, m);
            self.link(m, b);
            return;
        }
        self.rel.add_edge(a, b);
        self.added_edges.push((a, b));
    }

    pub fn detach(&mut self, a: Vertex, b: Vertex) {
        self.rel.remove_edge(a, b);
        self.detached.push((a, b));
    }

    /// Deletes leaf `v` attached to `anchor`.
    pub fn remove_leaf(&mut self, v: Vertex, anchor: Vertex) {
        self.rel.remove_edge(v, anchor);
        self.alive[v] = false;
        self.removed_leaves.push((v, anchor));
    }

    /// Adds pairs and propagates; a cycle rejects the branch at `stage`.
    pub fn constrain(
        &mut self,
        stage: Stage,
        pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<(), Reject> {
        self.rel.add_all(pairs).map_err(|Cycle(a, b)| {
            Reject::new(
                stage,
                format!(
                    "order cycle through {} and {}",
                    self.names[a], self.names[b]
                ),
            )
        })
    }

    /// Propagates pending consequences of graph changes.
    pub fn settle(&mut self, stage: Stage) -> Result<(), Reject> {
        self.constrain(stage, [])
    }

    pub fn admits(&self, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> bool {
        self.rel.admits(pairs)
    }

    /// Linear extension of the relation on `set`, smallest name first.
    pub fn extension(&self, set: &[Vertex]) -> Option<Vec<Vertex>> {
        let pairs: Vec<(Vertex, Vertex)> = set
            .iter()
            .flat_map(|&a| {
                set.iter()
                    .filter(move |&&b| self.before(a, b))
                    .map(move |&b| (a, b))
            })
            .collect();
        crate::order::extend_subset(set, pairs, |v| self.names[v].clone())
    }

    /// Consecutive pairs of a sequence.
    pub fn chain(seq: &[Vertex]) -> Vec<(Vertex, Vertex)> {
        seq.windows(2).map(|w| (w[0], w[1])).collect()
    }
}
