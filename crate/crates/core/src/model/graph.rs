use std::collections::{HashMap, HashSet};

use super::ModelError;

/// Vertex handle: an index into the owning graph.
pub type Vertex = usize;

/// Directed level graph with levels `1..=height`. Edges are stored as
/// `(lower, upper)` pairs.
#[derive(Debug, Clone, Default)]
pub struct LevelGraph {
    height: usize,
    ids: Vec<String>,
    levels: Vec<usize>,
    edges: Vec<(Vertex, Vertex)>,
    lookup: HashMap<String, Vertex>,
    adjacency: Vec<Vec<Vertex>>,
    edge_set: HashSet<(Vertex, Vertex)>,
}

impl LevelGraph {
    pub fn new(height: usize) -> Self {
        Self {
            height,
            ..Self::default()
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, v: Vertex) -> &str {
        &self.ids[v]
    }

    pub fn level(&self, v: Vertex) -> usize {
        self.levels[v]
    }

    pub fn vertex(&self, id: &str) -> Option<Vertex> {
        self.lookup.get(id).copied()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.ids.len()
    }

    /// Undirected adjacency test.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_set.contains(&(u, v)) || self.edge_set.contains(&(v, u))
    }

    /// Vertices of `level` in index order.
    pub fn level_vertices(&self, level: usize) -> Vec<Vertex> {
        self.vertices()
            .filter(|&v| self.levels[v] == level)
            .collect()
    }

    /// Vertices grouped by level; entry `i` holds level `i + 1`.
    pub fn by_level(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.height];
        for v in self.vertices() {
            out[self.levels[v] - 1].push(v);
        }
        out
    }

    pub fn is_proper(&self) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| self.levels[v] == self.levels[u] + 1)
    }

    pub fn add_vertex(
        &mut self,
        id: impl Into<String>,
        level: usize,
    ) -> Result<Vertex, ModelError> {
        let id = id.into();
        if level == 0 || level > self.height {
            return Err(ModelError::LevelOutOfRange {
                id,
                level,
                height: self.height,
            });
        }
        if self.lookup.contains_key(&id) {
            return Err(ModelError::DuplicateVertex(id));
        }
        let v = self.ids.len();
        self.lookup.insert(id.clone(), v);
        self.ids.push(id);
        self.levels.push(level);
        self.adjacency.push(Vec::new());
        Ok(v)
    }

    /// Adds the edge `(u, v)`, which must point upward.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), ModelError> {
        let (lu, lv) = (self.levels[u], self.levels[v]);
        if lu == lv {
            return Err(ModelError::SameLevelEdge(
                self.ids[u].clone(),
                self.ids[v].clone(),
            ));
        }
        if lu > lv {
            return Err(ModelError::EdgeNotUpward(
                self.ids[u].clone(),
                self.ids[v].clone(),
            ));
        }
        if !self.edge_set.insert((u, v)) {
            return Err(ModelError::DuplicateEdge(
                self.ids[u].clone(),
                self.ids[v].clone(),
            ));
        }
        self.edges.push((u, v));
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        Ok(())
    }

    /// Adds an edge between `a` and `b` in whichever direction points upward.
    pub fn connect(&mut self, a: Vertex, b: Vertex) -> Result<(), ModelError> {
        if self.levels[a] <= self.levels[b] {
            self.add_edge(a, b)
        } else {
            self.add_edge(b, a)
        }
    }

    /// Removes the edge between `a` and `b` if present.
    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        let key = if self.edge_set.contains(&(a, b)) {
            (a, b)
        } else {
            (b, a)
        };
        if !self.edge_set.remove(&key) {
            return false;
        }
        self.edges.retain(|&e| e != key);
        self.adjacency[a].retain(|&x| x != b);
        self.adjacency[b].retain(|&x| x != a);
        true
    }

    /// Returns an id not yet used in the graph, derived from `base`.
    pub fn fresh_id(&self, base: &str) -> String {
        if !self.lookup.contains_key(base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}~{k}"))
            .find(|c| !self.lookup.contains_key(c))
            .expect("unbounded search")
    }

    /// Subgraph induced by `keep`, in the given order. Returns the graph and
    /// the map from new to old vertex handles.
    pub fn induced(&self, keep: &[Vertex]) -> (LevelGraph, Vec<Vertex>) {
        let mut g = LevelGraph::new(self.height);
        let mut map = HashMap::new();
        for &v in keep {
            let nv = g
                .add_vertex(self.ids[v].clone(), self.levels[v])
                .expect("valid source");
            map.insert(v, nv);
        }
        for &(u, v) in &self.edges {
            if let (Some(&a), Some(&b)) = (map.get(&u), map.get(&v)) {
                g.add_edge(a, b).expect("valid source");
            }
        }
        (g, keep.to_vec())
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Level graph with per-level partial orders given as `before -> after` pairs.
#[derive(Debug, Clone, Default)]
pub struct ConstrainedLevelGraph {
    pub graph: LevelGraph,
    constraints: Vec<(Vertex, Vertex)>,
    constraint_set: HashSet<(Vertex, Vertex)>,
}

impl ConstrainedLevelGraph {
    pub fn new(graph: LevelGraph) -> Self {
        Self {
            graph,
            ..Self::default()
        }
    }

    pub fn constraints(&self) -> &[(Vertex, Vertex)] {
        &self.constraints
    }

    pub fn has_constraint(&self, u: Vertex, v: Vertex) -> bool {
        self.constraint_set.contains(&(u, v))
    }

    /// Adds `u` before `v`; duplicates are ignored.
    pub fn add_constraint(&mut self, u: Vertex, v: Vertex) -> Result<(), ModelError> {
        let g = &self.graph;
        if u == v {
            return Err(ModelError::ReflexiveConstraint(g.id(u).to_string()));
        }
        if g.level(u) != g.level(v) {
            return Err(ModelError::ConstraintAcrossLevels(
                g.id(u).to_string(),
                g.id(v).to_string(),
            ));
        }
        if self.constraint_set.insert((u, v)) {
            self.constraints.push((u, v));
        }
        Ok(())
    }

    /// Constraints grouped by level; entry `i` holds level `i + 1`.
    pub fn constraints_by_level(&self) -> Vec<Vec<(Vertex, Vertex)>> {
        let mut out = vec![Vec::new(); self.graph.height()];
        for &(u, v) in &self.constraints {
            out[self.graph.level(u) - 1].push((u, v));
        }
        out
    }

    /// Sub-instance induced by `keep`; constraints with both ends kept survive.
    pub fn induced(&self, keep: &[Vertex]) -> (ConstrainedLevelGraph, Vec<Vertex>) {
        let (graph, map) = self.graph.induced(keep);
        let mut inverse = HashMap::new();
        for (new, &old) in map.iter().enumerate() {
            inverse.insert(old, new);
        }
        let mut out = ConstrainedLevelGraph::new(graph);
        for &(u, v) in &self.constraints {
            if let (Some(&a), Some(&b)) = (inverse.get(&u), inverse.get(&v)) {
                out.add_constraint(a, b).expect("valid source");
            }
        }
        (out, map)
    }

    /// True when every level's constraint relation is acyclic.
    pub fn is_acyclic(&self) -> bool {
        crate::order::linear_extension(self.graph.len(), self.constraints.iter().copied(), |v| v)
            .is_some()
    }
}

/// Level graph with a total order per level; `order[i]` lists level `i + 1`
/// from left to right.
#[derive(Debug, Clone, Default)]
pub struct OrderedLevelGraph {
    pub graph: LevelGraph,
    order: Vec<Vec<Vertex>>,
    position: Vec<usize>,
}

impl OrderedLevelGraph {
    /// Builds the instance from per-level orders that must partition the vertices.
    pub fn new(graph: LevelGraph, order: Vec<Vec<Vertex>>) -> Result<Self, ModelError> {
        if order.len() != graph.height() {
            return Err(ModelError::Malformed(format!(
                "expected {} level orders, got {}",
                graph.height(),
                order.len()
            )));
        }
        let mut position = vec![usize::MAX; graph.len()];
        for (i, level) in order.iter().enumerate() {
            for (p, &v) in level.iter().enumerate() {
                if graph.level(v) != i + 1 || position[v] != usize::MAX {
                    return Err(ModelError::Malformed(format!(
                        "bad order entry `{}`",
                        graph.id(v)
                    )));
                }
                position[v] = p;
            }
        }
        if let Some(v) = position.iter().position(|&p| p == usize::MAX) {
            return Err(ModelError::Malformed(format!(
                "vertex `{}` has no rank",
                graph.id(v)
            )));
        }
        Ok(Self {
            graph,
            order,
            position,
        })
    }

    pub fn order(&self) -> &[Vec<Vertex>] {
        &self.order
    }

    /// Vertices of `level` from left to right.
    pub fn level_order(&self, level: usize) -> &[Vertex] {
        &self.order[level - 1]
    }

    /// One-based rank of `v` within its level.
    pub fn rank(&self, v: Vertex) -> usize {
        self.position[v] + 1
    }

    pub fn width(&self, level: usize) -> usize {
        self.order[level - 1].len()
    }

    /// The same instance with each total order written as a chain of constraints.
    pub fn to_constrained(&self) -> ConstrainedLevelGraph {
        let mut out = ConstrainedLevelGraph::new(self.graph.clone());
        for level in &self.order {
            for w in level.windows(2) {
                out.add_constraint(w[0], w[1]).expect("same level");
            }
        }
        out
    }

    /// Mirror image: every level order reversed.
    pub fn mirrored(&self) -> OrderedLevelGraph {
        let order = self
            .order
            .iter()
            .map(|l| l.iter().rev().copied().collect())
            .collect();
        OrderedLevelGraph::new(self.graph.clone(), order).expect("same partition")
    }
}

/// A validated instance in either mode.
#[derive(Debug, Clone)]
pub enum Instance {
    Constrained(ConstrainedLevelGraph),
    Ordered(OrderedLevelGraph),
}

impl Instance {
    pub fn graph(&self) -> &LevelGraph {
        match self {
            Instance::Constrained(c) => &c.graph,
            Instance::Ordered(o) => &o.graph,
        }
    }

    pub fn is_ordered(&self) -> bool {
        matches!(self, Instance::Ordered(_))
    }

    /// Constraint view; ranks become chains.
    pub fn as_constrained(&self) -> ConstrainedLevelGraph {
        match self {
            Instance::Constrained(c) => c.clone(),
            Instance::Ordered(o) => o.to_constrained(),
        }
    }
}
