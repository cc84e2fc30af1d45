//! Constrained level planarity for at most two levels. Each component must be
//! a caterpillar drawn as a zigzag; components are then laid side by side in
//! an order compatible with the constraints between them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{
    components, reinsert_isolated, strip_isolated, ConstrainedLevelGraph, LevelEmbedding,
    LevelGraph, Vertex,
};
use crate::order::{extend_subset, linear_extension};

/// A tree whose vertices of degree at least two form a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caterpillar {
    /// Vertices of degree at least two, in path order.
    pub spine: Vec<Vertex>,
    /// Degree-one vertices attached to each spine vertex.
    pub leaves: Vec<Vec<Vertex>>,
    /// All vertices of the caterpillar.
    pub vertices: Vec<Vertex>,
}

/// Recognizes the subgraph induced by `vertices` as a caterpillar. Degenerate
/// cases: a single vertex has an empty spine; a single edge has a spine made
/// of its lower endpoint.
pub fn caterpillar(graph: &LevelGraph, vertices: &[Vertex]) -> Option<Caterpillar> {
    caterpillar_by(vertices, |v| graph.neighbors(v), |v| graph.level(v))
}

/// [`caterpillar`] over any adjacency given by `neighbors` and `level`.
pub fn caterpillar_by<'a, N, L>(vertices: &[Vertex], neighbors: N, level: L) -> Option<Caterpillar>
where
    N: Fn(Vertex) -> &'a [Vertex],
    L: Fn(Vertex) -> usize,
{
    let inside: HashMap<Vertex, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbrs = |v: Vertex| {
        neighbors(v)
            .iter()
            .copied()
            .filter(|w| inside.contains_key(w))
    };
    let edges: usize = vertices.iter().map(|&v| nbrs(v).count()).sum::<usize>() / 2;
    if vertices.is_empty() || edges + 1 != vertices.len() {
        return None;
    }
    // Connectivity: a tree with n - 1 edges must also be connected.
    let mut seen = vec![false; vertices.len()];
    let mut stack = vec![vertices[0]];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for w in nbrs(v) {
            if !seen[inside[&w]] {
                seen[inside[&w]] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    if reached != vertices.len() {
        return None;
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    if vertices.len() == 1 {
        return Some(Caterpillar {
            spine: Vec::new(),
            leaves: Vec::new(),
            vertices: sorted,
        });
    }
    if vertices.len() == 2 {
        let (a, b) = if level(vertices[0]) < level(vertices[1]) {
            (vertices[0], vertices[1])
        } else {
            (vertices[1], vertices[0])
        };
        return Some(Caterpillar {
            spine: vec![a],
            leaves: vec![vec![b]],
            vertices: sorted,
        });
    }
    let is_spine = |v: Vertex| nbrs(v).count() >= 2;
    let spine_set: Vec<Vertex> = sorted.iter().copied().filter(|&v| is_spine(v)).collect();
    let spine_deg = |v: Vertex| nbrs(v).filter(|&w| is_spine(w)).count();
    if spine_set.iter().any(|&v| spine_deg(v) > 2) {
        return None;
    }
    let start = *spine_set.iter().find(|&&v| spine_deg(v) <= 1)?;
    let mut spine = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = nbrs(cur).find(|&w| is_spine(w) && w != prev);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
                spine.push(w);
            }
            None => break,
        }
    }
    if spine.len() != spine_set.len() {
        return None;
    }
    let leaves = spine
        .iter()
        .map(|&v| {
            let mut l: Vec<Vertex> = nbrs(v).filter(|&w| !is_spine(w)).collect();
            l.sort_unstable();
            l
        })
        .collect();
    Some(Caterpillar {
        spine,
        leaves,
        vertices: sorted,
    })
}

impl Caterpillar {
    /// The same caterpillar with the spine read in the other direction.
    pub fn reversed(&self) -> Caterpillar {
        let mut spine = self.spine.clone();
        let mut leaves = self.leaves.clone();
        spine.reverse();
        leaves.reverse();
        Caterpillar {
            spine,
            leaves,
            vertices: self.vertices.clone(),
        }
    }

    /// Both readings, the one starting with the smaller id first. A spine of
    /// length below two has a single reading.
    pub fn orientations(&self, graph: &LevelGraph) -> Vec<Caterpillar> {
        if self.spine.len() < 2 {
            return vec![self.clone()];
        }
        let rev = self.reversed();
        if graph.id(rev.spine[0]) < graph.id(self.spine[0]) {
            vec![rev, self.clone()]
        } else {
            vec![self.clone(), rev]
        }
    }

    /// Order constraints forced by drawing the spine left to right as a
    /// zigzag: spine vertices of one level in spine order, and each leaf
    /// between the spine neighbors of its parent.
    pub fn zigzag_constraints(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.spine.len();
        let mut out = Vec::new();
        for i in 0..k.saturating_sub(2) {
            out.push((self.spine[i], self.spine[i + 2]));
        }
        for i in 0..k {
            for &leaf in &self.leaves[i] {
                if i > 0 {
                    out.push((self.spine[i - 1], leaf));
                }
                if i + 1 < k {
                    out.push((leaf, self.spine[i + 1]));
                }
            }
        }
        out
    }
}

/// Arcs between components induced by constraints whose ends lie in different components.
#[derive(Debug, Clone)]
pub struct ComponentOrderGraph {
    pub nodes: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl ComponentOrderGraph {
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        linear_extension(self.nodes, self.arcs.iter().copied(), |c| c)
    }
}

/// Per-level orders of a connected instance of height two, or `None`.
pub fn solve_component(c: &ConstrainedLevelGraph) -> Option<Vec<Vec<Vertex>>> {
    let graph = &c.graph;
    let all: Vec<Vertex> = graph.vertices().collect();
    let cat = caterpillar(graph, &all)?;
    let levels = graph.by_level();
    for orient in cat.orientations(graph) {
        let extra = orient.zigzag_constraints();
        let pairs: Vec<(Vertex, Vertex)> = c.constraints().iter().copied().chain(extra).collect();
        let orders: Option<Vec<Vec<Vertex>>> = levels
            .iter()
            .map(|l| extend_subset(l, pairs.iter().copied(), |v| graph.id(v).to_string()))
            .collect();
        if orders.is_some() {
            return orders;
        }
    }
    None
}

/// Decides an instance of height at most two and draws it.
pub fn solve(g: &ConstrainedLevelGraph) -> Result<LevelEmbedding> {
    let graph = &g.graph;
    if graph.height() > 2 {
        return Err(Error::ParameterInvalid(format!(
            "height {} exceeds 2",
            graph.height()
        )));
    }
    if !g.is_acyclic() {
        return Err(Error::Infeasible);
    }
    let stripped = strip_isolated(g);
    let inst = &stripped.instance;
    let comps = components(inst);
    let h_graph = ComponentOrderGraph {
        nodes: comps.parts.len(),
        arcs: comps
            .cross
            .iter()
            .map(|&(a, b)| (comps.membership[a], comps.membership[b]))
            .collect(),
    };
    let order = h_graph.topological_order().ok_or(Error::Infeasible)?;
    let mut levels: Vec<Vec<Vertex>> = vec![Vec::new(); graph.height()];
    for ci in order {
        let (part, map) = &comps.parts[ci];
        let local = solve_component(part).ok_or(Error::Infeasible)?;
        for (i, l) in local.into_iter().enumerate() {
            levels[i].extend(l.into_iter().map(|v| map[v]));
        }
    }
    let emb = LevelEmbedding::from_orders(&inst.graph, &levels);
    Ok(reinsert_isolated(g, &emb)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(
        levels: &[(&str, usize)],
        edges: &[(&str, &str)],
        cons: &[(&str, &str)],
    ) -> ConstrainedLevelGraph {
        let h = levels.iter().map(|l| l.1).max().unwrap_or(0);
        let mut g = LevelGraph::new(h);
        for &(id, l) in levels {
            g.add_vertex(id, l).unwrap();
        }
        for &(a, b) in edges {
            let (a, b) = (g.vertex(a).unwrap(), g.vertex(b).unwrap());
            g.connect(a, b).unwrap();
        }
        let mut c = ConstrainedLevelGraph::new(g);
        for &(a, b) in cons {
            let (a, b) = (c.graph.vertex(a).unwrap(), c.graph.vertex(b).unwrap());
            c.add_constraint(a, b).unwrap();
        }
        c
    }

    #[test]
    fn zigzag_path_feasible() {
        let c = build(
            &[("a", 1), ("b", 2), ("c", 1), ("d", 2)],
            &[("a", "b"), ("b", "c"), ("c", "d")],
            &[],
        );
        assert!(solve(&c).is_ok());
    }

    #[test]
    fn four_cycle_infeasible() {
        let c = build(
            &[("a", 1), ("b", 2), ("c", 1), ("d", 2)],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
            &[],
        );
        assert_eq!(solve(&c).unwrap_err(), Error::Infeasible);
    }

    #[test]
    fn star_leaves_follow_constraints() {
        let c = build(
            &[("a", 1), ("b", 1), ("c", 1), ("x", 2)],
            &[("a", "x"), ("b", "x"), ("c", "x")],
            &[("c", "b"), ("b", "a")],
        );
        let emb = solve(&c).unwrap();
        assert_eq!(emb.vertex_order(1), vec!["c", "b", "a"]);
    }

    #[test]
    fn crossed_components_infeasible() {
        let c = build(
            &[("a", 1), ("b", 2), ("c", 1), ("d", 2)],
            &[("a", "b"), ("c", "d")],
            &[("a", "c"), ("d", "b")],
        );
        assert_eq!(solve(&c).unwrap_err(), Error::Infeasible);
    }

    #[test]
    fn single_level_is_topological_sort() {
        let c = build(
            &[("a", 1), ("b", 1), ("c", 1)],
            &[],
            &[("b", "c"), ("a", "b")],
        );
        assert_eq!(solve(&c).unwrap().vertex_order(1), vec!["a", "b", "c"]);
    }
}
