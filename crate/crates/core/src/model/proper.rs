use std::collections::{BTreeMap, HashMap};

use super::{ConstrainedLevelGraph, LevelGraph, Vertex};

/// Provenance of subdivision vertices: each long edge maps to the vertices
/// inserted on its intermediate levels, bottom to top.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubdivisionMap {
    chains: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
    origin: HashMap<Vertex, (Vertex, Vertex)>,
}

impl SubdivisionMap {
    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chains(&self) -> &BTreeMap<(Vertex, Vertex), Vec<Vertex>> {
        &self.chains
    }

    pub fn chain(&self, edge: (Vertex, Vertex)) -> Option<&[Vertex]> {
        self.chains.get(&edge).map(Vec::as_slice)
    }

    /// The original edge a subdivision vertex belongs to.
    pub fn origin(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        self.origin.get(&v).copied()
    }
}

/// Subdivides every edge spanning more than one level. Original vertices keep
/// their handles; subdivision vertices are appended and carry no constraints.
pub fn make_proper(g: &ConstrainedLevelGraph) -> (ConstrainedLevelGraph, SubdivisionMap) {
    let (graph, map) = subdivide(&g.graph);
    let mut out = ConstrainedLevelGraph::new(graph);
    for &(u, v) in g.constraints() {
        out.add_constraint(u, v).expect("valid source");
    }
    (out, map)
}

/// Graph-only version of [`make_proper`].
pub fn subdivide(g: &LevelGraph) -> (LevelGraph, SubdivisionMap) {
    let mut out = LevelGraph::new(g.height());
    for v in g.vertices() {
        out.add_vertex(g.id(v), g.level(v)).expect("valid source");
    }
    let mut map = SubdivisionMap::default();
    for &(u, v) in g.edges() {
        let (lu, lv) = (g.level(u), g.level(v));
        let mut prev = u;
        let mut chain = Vec::new();
        for level in lu + 1..lv {
            let id = out.fresh_id(&format!("{}>{}@{}", g.id(u), g.id(v), level));
            let w = out.add_vertex(id, level).expect("level in range");
            out.add_edge(prev, w).expect("fresh vertex");
            map.origin.insert(w, (u, v));
            chain.push(w);
            prev = w;
        }
        out.add_edge(prev, v).expect("valid source");
        if !chain.is_empty() {
            map.chains.insert((u, v), chain);
        }
    }
    (out, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_edge_gets_one_vertex_per_inner_level() {
        let mut g = LevelGraph::new(4);
        let a = g.add_vertex("a", 1).unwrap();
        let b = g.add_vertex("b", 4).unwrap();
        g.add_edge(a, b).unwrap();
        let (p, map) = subdivide(&g);
        assert!(p.is_proper());
        assert_eq!(p.len(), 4);
        assert_eq!(map.chain((a, b)).unwrap().len(), 2);
        assert_eq!(map.origin(2), Some((a, b)));
    }

    #[test]
    fn proper_input_unchanged() {
        let mut g = LevelGraph::new(2);
        let a = g.add_vertex("a", 1).unwrap();
        let b = g.add_vertex("b", 2).unwrap();
        g.add_edge(a, b).unwrap();
        let (p, map) = subdivide(&g);
        assert_eq!(p.len(), 2);
        assert!(map.is_empty());
    }
}
