use super::{ConstrainedLevelGraph, Vertex};

/// Connected components of an instance as induced sub-instances.
#[derive(Debug, Clone)]
pub struct Components {
    /// Each part with its `new -> old` vertex map.
    pub parts: Vec<(ConstrainedLevelGraph, Vec<Vertex>)>,
    /// Component index of every vertex.
    pub membership: Vec<usize>,
    /// Constraints whose endpoints lie in different components.
    pub cross: Vec<(Vertex, Vertex)>,
}

pub fn components(g: &ConstrainedLevelGraph) -> Components {
    let sets = g.graph.connected_components();
    let mut membership = vec![0; g.graph.len()];
    for (i, set) in sets.iter().enumerate() {
        for &v in set {
            membership[v] = i;
        }
    }
    let cross = g
        .constraints()
        .iter()
        .copied()
        .filter(|&(a, b)| membership[a] != membership[b])
        .collect();
    let parts = sets.iter().map(|set| g.induced(set)).collect();
    Components {
        parts,
        membership,
        cross,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LevelGraph;

    #[test]
    fn two_disjoint_edges() {
        let mut g = LevelGraph::new(2);
        let a = g.add_vertex("a", 1).unwrap();
        let b = g.add_vertex("b", 2).unwrap();
        let c = g.add_vertex("c", 1).unwrap();
        let d = g.add_vertex("d", 2).unwrap();
        g.add_edge(a, b).unwrap();
        g.add_edge(c, d).unwrap();
        let mut inst = ConstrainedLevelGraph::new(g);
        inst.add_constraint(a, c).unwrap();
        let comps = components(&inst);
        assert_eq!(comps.parts.len(), 2);
        assert_eq!(comps.cross, vec![(a, c)]);
        assert_ne!(comps.membership[a], comps.membership[c]);
    }
}
