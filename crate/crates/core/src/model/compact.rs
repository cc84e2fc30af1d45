use super::{ConstrainedLevelGraph, LevelGraph, OrderedLevelGraph};

/// Renumbers levels so that no level is empty, preserving their relative order.
/// Returns the new level of every old level (`None` for removed ones).
pub fn level_renumbering(g: &LevelGraph) -> Vec<Option<usize>> {
    let mut used = vec![false; g.height() + 1];
    for v in g.vertices() {
        used[g.level(v)] = true;
    }
    let mut next = 0;
    let mut map = vec![None; g.height() + 1];
    for level in 1..=g.height() {
        if used[level] {
            next += 1;
            map[level] = Some(next);
        }
    }
    map
}

/// Copy of `g` with empty levels removed; vertex handles are unchanged.
pub fn compact_graph(g: &LevelGraph) -> LevelGraph {
    let map = level_renumbering(g);
    let height = map.iter().flatten().copied().max().unwrap_or(0);
    let mut out = LevelGraph::new(height);
    for v in g.vertices() {
        out.add_vertex(g.id(v), map[g.level(v)].expect("occupied"))
            .expect("valid source");
    }
    for &(u, v) in g.edges() {
        out.add_edge(u, v).expect("order preserved");
    }
    out
}

pub fn compact_constrained(g: &ConstrainedLevelGraph) -> ConstrainedLevelGraph {
    let mut out = ConstrainedLevelGraph::new(compact_graph(&g.graph));
    for &(u, v) in g.constraints() {
        out.add_constraint(u, v).expect("same level");
    }
    out
}

pub fn compact_ordered(g: &OrderedLevelGraph) -> OrderedLevelGraph {
    let order = g
        .order()
        .iter()
        .filter(|l| !l.is_empty())
        .cloned()
        .collect();
    OrderedLevelGraph::new(compact_graph(&g.graph), order).expect("same partition")
}
