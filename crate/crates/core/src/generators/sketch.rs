//! Coordinate sketches: vertices with x-coordinates and long edges with a
//! chosen crossing point on every level they pass, turned into instances and
//! drawings by sorting each level.

use std::collections::BTreeMap;

use crate::model::{Item, LevelEmbedding, LevelGraph, ModelError, OrderedLevelGraph, Vertex};

/// Where a long edge crosses the levels strictly between its endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Route {
    /// The same x on every intermediate level.
    Const(f64),
    /// `below` on levels under `from`, `above` on `from` and higher.
    Split { from: usize, below: f64, above: f64 },
}

impl Route {
    fn at(self, level: usize) -> f64 {
        match self {
            Route::Const(x) => x,
            Route::Split { from, below, above } => {
                if level < from {
                    below
                } else {
                    above
                }
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Sketch {
    pub graph: LevelGraph,
    x: Vec<f64>,
    routes: BTreeMap<(Vertex, Vertex), Route>,
}

impl Sketch {
    pub fn new(height: usize) -> Self {
        Self {
            graph: LevelGraph::new(height),
            x: Vec::new(),
            routes: BTreeMap::new(),
        }
    }

    pub fn vertex(
        &mut self,
        id: impl Into<String>,
        level: usize,
        x: f64,
    ) -> Result<Vertex, ModelError> {
        let v = self.graph.add_vertex(id, level)?;
        self.x.push(x);
        Ok(v)
    }

    pub fn x(&self, v: Vertex) -> f64 {
        self.x[v]
    }

    /// Adds an edge; `route` only matters when the edge spans several levels.
    pub fn edge(&mut self, a: Vertex, b: Vertex, route: Route) -> Result<(), ModelError> {
        self.graph.connect(a, b)?;
        let key = if self.graph.level(a) < self.graph.level(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.routes.insert(key, route);
        Ok(())
    }

    fn sorted_levels(&self) -> Vec<Vec<(f64, Item)>> {
        let g = &self.graph;
        let mut levels: Vec<Vec<(f64, Item)>> = vec![Vec::new(); g.height()];
        for v in g.vertices() {
            levels[g.level(v) - 1].push((self.x[v], Item::Vertex(g.id(v).to_string())));
        }
        for &(u, v) in g.edges() {
            let route = self.routes[&(u, v)];
            for level in g.level(u) + 1..g.level(v) {
                let item = Item::Edge(g.id(u).to_string(), g.id(v).to_string());
                levels[level - 1].push((route.at(level), item));
            }
        }
        for level in &mut levels {
            level.sort_by(|a, b| a.0.total_cmp(&b.0));
        }
        levels
    }

    /// Vertex order of every level.
    pub fn orders(&self) -> Vec<Vec<Vertex>> {
        let g = &self.graph;
        let mut orders: Vec<Vec<Vertex>> = vec![Vec::new(); g.height()];
        for v in g.vertices() {
            orders[g.level(v) - 1].push(v);
        }
        for level in &mut orders {
            level.sort_by(|&a, &b| self.x[a].total_cmp(&self.x[b]));
        }
        orders
    }

    /// The graph with the sketched vertex orders as ranks.
    pub fn ordered(&self) -> Result<OrderedLevelGraph, ModelError> {
        OrderedLevelGraph::new(self.graph.clone(), self.orders())
    }

    pub fn embedding(&self) -> LevelEmbedding {
        LevelEmbedding {
            levels: self
                .sorted_levels()
                .into_iter()
                .map(|l| l.into_iter().map(|(_, item)| item).collect())
                .collect(),
            coordinates: None,
        }
    }
}
