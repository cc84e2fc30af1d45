use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LevelGraph, Vertex};

/// One entry of a level line: a vertex or an edge passing through.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Item {
    Vertex(String),
    Edge(String, String),
}

impl Item {
    pub fn vertex_id(&self) -> Option<&str> {
        match self {
            Item::Vertex(id) => Some(id),
            Item::Edge(..) => None,
        }
    }
}

/// Optional geometry attached to an embedding.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Coordinates {
    pub vertices: BTreeMap<String, (f64, f64)>,
    #[serde(default)]
    pub edges: Vec<EdgePolyline>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgePolyline {
    pub edge: (String, String),
    pub points: Vec<(f64, f64)>,
}

/// Left-to-right item sequence per level; `levels[i]` is level `i + 1`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LevelEmbedding {
    pub levels: Vec<Vec<Item>>,
    pub coordinates: Option<Coordinates>,
}

#[derive(Serialize, Deserialize)]
struct RawEmbedding {
    levels: BTreeMap<usize, Vec<Item>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coordinates: Option<Coordinates>,
}

impl Serialize for LevelEmbedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawEmbedding {
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(i, l)| (i + 1, l.clone()))
                .collect(),
            coordinates: self.coordinates.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LevelEmbedding {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawEmbedding::deserialize(d)?;
        let height = raw.levels.keys().copied().max().unwrap_or(0);
        if raw.levels.contains_key(&0) {
            return Err(serde::de::Error::custom("levels are numbered from 1"));
        }
        let mut levels = vec![Vec::new(); height];
        for (i, items) in raw.levels {
            levels[i - 1] = items;
        }
        Ok(LevelEmbedding {
            levels,
            coordinates: raw.coordinates,
        })
    }
}

impl LevelEmbedding {
    /// Builds the item sequences of `graph` from a left-to-right order of the
    /// vertices of every level of its proper subdivision. `proper_orders[i]`
    /// lists vertices of `proper`, which must extend `graph` as produced by
    /// [`super::make_proper`].
    pub fn from_proper_orders(
        graph: &LevelGraph,
        proper: &LevelGraph,
        map: &super::SubdivisionMap,
        proper_orders: &[Vec<Vertex>],
    ) -> LevelEmbedding {
        let levels = proper_orders
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|&v| {
                        if v < graph.len() {
                            Item::Vertex(graph.id(v).to_string())
                        } else {
                            let (a, b) = map.origin(v).expect("subdivision vertex");
                            Item::Edge(graph.id(a).to_string(), graph.id(b).to_string())
                        }
                    })
                    .collect()
            })
            .collect();
        debug_assert_eq!(proper.height(), graph.height());
        LevelEmbedding {
            levels,
            coordinates: None,
        }
    }

    /// Builds an embedding of a graph whose edges are all proper from vertex orders.
    pub fn from_orders(graph: &LevelGraph, orders: &[Vec<Vertex>]) -> LevelEmbedding {
        LevelEmbedding {
            levels: orders
                .iter()
                .map(|l| {
                    l.iter()
                        .map(|&v| Item::Vertex(graph.id(v).to_string()))
                        .collect()
                })
                .collect(),
            coordinates: None,
        }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Vertex ids of `level` in drawing order.
    pub fn vertex_order(&self, level: usize) -> Vec<&str> {
        self.levels[level - 1]
            .iter()
            .filter_map(Item::vertex_id)
            .collect()
    }

    /// Attaches coordinates with `y = level` and `x = index` along each level,
    /// plus one polyline per edge of `graph` through its markers.
    pub fn with_coordinates(mut self, graph: &LevelGraph) -> LevelEmbedding {
        let mut coords = Coordinates::default();
        let mut markers: BTreeMap<(String, String), Vec<(f64, f64)>> = BTreeMap::new();
        for (i, level) in self.levels.iter().enumerate() {
            let y = (i + 1) as f64;
            for (x, item) in level.iter().enumerate() {
                match item {
                    Item::Vertex(id) => {
                        coords.vertices.insert(id.clone(), (x as f64, y));
                    }
                    Item::Edge(a, b) => {
                        markers
                            .entry((a.clone(), b.clone()))
                            .or_default()
                            .push((x as f64, y));
                    }
                }
            }
        }
        for &(u, v) in graph.edges() {
            let edge = (graph.id(u).to_string(), graph.id(v).to_string());
            let (Some(&p), Some(&q)) = (coords.vertices.get(&edge.0), coords.vertices.get(&edge.1))
            else {
                continue;
            };
            let mut points = vec![p];
            points.extend(markers.remove(&edge).unwrap_or_default());
            points.push(q);
            coords.edges.push(EdgePolyline { edge, points });
        }
        coords.edges.sort_by(|a, b| a.edge.cmp(&b.edge));
        self.coordinates = Some(coords);
        self
    }
}
