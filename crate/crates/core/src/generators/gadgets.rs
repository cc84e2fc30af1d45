//! Plugs and sockets: level templates, the fitting predicates, and placement
//! into a sketch.

use serde::{Deserialize, Serialize};

use super::sketch::{Route, Sketch};
use crate::error::{Error, Result};
use crate::model::{OrderedLevelGraph, Vertex};

/// Levels of a plug, `l1 <= l2 < l3 <= l4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlugSpec {
    pub levels: [usize; 4],
}

/// Levels of a socket, `l1 < l2 <= l3 < l4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocketSpec {
    pub levels: [usize; 4],
}

/// Vertices of a gadget after contracting repeated levels: `(index, level)`
/// pairs plus edges between indices. Indices are one-based and also give the
/// left-to-right order on shared levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub vertices: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
}

impl Template {
    /// Builds the template, merging every edge between two vertices of one
    /// level into its endpoint with the lower index.
    fn contracted(levels: &[usize], edges: &[(usize, usize)]) -> Template {
        let n = levels.len();
        let mut rep: Vec<usize> = (0..=n).collect();
        fn find(rep: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while rep[r] != r {
                r = rep[r];
            }
            rep[v] = r;
            r
        }
        for &(a, b) in edges {
            if levels[a - 1] == levels[b - 1] {
                let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                rep[hi] = lo;
            }
        }
        let vertices = (1..=n)
            .filter(|&v| find(&mut rep, v) == v)
            .map(|v| (v, levels[v - 1]))
            .collect();
        let edges = edges
            .iter()
            .map(|&(a, b)| (find(&mut rep, a), find(&mut rep, b)))
            .filter(|(a, b)| a != b)
            .collect();
        Template { vertices, edges }
    }

    pub fn level_of(&self, index: usize) -> Option<usize> {
        self.vertices.iter().find(|v| v.0 == index).map(|v| v.1)
    }
}

const PLUG_EDGES: [(usize, usize); 5] = [(1, 2), (2, 3), (3, 4), (4, 6), (6, 5)];
const SOCKET_EDGES: [(usize, usize); 8] = [
    (1, 2),
    (2, 3),
    (3, 5),
    (5, 7),
    (4, 6),
    (6, 8),
    (8, 10),
    (10, 9),
];

impl PlugSpec {
    pub fn new(levels: [usize; 4]) -> Result<Self> {
        let [a, b, c, d] = levels;
        if a == 0 || !(a <= b && b < c && c <= d) {
            return Err(Error::ParameterInvalid(format!(
                "plug levels {levels:?} must satisfy 1 <= l1 <= l2 < l3 <= l4"
            )));
        }
        Ok(Self { levels })
    }

    pub fn is_degenerate(&self) -> bool {
        self.levels.windows(2).any(|w| w[0] == w[1])
    }

    /// A path through levels l4, l3, l2, l3, l2, l1.
    pub fn template(&self) -> Template {
        let [l1, l2, l3, l4] = self.levels;
        Template::contracted(&[l4, l3, l2, l3, l1, l2], &PLUG_EDGES)
    }

    /// Distinct levels used.
    pub fn level_set(&self) -> Vec<usize> {
        let mut v = self.levels.to_vec();
        v.dedup();
        v
    }
}

impl SocketSpec {
    pub fn new(levels: [usize; 4]) -> Result<Self> {
        let [a, b, c, d] = levels;
        if a == 0 || !(a < b && b <= c && c < d) {
            return Err(Error::ParameterInvalid(format!(
                "socket levels {levels:?} must satisfy 1 <= l1 < l2 <= l3 < l4"
            )));
        }
        Ok(Self { levels })
    }

    pub fn is_degenerate(&self) -> bool {
        self.levels[1] == self.levels[2]
    }

    /// Two paths interleaving on levels l2 and l3.
    pub fn template(&self) -> Template {
        let [l1, l2, l3, l4] = self.levels;
        Template::contracted(&[l3, l2, l1, l2, l2, l3, l3, l4, l2, l3], &SOCKET_EDGES)
    }

    pub fn level_set(&self) -> Vec<usize> {
        let mut v = self.levels.to_vec();
        v.dedup();
        v
    }
}

/// Whether `plug`, whose connected component spans the levels `extent`, can
/// be woven into `socket`.
pub fn fits(plug: &PlugSpec, socket: &SocketSpec, extent: (usize, usize)) -> bool {
    let [s1, s2, s3, s4] = socket.levels;
    let [_, a2, a3, _] = plug.levels;
    extent.0 <= s1 && extent.1 >= s4 && s1 < a2 && a2 < s2 && s2 <= s3 && s3 < a3 && a3 < s4
}

/// Whether plugs `a` and `b` can both link to `socket` in one drawing.
pub fn double_link_admissible(
    a: &PlugSpec,
    b: &PlugSpec,
    socket: &SocketSpec,
    extents: [(usize, usize); 2],
) -> bool {
    let [_, a2, a3, _] = a.levels;
    let [_, b2, b3, _] = b.levels;
    fits(a, socket, extents[0])
        && fits(b, socket, extents[1])
        && ((a2 < b2 && a3 < b3) || (a2 > b2 && a3 > b3))
}

/// Horizontal placement of a gadget: lane `l` sits at `offset + scale * l`.
/// Lanes run from 0 (left wall) to 10 (right wall).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub offset: f64,
    pub scale: f64,
}

impl Frame {
    pub fn lane(&self, l: f64) -> f64 {
        self.offset + self.scale * l
    }
}

fn plug_lane(index: usize) -> f64 {
    if index <= 3 {
        2.0
    } else {
        6.0
    }
}

fn plug_edge_lane(a: usize, b: usize) -> f64 {
    match (a.min(b), a.max(b)) {
        (3, 4) => 4.0,
        (x, _) if x <= 2 => 2.0,
        _ => 6.0,
    }
}

fn socket_lane(index: usize) -> f64 {
    match index {
        1 => 0.0,
        2 => 1.0,
        3 | 4 | 6 => 3.0,
        5 | 7 | 8 => 5.0,
        9 => 10.0,
        _ => 7.0,
    }
}

fn socket_edge_lane(a: usize, b: usize) -> f64 {
    match (a.min(b), a.max(b)) {
        (1, _) | (2, 3) => 1.0,
        (3, 5) | (5, 7) => 5.0,
        (4, _) | (6, 8) => 3.0,
        _ => 7.0,
    }
}

/// Connecting vertices of a placed plug.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacedPlug {
    /// Top connecting vertex.
    pub top: Vertex,
    /// Bottom connecting vertex.
    pub bottom: Vertex,
}

/// Adds a plug named `prefix.u<i>` drawn in `frame`.
pub fn place_plug(
    sketch: &mut Sketch,
    prefix: &str,
    plug: &PlugSpec,
    frame: Frame,
) -> Result<PlacedPlug> {
    let t = plug.template();
    let mut handle = [usize::MAX; 7];
    for &(i, level) in &t.vertices {
        handle[i] = sketch.vertex(format!("{prefix}.u{i}"), level, frame.lane(plug_lane(i)))?;
    }
    for &(a, b) in &t.edges {
        sketch.edge(
            handle[a],
            handle[b],
            Route::Const(frame.lane(plug_edge_lane(a, b))),
        )?;
    }
    Ok(PlacedPlug {
        top: handle[1],
        bottom: handle[5],
    })
}

/// Adds a socket named `prefix.v<i>` between two walls. `wall(side, level)`
/// returns the wall vertex that the left (`side = 0`) or right connecting
/// vertex is identified with. Edges are subdivided on every level of
/// `refine` they pass.
pub fn place_socket(
    sketch: &mut Sketch,
    prefix: &str,
    socket: &SocketSpec,
    frame: Frame,
    wall: &dyn Fn(usize, usize) -> Vertex,
    refine: &[usize],
) -> Result<()> {
    let t = socket.template();
    let mut handle = [usize::MAX; 11];
    for &(i, level) in &t.vertices {
        handle[i] = match i {
            1 => wall(0, level),
            9 => wall(1, level),
            _ => sketch.vertex(format!("{prefix}.v{i}"), level, frame.lane(socket_lane(i)))?,
        };
    }
    for &(a, b) in &t.edges {
        let x = frame.lane(socket_edge_lane(a, b));
        let (lo, hi) = if t.level_of(a) < t.level_of(b) {
            (a, b)
        } else {
            (b, a)
        };
        let (l_lo, l_hi) = (
            t.level_of(lo).expect("vertex"),
            t.level_of(hi).expect("vertex"),
        );
        let mut from = handle[lo];
        for &r in refine.iter().filter(|&&r| l_lo < r && r < l_hi) {
            let mid = sketch.vertex(format!("{prefix}.v{lo}v{hi}@{r}"), r, x)?;
            sketch.edge(from, mid, Route::Const(x))?;
            from = mid;
        }
        sketch.edge(from, handle[hi], Route::Const(x))?;
    }
    Ok(())
}

/// An instance with one socket and the given plugs between two walls that
/// occupy every level of `1..=height`. Plugs whose levels miss the bottom or
/// top level are tied to a shared floor or ceiling vertex there, so every
/// plug component spans all levels and has to pass through the socket.
pub fn link_instance(
    socket: &SocketSpec,
    plugs: &[PlugSpec],
    height: usize,
) -> Result<OrderedLevelGraph> {
    let top = socket.levels[3].max(plugs.iter().map(|p| p.levels[3]).max().unwrap_or(0));
    if top > height {
        return Err(Error::ParameterInvalid(format!(
            "gadgets need {top} levels, height is {height}"
        )));
    }
    let mut sketch = Sketch::new(height);
    let mut walls = [Vec::new(), Vec::new()];
    for (side, x) in [(0, 0.0), (1, 100.0)] {
        for level in 1..=height {
            walls[side].push(sketch.vertex(format!("w{side}@{level}"), level, x)?);
        }
        for level in 1..height {
            sketch.edge(walls[side][level - 1], walls[side][level], Route::Const(x))?;
        }
    }
    let frame = Frame {
        offset: 0.0,
        scale: 10.0,
    };
    place_socket(
        &mut sketch,
        "s",
        socket,
        frame,
        &|side, level| walls[side][level - 1],
        &[],
    )?;
    let mut floor = None;
    let mut ceiling = None;
    for (i, p) in plugs.iter().enumerate() {
        let placed = place_plug(&mut sketch, &format!("p{i}"), p, frame)?;
        if p.levels[0] > 1 {
            let f = match floor {
                Some(f) => f,
                None => *floor.insert(sketch.vertex("floor", 1, 95.0)?),
            };
            sketch.edge(f, placed.bottom, Route::Const(frame.lane(6.0)))?;
        }
        if p.levels[3] < height {
            let c = match ceiling {
                Some(c) => c,
                None => *ceiling.insert(sketch.vertex("ceiling", height, 5.0)?),
            };
            sketch.edge(placed.top, c, Route::Const(frame.lane(2.0)))?;
        }
    }
    Ok(sketch.ordered()?)
}
