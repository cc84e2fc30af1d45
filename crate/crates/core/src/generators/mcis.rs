//! Ordered instances from Multicolored Independent Set. A rigid grid of walls
//! and sockets splits the plane into cells; free plugs shifted along each
//! color band encode the chosen vertex, and collision sockets forbid choosing
//! both ends of an edge.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::gadgets::{place_plug, place_socket, Frame, PlacedPlug, PlugSpec, SocketSpec};
use super::sketch::{Route, Sketch};
use crate::error::{Error, Result};
use crate::model::{LevelEmbedding, OrderedLevelGraph, Vertex};

/// A graph with a `k`-coloring; colors are `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McisInstance {
    pub edges: Vec<(String, String)>,
    pub colors: BTreeMap<String, usize>,
    pub k: usize,
}

/// Level types of a color band from bottom to top: high, color, rigid and
/// pass-through levels.
pub const COLOR_BAND: &str = "HCRPRHRCRCRHRPRCH";
/// Level types of a collision band: above, rigid and below levels.
pub const COLLISION_BAND: &str = "ARABRBARB";

const COLOR_HEIGHT: usize = COLOR_BAND.len();
const PERIOD: usize = COLOR_BAND.len() + COLLISION_BAND.len();

/// Band-relative plug and socket levels.
const HIGH_PLUG: [usize; 4] = [1, 6, 12, 17];
const COLOR_PLUG: [usize; 4] = [2, 8, 10, 16];
const PASS_PLUG: [usize; 4] = [4, 4, 14, 14];
const ABOVE_PLUG: [usize; 4] = [1, 3, 7, 7];
const BELOW_PLUG: [usize; 4] = [4, 4, 6, 9];
/// Socket levels counted over the rigid levels of a band only.
const CHOICE_SOCKET: [usize; 4] = [2, 4, 4, 6];
const COLOR_SOCKET: [usize; 4] = [3, 4, 4, 5];
const PASS_SOCKET: [usize; 4] = [1, 2, 6, 7];
const COLLISION_SOCKET: [usize; 4] = [1, 2, 2, 3];

/// Width of a column in sketch units.
const CELL: f64 = 100.0;

/// Size and shape of the grid built for an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridLayout {
    pub k: usize,
    /// Vertices per color after padding.
    pub class_size: usize,
    /// Edges after padding; one edge block each.
    pub edges: usize,
    /// Edges incident to each color.
    pub per_color: Vec<usize>,
    pub walls: usize,
    pub columns: usize,
    pub height: usize,
}

impl GridLayout {
    fn new(k: usize, class_size: usize, per_color: Vec<usize>, edges: usize) -> Self {
        let walls = (edges + 1) * (2 * class_size - 1);
        Self {
            k,
            class_size,
            edges,
            per_color,
            walls,
            columns: walls - 1,
            height: PERIOD * k - COLLISION_BAND.len(),
        }
    }

    /// Level type letter of every level, bottom to top.
    pub fn level_types(&self) -> String {
        let mut s = String::new();
        for j in 1..=self.k {
            s.push_str(COLOR_BAND);
            if j < self.k {
                s.push_str(COLLISION_BAND);
            }
        }
        s
    }

    /// Absolute level of relative level `rel` of color band `j`.
    pub fn color_level(&self, j: usize, rel: usize) -> usize {
        (j - 1) * PERIOD + rel
    }

    /// Absolute level of relative level `rel` of collision band `j`, which
    /// lies between color bands `j` and `j + 1`.
    pub fn collision_level(&self, j: usize, rel: usize) -> usize {
        (j - 1) * PERIOD + COLOR_HEIGHT + rel
    }

    pub fn rigid_levels(&self) -> Vec<usize> {
        self.level_types()
            .chars()
            .enumerate()
            .filter(|&(_, c)| c == 'R')
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Last level of the band containing `level`.
    fn band_end(&self, level: usize) -> usize {
        let offset = (level - 1) % PERIOD;
        let start = level - offset;
        if offset < COLOR_HEIGHT {
            start + COLOR_HEIGHT - 1
        } else {
            start + PERIOD - 1
        }
    }

    fn choice_width(&self) -> usize {
        self.class_size - 1
    }

    fn block_width(&self) -> usize {
        2 * self.class_size - 1
    }

    /// Global column of relative column `t` (one-based) of edge block `b`.
    pub fn block_column(&self, b: usize, t: usize) -> usize {
        self.choice_width() + b * self.block_width() + t
    }

    /// Edge block of a column, if it lies in one.
    pub fn block_of(&self, column: usize) -> Option<usize> {
        let c = self.choice_width();
        (column > c && column <= c + self.edges * self.block_width())
            .then(|| (column - c - 1) / self.block_width())
    }

    fn frame(&self, column: usize) -> Frame {
        Frame {
            offset: CELL * (column - 1) as f64,
            scale: CELL / 10.0,
        }
    }

    /// Left or right half of an empty cell.
    fn half_frame(&self, column: usize, right: bool) -> Frame {
        Frame {
            offset: CELL * (column - 1) as f64 + if right { CELL / 2.0 } else { 0.0 },
            scale: CELL / 20.0,
        }
    }
}

/// The instance with colors padded to equal size and edges oriented from the
/// lower color to the higher one.
#[derive(Debug, Clone)]
struct Normalized {
    classes: Vec<Vec<String>>,
    color: BTreeMap<String, usize>,
    index: BTreeMap<String, usize>,
    edges: Vec<(String, String)>,
    layout: GridLayout,
}

fn normalize(inst: &McisInstance) -> Result<Normalized> {
    let bad = |msg: String| Err(Error::ParameterInvalid(msg));
    let k = inst.k;
    if k < 2 {
        return bad(format!("need at least two colors, got {k}"));
    }
    let mut classes: Vec<Vec<String>> = vec![Vec::new(); k];
    for (v, &c) in &inst.colors {
        if c == 0 || c > k {
            return bad(format!("color {c} of `{v}` is outside 1..={k}"));
        }
        if v.starts_with('~') {
            return bad(format!("vertex names may not start with `~`: `{v}`"));
        }
        classes[c - 1].push(v.clone());
    }
    let mut color = inst.colors.clone();
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for (a, b) in &inst.edges {
        let (Some(&ca), Some(&cb)) = (color.get(a), color.get(b)) else {
            return bad(format!("edge `{a}`-`{b}` has an uncolored endpoint"));
        };
        if ca == cb {
            return bad(format!("edge `{a}`-`{b}` joins two vertices of color {ca}"));
        }
        let (u, v) = if ca < cb { (a, b) } else { (b, a) };
        if seen.insert((u.clone(), v.clone())) {
            edges.push((u.clone(), v.clone()));
        }
    }
    let size = classes.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let mut pads = Vec::new();
    for (j, class) in classes.iter_mut().enumerate() {
        for t in class.len()..size {
            let name = format!("~pad{}.{t}", j + 1);
            color.insert(name.clone(), j + 1);
            class.push(name.clone());
            pads.push(name);
        }
    }
    // A padding vertex is adjacent to every vertex of another color, so no
    // independent set can use it.
    for p in &pads {
        for (j, class) in classes.iter().enumerate() {
            if j + 1 == color[p] {
                continue;
            }
            for v in class {
                let (u, w) = if color[p] < j + 1 { (p, v) } else { (v, p) };
                if seen.insert((u.clone(), w.clone())) {
                    edges.push((u.clone(), w.clone()));
                }
            }
        }
    }
    let mut index = BTreeMap::new();
    for class in &classes {
        for (i, v) in class.iter().enumerate() {
            index.insert(v.clone(), i + 1);
        }
    }
    let mut per_color = vec![0; k];
    for (u, v) in &edges {
        per_color[color[u] - 1] += 1;
        per_color[color[v] - 1] += 1;
    }
    let layout = GridLayout::new(k, size, per_color, edges.len());
    Ok(Normalized {
        classes,
        color,
        index,
        edges,
        layout,
    })
}

/// Grid geometry of `inst`.
pub fn mcis_layout(inst: &McisInstance) -> Result<GridLayout> {
    Ok(normalize(inst)?.layout)
}

fn shifted(levels: [usize; 4], base: usize) -> [usize; 4] {
    levels.map(|l| base + l)
}

/// The sketch with color `j` shifted by `shifts[j - 1] - 1` columns. Also
/// reports whether some collision socket receives two plugs.
fn build(n: &Normalized, shifts: &[usize]) -> Result<(Sketch, bool)> {
    let lay = &n.layout;
    let (size, cols) = (lay.class_size, lay.columns);
    let rigid = lay.rigid_levels();
    let mut sk = Sketch::new(lay.height);

    let mut walls: Vec<BTreeMap<usize, Vertex>> = Vec::with_capacity(lay.walls);
    for w in 0..lay.walls {
        let x = CELL * w as f64;
        let levels: Vec<usize> = if w == 0 || w == cols {
            (1..=lay.height).collect()
        } else {
            rigid.clone()
        };
        let mut map = BTreeMap::new();
        for &l in &levels {
            map.insert(l, sk.vertex(format!("w{w}@{l}"), l, x)?);
        }
        for pair in levels.windows(2) {
            sk.edge(map[&pair[0]], map[&pair[1]], Route::Const(x))?;
        }
        walls.push(map);
    }

    let endpoint_colors = |b: usize| {
        let (u, v) = &n.edges[b];
        (n.color[u], n.color[v])
    };

    // Sockets of the color bands.
    for j in 1..=lay.k {
        let band_rigid: Vec<usize> = (1..=7).map(|r| lay.color_level(j, 2 * r + 1)).collect();
        for c in 1..=cols {
            let kind = match lay.block_of(c) {
                None => CHOICE_SOCKET,
                Some(b) => {
                    let (cu, cv) = endpoint_colors(b);
                    if j == cu || j == cv {
                        COLOR_SOCKET
                    } else {
                        PASS_SOCKET
                    }
                }
            };
            let spec = SocketSpec::new(kind.map(|r| band_rigid[r - 1]))?;
            let wall = |side: usize, level: usize| walls[c - 1 + side][&level];
            place_socket(
                &mut sk,
                &format!("C{j}.s{c}"),
                &spec,
                lay.frame(c),
                &wall,
                &band_rigid,
            )?;
        }
    }
    // Collision sockets, one per edge block.
    for b in 0..lay.edges {
        let q = endpoint_colors(b).0;
        let band_rigid: Vec<usize> = [2, 5, 8]
            .iter()
            .map(|&r| lay.collision_level(q, r))
            .collect();
        let c = lay.block_column(b, size);
        let spec = SocketSpec::new(COLLISION_SOCKET.map(|r| band_rigid[r - 1]))?;
        let wall = |side: usize, level: usize| walls[c - 1 + side][&level];
        place_socket(
            &mut sk,
            &format!("K{q}.s{c}"),
            &spec,
            lay.frame(c),
            &wall,
            &band_rigid,
        )?;
    }

    // High and color plugs. Color plug `p` of band `j` sits in the `p`-th
    // choice or color cell not taken by a high plug.
    let choice = size - 1;
    let mut color_plugs: Vec<Vec<(usize, PlacedPlug)>> = Vec::with_capacity(lay.k);
    for j in 1..=lay.k {
        let shift = shifts[j - 1] - 1;
        let left: Vec<usize> = (1..=choice).collect();
        let right: Vec<usize> = (cols - choice + 1..=cols).collect();
        let base = lay.color_level(j, 0);
        for t in 0..choice {
            let c = if t < shift { left[t] } else { right[t] };
            let spec = PlugSpec::new(shifted(HIGH_PLUG, base))?;
            place_plug(&mut sk, &format!("C{j}.hi{t}"), &spec, lay.frame(c))?;
        }
        let mut slots: Vec<usize> = left[shift..].to_vec();
        for b in 0..lay.edges {
            let (cu, cv) = endpoint_colors(b);
            if j == cu || j == cv {
                slots.extend((1..=lay.block_width()).map(|t| lay.block_column(b, t)));
            }
        }
        slots.extend(&right[..shift]);
        let mut placed = Vec::with_capacity(slots.len());
        for (p, &c) in slots.iter().enumerate() {
            let spec = PlugSpec::new(shifted(COLOR_PLUG, base))?;
            placed.push((
                c,
                place_plug(&mut sk, &format!("C{j}.co{p}"), &spec, lay.frame(c))?,
            ));
        }
        color_plugs.push(placed);
    }

    // Canonical number of the color plug at relative column `t` of block `b`
    // in band `j`, counted with no shift.
    let canonical = |j: usize, b: usize, t: usize| {
        let before = (0..b)
            .filter(|&e| {
                let (cu, cv) = endpoint_colors(e);
                j == cu || j == cv
            })
            .count();
        choice + before * lay.block_width() + t - 1
    };

    let mut doubled = false;
    for (b, (u, v)) in n.edges.iter().enumerate() {
        let (cu, cv) = (n.color[u], n.color[v]);
        let (cx, x_plug) = color_plugs[cu - 1][canonical(cu, b, size - n.index[u] + 1)];
        let (cy, y_plug) = color_plugs[cv - 1][canonical(cv, b, size - n.index[v] + 1)];
        let socket_column = lay.block_column(b, size);
        doubled |= cx == socket_column && cy == socket_column;
        let base = lay.collision_level(cu, 0);
        let below_frame = if cx == socket_column {
            lay.frame(cx)
        } else {
            lay.half_frame(cx, true)
        };
        let above_frame = if cy == socket_column {
            lay.frame(cy)
        } else {
            lay.half_frame(cy, false)
        };
        let below = place_plug(
            &mut sk,
            &format!("K{cu}.b{b}"),
            &PlugSpec::new(shifted(BELOW_PLUG, base))?,
            below_frame,
        )?;
        let above = place_plug(
            &mut sk,
            &format!("K{cu}.a{b}"),
            &PlugSpec::new(shifted(ABOVE_PLUG, base))?,
            above_frame,
        )?;
        link(&mut sk, lay, x_plug.top, below.bottom)?;
        let mut prev = above.top;
        for j in cu + 1..cv {
            let spec = PlugSpec::new(shifted(PASS_PLUG, lay.color_level(j, 0)))?;
            let pass = place_plug(&mut sk, &format!("C{j}.pt{b}"), &spec, lay.frame(cy))?;
            link(&mut sk, lay, prev, pass.bottom)?;
            prev = pass.top;
        }
        link(&mut sk, lay, prev, y_plug.bottom)?;
    }
    Ok((sk, doubled))
}

/// Joins a plug top to a plug bottom higher up: the edge stays above the
/// lower vertex until its band ends, then moves over the upper vertex.
fn link(sk: &mut Sketch, lay: &GridLayout, lower: Vertex, upper: Vertex) -> Result<()> {
    let from = lay.band_end(sk.graph.level(lower)) + 1;
    let route = Route::Split {
        from,
        below: sk.x(lower),
        above: sk.x(upper),
    };
    sk.edge(lower, upper, route)?;
    Ok(())
}

/// The ordered instance of height `26k - 9` for `inst`. Ranks follow the
/// layout where every color selects its first vertex.
pub fn gen_mcis(inst: &McisInstance) -> Result<OrderedLevelGraph> {
    let n = normalize(inst)?;
    let (sk, _) = build(&n, &vec![1; n.layout.k])?;
    Ok(sk.ordered()?)
}

/// A drawing of the instance of `inst` that selects the vertices of
/// `selection`, one per color.
pub fn realize_mcis_witness(inst: &McisInstance, selection: &[String]) -> Result<LevelEmbedding> {
    let n = normalize(inst)?;
    let k = n.layout.k;
    let mut shifts = vec![0; k];
    for v in selection {
        let Some(&c) = inst.colors.get(v) else {
            return Err(Error::WitnessInvalid(format!("`{v}` is not a vertex")));
        };
        if shifts[c - 1] != 0 {
            return Err(Error::WitnessInvalid(format!(
                "color {c} is selected twice"
            )));
        }
        shifts[c - 1] = n.index[v];
    }
    if let Some(c) = shifts.iter().position(|&s| s == 0) {
        return Err(Error::WitnessInvalid(format!(
            "color {} is not selected",
            c + 1
        )));
    }
    let (sk, doubled) = build(&n, &shifts)?;
    if doubled {
        return Err(Error::WitnessInvalid(
            "the selection contains both ends of an edge, so a collision socket would hold two plugs".into(),
        ));
    }
    let (canon, _) = build(&n, &vec![1; k])?;
    let names = |s: &Sketch| -> Vec<Vec<String>> {
        s.orders()
            .iter()
            .map(|l| l.iter().map(|&v| s.graph.id(v).to_string()).collect())
            .collect()
    };
    if names(&sk) != names(&canon) {
        return Err(Error::WitnessInvalid(
            "shifted layout changes the ranks".into(),
        ));
    }
    Ok(sk.embedding())
}

/// Members of each color class after padding, in index order.
pub fn color_classes(inst: &McisInstance) -> Result<Vec<Vec<String>>> {
    Ok(normalize(inst)?.classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify_drawing;
    use crate::Instance;

    fn two_by_two() -> McisInstance {
        McisInstance {
            edges: vec![("a1".into(), "b1".into())],
            colors: [("a1", 1), ("a2", 1), ("b1", 2), ("b2", 2)]
                .into_iter()
                .map(|(v, c)| (v.to_string(), c))
                .collect(),
            k: 2,
        }
    }

    fn sel(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn layout_counts() {
        let lay = mcis_layout(&two_by_two()).unwrap();
        assert_eq!(lay.height, 43);
        assert_eq!(lay.walls, 6);
        assert_eq!(lay.per_color, vec![1, 1]);
        assert_eq!(&lay.level_types()[..17], COLOR_BAND);
        assert_eq!(&lay.level_types()[17..26], COLLISION_BAND);
    }

    #[test]
    fn independent_selections_verify() {
        let inst = two_by_two();
        let g = Instance::Ordered(gen_mcis(&inst).unwrap());
        for s in [["a1", "b2"], ["a2", "b1"], ["a2", "b2"]] {
            let emb = realize_mcis_witness(&inst, &sel(&s)).unwrap();
            verify_drawing(&g, &emb)
                .unwrap_or_else(|v| panic!("{s:?}: {:?}", &v[..v.len().min(5)]));
        }
    }

    #[test]
    fn adjacent_selection_is_rejected() {
        let err = realize_mcis_witness(&two_by_two(), &sel(&["a1", "b1"])).unwrap_err();
        assert!(matches!(err, Error::WitnessInvalid(_)));
    }

    #[test]
    fn selection_must_be_multicolored() {
        let inst = two_by_two();
        assert!(realize_mcis_witness(&inst, &sel(&["a1", "a2"])).is_err());
        assert!(realize_mcis_witness(&inst, &sel(&["a1"])).is_err());
    }

    #[test]
    fn monochromatic_edges_are_rejected() {
        let mut inst = two_by_two();
        inst.edges.push(("a1".into(), "a2".into()));
        assert!(matches!(gen_mcis(&inst), Err(Error::ParameterInvalid(_))));
    }
}
