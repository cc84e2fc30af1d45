use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{OrderedLevelGraph, Vertex};

/// One position index per level. On a level of width `w`, index 0 is the gap
/// before the first vertex, odd `2r - 1` is the vertex of rank `r`, and even
/// `2r` is the gap after it.
pub type Separation = Vec<usize>;

/// Where a vertex lies relative to a separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    OnSeparation,
    LeftOf,
    RightOf,
}

/// Position index of `v` on its level.
pub fn position_index(g: &OrderedLevelGraph, v: Vertex) -> usize {
    2 * g.rank(v) - 1
}

pub fn classify(g: &OrderedLevelGraph, v: Vertex, s: &[usize]) -> Side {
    let p = position_index(g, v);
    let q = s[g.graph.level(v) - 1];
    match p.cmp(&q) {
        std::cmp::Ordering::Equal => Side::OnSeparation,
        std::cmp::Ordering::Less => Side::LeftOf,
        std::cmp::Ordering::Greater => Side::RightOf,
    }
}

/// True when both endpoints of `(u, v)` are on `s` and every level strictly
/// between them is crossed in a gap.
pub fn uses_edge(g: &OrderedLevelGraph, s: &[usize], (u, v): (Vertex, Vertex)) -> bool {
    classify(g, u, s) == Side::OnSeparation
        && classify(g, v, s) == Side::OnSeparation
        && (g.graph.level(u)..g.graph.level(v) - 1).all(|i| s[i].is_multiple_of(2))
}

/// Set of edges among the vertices on a separation. Since a separation holds
/// at most one vertex per level, an edge is identified by its pair of levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UsedEdgeSet {
    height: usize,
    bits: Vec<u64>,
}

impl UsedEdgeSet {
    pub fn empty(height: usize) -> Self {
        let pairs = height * height.saturating_sub(1) / 2;
        Self {
            height,
            bits: vec![0; pairs.div_ceil(64)],
        }
    }

    fn slot(&self, a: usize, b: usize) -> usize {
        let (i, k) = if a < b { (a, b) } else { (b, a) };
        // Pairs (i, k) with i < k, enumerated row by row.
        i * (2 * self.height - i - 1) / 2 + (k - i - 1)
    }

    /// Membership of the edge between the on-vertices of 0-based levels `a` and `b`.
    pub fn contains(&self, a: usize, b: usize) -> bool {
        let s = self.slot(a, b);
        self.bits[s / 64] >> (s % 64) & 1 == 1
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        let s = self.slot(a, b);
        self.bits[s / 64] |= 1 << (s % 64);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        let s = self.slot(a, b);
        self.bits[s / 64] &= !(1 << (s % 64));
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Level pairs `(a, b)` with `a < b` in the set.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.height {
            for b in a + 1..self.height {
                if self.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The set as graph edges, given the separation it belongs to.
    pub fn edges(&self, g: &OrderedLevelGraph, s: &[usize]) -> Vec<(Vertex, Vertex)> {
        self.pairs()
            .into_iter()
            .filter_map(|(a, b)| Some((on_vertex(g, s, a)?, on_vertex(g, s, b)?)))
            .collect()
    }

    /// Builds a set from graph edges whose endpoints are on `s`.
    pub fn from_edges(g: &OrderedLevelGraph, edges: &[(Vertex, Vertex)]) -> Self {
        let mut out = Self::empty(g.graph.height());
        for &(u, v) in edges {
            out.insert(g.graph.level(u) - 1, g.graph.level(v) - 1);
        }
        out
    }
}

/// The vertex of 0-based level `i` that lies on `s`, if any.
pub fn on_vertex(g: &OrderedLevelGraph, s: &[usize], i: usize) -> Option<Vertex> {
    let p = s[i];
    (p % 2 == 1).then(|| g.order()[i][(p - 1) / 2])
}

/// Nearest levels below and above `j` holding a vertex on `s`.
fn neighbors_on(s: &[usize], j: usize) -> (Option<usize>, Option<usize>) {
    let below = (0..j).rev().find(|&i| s[i] % 2 == 1);
    let above = (j + 1..s.len()).find(|&i| s[i] % 2 == 1);
    (below, above)
}

/// Predecessor state for decrementing level `j` (0-based) of `s`.
/// Returns `None` for the bottom state, which is never true.
pub fn step_back(
    g: &OrderedLevelGraph,
    s: &[usize],
    used: &UsedEdgeSet,
    j: usize,
) -> Option<(Separation, UsedEdgeSet)> {
    assert!(s[j] >= 1, "level {j} is already at position 0");
    let graph = &g.graph;
    let mut prev = s.to_vec();
    prev[j] -= 1;
    let mut out = used.clone();
    if s[j] % 2 == 1 {
        // A vertex leaves: it may keep only edges to its neighbors along s.
        let (below, above) = neighbors_on(s, j);
        for k in 0..s.len() {
            if k == j || !used.contains(j, k) {
                continue;
            }
            if Some(k) != below && Some(k) != above {
                return None;
            }
            out.remove(j, k);
        }
    } else {
        // A gap: the vertex just left of it re-enters the separation.
        let v = g.order()[j][s[j] / 2 - 1];
        if graph
            .neighbors(v)
            .iter()
            .any(|&w| classify(g, w, s) == Side::RightOf)
        {
            return None;
        }
        let (below, above) = neighbors_on(s, j);
        if let (Some(a), Some(b)) = (below, above) {
            out.remove(a, b);
        }
        for &w in graph.neighbors(v) {
            if classify(g, w, &prev) == Side::OnSeparation {
                out.insert(j, graph.level(w) - 1);
            }
        }
    }
    Some((prev, out))
}

#[derive(Debug, Clone, Default)]
pub struct OlpOptions {
    /// Maximum number of memo entries before giving up.
    pub memo_limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OlpStats {
    pub memo_entries: usize,
}

/// An exhaustive sweeping sequence that uses every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepingSequence {
    pub separations: Vec<Separation>,
}

impl SweepingSequence {
    /// Every step raises exactly one coordinate by one.
    pub fn is_nice(&self) -> bool {
        self.separations.windows(2).all(|w| {
            let diffs: Vec<isize> = w[0]
                .iter()
                .zip(&w[1])
                .map(|(&a, &b)| b as isize - a as isize)
                .collect();
            diffs.iter().filter(|&&d| d == 1).count() == 1
                && diffs.iter().all(|&d| d == 0 || d == 1)
        })
    }

    pub fn is_exhaustive(&self, g: &OrderedLevelGraph) -> bool {
        let h = g.graph.height();
        let last: Vec<usize> = (1..=h).map(|l| 2 * g.width(l)).collect();
        self.is_nice()
            && self
                .separations
                .first()
                .is_some_and(|s| s.iter().all(|&p| p == 0))
            && self.separations.last() == Some(&last)
    }
}

type Key = (Vec<u16>, UsedEdgeSet);

#[derive(Clone, Copy)]
enum Entry {
    False,
    /// True, reached from the predecessor obtained by stepping back on this level.
    True(u16),
}

const BASE: u16 = u16::MAX;

/// Decides the instance with a memoized search over (separation, used edges)
/// states, from the final separation back to the initial one.
pub fn solve(g: &OrderedLevelGraph, options: &OlpOptions) -> Result<(SweepingSequence, OlpStats)> {
    let h = g.graph.height();
    let widths: Vec<usize> = (1..=h).map(|l| 2 * g.width(l)).collect();
    if widths.iter().any(|&w| w > u16::MAX as usize) {
        return Err(Error::ParameterInvalid("level too wide".into()));
    }
    let to_key =
        |s: &[usize], u: UsedEdgeSet| -> Key { (s.iter().map(|&p| p as u16).collect(), u) };
    let from_key = |k: &Key| -> Separation { k.0.iter().map(|&p| p as usize).collect() };

    let mut memo: HashMap<Key, Entry> = HashMap::new();
    memo.insert(
        to_key(&vec![0; h], UsedEdgeSet::empty(h)),
        Entry::True(BASE),
    );
    let root = to_key(&widths, UsedEdgeSet::empty(h));

    // Each frame is a state and the next level to try.
    let mut stack: Vec<(Key, usize)> = Vec::new();
    if !memo.contains_key(&root) {
        stack.push((root.clone(), 0));
    }
    let mut resolved: Option<bool> = None;
    while let Some(frame) = stack.last_mut() {
        // A child finished: record its answer in the parent.
        if let Some(answer) = resolved.take() {
            if answer {
                let (key, j) = stack.pop().expect("frame");
                memo.insert(key, Entry::True(j as u16));
                resolved = Some(true);
                continue;
            }
            frame.1 += 1;
        }
        let (key, j) = (&frame.0, frame.1);
        if j == h {
            let (key, _) = stack.pop().expect("frame");
            memo.insert(key, Entry::False);
            resolved = Some(false);
            continue;
        }
        let s = from_key(key);
        let child = if s[j] >= 1 {
            step_back(g, &s, &key.1, j)
        } else {
            None
        };
        let Some((ps, pu)) = child else {
            frame.1 += 1;
            continue;
        };
        let child_key = to_key(&ps, pu);
        match memo.get(&child_key) {
            Some(Entry::True(_)) => {
                let (key, j) = stack.pop().expect("frame");
                memo.insert(key, Entry::True(j as u16));
                resolved = Some(true);
            }
            Some(Entry::False) => frame.1 += 1,
            None => {
                if let Some(limit) = options.memo_limit {
                    if memo.len() + stack.len() >= limit {
                        return Err(Error::MemoLimit { limit });
                    }
                }
                stack.push((child_key, 0));
            }
        }
    }
    let stats = OlpStats {
        memo_entries: memo.len(),
    };
    match memo.get(&root) {
        Some(Entry::True(_)) => {}
        _ => return Err(Error::Infeasible),
    }

    let mut separations = Vec::new();
    let mut key = root;
    loop {
        let s = from_key(&key);
        let link = match memo[&key] {
            Entry::True(j) => j,
            Entry::False => unreachable!("links only point to true entries"),
        };
        separations.push(s.clone());
        if link == BASE {
            break;
        }
        let (ps, pu) = step_back(g, &s, &key.1, link as usize).expect("recorded link is valid");
        key = to_key(&ps, pu);
    }
    separations.reverse();
    Ok((SweepingSequence { separations }, stats))
}
