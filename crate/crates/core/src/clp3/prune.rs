//! Detaching fingers from their anchors and removing leaves on the backbone.

use std::collections::BTreeMap;

use super::backbone::{BackboneDecomposition, Block};
use super::work::{reject, Reject, Stage, Work};
use crate::clp2::caterpillar_by;
use crate::model::Vertex;

/// Step budget for enumerating simple paths through one block.
const PATH_BUDGET: usize = 1 << 20;

/// Backbone neighbors of `alpha` before and after it on some simple path
/// through `block`, or `None` when the enumeration budget runs out.
fn sides_in_block(work: &Work, block: &Block, alpha: Vertex) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let inside = |v: Vertex| block.vertices.binary_search(&v).is_ok();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut on_path = vec![false; work.len()];
    let mut path = vec![block.entry];
    on_path[block.entry] = true;
    let mut steps = 0usize;
    // Frames: next neighbor index of each path vertex.
    let mut next = vec![0usize];
    while let Some(&v) = path.last() {
        steps += 1;
        if steps > PATH_BUDGET {
            return None;
        }
        if v == block.exit {
            if let Some(i) = path.iter().position(|&x| x == alpha) {
                left.push(path[i - 1]);
                right.push(path[i + 1]);
            }
            on_path[v] = false;
            path.pop();
            next.pop();
            continue;
        }
        let i = *next.last().expect("frame");
        let nbrs = work.nbrs(v);
        if i < nbrs.len() {
            *next.last_mut().expect("frame") += 1;
            let w = nbrs[i];
            if inside(w) && !on_path[w] && block.vertices.contains(&w) {
                on_path[w] = true;
                path.push(w);
                next.push(0);
            }
        } else {
            on_path[v] = false;
            path.pop();
            next.pop();
        }
    }
    left.sort_unstable();
    left.dedup();
    right.sort_unstable();
    right.dedup();
    Some((left, right))
}

/// L and R sets of an outer backbone vertex.
fn sides(work: &Work, bb: &BackboneDecomposition, alpha: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for block in bb
        .blocks
        .iter()
        .filter(|b| b.vertices.binary_search(&alpha).is_ok())
    {
        let in_block: Vec<Vertex> = work
            .nbrs(alpha)
            .iter()
            .copied()
            .filter(|&w| block.vertices.binary_search(&w).is_ok())
            .collect();
        if block.exit == alpha {
            left.extend(in_block);
        } else if block.entry == alpha {
            right.extend(in_block);
        } else {
            match sides_in_block(work, block, alpha) {
                Some((l, r)) => {
                    left.extend(l);
                    right.extend(r);
                }
                None => {
                    left.extend(in_block.iter().copied());
                    right.extend(in_block);
                }
            }
        }
    }
    (left, right)
}

/// Turns every hand into enclosed components, then removes the leaves
/// hanging off the backbone.
pub fn detach_and_prune(work: &mut Work, bb: &mut BackboneDecomposition) -> Result<(), Reject> {
    for p in &bb.pieces {
        let levels: Vec<usize> = p.body.iter().map(|&v| work.level(v)).collect();
        if [1, 2, 3].iter().all(|l| levels.contains(l)) {
            return reject(Stage::Prune, "a piece occupies all three levels");
        }
    }
    let mut hands: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for p in &bb.pieces {
        let outer = work.level(p.anchor);
        if outer != 2 && p.body.iter().any(|&v| work.level(v) == 4 - outer) {
            hands
                .entry(p.anchor)
                .or_default()
                .extend(p.body.iter().copied());
        }
    }
    for (&alpha, hand) in &hands {
        let mut n_alpha: Vec<Vertex> = work
            .nbrs(alpha)
            .iter()
            .copied()
            .filter(|v| hand.contains(v))
            .collect();
        n_alpha.sort_unstable();
        let (left, right) = sides(work, bb, alpha);
        let mut pairs = Vec::new();
        for &n in &n_alpha {
            pairs.extend(left.iter().map(|&l| (l, n)));
            pairs.extend(right.iter().map(|&r| (n, r)));
        }
        work.constrain(Stage::Prune, pairs)?;
        for &n in &n_alpha {
            work.detach(alpha, n);
        }
    }
    work.settle(Stage::Prune)?;

    let leaves: Vec<(Vertex, Vertex)> = work
        .vertices()
        .filter(|&v| !bb.on_backbone[v] && work.degree(v) == 1)
        .map(|v| (v, work.nbrs(v)[0]))
        .filter(|&(_, a)| bb.on_backbone[a])
        .collect();
    for (v, a) in leaves {
        work.remove_leaf(v, a);
    }
    bb.refresh(work);

    let mut per_anchor: BTreeMap<Vertex, usize> = BTreeMap::new();
    for p in &bb.pieces {
        *per_anchor.entry(p.anchor).or_default() += 1;
        let all = p.vertices();
        let outer: Vec<usize> = all
            .iter()
            .map(|&v| work.level(v))
            .filter(|&l| l != 2)
            .collect();
        if outer.windows(2).any(|w| w[0] != w[1]) {
            return reject(Stage::Prune, "a piece spans both bands");
        }
        if caterpillar_by(&all, |v| work.nbrs(v), |v| work.level(v)).is_none() {
            return reject(Stage::Prune, "a piece is not a caterpillar");
        }
    }
    if per_anchor.values().any(|&k| k >= 3) {
        return reject(Stage::Prune, "three pieces share an anchor");
    }
    for c in &bb.enclosed {
        let outer: Vec<usize> = c
            .iter()
            .map(|&v| work.level(v))
            .filter(|&l| l != 2)
            .collect();
        if outer.windows(2).any(|w| w[0] != w[1]) || !c.iter().any(|&v| work.level(v) == 2) {
            return reject(Stage::Prune, "an enclosed component does not fit one band");
        }
        if caterpillar_by(c, |v| work.nbrs(v), |v| work.level(v)).is_none() {
            return reject(Stage::Prune, "an enclosed component is not a caterpillar");
        }
    }
    Ok(())
}
