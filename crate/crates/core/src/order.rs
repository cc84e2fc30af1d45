//! Topological sorting with deterministic tie-breaking.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Kahn's algorithm over nodes `0..n` and arcs `pairs`, always emitting the
/// available node with the smallest `key`. Returns `None` on a cycle.
pub fn linear_extension<K, I, F>(n: usize, pairs: I, key: F) -> Option<Vec<usize>>
where
    K: Ord,
    I: IntoIterator<Item = (usize, usize)>,
    F: Fn(usize) -> K,
{
    let mut out_arcs = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for (a, b) in pairs {
        out_arcs[a].push(b);
        indegree[b] += 1;
    }
    let mut heap: BinaryHeap<Reverse<(K, usize)>> = (0..n)
        .filter(|&v| indegree[v] == 0)
        .map(|v| Reverse((key(v), v)))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, v))) = heap.pop() {
        order.push(v);
        for &w in &out_arcs[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                heap.push(Reverse((key(w), w)));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Linear extension of a relation restricted to `nodes`, which may be any
/// subset of a larger index space. Arcs touching other nodes are ignored.
pub fn extend_subset<K, I, F>(nodes: &[usize], pairs: I, key: F) -> Option<Vec<usize>>
where
    K: Ord,
    I: IntoIterator<Item = (usize, usize)>,
    F: Fn(usize) -> K,
{
    let local: std::collections::HashMap<usize, usize> =
        nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let arcs = pairs
        .into_iter()
        .filter_map(|(a, b)| Some((*local.get(&a)?, *local.get(&b)?)));
    let order = linear_extension(nodes.len(), arcs, |i| key(nodes[i]))?;
    Some(order.into_iter().map(|i| nodes[i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_key_first() {
        let order = linear_extension(4, [(3, 0)], |v| v).unwrap();
        assert_eq!(order, vec![1, 2, 3, 0]);
    }

    #[test]
    fn cycle_detected() {
        assert!(linear_extension(2, [(0, 1), (1, 0)], |v| v).is_none());
    }

    #[test]
    fn subset_ignores_foreign_arcs() {
        let order = extend_subset(&[5, 7, 9], [(9, 5), (5, 100)], |v| v).unwrap();
        assert_eq!(order, vec![7, 9, 5]);
    }
}
