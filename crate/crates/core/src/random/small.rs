//! Small random instances for cross-checking exact and iterative solvers.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use rand::Rng;

use crate::graph::{ConstrainedBipartiteGraph, ConstrainedGraph};

/// Random recursive tree on `n` vertices with caps drawn uniformly from
/// `caps`, vertex labels shuffled.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize, caps: RangeInclusive<u32>) -> ConstrainedGraph {
    let mut label: Vec<u32> = (0..n as u32).collect();
    rand::seq::SliceRandom::shuffle(label.as_mut_slice(), rng);
    let edges = (1..n).map(|i| (label[rng.random_range(0..i)], label[i])).collect();
    let caps = (0..n).map(|_| rng.random_range(caps.clone())).collect();
    ConstrainedGraph::new(n, edges, caps).expect("a tree is simple")
}

/// Bipartite graph with `edges` distinct random edges (clamped to
/// `a_count * b_count`).
pub fn random_bipartite<R: Rng + ?Sized>(
    rng: &mut R,
    a_count: usize,
    b_count: usize,
    edges: usize,
    caps: RangeInclusive<u32>,
) -> ConstrainedBipartiteGraph {
    let edges = edges.min(a_count * b_count);
    let mut seen = HashSet::new();
    let mut list = Vec::with_capacity(edges);
    while list.len() < edges {
        let e = (rng.random_range(0..a_count as u32), rng.random_range(0..b_count as u32));
        if seen.insert(e) {
            list.push(e);
        }
    }
    let caps_a = (0..a_count).map(|_| rng.random_range(caps.clone())).collect();
    let caps_b = (0..b_count).map(|_| rng.random_range(caps.clone())).collect();
    ConstrainedBipartiteGraph::new(a_count, b_count, list, caps_a, caps_b).expect("edges are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::stream_rng;

    #[test]
    fn trees_are_trees() {
        let mut rng = stream_rng(9, 0);
        for n in [1, 2, 5, 50] {
            let t = random_tree(&mut rng, n, 1..=3);
            assert_eq!(t.edges().len(), n - 1);
            assert!(t.is_forest());
            assert_eq!(t.component_count(), 1);
            assert!(t.caps().iter().all(|c| (1..=3).contains(c)));
        }
    }

    #[test]
    fn bipartite_edge_count() {
        let g = random_bipartite(&mut stream_rng(9, 1), 3, 4, 20, 1..=2);
        assert_eq!(g.edges().len(), 12);
    }
}
