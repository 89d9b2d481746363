//! Maximum degree-constrained subgraph of a bipartite graph as a max flow:
//! `source → a` with capacity `w_a`, `a → b` with capacity 1 per edge,
//! `b → sink` with capacity `w_b`. Solved with Dinic's blocking flows; the
//! DFS is iterative because augmenting paths can be as long as the graph.

use std::collections::VecDeque;

use crate::graph::{ConstrainedBipartiteGraph, SpanningSubgraph};

/// Residual network in arc-list form. Arc `2i` is forward, `2i + 1` its
/// reverse.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    first: Vec<usize>,
    next: Vec<usize>,
    to: Vec<u32>,
    cap: Vec<i64>,
}

const NONE: usize = usize::MAX;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { first: vec![NONE; nodes], next: Vec::new(), to: Vec::new(), cap: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        self.first.len()
    }

    /// Adds `u → v` with capacity `c` and returns the forward arc id.
    pub fn add_arc(&mut self, u: usize, v: usize, c: i64) -> usize {
        assert!(c >= 0, "capacities must be nonnegative");
        let id = self.to.len();
        for (from, head, cap) in [(u, v, c), (v, u, 0)] {
            self.to.push(head as u32);
            self.cap.push(cap);
            self.next.push(self.first[from]);
            self.first[from] = self.to.len() - 1;
        }
        id
    }

    /// Flow currently carried by forward arc `arc`.
    pub fn flow_on(&self, arc: usize) -> i64 {
        self.cap[arc ^ 1]
    }

    fn bfs(&self, s: usize, t: usize, level: &mut [u32]) -> bool {
        level.fill(u32::MAX);
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut a = self.first[u];
            while a != NONE {
                let v = self.to[a] as usize;
                if self.cap[a] > 0 && level[v] == u32::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
                a = self.next[a];
            }
        }
        level[t] != u32::MAX
    }

    /// Pushes a blocking flow in the level graph; returns the amount pushed.
    fn blocking_flow(&mut self, s: usize, t: usize, level: &mut [u32], iter: &mut [usize]) -> i64 {
        let mut total = 0;
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let push = path.iter().map(|&a| self.cap[a]).min().unwrap_or(0);
                for &a in &path {
                    self.cap[a] -= push;
                    self.cap[a ^ 1] += push;
                }
                total += push;
                // retreat to the tail of the first saturated arc
                let cut = path.iter().position(|&a| self.cap[a] == 0).unwrap_or(0);
                path.truncate(cut);
                u = match path.last() {
                    Some(&a) => self.to[a] as usize,
                    None => s,
                };
                continue;
            }
            let mut a = iter[u];
            while a != NONE {
                let v = self.to[a] as usize;
                if self.cap[a] > 0 && level[v] == level[u] + 1 {
                    break;
                }
                a = self.next[a];
            }
            iter[u] = a;
            if a != NONE {
                path.push(a);
                u = self.to[a] as usize;
            } else {
                // dead end: remove u from the level graph and back up
                level[u] = u32::MAX;
                match path.pop() {
                    None => return total,
                    Some(back) => {
                        u = self.to[back ^ 1] as usize;
                        iter[u] = self.next[iter[u]];
                    }
                }
            }
        }
    }

    /// Maximum `s → t` flow value (the network keeps the final flow).
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.node_count();
        let mut level = vec![u32::MAX; n];
        let mut iter = vec![NONE; n];
        let mut total = 0;
        while self.bfs(s, t, &mut level) {
            iter.copy_from_slice(&self.first);
            total += self.blocking_flow(s, t, &mut level, &mut iter);
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlowResult {
    pub size: usize,
    pub subgraph: SpanningSubgraph,
}

/// `M(G)` and one maximum admissible subgraph (the edges whose unit arc
/// carries flow).
pub fn max_flow_m(g: &ConstrainedBipartiteGraph) -> MaxFlowResult {
    let (a_count, b_count) = (g.a_count(), g.b_count());
    let (source, sink) = (0, 1);
    let a_node = |a: usize| 2 + a;
    let b_node = |b: usize| 2 + a_count + b;
    let mut net = FlowNetwork::new(2 + a_count + b_count);
    for (a, &w) in g.caps_a().iter().enumerate() {
        net.add_arc(source, a_node(a), w as i64);
    }
    let unit_arcs: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(a, b)| net.add_arc(a_node(a as usize), b_node(b as usize), 1))
        .collect();
    for (b, &w) in g.caps_b().iter().enumerate() {
        net.add_arc(b_node(b), sink, w as i64);
    }
    let value = net.max_flow(source, sink);
    let bits = unit_arcs.iter().map(|&arc| net.flow_on(arc) == 1).collect();
    MaxFlowResult { size: value as usize, subgraph: SpanningSubgraph::from_bits(bits) }
}
