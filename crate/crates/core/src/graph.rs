//! Hypergraphs, degree-constrained graphs and the incidence correspondence
//! between them.
//!
//! A hypergraph `H` on `n` vertices is turned into a bipartite graph with one
//! A-vertex per hyperedge (cap `l`) and one B-vertex per vertex of `H`
//! (cap `k`). `H` is `(l, k)`-orientable exactly when a maximum admissible
//! spanning subgraph of that bipartite graph saturates every A-vertex.
//!
//! All graphs are frozen after construction; adjacency lists are built once
//! and iterate in edge insertion order.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("hyperedge {edge} repeats vertex {vertex}")]
    RepeatedVertex { edge: usize, vertex: usize },
    #[error("hyperedge {0} is empty")]
    EmptyEdge(usize),
    #[error("edge {edge} duplicates edge {first}")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("orientation parameters must satisfy l >= 1 and k >= 1 (got l = {l}, k = {k})")]
    BadOrientationParams { l: u32, k: u32 },
    #[error("strict mode: l = {l} is not smaller than the size {size} of hyperedge {edge}")]
    LNotBelowEdgeSize { l: u32, size: usize, edge: usize },
    #[error("cap vector has length {got}, expected {expected}")]
    CapLength { expected: usize, got: usize },
    #[error("subgraph has {got} bits but the host graph has {expected} edges")]
    SizeMismatch { expected: usize, got: usize },
    #[error("subgraph violates the degree constraint at vertex {0}")]
    NotAdmissible(usize),
}

/// Compressed adjacency: `items[ptr[v]..ptr[v + 1]]` belongs to `v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Csr {
    ptr: Vec<usize>,
    items: Vec<u32>,
}

impl Csr {
    fn build(rows: usize, pairs: impl Iterator<Item = (usize, u32)> + Clone) -> Self {
        let mut ptr = vec![0usize; rows + 1];
        for (r, _) in pairs.clone() {
            ptr[r + 1] += 1;
        }
        for i in 0..rows {
            ptr[i + 1] += ptr[i];
        }
        let mut fill = ptr.clone();
        let mut items = vec![0u32; ptr[rows]];
        for (r, x) in pairs {
            items[fill[r]] = x;
            fill[r] += 1;
        }
        Csr { ptr, items }
    }

    fn row(&self, r: usize) -> &[u32] {
        &self.items[self.ptr[r]..self.ptr[r + 1]]
    }
}

/// A simple hypergraph: hyperedges are non-empty sets of distinct vertices and
/// no set appears twice. Members of each hyperedge are stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edge_ptr: Vec<usize>,
    members: Vec<u32>,
}

impl Hypergraph {
    pub fn new<E, I>(n: usize, edges: E) -> Result<Self, GraphError>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut edge_ptr = vec![0];
        let mut members = Vec::new();
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        for (idx, edge) in edges.into_iter().enumerate() {
            let mut e: Vec<u32> = Vec::new();
            for v in edge {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                e.push(v as u32);
            }
            if e.is_empty() {
                return Err(GraphError::EmptyEdge(idx));
            }
            e.sort_unstable();
            if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::RepeatedVertex { edge: idx, vertex: w[0] as usize });
            }
            members.extend_from_slice(&e);
            if let Some(&first) = seen.get(&e) {
                return Err(GraphError::DuplicateEdge { edge: idx, first });
            }
            seen.insert(e, idx);
            edge_ptr.push(members.len());
        }
        Ok(Hypergraph { n, edge_ptr, members })
    }

    /// Builds from sorted, validated parts. Used by the samplers, which
    /// already guarantee simplicity.
    pub(crate) fn from_sorted_parts(n: usize, edge_ptr: Vec<usize>, members: Vec<u32>) -> Self {
        debug_assert_eq!(edge_ptr.last().copied(), Some(members.len()));
        Hypergraph { n, edge_ptr, members }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ptr.len() - 1
    }

    pub fn edge(&self, a: usize) -> &[u32] {
        &self.members[self.edge_ptr[a]..self.edge_ptr[a + 1]]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        (0..self.edge_count()).map(move |a| self.edge(a))
    }

    /// Common hyperedge size, or `None` for an empty or mixed hypergraph.
    pub fn uniform_size(&self) -> Option<usize> {
        let mut sizes = self.edges().map(<[u32]>::len);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    /// Total number of (hyperedge, member) incidences.
    pub fn incidence_count(&self) -> usize {
        self.members.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &v in &self.members {
            d[v as usize] += 1;
        }
        d
    }
}

/// Read-only view shared by every degree-constrained graph, in one global
/// vertex numbering.
pub trait Constrained {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn endpoints(&self, e: usize) -> (usize, usize);
    fn cap(&self, v: usize) -> u32;
}

/// Bipartite graph `A ∪ B` with a degree cap on every vertex. Globally, A
/// vertices are numbered `0..a_count` and B vertices `a_count..a_count + b_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedBipartiteGraph {
    a_count: usize,
    b_count: usize,
    edges: Vec<(u32, u32)>,
    caps_a: Vec<u32>,
    caps_b: Vec<u32>,
    adj_a: Csr,
    adj_b: Csr,
}

impl ConstrainedBipartiteGraph {
    pub fn new(
        a_count: usize,
        b_count: usize,
        edges: Vec<(u32, u32)>,
        caps_a: Vec<u32>,
        caps_b: Vec<u32>,
    ) -> Result<Self, GraphError> {
        if caps_a.len() != a_count {
            return Err(GraphError::CapLength { expected: a_count, got: caps_a.len() });
        }
        if caps_b.len() != b_count {
            return Err(GraphError::CapLength { expected: b_count, got: caps_b.len() });
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a as usize >= a_count {
                return Err(GraphError::VertexOutOfRange { vertex: a as usize, n: a_count });
            }
            if b as usize >= b_count {
                return Err(GraphError::VertexOutOfRange { vertex: b as usize, n: b_count });
            }
            if !seen.insert((a, b)) {
                let first = edges.iter().position(|&p| p == (a, b)).unwrap_or(0);
                return Err(GraphError::DuplicateEdge { edge: i, first });
            }
        }
        Ok(Self::from_checked(a_count, b_count, edges, caps_a, caps_b))
    }

    fn from_checked(
        a_count: usize,
        b_count: usize,
        edges: Vec<(u32, u32)>,
        caps_a: Vec<u32>,
        caps_b: Vec<u32>,
    ) -> Self {
        let adj_a = Csr::build(
            a_count,
            edges.iter().enumerate().map(|(e, &(a, _))| (a as usize, e as u32)),
        );
        let adj_b = Csr::build(
            b_count,
            edges.iter().enumerate().map(|(e, &(_, b))| (b as usize, e as u32)),
        );
        ConstrainedBipartiteGraph { a_count, b_count, edges, caps_a, caps_b, adj_a, adj_b }
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn caps_a(&self) -> &[u32] {
        &self.caps_a
    }

    pub fn caps_b(&self) -> &[u32] {
        &self.caps_b
    }

    /// Edge ids incident to A-vertex `a`, in insertion order.
    pub fn edges_of_a(&self, a: usize) -> &[u32] {
        self.adj_a.row(a)
    }

    /// Edge ids incident to B-vertex `b`, in insertion order.
    pub fn edges_of_b(&self, b: usize) -> &[u32] {
        self.adj_b.row(b)
    }

    pub fn degree_a(&self, a: usize) -> usize {
        self.adj_a.row(a).len()
    }

    pub fn degree_b(&self, b: usize) -> usize {
        self.adj_b.row(b).len()
    }

    /// The same graph with A and B merged into one vertex numbering.
    pub fn to_general(&self) -> ConstrainedGraph {
        let off = self.a_count as u32;
        let edges = self.edges.iter().map(|&(a, b)| (a, b + off)).collect();
        let caps = self.caps_a.iter().chain(&self.caps_b).copied().collect();
        ConstrainedGraph::from_checked(self.a_count + self.b_count, edges, caps)
    }
}

impl Constrained for ConstrainedBipartiteGraph {
    fn vertex_count(&self) -> usize {
        self.a_count + self.b_count
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn endpoints(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e];
        (a as usize, self.a_count + b as usize)
    }

    fn cap(&self, v: usize) -> u32 {
        if v < self.a_count {
            self.caps_a[v]
        } else {
            self.caps_b[v - self.a_count]
        }
    }
}

/// Simple undirected graph with a degree cap on every vertex.
///
/// Edge `e = (u, v)` carries two oriented edges: `2e` is `u → v` and
/// `2e + 1` is `v → u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    caps: Vec<u32>,
    // Oriented edges pointing into each vertex.
    incoming: Csr,
}

impl ConstrainedGraph {
    pub fn new(n: usize, edges: Vec<(u32, u32)>, caps: Vec<u32>) -> Result<Self, GraphError> {
        if caps.len() != n {
            return Err(GraphError::CapLength { expected: n, got: caps.len() });
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x as usize, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(i));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                let first = edges
                    .iter()
                    .position(|&(a, b)| (a.min(b), a.max(b)) == key)
                    .unwrap_or(0);
                return Err(GraphError::DuplicateEdge { edge: i, first });
            }
        }
        Ok(Self::from_checked(n, edges, caps))
    }

    fn from_checked(n: usize, edges: Vec<(u32, u32)>, caps: Vec<u32>) -> Self {
        let pairs = edges.iter().enumerate().flat_map(|(e, &(u, v))| {
            let e = e as u32;
            // 2e is u -> v (into v), 2e + 1 is v -> u (into u)
            [(v as usize, 2 * e), (u as usize, 2 * e + 1)]
        });
        let incoming = Csr::build(n, pairs);
        ConstrainedGraph { n, edges, caps, incoming }
    }

    /// Same cap `w` on every vertex.
    pub fn with_uniform_cap(n: usize, edges: Vec<(u32, u32)>, w: u32) -> Result<Self, GraphError> {
        Self::new(n, edges, vec![w; n])
    }

    /// Complete graph on `n` vertices, all caps `w`.
    pub fn complete(n: usize, w: u32) -> Self {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Self::from_checked(n, edges, vec![w; n])
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn oriented_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// `(source, target)` of an oriented edge.
    pub fn oriented(&self, oe: usize) -> (usize, usize) {
        let (u, v) = self.edges[oe / 2];
        if oe.is_multiple_of(2) {
            (u as usize, v as usize)
        } else {
            (v as usize, u as usize)
        }
    }

    /// The oriented edge in the opposite direction.
    pub fn reverse(oe: usize) -> usize {
        oe ^ 1
    }

    /// Oriented edges pointing into `v`, in edge insertion order.
    pub fn incoming(&self, v: usize) -> &[u32] {
        self.incoming.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incoming.row(v).len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incoming(v).iter().map(move |&oe| self.oriented(oe as usize).0)
    }

    /// Connected component count via union–find.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.n;
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
            if ru != rv {
                parent[ru] = rv;
                comps -= 1;
            }
        }
        comps
    }

    /// A forest (every component a tree).
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.component_count() == self.n
    }

    /// Longest shortest path over all components (0 for edgeless graphs).
    /// Exact on forests: two BFS sweeps per component.
    pub fn forest_diameter(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut best = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let (far, _) = self.bfs_farthest(s, &mut seen);
            let mut scratch = vec![false; self.n];
            let (_, d) = self.bfs_farthest(far, &mut scratch);
            best = best.max(d);
        }
        best
    }

    fn bfs_farthest(&self, s: usize, seen: &mut [bool]) -> (usize, usize) {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::from([s]);
        dist[s] = 0;
        seen[s] = true;
        let mut far = (s, 0);
        while let Some(u) = queue.pop_front() {
            if dist[u] > far.1 {
                far = (u, dist[u]);
            }
            for v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        far
    }

    /// Whether the ball of `radius` around `v` induces a tree.
    pub fn ball_is_tree(&self, v: usize, radius: usize) -> bool {
        let mut dist = vec![usize::MAX; self.n];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        let mut inside = vec![v];
        while let Some(u) = queue.pop_front() {
            if dist[u] == radius {
                continue;
            }
            for w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    inside.push(w);
                    queue.push_back(w);
                }
            }
        }
        let induced = self
            .edges
            .iter()
            .filter(|&&(a, b)| dist[a as usize] != usize::MAX && dist[b as usize] != usize::MAX)
            .count();
        induced + 1 == inside.len()
    }

    /// Two-colours a forest into a bipartite graph; `None` if not bipartite.
    /// Returns the graph and, for each original vertex, `(is_a, index)`.
    pub fn to_bipartite(&self) -> Option<(ConstrainedBipartiteGraph, Vec<(bool, u32)>)> {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        stack.push(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        let mut map = Vec::with_capacity(self.n);
        let (mut na, mut nb) = (0u32, 0u32);
        let (mut caps_a, mut caps_b) = (Vec::new(), Vec::new());
        for (v, &s) in side.iter().enumerate() {
            if s == 0 {
                map.push((true, na));
                na += 1;
                caps_a.push(self.caps[v]);
            } else {
                map.push((false, nb));
                nb += 1;
                caps_b.push(self.caps[v]);
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (mu, mv) = (map[u as usize], map[v as usize]);
                if mu.0 {
                    (mu.1, mv.1)
                } else {
                    (mv.1, mu.1)
                }
            })
            .collect();
        let g = ConstrainedBipartiteGraph::from_checked(na as usize, nb as usize, edges, caps_a, caps_b);
        Some((g, map))
    }
}

impl Constrained for ConstrainedGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn endpoints(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e];
        (u as usize, v as usize)
    }

    fn cap(&self, v: usize) -> u32 {
        self.caps[v]
    }
}

/// Incidence graph of `h`: A = hyperedges with cap `l`, B = vertices with cap
/// `k`, one edge per (hyperedge, member) incidence. Edge order follows
/// hyperedge order, then sorted members.
pub fn incidence_graph(h: &Hypergraph, l: u32, k: u32) -> Result<ConstrainedBipartiteGraph, GraphError> {
    if l < 1 || k < 1 {
        return Err(GraphError::BadOrientationParams { l, k });
    }
    let edges: Vec<(u32, u32)> = h
        .edges()
        .enumerate()
        .flat_map(|(a, e)| e.iter().map(move |&b| (a as u32, b)))
        .collect();
    Ok(ConstrainedBipartiteGraph::from_checked(
        h.edge_count(),
        h.vertex_count(),
        edges,
        vec![l; h.edge_count()],
        vec![k; h.vertex_count()],
    ))
}

/// As [`incidence_graph`], but additionally rejects `l >= |e|` for any
/// hyperedge `e`.
pub fn incidence_graph_strict(
    h: &Hypergraph,
    l: u32,
    k: u32,
) -> Result<ConstrainedBipartiteGraph, GraphError> {
    if let Some((edge, e)) = h.edges().enumerate().find(|(_, e)| l as usize >= e.len()) {
        return Err(GraphError::LNotBelowEdgeSize { l, size: e.len(), edge });
    }
    incidence_graph(h, l, k)
}

/// Edge-indexed selection of edges of some host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningSubgraph {
    bits: Vec<bool>,
}

impl SpanningSubgraph {
    pub fn empty(edge_count: usize) -> Self {
        SpanningSubgraph { bits: vec![false; edge_count] }
    }

    pub fn full(edge_count: usize) -> Self {
        SpanningSubgraph { bits: vec![true; edge_count] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        SpanningSubgraph { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn set(&mut self, e: usize, on: bool) {
        self.bits[e] = on;
    }

    /// Number of selected edges, `|F|`.
    pub fn size(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    fn check_host<G: Constrained + ?Sized>(&self, host: &G) -> Result<(), GraphError> {
        if self.bits.len() != host.edge_count() {
            return Err(GraphError::SizeMismatch { expected: host.edge_count(), got: self.bits.len() });
        }
        Ok(())
    }

    /// Degree of every vertex of `host` in this subgraph.
    pub fn degrees<G: Constrained + ?Sized>(&self, host: &G) -> Result<Vec<u32>, GraphError> {
        self.check_host(host)?;
        let mut deg = vec![0u32; host.vertex_count()];
        for (e, _) in self.bits.iter().enumerate().filter(|(_, &b)| b) {
            let (u, v) = host.endpoints(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        Ok(deg)
    }

    /// First vertex whose cap is exceeded, if any.
    pub fn first_violation<G: Constrained + ?Sized>(&self, host: &G) -> Result<Option<usize>, GraphError> {
        let deg = self.degrees(host)?;
        Ok(deg.iter().enumerate().position(|(v, &d)| d > host.cap(v)))
    }

    /// True iff every vertex degree is within its cap.
    pub fn is_admissible<G: Constrained + ?Sized>(&self, host: &G) -> Result<bool, GraphError> {
        Ok(self.first_violation(host)?.is_none())
    }
}

/// Per hyperedge, the vertices that received a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub chosen: Vec<Vec<u32>>,
}

impl Orientation {
    /// Number of signs received by each of the `n` vertices.
    pub fn indegrees(&self, n: usize) -> Vec<u32> {
        let mut d = vec![0u32; n];
        for v in self.chosen.iter().flatten() {
            d[*v as usize] += 1;
        }
        d
    }

    /// Checks the full `(l, k)`-orientation conditions against `h`.
    pub fn is_valid(&self, h: &Hypergraph, l: u32, k: u32) -> bool {
        self.chosen.len() == h.edge_count()
            && self.chosen.iter().enumerate().all(|(a, c)| {
                c.len() == l as usize && c.iter().all(|v| h.edge(a).binary_search(v).is_ok())
            })
            && self.indegrees(h.vertex_count()).iter().all(|&d| d <= k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{} hyperedge(s) below their quota", deficient.len())]
    Deficient { deficient: Vec<usize>, partial: Orientation },
}

/// Reads the orientation encoded by an admissible subgraph of
/// `incidence_graph(h, l, k)`. Fails with the list of hyperedges whose
/// subgraph degree is below their cap `l`.
pub fn orientation_from_subgraph(
    h: &Hypergraph,
    incidence: &ConstrainedBipartiteGraph,
    s: &SpanningSubgraph,
) -> Result<Orientation, OrientationError> {
    if incidence.a_count() != h.edge_count() || incidence.b_count() != h.vertex_count() {
        return Err(GraphError::SizeMismatch { expected: h.incidence_count(), got: incidence.edges().len() }.into());
    }
    if let Some(v) = s.first_violation(incidence)? {
        return Err(GraphError::NotAdmissible(v).into());
    }
    let mut chosen = vec![Vec::new(); h.edge_count()];
    for (e, &(a, b)) in incidence.edges().iter().enumerate() {
        if s.bits()[e] {
            chosen[a as usize].push(b);
        }
    }
    let deficient: Vec<usize> = (0..h.edge_count())
        .filter(|&a| (chosen[a].len() as u32) < incidence.caps_a()[a])
        .collect();
    let orientation = Orientation { chosen };
    if deficient.is_empty() {
        Ok(orientation)
    } else {
        Err(OrientationError::Deficient { deficient, partial: orientation })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triples() -> Hypergraph {
        Hypergraph::new(4, [vec![0, 1, 2], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn incidence_of_single_triple() {
        let h = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        let g = incidence_graph(&h, 2, 1).unwrap();
        assert_eq!((g.a_count(), g.b_count(), g.edges().len()), (1, 3, 3));
        assert_eq!(g.caps_a(), &[2]);
        assert_eq!(g.caps_b(), &[1, 1, 1]);
    }

    #[test]
    fn incidence_of_empty_hypergraph() {
        let h = Hypergraph::new(5, Vec::<Vec<usize>>::new()).unwrap();
        let g = incidence_graph(&h, 1, 1).unwrap();
        assert_eq!(g.a_count(), 0);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn incidence_counts_and_degrees() {
        let g = incidence_graph(&two_triples(), 1, 1).unwrap();
        assert_eq!(g.edges().len(), 6);
        assert_eq!(g.degree_b(1), 2);
        assert_eq!(g.degree_b(0), 1);
        // each bipartite edge is exactly one incidence
        let h = two_triples();
        for &(a, b) in g.edges() {
            assert!(h.edge(a as usize).contains(&b));
        }
    }

    #[test]
    fn rejects_bad_parameters_and_non_simple_input() {
        let h = two_triples();
        assert!(matches!(incidence_graph(&h, 0, 1), Err(GraphError::BadOrientationParams { .. })));
        assert!(matches!(incidence_graph_strict(&h, 3, 1), Err(GraphError::LNotBelowEdgeSize { .. })));
        assert!(incidence_graph(&h, 3, 1).is_ok());
        assert!(matches!(
            Hypergraph::new(3, [vec![0, 1], vec![1, 0]]),
            Err(GraphError::DuplicateEdge { edge: 1, first: 0 })
        ));
        assert!(matches!(Hypergraph::new(3, [vec![0, 0]]), Err(GraphError::RepeatedVertex { .. })));
        assert!(matches!(Hypergraph::new(3, [vec![0, 3]]), Err(GraphError::VertexOutOfRange { .. })));
        assert!(matches!(Hypergraph::new(3, [Vec::<usize>::new()]), Err(GraphError::EmptyEdge(0))));
        assert!(matches!(
            ConstrainedGraph::new(2, vec![(0, 1), (1, 0)], vec![1, 1]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(ConstrainedGraph::new(2, vec![(0, 0)], vec![1, 1]), Err(GraphError::SelfLoop(0))));
    }

    #[test]
    fn admissibility_examples() {
        let star = ConstrainedGraph::new(4, vec![(0, 1), (0, 2), (0, 3)], vec![1, 1, 1, 1]).unwrap();
        assert!(SpanningSubgraph::empty(3).is_admissible(&star).unwrap());
        assert!(!SpanningSubgraph::full(3).is_admissible(&star).unwrap());

        let k22 = ConstrainedBipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)], vec![1, 1], vec![1, 1])
            .unwrap();
        let matching = SpanningSubgraph::from_bits(vec![true, false, false, true]);
        assert!(matching.is_admissible(&k22).unwrap());
        assert_eq!(matching.size(), 2);
        assert_eq!(SpanningSubgraph::full(5).size(), 5);
        assert_eq!(SpanningSubgraph::empty(5).size(), 0);
        assert!(matches!(
            SpanningSubgraph::empty(3).is_admissible(&k22),
            Err(GraphError::SizeMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn orientation_round_trip() {
        let h = two_triples();
        let g = incidence_graph(&h, 1, 1).unwrap();
        // edges: (0,0) (0,1) (0,2) (1,1) (1,2) (1,3)
        let s = SpanningSubgraph::from_bits(vec![true, false, false, false, false, true]);
        let o = orientation_from_subgraph(&h, &g, &s).unwrap();
        assert_eq!(o.chosen, vec![vec![0], vec![3]]);
        assert_eq!(o.indegrees(4), vec![1, 0, 0, 1]);
        assert!(o.is_valid(&h, 1, 1));

        match orientation_from_subgraph(&h, &g, &SpanningSubgraph::empty(6)) {
            Err(OrientationError::Deficient { deficient, .. }) => assert_eq!(deficient, vec![0, 1]),
            other => panic!("expected deficiency, got {other:?}"),
        }
    }

    #[test]
    fn forest_helpers() {
        let path = ConstrainedGraph::with_uniform_cap(4, vec![(0, 1), (1, 2), (2, 3)], 1).unwrap();
        assert!(path.is_forest());
        assert_eq!(path.forest_diameter(), 3);
        let k3 = ConstrainedGraph::complete(3, 1);
        assert!(!k3.is_forest());
        assert!(k3.to_bipartite().is_none());
        assert!(!k3.ball_is_tree(0, 1));
        assert!(path.ball_is_tree(0, 2));
        let (b, map) = path.to_bipartite().unwrap();
        assert_eq!(b.edges().len(), 3);
        assert_eq!(map[0].0, !map[1].0);
    }

    #[test]
    fn oriented_edge_numbering() {
        let g = ConstrainedGraph::with_uniform_cap(3, vec![(0, 1), (1, 2)], 1).unwrap();
        assert_eq!(g.oriented(0), (0, 1));
        assert_eq!(g.oriented(1), (1, 0));
        assert_eq!(g.incoming(1), &[0, 3]);
        assert_eq!(ConstrainedGraph::reverse(2), 3);
    }
}
