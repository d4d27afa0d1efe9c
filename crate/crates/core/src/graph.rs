//! The labeled simple graph and the deterministic traversals built on it.
//!
//! Vertices are dense ids `0..n`. Every traversal expands neighbours in
//! ascending id order, so paths, trees and component orders are fully
//! reproducible.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{GraphError, Result};
use crate::Vertex;

/// Unordered edge stored as `(min, max)`.
pub type Edge = (Vertex, Vertex);

#[inline]
pub fn normalize(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency is held twice: a sorted edge set for canonical output and a
/// per-vertex sorted neighbour set for O(log d) adjacency queries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph is simple")
    }

    /// Star with centre 0.
    pub fn star(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (0, v))).expect("star is simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(u, v)` order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    /// Canonical key: the sorted edge list.
    pub fn key(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn neighbors(&self, v: Vertex) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(BTreeSet::len).collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v < self.n()
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let e = normalize(u, v);
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e.0, e.1));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub(crate) fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let e = normalize(u, v);
        if !self.edges.remove(&e) {
            return Err(GraphError::MissingEdge(e.0, e.1));
        }
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        Ok(())
    }

    /// Appends an isolated vertex and returns its id.
    pub(crate) fn push_vertex(&mut self) -> Vertex {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    /// Deletes `v` and its edges; ids above `v` shift down by one.
    pub(crate) fn delete_vertex(&mut self, v: Vertex) {
        let shift = |w: Vertex| if w > v { w - 1 } else { w };
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        *self = Graph::from_edges(self.n() - 1, edges).expect("renumbering keeps the graph simple");
    }

    /// Checks the redundant adjacency representation. Compiled to a no-op in
    /// release builds.
    #[inline]
    pub(crate) fn debug_check(&self) {
        #[cfg(debug_assertions)]
        {
            let mut count = 0;
            for (u, nbrs) in self.adj.iter().enumerate() {
                for &v in nbrs {
                    assert_ne!(u, v, "loop at {u}");
                    assert!(self.adj[v].contains(&u), "asymmetric adjacency {u}-{v}");
                    assert!(
                        self.edges.contains(&normalize(u, v)),
                        "edge set missing {u}-{v}"
                    );
                    count += 1;
                }
            }
            assert_eq!(
                count,
                2 * self.edges.len(),
                "edge set and adjacency disagree"
            );
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.reach_count(0) == self.n()
    }

    /// Whether `self - remove + add` is connected, without materialising it.
    pub fn is_connected_after(&self, remove: Edge, add: Edge) -> bool {
        let mut g = self.clone();
        if g.remove_edge(remove.0, remove.1).is_err() || g.insert_edge(add.0, add.1).is_err() {
            return false;
        }
        g.is_connected()
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    fn reach_count(&self, start: Vertex) -> usize {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
        count
    }

    /// Breadth-first shortest path from `a` to `b`, never traversing
    /// `forbidden`. Neighbours are expanded in ascending order, so the result
    /// is the lexicographically-first shortest path in BFS discovery order.
    pub fn shortest_path(&self, a: Vertex, b: Vertex, forbidden: Option<Edge>) -> Option<Path> {
        let forbidden = forbidden.map(|(u, v)| normalize(u, v));
        let mut parent = vec![usize::MAX; self.n()];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for w in self.neighbors(v) {
                if parent[w] != usize::MAX || forbidden == Some(normalize(v, w)) {
                    continue;
                }
                parent[w] = v;
                queue.push_back(w);
            }
        }
        if parent[b] == usize::MAX {
            return None;
        }
        let mut vertices = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            vertices.push(cur);
        }
        vertices.reverse();
        Some(Path(vertices))
    }

    /// Connected components of the graph with `excluded` (if any) deleted.
    /// Groups are sorted internally and ordered by their smallest id.
    pub fn connected_components(&self, excluded: Option<Vertex>) -> ComponentPartition {
        let mut seen = vec![false; self.n()];
        if let Some(x) = excluded {
            seen[x] = true;
        }
        let mut groups = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut group = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        group.push(w);
                        stack.push(w);
                    }
                }
            }
            group.sort_unstable();
            groups.push(group);
        }
        ComponentPartition { groups }
    }

    /// BFS spanning tree rooted at `root`, returned as sorted edges.
    pub fn spanning_tree(&self, root: Vertex) -> Result<Vec<Edge>> {
        self.check_vertex(root)?;
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        let mut tree = Vec::with_capacity(self.n().saturating_sub(1));
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    tree.push(normalize(v, w));
                    queue.push_back(w);
                }
            }
        }
        if tree.len() + 1 != self.n() {
            return Err(GraphError::Disconnected.into());
        }
        tree.sort_unstable();
        Ok(tree)
    }

    pub fn stats(&self) -> GraphStats {
        let degrees = self.degrees();
        let energy = degrees.iter().map(|&d| (d * d) as u64).sum();
        let chi = self.n() as i64 - self.edge_count() as i64;
        let curvature_sum = degrees.iter().map(|&d| 2 - d as i64).sum();
        GraphStats {
            n: self.n(),
            e: self.edge_count(),
            degrees,
            energy,
            chi,
            curvature_sum,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n() as i64 - self.edge_count() as i64
    }

    pub fn energy(&self) -> u64 {
        self.adj.iter().map(|s| (s.len() * s.len()) as u64).sum()
    }

    /// True iff `psi` carries the edge set of `self` exactly onto that of `other`.
    pub fn is_isomorphic_under(&self, other: &Graph, psi: &VertexBijection) -> Result<bool> {
        if self.n() != other.n() || psi.len() != self.n() {
            return Err(GraphError::SizeMismatch(format!(
                "graphs have {} and {} vertices, bijection has {}",
                self.n(),
                other.n(),
                psi.len()
            ))
            .into());
        }
        if self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self
            .edges()
            .all(|(u, v)| other.has_edge(psi.apply(u), psi.apply(v))))
    }

    /// Subgraph induced on `keep` (ascending, distinct), with ids compacted.
    /// `keep[i]` is the original id of new vertex `i`.
    pub(crate) fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self.edges().filter_map(|(u, v)| {
            let (a, b) = (index[u], index[v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b))
        });
        Graph::from_edges(keep.len(), edges).expect("induced subgraph is simple")
    }

    /// Lexicographically smallest non-adjacent pair among `vertices` (ascending).
    pub(crate) fn first_non_adjacent_pair(&self, vertices: &[Vertex]) -> Option<Edge> {
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                if !self.has_edge(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// Scalar summary of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub e: usize,
    pub degrees: Vec<usize>,
    /// Sum of squared degrees.
    pub energy: u64,
    /// n - e.
    pub chi: i64,
    /// Sum over vertices of 2 - d(x); always equals 2 * chi.
    pub curvature_sum: i64,
}

impl std::fmt::Display for GraphStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let degrees: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        write!(
            f,
            "n={} e={} chi={} energy={} degrees={} curvature_sum={}",
            self.n,
            self.e,
            self.chi,
            self.energy,
            degrees.join(","),
            self.curvature_sum
        )
    }
}

/// A simple path `s_1 .. s_k`, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path(Vec<Vertex>);

impl Path {
    /// Validates distinctness and consecutive adjacency in `g`.
    pub fn new_in(g: &Graph, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(crate::error::precondition("path must contain a vertex"));
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            g.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(crate::error::precondition(format!(
                    "path repeats vertex {v}"
                )));
            }
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(GraphError::MissingEdge(w[0], w[1]).into());
            }
        }
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of vertices on the path.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.iter().position(|&w| w == v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// Sub-path over positions `range` (inclusive bounds).
    pub fn slice(&self, from: usize, to: usize) -> Path {
        Path(self.0[from..=to].to_vec())
    }
}

/// Disjoint connected vertex groups, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub groups: Vec<Vec<Vertex>>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group_of(&self, v: Vertex) -> Option<usize> {
        self.groups.iter().position(|g| g.binary_search(&v).is_ok())
    }
}

/// A permutation `source id -> target id`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexBijection {
    forward: Vec<Vertex>,
}

impl VertexBijection {
    pub fn identity(n: usize) -> Self {
        Self {
            forward: (0..n).collect(),
        }
    }

    pub fn new(forward: Vec<Vertex>) -> Result<Self, GraphError> {
        let n = forward.len();
        let mut hit = vec![false; n];
        for (src, &dst) in forward.iter().enumerate() {
            if dst >= n {
                return Err(GraphError::NotBijection(format!(
                    "{src} maps to {dst}, outside 0..{n}"
                )));
            }
            if std::mem::replace(&mut hit[dst], true) {
                return Err(GraphError::NotBijection(format!("{dst} is hit twice")));
            }
        }
        Ok(Self { forward })
    }

    #[inline]
    pub fn apply(&self, v: Vertex) -> Vertex {
        self.forward[v]
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.forward
    }

    pub fn inverse(&self) -> Self {
        let mut back = vec![0; self.forward.len()];
        for (src, &dst) in self.forward.iter().enumerate() {
            back[dst] = src;
        }
        Self { forward: back }
    }
}
