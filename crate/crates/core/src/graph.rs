//! Directed graphs over dense integer vertex ids.
//!
//! Adjacency is stored in arrays indexed by vertex id, so ids should be small
//! and dense (a few unused ids, e.g. starting at 1, are fine).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An ordered set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn with(&self, v: Vertex) -> VertexSet {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn without(&self, v: Vertex) -> VertexSet {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(arr: [Vertex; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = std::collections::btree_set::IntoIter<Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A directed graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    present: Vec<bool>,
    vertex_count: usize,
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
}

impl Digraph {
    /// Builds a graph from a vertex list and directed edges. Duplicate
    /// vertices and edges are merged.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        let bound = vertices.iter().next_back().map_or(0, |&v| v + 1);
        let mut present = vec![false; bound];
        for &v in &vertices {
            present[v] = true;
        }
        let mut g = Digraph {
            present,
            vertex_count: vertices.len(),
            out: vec![Vec::new(); bound],
            inc: vec![Vec::new(); bound],
        };
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        for list in g.out.iter_mut().chain(g.inc.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    /// Builds a graph where every listed pair is expanded to both directions.
    pub fn undirected<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let both: Vec<_> = edges.into_iter().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        Self::new(vertices, both)
    }

    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check(u)?;
        self.check(v)?;
        self.out[u].push(v);
        self.inc[v].push(u);
        Ok(())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// One past the largest vertex id; per-vertex arrays use this length.
    pub fn id_bound(&self) -> usize {
        self.present.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.present.iter().enumerate().filter_map(|(v, &p)| p.then_some(v))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, succ)| succ.iter().map(move |&v| (u, v)))
    }

    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        self.out.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        self.inc.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.successors(u).binary_search(&v).is_ok()
    }

    /// Number of distinct neighbours of `v` (in or out) among vertices
    /// accepted by `keep`. A symmetric pair counts once.
    pub fn neighbour_count<F: Fn(Vertex) -> bool>(&self, v: Vertex, keep: F) -> usize {
        let (out, inc) = (self.successors(v), self.predecessors(v));
        let (mut i, mut j, mut count) = (0, 0, 0);
        // merge of two sorted lists
        while i < out.len() || j < inc.len() {
            let next = match (out.get(i), inc.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (_, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            if keep(next) {
                count += 1;
            }
        }
        count
    }

    fn sweep(&self, root: Vertex, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.id_bound()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            let next = if forward {
                self.successors(u)
            } else {
                self.predecessors(u)
            };
            for &w in next {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// True iff every ordered pair of vertices is joined by a directed path.
    pub fn is_strongly_connected(&self) -> Result<bool> {
        let root = self.vertices().next().ok_or(Error::EmptyGraph)?;
        let fwd = self.sweep(root, true);
        if self.vertices().any(|v| !fwd[v]) {
            return Ok(false);
        }
        let bwd = self.sweep(root, false);
        Ok(self.vertices().all(|v| bwd[v]))
    }

    /// The graph `G/v`: `v` removed, every path `u -> v -> w` with `u != w`
    /// replaced by an edge `u -> w`.
    pub fn contract(&self, v: Vertex) -> Result<Digraph> {
        self.check(v)?;
        let mut edges: Vec<(Vertex, Vertex)> = self.edges().filter(|&(a, b)| a != v && b != v).collect();
        for &u in self.predecessors(v) {
            for &w in self.successors(v) {
                if u != w {
                    edges.push((u, w));
                }
            }
        }
        Digraph::new(self.vertices().filter(|&x| x != v), edges)
    }

    /// Whether `to` can be reached from `from` through vertices accepted by
    /// `allowed`.
    pub fn reachable<F: Fn(Vertex) -> bool>(&self, from: Vertex, to: Vertex, allowed: F) -> Result<bool> {
        Ok(self.shortest_path(from, to, allowed)?.is_some())
    }

    /// Breadth-first shortest path from `from` to `to` (both included) using
    /// only vertices accepted by `allowed`.
    pub fn shortest_path<F: Fn(Vertex) -> bool>(
        &self,
        from: Vertex,
        to: Vertex,
        allowed: F,
    ) -> Result<Option<Vec<Vertex>>> {
        self.check(from)?;
        self.check(to)?;
        for x in [from, to] {
            if !allowed(x) {
                return Err(Error::EndpointFilteredOut(x));
            }
        }
        if from == to {
            return Ok(Some(vec![from]));
        }
        let mut parent = vec![usize::MAX; self.id_bound()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &w in self.successors(u) {
                if parent[w] != usize::MAX || !allowed(w) {
                    continue;
                }
                parent[w] = u;
                if w == to {
                    let mut path = vec![to];
                    let mut cur = to;
                    while cur != from {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Ok(Some(path));
                }
                queue.push_back(w);
            }
        }
        Ok(None)
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: &VertexSet) -> Result<Digraph> {
        for v in keep {
            self.check(v)?;
        }
        let edges = self.edges().filter(|&(u, v)| keep.contains(u) && keep.contains(v));
        Digraph::new(keep.iter(), edges)
    }
}

/// The `n x n` lattice, vertices numbered row-major from 1, each lattice
/// adjacency emitted in both directions.
pub fn grid_graph(n: usize) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::DegenerateGrid);
    }
    let id = |r: usize, c: usize| r * n + c + 1;
    let mut edges = Vec::with_capacity(4 * n * (n - 1));
    for r in 0..n {
        for c in 0..n {
            if c + 1 < n {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < n {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Digraph::undirected(1..=n * n, edges)
}
