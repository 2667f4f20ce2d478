//! Reduced graphs over a vertex set `W` and the independence test.
//!
//! `(u, v)` is an edge of the reduced graph `G_W` when a pebble at `u` can
//! travel to `v` in the original graph while every other vertex of `W` is
//! occupied, passing only through vertices `x` with `{x} ∪ (W \ {u, v})`
//! admissible. `W` is independent when `G_W` is strongly connected.

use std::collections::{BTreeMap, VecDeque};

use crate::constraints::{ConstraintSet, OccupancyTracker};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Vertex, VertexSet};

/// Vertices of the filtered subgraph used to decide the edge `(v1, v2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFilter {
    admitted: Vec<bool>,
}

impl VertexFilter {
    pub fn admits(&self, v: Vertex) -> bool {
        self.admitted.get(v).copied().unwrap_or(false)
    }

    pub fn admitted(&self) -> VertexSet {
        self.admitted
            .iter()
            .enumerate()
            .filter_map(|(v, &a)| a.then_some(v))
            .collect()
    }
}

/// Occupancy of `W` together with the graph, answering reduced-edge queries.
pub(crate) struct Reducer<'g, 'c> {
    graph: &'g Digraph,
    tracker: OccupancyTracker<'c>,
    in_w: Vec<bool>,
}

impl<'g, 'c> Reducer<'g, 'c> {
    pub(crate) fn new(graph: &'g Digraph, constraints: &'c ConstraintSet, w: &VertexSet) -> Result<Self> {
        for v in w {
            graph.check(v)?;
        }
        let tracker = OccupancyTracker::with_set(constraints, w)?;
        Ok(Self::from_tracker(graph, tracker))
    }

    /// `tracker` must hold exactly `W`, and `W` must lie inside `graph`.
    pub(crate) fn from_tracker(graph: &'g Digraph, tracker: OccupancyTracker<'c>) -> Self {
        let mut in_w = vec![false; graph.id_bound()];
        for v in tracker.occupied() {
            in_w[v] = true;
        }
        Reducer { graph, tracker, in_w }
    }

    pub(crate) fn into_tracker(self) -> OccupancyTracker<'c> {
        self.tracker
    }

    fn drop_pair(v1: Vertex, v2: Vertex) -> ([Vertex; 2], usize) {
        if v1 == v2 {
            ([v1, v1], 1)
        } else {
            ([v1, v2], 2)
        }
    }

    fn admits(&self, v1: Vertex, v2: Vertex, x: Vertex) -> bool {
        if x == v1 || x == v2 {
            return true;
        }
        if self.in_w[x] {
            return false;
        }
        let (drop, n) = Self::drop_pair(v1, v2);
        self.tracker.swap_fits(&drop[..n], x)
    }

    fn filter(&self, v1: Vertex, v2: Vertex) -> VertexFilter {
        let mut admitted = vec![false; self.graph.id_bound()];
        for x in self.graph.vertices() {
            admitted[x] = self.admits(v1, v2, x);
        }
        VertexFilter { admitted }
    }

    /// Shortest witness path for `(v1, v2)`, if the edge exists.
    fn witness(&self, v1: Vertex, v2: Vertex) -> Option<Vec<Vertex>> {
        self.graph
            .shortest_path(v1, v2, |x| self.admits(v1, v2, x))
            .expect("endpoints of W are graph vertices and always admitted")
    }

    fn has_edge(&self, v1: Vertex, v2: Vertex) -> bool {
        let g = self.graph;
        let mut seen = vec![false; g.id_bound()];
        seen[v1] = true;
        let mut stack = vec![v1];
        while let Some(u) = stack.pop() {
            for &x in g.successors(u) {
                if x == v2 {
                    return true;
                }
                if !seen[x] {
                    seen[x] = true;
                    if self.admits(v1, v2, x) {
                        stack.push(x);
                    }
                }
            }
        }
        false
    }

    /// Strong connectivity of `G_W`, computing reduced edges only as the
    /// forward and backward sweeps from the first member need them.
    pub(crate) fn strongly_connected(&self) -> bool {
        let members = self.tracker.occupied().to_vec();
        if members.len() <= 1 {
            return true;
        }
        for forward in [true, false] {
            let mut reached = vec![false; members.len()];
            reached[0] = true;
            let mut queue = VecDeque::from([0usize]);
            let mut count = 1;
            while let Some(i) = queue.pop_front() {
                for j in 0..members.len() {
                    if reached[j] {
                        continue;
                    }
                    let (a, b) = if forward {
                        (members[i], members[j])
                    } else {
                        (members[j], members[i])
                    };
                    if self.has_edge(a, b) {
                        reached[j] = true;
                        count += 1;
                        queue.push_back(j);
                    }
                }
            }
            if count < members.len() {
                return false;
            }
        }
        true
    }
}

/// Predicate describing the vertices of `G_W^{v1 v2}`: everything except
/// `W \ {v1, v2}` and the vertices that cannot join `W \ {v1, v2}` without
/// breaking a constraint.
pub fn filtered_vertices(
    g: &Digraph,
    c: &ConstraintSet,
    w: &VertexSet,
    v1: Vertex,
    v2: Vertex,
) -> Result<VertexFilter> {
    for v in [v1, v2] {
        if !w.contains(v) {
            return Err(Error::NotInReducedSet(v));
        }
    }
    Ok(Reducer::new(g, c, w)?.filter(v1, v2))
}

/// The reduced digraph on `W` with one stored lift per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    vertices: VertexSet,
    lifts: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
}

impl ReducedGraph {
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.lifts.keys().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.lifts.contains_key(&(u, v))
    }

    /// Witness path in the original graph, from `u` to `v` inclusive.
    pub fn lift(&self, u: Vertex, v: Vertex) -> Option<&[Vertex]> {
        self.lifts.get(&(u, v)).map(Vec::as_slice)
    }

    pub fn as_digraph(&self) -> Digraph {
        Digraph::new(self.vertices.iter(), self.edges()).expect("reduced edges join members of W")
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.as_digraph().is_strongly_connected().unwrap_or(true)
    }
}

/// Builds `G_W`, storing a shortest witness path for every edge.
pub fn build_reduced(g: &Digraph, c: &ConstraintSet, w: &VertexSet) -> Result<ReducedGraph> {
    if w.is_empty() {
        return Err(Error::InvalidConfiguration("reduced vertex set is empty".into()));
    }
    let reducer = Reducer::new(g, c, w)?;
    let mut lifts = BTreeMap::new();
    for a in w {
        for b in w {
            if a != b {
                if let Some(path) = reducer.witness(a, b) {
                    lifts.insert((a, b), path);
                }
            }
        }
    }
    Ok(ReducedGraph {
        vertices: w.clone(),
        lifts,
    })
}

/// Whether `W` is independent on `(g, c)`. The empty set always is; a set
/// that breaks a constraint never is.
pub fn is_independent(g: &Digraph, c: &ConstraintSet, w: &VertexSet) -> Result<bool> {
    if w.is_empty() {
        return Ok(true);
    }
    for v in w {
        g.check(v)?;
    }
    match Reducer::new(g, c, w) {
        Ok(r) => Ok(r.strongly_connected()),
        Err(Error::SeedViolatesConstraints) => Ok(false),
        Err(e) => Err(e),
    }
}
