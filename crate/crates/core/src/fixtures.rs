//! Small hand-made instances used throughout the tests and the CLI docs.

use crate::constraints::ConstraintSet;
use crate::graph::{Digraph, VertexSet};

fn pairs(universe: VertexSet, scopes: &[&[usize]]) -> ConstraintSet {
    ConstraintSet::from_pairs(universe, scopes.iter().map(|s| (s.iter().copied().collect(), 1)))
        .expect("fixture scopes lie in the universe")
}

/// Directed 5-cycle `1 -> 2 -> 3 -> 4 -> 5 -> 1` with at most one pebble in
/// each of `{1,4}` and `{2,3}`.
pub fn d() -> (Digraph, ConstraintSet) {
    let g = Digraph::new(1..=5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
    let c = pairs(g.vertex_set(), &[&[1, 4], &[2, 3]]);
    (g, c)
}

/// [`d`] plus the chord `3 -> 5`.
pub fn d_prime() -> (Digraph, ConstraintSet) {
    let g = Digraph::new(1..=5, [(1, 2), (2, 3), (3, 4), (3, 5), (4, 5), (5, 1)]).unwrap();
    let c = pairs(g.vertex_set(), &[&[1, 4], &[2, 3]]);
    (g, c)
}

/// Seven-vertex graph on which the independent sets do not form a matroid:
/// `{1,3,5}` and `{2,4}` are independent but `{2,4}` cannot be extended.
pub fn counterexample() -> (Digraph, ConstraintSet) {
    let g = Digraph::new(1..=7, [(1, 7), (7, 4), (2, 3), (1, 2), (3, 4), (4, 5), (6, 1), (5, 6)]).unwrap();
    let c = pairs(g.vertex_set(), &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[6, 1]]);
    (g, c)
}

/// Undirected five-vertex graph whose maximum independent set is `{1,3,5}`.
pub fn mis_example() -> Digraph {
    Digraph::undirected(1..=5, [(1, 2), (4, 3), (1, 4), (4, 5), (2, 5), (2, 3)]).unwrap()
}
