//! Random instance generators for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constraints::{CapacityConstraint, ConstraintSet};
use crate::graph::{Digraph, Vertex, VertexSet};

/// Strongly connected digraph on `1..=n`: a Hamiltonian cycle through a
/// random permutation plus `extra` random edges.
pub fn strongly_connected<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Digraph {
    assert!(n >= 2, "need at least two vertices");
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    for _ in 0..extra {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if u != v {
            edges.push((u, v));
        }
    }
    Digraph::new(1..=n, edges).expect("generated edges are valid")
}

/// `count` random unit pair constraints over the vertices of `g`.
pub fn pair_constraints<R: Rng>(rng: &mut R, g: &Digraph, count: usize) -> ConstraintSet {
    let vs: Vec<Vertex> = g.vertices().collect();
    let pairs = (0..count).filter_map(|_| {
        let pick: Vec<Vertex> = vs.choose_multiple(rng, 2).copied().collect();
        (pick.len() == 2).then(|| (pick.into_iter().collect::<VertexSet>(), 1))
    });
    ConstraintSet::from_pairs(g.vertex_set(), pairs).expect("scopes lie in the graph")
}

/// Knapsack constraint on a random scope of `1..=max_scope` vertices drawn
/// from `1..=universe`, weights in `1..=max_weight`.
pub fn knapsack<R: Rng>(rng: &mut R, universe: usize, max_scope: usize, max_weight: u64) -> CapacityConstraint {
    let vs: Vec<Vertex> = (1..=universe).collect();
    let size = rng.gen_range(1..=max_scope.min(universe));
    let scope: Vec<Vertex> = vs.choose_multiple(rng, size).copied().collect();
    let weights: Vec<u64> = scope.iter().map(|_| rng.gen_range(1..=max_weight)).collect();
    let total: u64 = weights.iter().sum();
    let capacity = rng.gen_range(0..=total);
    CapacityConstraint::new(scope, capacity, Some(weights)).expect("generated constraint is valid")
}

/// Random undirected graph on `1..=n` with edge probability `p`.
pub fn undirected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::undirected(1..=n, edges).expect("generated edges are valid")
}
