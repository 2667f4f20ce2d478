//! Vertex-occupancy constraints as weighted capacity (knapsack) triples.
//!
//! A set `U` of occupied vertices is admissible when, for every constraint
//! `(S, k, w)`, the weights of `S ∩ U` sum to at most `k`. The family of
//! admissible sets is closed under subsets.

use crate::error::{Error, Result};
use crate::graph::{Digraph, Vertex, VertexSet};

/// Largest scope `expand_covers` will enumerate.
pub const MAX_COVER_SCOPE: usize = 20;

/// Default universe cap for [`verify_asc`].
pub const DEFAULT_ASC_LIMIT: usize = 16;

/// One constraint `sum_{i in S ∩ U} w_i <= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityConstraint {
    scope: Vec<Vertex>,
    weights: Vec<u64>,
    capacity: u64,
}

impl CapacityConstraint {
    /// `weights`, when given, are aligned with `scope` as passed in.
    pub fn new(scope: Vec<Vertex>, capacity: u64, weights: Option<Vec<u64>>) -> Result<Self> {
        let weights = weights.unwrap_or_else(|| vec![1; scope.len()]);
        if weights.len() != scope.len() {
            return Err(Error::InvalidConstraint(format!(
                "{} weights for a scope of {} vertices",
                weights.len(),
                scope.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidConstraint("weights must be positive".into()));
        }
        let mut pairs: Vec<(Vertex, u64)> = scope.into_iter().zip(weights).collect();
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidConstraint("duplicate vertex in scope".into()));
        }
        let (scope, weights) = pairs.into_iter().unzip();
        Ok(CapacityConstraint {
            scope,
            weights,
            capacity,
        })
    }

    /// Unit-weight constraint `|S ∩ U| <= k`.
    pub fn pair(scope: Vec<Vertex>, capacity: u64) -> Result<Self> {
        Self::new(scope, capacity, None)
    }

    pub fn scope(&self) -> &[Vertex] {
        &self.scope
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn weight_of(&self, v: Vertex) -> Option<u64> {
        self.scope.binary_search(&v).ok().map(|i| self.weights[i])
    }

    /// Weighted size of `S ∩ U`.
    pub fn load<I: IntoIterator<Item = Vertex>>(&self, occupied: I) -> u64 {
        occupied.into_iter().filter_map(|v| self.weight_of(v)).sum()
    }

    pub fn admits<I: IntoIterator<Item = Vertex>>(&self, occupied: I) -> bool {
        self.load(occupied) <= self.capacity
    }
}

/// A family of capacity constraints over a declared vertex universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    universe: VertexSet,
    constraints: Vec<CapacityConstraint>,
    /// Sparse form of the per-vertex weight vectors: `(constraint, weight)`
    /// for every constraint whose scope holds the vertex.
    incidence: Vec<Vec<(usize, u64)>>,
}

impl ConstraintSet {
    pub fn new(universe: VertexSet, constraints: Vec<CapacityConstraint>) -> Result<Self> {
        let bound = universe.iter().next_back().map_or(0, |v| v + 1);
        let mut incidence = vec![Vec::new(); bound];
        for (i, c) in constraints.iter().enumerate() {
            for (&v, &w) in c.scope.iter().zip(&c.weights) {
                if !universe.contains(v) {
                    return Err(Error::OutsideUniverse(v));
                }
                incidence[v].push((i, w));
            }
        }
        Ok(ConstraintSet {
            universe,
            constraints,
            incidence,
        })
    }

    /// Unit-weight constraints from `(S, k)` pairs.
    pub fn from_pairs<I>(universe: VertexSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexSet, u64)>,
    {
        let constraints = pairs
            .into_iter()
            .map(|(s, k)| CapacityConstraint::pair(s.to_vec(), k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, constraints)
    }

    /// One `({i, j}, 1)` pair per unordered adjacency of `g`.
    pub fn adjacency(g: &Digraph) -> Self {
        let mut pairs: Vec<(Vertex, Vertex)> = g.edges().map(|(u, v)| if u < v { (u, v) } else { (v, u) }).collect();
        pairs.sort_unstable();
        pairs.dedup();
        let constraints = pairs
            .into_iter()
            .map(|(u, v)| CapacityConstraint::pair(vec![u, v], 1).expect("distinct endpoints"))
            .collect();
        Self::new(g.vertex_set(), constraints).expect("edge endpoints are graph vertices")
    }

    pub fn universe(&self) -> &VertexSet {
        &self.universe
    }

    pub fn constraints(&self) -> &[CapacityConstraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// `(constraint index, weight)` for every constraint containing `v`.
    pub fn incidence(&self, v: Vertex) -> &[(usize, u64)] {
        self.incidence.get(v).map_or(&[], Vec::as_slice)
    }

    fn check_universe<I: IntoIterator<Item = Vertex>>(&self, vs: I) -> Result<()> {
        for v in vs {
            if !self.universe.contains(v) {
                return Err(Error::OutsideUniverse(v));
            }
        }
        Ok(())
    }

    /// Whether `u` is an admissible occupied set.
    pub fn is_member(&self, u: &VertexSet) -> Result<bool> {
        Ok(self.first_violation(u)?.is_none())
    }

    /// The first constraint (by index) that `u` violates, if any.
    pub fn first_violation(&self, u: &VertexSet) -> Result<Option<&CapacityConstraint>> {
        self.check_universe(u.iter())?;
        let mut loads = vec![0u64; self.constraints.len()];
        for v in u {
            for &(i, w) in self.incidence(v) {
                loads[i] += w;
            }
        }
        Ok(loads
            .iter()
            .zip(&self.constraints)
            .find(|(&load, c)| load > c.capacity)
            .map(|(_, c)| c))
    }
}

/// All minimal covers of `c`, each as the pair `(C', |C'| - 1)`.
///
/// A cover is a subset of the scope whose weight exceeds the capacity; it is
/// minimal when dropping any element brings it back within capacity. The
/// unit-weight pairs built from the output admit exactly the same sets as `c`.
pub fn expand_covers(c: &CapacityConstraint) -> Result<Vec<(VertexSet, u64)>> {
    let n = c.scope.len();
    if n > MAX_COVER_SCOPE {
        return Err(Error::CoverExpansionTooLarge(n));
    }
    let mut covers = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let members = (0..n).filter(|&i| mask >> i & 1 == 1);
        let total: u64 = members.clone().map(|i| c.weights[i]).sum();
        if total <= c.capacity {
            continue;
        }
        let minimal = members.clone().all(|i| total - c.weights[i] <= c.capacity);
        if minimal {
            let set: VertexSet = members.map(|i| c.scope[i]).collect();
            let k = set.len() as u64 - 1;
            covers.push((set, k));
        }
    }
    Ok(covers)
}

/// Exhaustively checks the simplicial-complex axioms (empty set admitted,
/// closed under subsets) for the family described by `member`.
pub fn verify_asc<F>(universe: &VertexSet, member: F, limit: usize) -> Result<bool>
where
    F: Fn(&VertexSet) -> bool,
{
    let items = universe.to_vec();
    if items.len() > limit {
        return Err(Error::UniverseTooLarge {
            size: items.len(),
            limit,
        });
    }
    let n = items.len();
    let subset = |mask: u64| -> VertexSet { (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).collect() };
    let total = 1u64 << n;
    let admitted: Vec<bool> = (0..total).map(|m| member(&subset(m))).collect();
    if !admitted[0] {
        return Ok(false);
    }
    // closure under one-element removal implies closure under all subsets
    for mask in 1..total {
        if admitted[mask as usize] {
            for i in 0..n {
                if mask >> i & 1 == 1 && !admitted[(mask & !(1 << i)) as usize] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

impl ConstraintSet {
    /// [`verify_asc`] applied to this set's membership test.
    pub fn verify_asc(&self, limit: usize) -> Result<bool> {
        verify_asc(&self.universe, |u| self.is_member(u).unwrap_or(false), limit)
    }
}

/// Incremental per-constraint loads for an occupied set `M`.
///
/// Keeps `m_i = sum_{j in S_i ∩ M} w_j` so membership of `M` plus or minus
/// a couple of vertices is decided by looking only at the constraints that
/// touch those vertices. `M` is kept admissible: additions that would break a
/// constraint are refused without mutation.
#[derive(Debug, Clone)]
pub struct OccupancyTracker<'a> {
    constraints: &'a ConstraintSet,
    loads: Vec<u64>,
    occupied: Vec<bool>,
    size: usize,
}

impl<'a> OccupancyTracker<'a> {
    pub fn new(constraints: &'a ConstraintSet) -> Self {
        let bound = constraints.universe.iter().next_back().map_or(0, |v| v + 1);
        OccupancyTracker {
            constraints,
            loads: vec![0; constraints.len()],
            occupied: vec![false; bound],
            size: 0,
        }
    }

    /// Tracker for `set`; fails if `set` is not admissible.
    pub fn with_set(constraints: &'a ConstraintSet, set: &VertexSet) -> Result<Self> {
        let mut t = Self::new(constraints);
        for v in set {
            if !t.add(v)? {
                return Err(Error::SeedViolatesConstraints);
            }
        }
        Ok(t)
    }

    pub fn constraint_set(&self) -> &'a ConstraintSet {
        self.constraints
    }

    pub fn loads(&self) -> &[u64] {
        &self.loads
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.occupied.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn occupied(&self) -> VertexSet {
        self.occupied
            .iter()
            .enumerate()
            .filter_map(|(v, &o)| o.then_some(v))
            .collect()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.constraints.universe.contains(v) {
            Ok(())
        } else {
            Err(Error::OutsideUniverse(v))
        }
    }

    /// Adds `v` if `M ∪ {v}` stays admissible; returns whether it did.
    pub fn add(&mut self, v: Vertex) -> Result<bool> {
        self.check_vertex(v)?;
        if self.occupied[v] {
            return Err(Error::OccupancyMismatch(format!("vertex {v} already occupied")));
        }
        let fits = self
            .constraints
            .incidence(v)
            .iter()
            .all(|&(i, w)| self.loads[i] + w <= self.constraints.constraints[i].capacity);
        if fits {
            for &(i, w) in self.constraints.incidence(v) {
                self.loads[i] += w;
            }
            self.occupied[v] = true;
            self.size += 1;
        }
        Ok(fits)
    }

    pub fn remove(&mut self, v: Vertex) -> Result<()> {
        self.check_vertex(v)?;
        if !self.occupied[v] {
            return Err(Error::OccupancyMismatch(format!("vertex {v} not occupied")));
        }
        for &(i, w) in self.constraints.incidence(v) {
            self.loads[i] -= w;
        }
        self.occupied[v] = false;
        self.size -= 1;
        Ok(())
    }

    /// Whether `(M \ drop) ∪ {probe}` is admissible, without mutating.
    pub fn check_swap(&self, drop: &[Vertex], probe: Vertex) -> Result<bool> {
        if drop.len() > 2 {
            return Err(Error::OccupancyMismatch("at most two vertices may be dropped".into()));
        }
        for &d in drop {
            self.check_vertex(d)?;
            if !self.occupied[d] {
                return Err(Error::OccupancyMismatch(format!("dropped vertex {d} not occupied")));
            }
        }
        self.check_vertex(probe)?;
        if self.occupied[probe] && !drop.contains(&probe) {
            return Err(Error::OccupancyMismatch(format!("probe {probe} already occupied")));
        }
        Ok(self.swap_fits(drop, probe))
    }

    /// Unchecked core of [`check_swap`](Self::check_swap). Only constraints
    /// touching `probe` can fail since `M` itself is admissible.
    pub(crate) fn swap_fits(&self, drop: &[Vertex], probe: Vertex) -> bool {
        let cs = self.constraints;
        cs.incidence(probe).iter().all(|&(i, w)| {
            let mut load = self.loads[i] + w;
            for &d in drop {
                if let Some(&(_, dw)) = cs.incidence(d).iter().find(|&&(j, _)| j == i) {
                    load -= dw;
                }
            }
            load <= cs.constraints[i].capacity
        })
    }
}
