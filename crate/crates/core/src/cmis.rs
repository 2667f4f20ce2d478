//! Large independent supersets of a seed set.
//!
//! [`maximal_independent`] grows a seed one vertex at a time. A vertex that
//! cannot be added is never retried: independence is closed under subsets,
//! so if `M ∪ {v}` fails then so does `M' ∪ {v}` for every `M' ⊇ M`.
//! [`exact_cmis`] is a branch-and-bound search built on the same pruning.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constraints::{ConstraintSet, OccupancyTracker};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Vertex, VertexSet};
use crate::reduction::{is_independent, Reducer};

/// Graph, constraints and the vertices every solution must contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmisInstance {
    graph: Digraph,
    constraints: ConstraintSet,
    seed: VertexSet,
}

impl CmisInstance {
    pub fn new(graph: Digraph, constraints: ConstraintSet, seed: VertexSet) -> Result<Self> {
        for v in graph.vertices() {
            if !constraints.universe().contains(v) {
                return Err(Error::OutsideUniverse(v));
            }
        }
        for v in &seed {
            graph.check(v)?;
        }
        Ok(CmisInstance {
            graph,
            constraints,
            seed,
        })
    }

    /// The instance used by the grid benchmark: the `n x n` lattice with at
    /// most one pebble on the endpoints of every edge.
    pub fn grid(n: usize) -> Result<Self> {
        let graph = crate::graph::grid_graph(n)?;
        let constraints = ConstraintSet::adjacency(&graph);
        Self::new(graph, constraints, VertexSet::new())
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn constraints(&self) -> &ConstraintSet {
        &self.constraints
    }

    pub fn seed(&self) -> &VertexSet {
        &self.seed
    }

    pub fn with_seed(&self, seed: VertexSet) -> Result<Self> {
        Self::new(self.graph.clone(), self.constraints.clone(), seed)
    }

    fn checked_seed_tracker(&self) -> Result<OccupancyTracker<'_>> {
        if !is_independent(&self.graph, &self.constraints, &self.seed)? {
            return Err(Error::InfeasibleSeed);
        }
        OccupancyTracker::with_set(&self.constraints, &self.seed)
    }

    /// Whether the set held by `tracker` plus `v` is independent.
    fn extends<'t>(&self, tracker: &OccupancyTracker<'t>, v: Vertex) -> Option<OccupancyTracker<'t>> {
        let mut next = tracker.clone();
        if !next.add(v).ok()? {
            return None;
        }
        let reducer = Reducer::from_tracker(&self.graph, next);
        reducer.strongly_connected().then(|| reducer.into_tracker())
    }
}

/// How greedy growth picks the next candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionRule {
    /// Uniform over the remaining candidates, drawn from a ChaCha8 stream
    /// seeded with `seed_from_u64(seed)`.
    Random { seed: u64 },
    /// Largest [`psi_expandability`].
    GreedyPsi,
    /// Largest [`psi_inverse_degree`], i.e. fewest live neighbours.
    GreedyDegree,
}

/// `|{w : M ∪ {v, w} admissible}|`, counting `w` outside `M ∪ {v}`.
pub fn psi_expandability(c: &ConstraintSet, m: &VertexSet, v: Vertex, universe: &VertexSet) -> Result<usize> {
    let mut t = OccupancyTracker::with_set(c, m)?;
    if t.contains(v) || !t.add(v)? {
        return Err(Error::InvalidConfiguration(format!(
            "{} ∪ {{{v}}} is not admissible",
            m
        )));
    }
    Ok(expandability(&t, universe.iter()))
}

fn expandability<I: Iterator<Item = Vertex>>(t: &OccupancyTracker<'_>, universe: I) -> usize {
    universe.filter(|&w| !t.contains(w) && t.swap_fits(&[], w)).count()
}

/// Reciprocal of the number of neighbours of `v` outside `excluded`;
/// `+inf` for a vertex with none.
pub fn psi_inverse_degree(v: Vertex, excluded: &VertexSet, g: &Digraph) -> f64 {
    match g.neighbour_count(v, |x| !excluded.contains(x)) {
        0 => f64::INFINITY,
        d => 1.0 / d as f64,
    }
}

/// Grows the seed into a maximal independent set.
///
/// Keeps the excluded set `E = M ∪ L(M) ∪ rejected`, where
/// `L(M) = {w : M ∪ {w} not admissible}`, and draws candidates from
/// `V \ E` until it is empty.
pub fn maximal_independent(inst: &CmisInstance, rule: SelectionRule) -> Result<VertexSet> {
    let g = &inst.graph;
    let mut tracker = inst.checked_seed_tracker()?;
    let mut excluded = vec![false; g.id_bound()];
    let mark_blocked = |t: &OccupancyTracker<'_>, excluded: &mut Vec<bool>| {
        for w in g.vertices() {
            if !excluded[w] && (t.contains(w) || !t.swap_fits(&[], w)) {
                excluded[w] = true;
            }
        }
    };
    mark_blocked(&tracker, &mut excluded);
    let mut rng = match rule {
        SelectionRule::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };

    loop {
        let delta: Vec<Vertex> = g.vertices().filter(|&v| !excluded[v]).collect();
        if delta.is_empty() {
            break;
        }
        let v = match rule {
            SelectionRule::Random { .. } => {
                let rng = rng.as_mut().expect("random rule owns a generator");
                delta[rng.gen_range(0..delta.len())]
            }
            SelectionRule::GreedyPsi => {
                let mut best = (0usize, usize::MAX);
                for &v in &delta {
                    let mut t = tracker.clone();
                    t.add(v)?;
                    let score = expandability(&t, g.vertices());
                    if best.1 == usize::MAX || score > best.0 {
                        best = (score, v);
                    }
                }
                best.1
            }
            SelectionRule::GreedyDegree => {
                // max of 1/deg is min of deg, isolated vertices first
                *delta
                    .iter()
                    .min_by_key(|&&v| (g.neighbour_count(v, |x| !excluded[x]), v))
                    .expect("delta is non-empty")
            }
        };
        excluded[v] = true;
        if let Some(next) = inst.extends(&tracker, v) {
            tracker = next;
            mark_blocked(&tracker, &mut excluded);
        }
    }
    Ok(tracker.occupied())
}

/// Result of a multi-start random search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestartReport {
    /// Output of run `i`, which used RNG seed `base_seed + i`.
    pub runs: Vec<VertexSet>,
    /// Lowest-index run of maximum cardinality.
    pub best_index: usize,
}

impl RestartReport {
    pub fn best(&self) -> &VertexSet {
        &self.runs[self.best_index]
    }

    /// cardinality -> number of runs
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for r in &self.runs {
            *h.entry(r.len()).or_insert(0) += 1;
        }
        h
    }
}

/// `runs` independent random growths with seeds `base_seed + i`, executed
/// in parallel and merged by run index.
pub fn multi_restart(inst: &CmisInstance, runs: usize, base_seed: u64) -> Result<RestartReport> {
    if runs == 0 {
        return Err(Error::InvalidConfiguration("at least one run is required".into()));
    }
    let results = (0..runs)
        .into_par_iter()
        .map(|i| {
            let seed = base_seed.wrapping_add(i as u64);
            maximal_independent(inst, SelectionRule::Random { seed })
        })
        .collect::<Result<Vec<_>>>()?;
    let best_index = results
        .iter()
        .enumerate()
        .max_by_key(|(i, r)| (r.len(), std::cmp::Reverse(*i)))
        .map(|(i, _)| i)
        .expect("runs >= 1");
    Ok(RestartReport {
        runs: results,
        best_index,
    })
}

/// Outcome of the exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub best: VertexSet,
    /// False when the time budget ran out before the search finished.
    pub proven_optimal: bool,
    pub nodes: u64,
}

/// Every maximum-cardinality solution, when the search completed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactAll {
    pub optima: Vec<VertexSet>,
    pub proven_optimal: bool,
}

struct Search<'a> {
    inst: &'a CmisInstance,
    deadline: Option<Instant>,
    timed_out: bool,
    nodes: u64,
    best_len: usize,
    optima: Vec<VertexSet>,
    collect_all: bool,
}

impl<'a> Search<'a> {
    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if self.nodes % 256 == 1 {
            if let Some(d) = self.deadline {
                self.timed_out = Instant::now() >= d;
            }
        }
        self.timed_out
    }

    fn record(&mut self, t: &OccupancyTracker<'_>) {
        let len = t.len();
        if len > self.best_len || self.optima.is_empty() {
            self.best_len = len;
            self.optima.clear();
            self.optima.push(t.occupied());
        } else if len == self.best_len && self.collect_all {
            self.optima.push(t.occupied());
        }
    }

    /// `candidates` are exactly the vertices `u` after the branching frontier
    /// with `M ∪ {u}` independent.
    fn branch(&mut self, tracker: &OccupancyTracker<'a>, candidates: &[Vertex]) {
        self.nodes += 1;
        if self.out_of_time() {
            return;
        }
        let bound = tracker.len() + candidates.len();
        let hopeless = if self.collect_all {
            bound < self.best_len
        } else {
            bound <= self.best_len
        };
        if hopeless && !self.optima.is_empty() {
            return;
        }
        let Some((&v, rest)) = candidates.split_first() else {
            self.record(tracker);
            return;
        };
        let with_v = self.inst.extends(tracker, v).expect("candidates extend M");
        let narrowed: Vec<Vertex> = rest
            .iter()
            .copied()
            .filter(|&u| self.inst.extends(&with_v, u).is_some())
            .collect();
        self.branch(&with_v, &narrowed);
        self.branch(tracker, rest);
    }
}

fn run_search(inst: &CmisInstance, budget: Option<Duration>, collect_all: bool) -> Result<(Vec<VertexSet>, bool, u64)> {
    let tracker = inst.checked_seed_tracker()?;
    let candidates: Vec<Vertex> = inst
        .graph
        .vertices()
        .filter(|&v| !tracker.contains(v) && inst.extends(&tracker, v).is_some())
        .collect();
    let mut search = Search {
        inst,
        deadline: budget.map(|b| Instant::now() + b),
        timed_out: false,
        nodes: 0,
        best_len: 0,
        optima: Vec::new(),
        collect_all,
    };
    search.branch(&tracker, &candidates);
    if search.optima.is_empty() {
        search.optima.push(inst.seed.clone());
    }
    Ok((search.optima, !search.timed_out, search.nodes))
}

/// Maximum-cardinality independent superset of the seed.
pub fn exact_cmis(inst: &CmisInstance, budget: Option<Duration>) -> Result<ExactResult> {
    let (mut optima, proven_optimal, nodes) = run_search(inst, budget, false)?;
    Ok(ExactResult {
        best: optima.swap_remove(0),
        proven_optimal,
        nodes,
    })
}

/// All maximum-cardinality independent supersets of the seed.
pub fn exact_cmis_all(inst: &CmisInstance, budget: Option<Duration>) -> Result<ExactAll> {
    let (mut optima, proven_optimal, _) = run_search(inst, budget, true)?;
    optima.sort();
    Ok(ExactAll { optima, proven_optimal })
}
