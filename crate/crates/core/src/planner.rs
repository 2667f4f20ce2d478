//! Pebble configurations, plans, and the solvers built on them.
//!
//! A plan is a word of directed moves, applied one pebble at a time. The
//! reduction pipeline solves plain pebble motion on a reduced graph and
//! lifts the result; [`oracle_cmapf`] searches the constrained problem on the
//! original graph directly and serves as ground truth.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::cmis::{multi_restart, CmisInstance};
use crate::constraints::ConstraintSet;
use crate::error::{Error, Result, TransitionFailure};
use crate::graph::{Digraph, Vertex, VertexSet};
use crate::reduction::{build_reduced, is_independent, ReducedGraph};

pub type PebbleId = u32;

/// Default state cap for [`solve_mapf`].
pub const DEFAULT_MAPF_STATE_CAP: usize = 5_000_000;
/// Default state cap for [`oracle_cmapf`].
pub const DEFAULT_ORACLE_STATE_CAP: usize = 2_000_000;

/// Injective placement of labelled pebbles on vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Configuration {
    placement: BTreeMap<PebbleId, Vertex>,
}

impl Configuration {
    pub fn new<I: IntoIterator<Item = (PebbleId, Vertex)>>(pairs: I) -> Result<Self> {
        let mut placement = BTreeMap::new();
        let mut used = VertexSet::new();
        for (p, v) in pairs {
            if placement.insert(p, v).is_some() {
                return Err(Error::InvalidConfiguration(format!("pebble {p} placed twice")));
            }
            if !used.insert(v) {
                return Err(Error::InvalidConfiguration(format!("vertex {v} holds two pebbles")));
            }
        }
        Ok(Configuration { placement })
    }

    pub fn len(&self) -> usize {
        self.placement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placement.is_empty()
    }

    pub fn position(&self, p: PebbleId) -> Option<Vertex> {
        self.placement.get(&p).copied()
    }

    pub fn pebble_at(&self, v: Vertex) -> Option<PebbleId> {
        self.placement.iter().find(|(_, &u)| u == v).map(|(&p, _)| p)
    }

    pub fn pebbles(&self) -> impl Iterator<Item = PebbleId> + '_ {
        self.placement.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PebbleId, Vertex)> + '_ {
        self.placement.iter().map(|(&p, &v)| (p, v))
    }

    /// The occupied vertex set `A(P)`.
    pub fn occupied(&self) -> VertexSet {
        self.placement.values().copied().collect()
    }

    fn positions(&self) -> Vec<Vertex> {
        self.placement.values().copied().collect()
    }

    fn with_positions(&self, positions: &[Vertex]) -> Configuration {
        Configuration {
            placement: self.placement.keys().copied().zip(positions.iter().copied()).collect(),
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, v)| format!("{p}@{v}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
}

impl Move {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        Move { from, to }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

/// A word of moves; the empty plan leaves every pebble in place.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Plan(pub Vec<Move>);

impl Plan {
    pub fn empty() -> Self {
        Plan(Vec::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (Vertex, Vertex)>>(pairs: I) -> Self {
        Plan(pairs.into_iter().map(|(u, v)| Move::new(u, v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.0.iter().map(|m| (m.from, m.to)).collect()
    }

    pub fn concat(mut self, other: Plan) -> Plan {
        self.0.extend(other.0);
        self
    }
}

fn transition(g: &Digraph, cfg: &Configuration, mv: Move, step: usize) -> Result<Configuration> {
    let fail = |reason| Error::TransitionUndefined {
        step,
        from: mv.from,
        to: mv.to,
        reason,
    };
    if !g.has_edge(mv.from, mv.to) {
        return Err(fail(TransitionFailure::MissingEdge));
    }
    let pebble = cfg
        .pebble_at(mv.from)
        .ok_or_else(|| fail(TransitionFailure::SourceEmpty))?;
    if cfg.pebble_at(mv.to).is_some() {
        return Err(fail(TransitionFailure::TargetOccupied));
    }
    let mut next = cfg.clone();
    next.placement.insert(pebble, mv.to);
    Ok(next)
}

/// `A[u, v]`: the pebble on `u` moves to the empty vertex `v`.
pub fn apply_move(g: &Digraph, cfg: &Configuration, mv: Move) -> Result<Configuration> {
    transition(g, cfg, mv, 0)
}

fn check_prefix(c: &ConstraintSet, cfg: &Configuration, prefix: usize) -> Result<()> {
    if let Some(k) = c.first_violation(&cfg.occupied())? {
        return Err(Error::ConstraintBreach {
            prefix,
            scope: k.scope().to_vec(),
            capacity: k.capacity(),
        });
    }
    Ok(())
}

/// Applies `plan` move by move. With `check`, the occupied set after every
/// prefix (the empty one included) must be admissible; a breach reports the
/// number of moves applied so far.
pub fn apply_plan(
    g: &Digraph,
    cfg: &Configuration,
    plan: &Plan,
    check: Option<&ConstraintSet>,
) -> Result<Configuration> {
    if let Some(c) = check {
        check_prefix(c, cfg, 0)?;
    }
    let mut cur = cfg.clone();
    for (i, &mv) in plan.moves().iter().enumerate() {
        cur = transition(g, &cur, mv, i)?;
        if let Some(c) = check {
            check_prefix(c, &cur, i + 1)?;
        }
    }
    Ok(cur)
}

/// A constrained pebble-motion problem. With `marked` set only that pebble's
/// target binds (motion planning); otherwise every pebble must reach its
/// own target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmapfInstance {
    pub graph: Digraph,
    pub constraints: ConstraintSet,
    pub source: Configuration,
    pub target: Configuration,
    pub marked: Option<PebbleId>,
}

impl CmapfInstance {
    pub fn new(
        graph: Digraph,
        constraints: ConstraintSet,
        source: Configuration,
        target: Configuration,
        marked: Option<PebbleId>,
    ) -> Result<Self> {
        for v in graph.vertices() {
            if !constraints.universe().contains(v) {
                return Err(Error::OutsideUniverse(v));
            }
        }
        if !source.pebbles().eq(target.pebbles()) {
            return Err(Error::InvalidConfiguration(
                "source and target place different pebbles".into(),
            ));
        }
        for v in source.occupied().iter().chain(target.occupied().iter()) {
            graph.check(v)?;
        }
        if let Some(p) = marked {
            if source.position(p).is_none() {
                return Err(Error::InvalidConfiguration(format!("marked pebble {p} is not placed")));
            }
        }
        Ok(CmapfInstance {
            graph,
            constraints,
            source,
            target,
            marked,
        })
    }

    /// Whether `cfg` satisfies the goal.
    pub fn is_goal(&self, cfg: &Configuration) -> bool {
        match self.marked {
            Some(p) => cfg.position(p) == self.target.position(p),
            None => cfg == &self.target,
        }
    }

    /// Target vertices that bind: all of them, or only the marked pebble's.
    pub fn binding_targets(&self) -> VertexSet {
        match self.marked {
            Some(p) => self.target.position(p).into_iter().collect(),
            None => self.target.occupied(),
        }
    }

    fn goal(&self, cfg: &Configuration) -> Goal {
        match self.marked {
            Some(p) => Goal::Marked {
                index: cfg.pebbles().position(|q| q == p).expect("marked pebble placed"),
                vertex: self.target.position(p).expect("marked pebble placed"),
            },
            None => Goal::Exact(self.target.positions()),
        }
    }
}

/// Replays `plan` from the instance source with constraint checking and
/// confirms the goal is reached.
pub fn validate_plan(inst: &CmapfInstance, plan: &Plan) -> Result<Configuration> {
    let end = apply_plan(&inst.graph, &inst.source, plan, Some(&inst.constraints))?;
    if !inst.is_goal(&end) {
        return Err(Error::GoalNotReached(format!("final configuration {end}")));
    }
    Ok(end)
}

/// Three-way solver verdict. `InfeasibleViaReduction` means only that the
/// reduced problem has no solution; the original instance may still be
/// solvable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Feasible(Plan),
    InfeasibleViaReduction,
    ProvenInfeasible,
}

impl Verdict {
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Feasible(_) => "FEASIBLE",
            Verdict::InfeasibleViaReduction => "INFEASIBLE_VIA_REDUCTION",
            Verdict::ProvenInfeasible => "PROVEN_INFEASIBLE",
        }
    }

    pub fn plan(&self) -> Option<&Plan> {
        match self {
            Verdict::Feasible(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Goal {
    Exact(Vec<Vertex>),
    Marked { index: usize, vertex: Vertex },
}

impl Goal {
    fn reached(&self, state: &[Vertex]) -> bool {
        match self {
            Goal::Exact(t) => state == t.as_slice(),
            Goal::Marked { index, vertex } => state[*index] == *vertex,
        }
    }
}

/// Breadth-first search over labelled placements. Returns `Ok(None)` when
/// the reachable state space is exhausted, `Err(cap)` past the cap.
fn search_states(
    g: &Digraph,
    start: Vec<Vertex>,
    goal: &Goal,
    constraints: Option<&ConstraintSet>,
    cap: usize,
) -> std::result::Result<Option<Plan>, usize> {
    let admissible = |state: &[Vertex]| match constraints {
        Some(c) => c.is_member(&state.iter().copied().collect()).unwrap_or(false),
        None => true,
    };
    if !admissible(&start) {
        return Ok(None);
    }
    if goal.reached(&start) {
        return Ok(Some(Plan::empty()));
    }
    let mut states = vec![start.clone()];
    let mut parent: Vec<(usize, Move)> = vec![(usize::MAX, Move::new(0, 0))];
    let mut index: HashMap<Vec<Vertex>, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(si) = queue.pop_front() {
        let state = states[si].clone();
        for (i, &u) in state.iter().enumerate() {
            for &v in g.successors(u) {
                if state.contains(&v) {
                    continue;
                }
                let mut next = state.clone();
                next[i] = v;
                if index.contains_key(&next) || !admissible(&next) {
                    continue;
                }
                if states.len() >= cap {
                    return Err(cap);
                }
                let ni = states.len();
                index.insert(next.clone(), ni);
                parent.push((si, Move::new(u, v)));
                let done = goal.reached(&next);
                states.push(next);
                if done {
                    let mut moves = Vec::new();
                    let mut cur = ni;
                    while cur != 0 {
                        let (p, mv) = parent[cur];
                        moves.push(mv);
                        cur = p;
                    }
                    moves.reverse();
                    return Ok(Some(Plan(moves)));
                }
                queue.push_back(ni);
            }
        }
    }
    Ok(None)
}

fn check_placement(g: &Digraph, cfg: &Configuration) -> Result<()> {
    for v in cfg.occupied() {
        g.check(v)?;
    }
    Ok(())
}

/// Shortest plan moving every pebble from `src` to its vertex in `dst` on an
/// unconstrained graph, or `None` when no plan exists.
pub fn solve_mapf(g: &Digraph, src: &Configuration, dst: &Configuration, cap: usize) -> Result<Option<Plan>> {
    check_placement(g, src)?;
    check_placement(g, dst)?;
    if !src.pebbles().eq(dst.pebbles()) {
        return Err(Error::InvalidConfiguration(
            "source and target place different pebbles".into(),
        ));
    }
    search_states(g, src.positions(), &Goal::Exact(dst.positions()), None, cap).map_err(Error::StateBudgetExceeded)
}

/// Expands every reduced move into its stored witness path.
pub fn lift_plan(rg: &ReducedGraph, plan: &Plan) -> Result<Plan> {
    let mut out = Vec::new();
    for mv in plan.moves() {
        let path = rg.lift(mv.from, mv.to).ok_or(Error::NotAReducedEdge(mv.from, mv.to))?;
        out.extend(path.windows(2).map(|w| Move::new(w[0], w[1])));
    }
    Ok(Plan(out))
}

/// Knobs for the reduction pipeline.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// State cap for the search on the reduced graph.
    pub state_cap: usize,
    /// Random restarts used to grow `W` when none is given.
    pub restarts: usize,
    pub base_seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            state_cap: DEFAULT_MAPF_STATE_CAP,
            restarts: 100,
            base_seed: 0,
        }
    }
}

fn ensure_independent(inst: &CmapfInstance, w: &VertexSet) -> Result<()> {
    if is_independent(&inst.graph, &inst.constraints, w)? {
        Ok(())
    } else {
        Err(Error::NotIndependent(w.to_vec()))
    }
}

/// Solves on `G_W` from `from` towards `goal`, lifts, and replays the lifted
/// plan on the original graph.
fn reduce_and_lift(
    inst: &CmapfInstance,
    w: &VertexSet,
    from: &Configuration,
    goal: &Goal,
    opts: &SolveOptions,
) -> Result<Option<Plan>> {
    let rg = build_reduced(&inst.graph, &inst.constraints, w)?;
    let reduced = rg.as_digraph();
    let Some(plan) =
        search_states(&reduced, from.positions(), goal, None, opts.state_cap).map_err(Error::StateBudgetExceeded)?
    else {
        return Ok(None);
    };
    let lifted = lift_plan(&rg, &plan)?;
    let end = apply_plan(&inst.graph, from, &lifted, Some(&inst.constraints))
        .map_err(|e| Error::LiftValidation(e.to_string()))?;
    if !goal.reached(&end.positions()) {
        return Err(Error::LiftValidation("lifted plan ends off target".into()));
    }
    Ok(Some(lifted))
}

/// Single-stage reduction: pick (or take) an independent `W` holding the
/// source and binding target vertices, solve on `G_W`, lift, validate.
pub fn solve_cmapf(inst: &CmapfInstance, w: Option<&VertexSet>, opts: &SolveOptions) -> Result<Verdict> {
    let seed = inst.source.occupied().union(&inst.binding_targets());
    let w = match w {
        Some(w) => {
            if !seed.is_subset(w) {
                return Err(Error::InvalidConfiguration(format!(
                    "W = {w} does not contain the source and target vertices {seed}"
                )));
            }
            ensure_independent(inst, w)?;
            w.clone()
        }
        None => {
            if !is_independent(&inst.graph, &inst.constraints, &seed)? {
                return Err(Error::NoSingleStageReduction);
            }
            if seed.is_empty() {
                return Ok(Verdict::Feasible(Plan::empty()));
            }
            let cmis = CmisInstance::new(inst.graph.clone(), inst.constraints.clone(), seed)?;
            multi_restart(&cmis, opts.restarts.max(1), opts.base_seed)?
                .best()
                .clone()
        }
    };
    if inst.source.is_empty() {
        return Ok(Verdict::Feasible(Plan::empty()));
    }
    let goal = inst.goal(&inst.source);
    Ok(match reduce_and_lift(inst, &w, &inst.source, &goal, opts)? {
        Some(plan) => Verdict::Feasible(plan),
        None => Verdict::InfeasibleViaReduction,
    })
}

/// Two reductions joined at an intermediate configuration parked in
/// `W1 ∩ W2`: the target itself when it fits there, otherwise the pebbles in
/// id order on the lowest common vertices.
pub fn two_stage_solve(inst: &CmapfInstance, w1: &VertexSet, w2: &VertexSet, opts: &SolveOptions) -> Result<Verdict> {
    let src = inst.source.occupied();
    if !src.is_subset(w1) {
        return Err(Error::InvalidConfiguration(format!(
            "W1 = {w1} does not contain the source {src}"
        )));
    }
    let dst = inst.binding_targets();
    if !dst.is_subset(w2) {
        return Err(Error::InvalidConfiguration(format!(
            "W2 = {w2} does not contain the target {dst}"
        )));
    }
    let common = w1.intersection(w2);
    if common.len() < inst.source.len() {
        return Err(Error::NoIntermediateParking {
            available: common.len(),
            pebbles: inst.source.len(),
        });
    }
    ensure_independent(inst, w1)?;
    ensure_independent(inst, w2)?;
    if inst.source.is_empty() {
        return Ok(Verdict::Feasible(Plan::empty()));
    }
    let parking = if inst.marked.is_none() && inst.target.occupied().is_subset(&common) {
        inst.target.clone()
    } else {
        inst.source
            .with_positions(&common.iter().take(inst.source.len()).collect::<Vec<_>>())
    };
    let Some(first) = reduce_and_lift(inst, w1, &inst.source, &Goal::Exact(parking.positions()), opts)? else {
        return Ok(Verdict::InfeasibleViaReduction);
    };
    let Some(second) = reduce_and_lift(inst, w2, &parking, &inst.goal(&parking), opts)? else {
        return Ok(Verdict::InfeasibleViaReduction);
    };
    let plan = first.concat(second);
    validate_plan(inst, &plan).map_err(|e| Error::LiftValidation(e.to_string()))?;
    Ok(Verdict::Feasible(plan))
}

/// Exhaustive breadth-first search over admissible configurations of the
/// original graph: a shortest consistent plan, or proof that none exists.
pub fn oracle_cmapf(inst: &CmapfInstance, cap: usize) -> Result<Verdict> {
    let goal = inst.goal(&inst.source);
    match search_states(
        &inst.graph,
        inst.source.positions(),
        &goal,
        Some(&inst.constraints),
        cap,
    ) {
        Ok(Some(plan)) => Ok(Verdict::Feasible(plan)),
        Ok(None) => Ok(Verdict::ProvenInfeasible),
        Err(n) => Err(Error::OracleBudgetExceeded(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cfg(pairs: &[(PebbleId, Vertex)]) -> Configuration {
        Configuration::new(pairs.iter().copied()).unwrap()
    }

    fn instance(
        (g, c): (Digraph, ConstraintSet),
        src: &[(PebbleId, Vertex)],
        dst: &[(PebbleId, Vertex)],
    ) -> CmapfInstance {
        CmapfInstance::new(g, c, cfg(src), cfg(dst), None).unwrap()
    }

    #[test]
    fn configuration_must_be_injective() {
        assert!(Configuration::new([(1, 2), (2, 2)]).is_err());
        assert!(Configuration::new([(1, 2), (1, 3)]).is_err());
    }

    #[test]
    fn single_move() {
        let (g, _) = fixtures::d();
        let next = apply_move(&g, &cfg(&[(1, 2)]), Move::new(2, 3)).unwrap();
        assert_eq!(next.position(1), Some(3));
    }

    #[test]
    fn undefined_transitions_name_the_clause() {
        let (g, _) = fixtures::d();
        let two = cfg(&[(1, 2), (2, 3)]);
        let reason = |r: Result<Configuration>| match r {
            Err(Error::TransitionUndefined { reason, .. }) => reason,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(
            reason(apply_move(&g, &two, Move::new(2, 3))),
            TransitionFailure::TargetOccupied
        );
        assert_eq!(
            reason(apply_move(&g, &two, Move::new(4, 5))),
            TransitionFailure::SourceEmpty
        );
        assert_eq!(
            reason(apply_move(&g, &two, Move::new(2, 4))),
            TransitionFailure::MissingEdge
        );
    }

    #[test]
    fn empty_plan_is_identity() {
        let (g, c) = fixtures::d();
        let a = cfg(&[(1, 2), (2, 4)]);
        assert_eq!(apply_plan(&g, &a, &Plan::empty(), Some(&c)).unwrap(), a);
    }

    #[test]
    fn consistent_single_pebble_plan() {
        let (g, c) = fixtures::d();
        let end = apply_plan(&g, &cfg(&[(1, 2)]), &Plan::from_pairs([(2, 3), (3, 4)]), Some(&c)).unwrap();
        assert_eq!(end.position(1), Some(4));
    }

    #[test]
    fn breach_reports_prefix_index() {
        let (g, c) = fixtures::d();
        // the start itself is inadmissible
        let err = apply_plan(&g, &cfg(&[(1, 1), (2, 4)]), &Plan::empty(), Some(&c)).unwrap_err();
        assert_eq!(
            err,
            Error::ConstraintBreach {
                prefix: 0,
                scope: vec![1, 4],
                capacity: 1
            }
        );
        // 2 -> 3 is fine, then 4 -> 5 is fine, then 5 -> 1 meets nothing, 3 -> 4 clashes with 1
        let plan = Plan::from_pairs([(4, 5), (5, 1), (2, 3), (3, 4)]);
        let err = apply_plan(&g, &cfg(&[(1, 2), (2, 4)]), &plan, Some(&c)).unwrap_err();
        assert_eq!(
            err,
            Error::ConstraintBreach {
                prefix: 4,
                scope: vec![1, 4],
                capacity: 1
            }
        );
    }

    #[test]
    fn mapf_on_two_vertex_reduced_graph() {
        let (g, c) = fixtures::d();
        let rg = build_reduced(&g, &c, &VertexSet::from([2, 4])).unwrap().as_digraph();
        let plan = solve_mapf(&rg, &cfg(&[(1, 2)]), &cfg(&[(1, 4)]), 1000).unwrap();
        assert_eq!(plan, Some(Plan::from_pairs([(2, 4)])));
        let swap = solve_mapf(&rg, &cfg(&[(1, 2), (2, 4)]), &cfg(&[(1, 4), (2, 2)]), 1000).unwrap();
        assert_eq!(swap, None);
    }

    #[test]
    fn mapf_rotation_on_three_cycle() {
        let (g, c) = fixtures::d_prime();
        let rg = build_reduced(&g, &c, &VertexSet::from([1, 3, 5])).unwrap().as_digraph();
        let src = cfg(&[(1, 1), (2, 3)]);
        let dst = cfg(&[(1, 3), (2, 5)]);
        let plan = solve_mapf(&rg, &src, &dst, 1000).unwrap().unwrap();
        assert_eq!(plan, Plan::from_pairs([(3, 5), (1, 3)]));
        assert_eq!(apply_plan(&rg, &src, &plan, None).unwrap(), dst);
    }

    #[test]
    fn mapf_state_cap() {
        let g = crate::graph::grid_graph(4).unwrap();
        let src = cfg(&[(1, 1), (2, 2), (3, 3)]);
        let dst = cfg(&[(1, 16), (2, 15), (3, 14)]);
        assert_eq!(solve_mapf(&g, &src, &dst, 10), Err(Error::StateBudgetExceeded(10)));
    }

    #[test]
    fn lifting_examples() {
        let (g, c) = fixtures::d();
        let rg = build_reduced(&g, &c, &VertexSet::from([2, 4])).unwrap();
        assert_eq!(
            lift_plan(&rg, &Plan::from_pairs([(2, 4)])).unwrap(),
            Plan::from_pairs([(2, 3), (3, 4)])
        );
        assert_eq!(
            lift_plan(&rg, &Plan::from_pairs([(4, 2)])).unwrap(),
            Plan::from_pairs([(4, 5), (5, 1), (1, 2)])
        );
        assert_eq!(lift_plan(&rg, &Plan::empty()).unwrap(), Plan::empty());
        assert_eq!(
            lift_plan(&rg, &Plan::from_pairs([(2, 5)])),
            Err(Error::NotAReducedEdge(2, 5))
        );
    }

    #[test]
    fn single_pebble_through_three_cycle_reduction() {
        let inst = instance(fixtures::d_prime(), &[(1, 1)], &[(1, 3)]);
        let w = VertexSet::from([1, 3, 5]);
        let v = solve_cmapf(&inst, Some(&w), &SolveOptions::default()).unwrap();
        assert_eq!(v, Verdict::Feasible(Plan::from_pairs([(1, 2), (2, 3)])));
        validate_plan(&inst, v.plan().unwrap()).unwrap();
    }

    #[test]
    fn source_equals_target_gives_empty_plan() {
        let inst = instance(fixtures::d(), &[(1, 2)], &[(1, 2)]);
        let v = solve_cmapf(&inst, None, &SolveOptions::default()).unwrap();
        assert_eq!(v, Verdict::Feasible(Plan::empty()));
    }

    #[test]
    fn swap_is_lost_by_the_two_vertex_reduction() {
        let inst = instance(fixtures::d(), &[(1, 2), (2, 4)], &[(1, 4), (2, 2)]);
        let w = VertexSet::from([2, 4]);
        assert_eq!(
            solve_cmapf(&inst, Some(&w), &SolveOptions::default()).unwrap(),
            Verdict::InfeasibleViaReduction
        );
    }

    #[test]
    fn explicit_w_must_be_independent_and_cover_endpoints() {
        let inst = instance(fixtures::d_prime(), &[(1, 2)], &[(1, 4)]);
        let opts = SolveOptions::default();
        assert_eq!(
            solve_cmapf(&inst, Some(&VertexSet::from([2, 4, 5])), &opts),
            Err(Error::NotIndependent(vec![2, 4, 5]))
        );
        assert!(solve_cmapf(&inst, Some(&VertexSet::from([1, 3, 5])), &opts).is_err());
    }

    #[test]
    fn seed_not_independent_needs_two_stages() {
        let inst = instance(fixtures::d(), &[(1, 1)], &[(1, 4)]);
        assert_eq!(
            solve_cmapf(&inst, None, &SolveOptions::default()),
            Err(Error::NoSingleStageReduction)
        );
    }

    #[test]
    fn two_stage_without_parking() {
        let inst = instance(fixtures::d_prime(), &[(1, 2)], &[(1, 3)]);
        let err = two_stage_solve(
            &inst,
            &VertexSet::from([2, 4]),
            &VertexSet::from([1, 3, 5]),
            &SolveOptions::default(),
        );
        assert_eq!(
            err,
            Err(Error::NoIntermediateParking {
                available: 0,
                pebbles: 1
            })
        );
    }

    #[test]
    fn two_stage_with_equal_sets_is_one_reduction() {
        let inst = instance(fixtures::d_prime(), &[(1, 1)], &[(1, 3)]);
        let w = VertexSet::from([1, 3, 5]);
        let opts = SolveOptions::default();
        let two = two_stage_solve(&inst, &w, &w, &opts).unwrap();
        assert_eq!(two, solve_cmapf(&inst, Some(&w), &opts).unwrap());
    }

    #[test]
    fn oracle_small_cases() {
        let inst = instance(fixtures::d(), &[(1, 2)], &[(1, 4)]);
        assert_eq!(
            oracle_cmapf(&inst, 1000).unwrap(),
            Verdict::Feasible(Plan::from_pairs([(2, 3), (3, 4)]))
        );
        let bad_start = instance(fixtures::d(), &[(1, 1), (2, 4)], &[(1, 1), (2, 4)]);
        assert_eq!(oracle_cmapf(&bad_start, 1000).unwrap(), Verdict::ProvenInfeasible);
    }

    #[test]
    fn marked_mode_ignores_other_targets() {
        let (g, c) = fixtures::d();
        let inst = CmapfInstance::new(g, c, cfg(&[(1, 2), (2, 5)]), cfg(&[(1, 4), (2, 5)]), Some(1)).unwrap();
        let Verdict::Feasible(plan) = oracle_cmapf(&inst, 10_000).unwrap() else {
            panic!()
        };
        let end = validate_plan(&inst, &plan).unwrap();
        assert_eq!(end.position(1), Some(4));
    }
}
