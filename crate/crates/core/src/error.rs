use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

/// Which clause of the transition rule failed for a move `u -> v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionFailure {
    MissingEdge,
    SourceEmpty,
    TargetOccupied,
}

impl std::fmt::Display for TransitionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TransitionFailure::MissingEdge => "edge not in graph",
            TransitionFailure::SourceEmpty => "no pebble at source",
            TransitionFailure::TargetOccupied => "target vertex occupied",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("endpoint filtered out: {0}")]
    EndpointFilteredOut(Vertex),
    #[error("degenerate grid: side length must be at least 1")]
    DegenerateGrid,

    #[error("vertex outside universe: {0}")]
    OutsideUniverse(Vertex),
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    #[error("cover expansion would be exponential: scope has {0} vertices (limit 20)")]
    CoverExpansionTooLarge(usize),
    #[error("universe too large for exhaustive enumeration: {size} > {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("occupancy state mismatch: {0}")]
    OccupancyMismatch(String),

    #[error("seed set violates constraints")]
    SeedViolatesConstraints,
    #[error("vertex {0} is not in the reduced vertex set")]
    NotInReducedSet(Vertex),
    #[error("infeasible seed: seed set is not independent")]
    InfeasibleSeed,

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("transition undefined at move {step} ({from} -> {to}): {reason}")]
    TransitionUndefined {
        step: usize,
        from: Vertex,
        to: Vertex,
        reason: TransitionFailure,
    },
    #[error("constraint breach at prefix {prefix}: scope {scope:?} over capacity {capacity}")]
    ConstraintBreach {
        prefix: usize,
        scope: Vec<Vertex>,
        capacity: u64,
    },
    #[error("move {0} -> {1} is not an edge of the reduced graph")]
    NotAReducedEdge(Vertex, Vertex),
    #[error("state budget exceeded ({0} states)")]
    StateBudgetExceeded(usize),
    #[error("oracle budget exceeded ({0} states)")]
    OracleBudgetExceeded(usize),
    #[error("no single-stage reduction: source and target vertices are not jointly independent")]
    NoSingleStageReduction,
    #[error("vertex set {0:?} is not independent")]
    NotIndependent(Vec<Vertex>),
    #[error("no intermediate parking: |W1 ∩ W2| = {available} < {pebbles} pebbles")]
    NoIntermediateParking { available: usize, pebbles: usize },
    #[error("plan does not reach the target: {0}")]
    GoalNotReached(String),
    #[error("lifted plan failed validation: {0}")]
    LiftValidation(String),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("gadget contract violated: {0}")]
    GadgetContract(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
