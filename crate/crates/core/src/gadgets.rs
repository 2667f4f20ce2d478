//! Hardness gadgets used as instance generators: 3-SAT to constrained motion
//! planning, and classical maximum independent set to C-MIS.

use std::fmt;

use crate::cmis::CmisInstance;
use crate::constraints::{CapacityConstraint, ConstraintSet};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Vertex, VertexSet};
use crate::planner::{CmapfInstance, Configuration, PebbleId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// DIMACS encoding: `i` or `-i`.
    pub fn from_dimacs(x: i64) -> Option<Self> {
        match x {
            0 => None,
            x => Some(Literal {
                var: x.unsigned_abs() as usize,
                positive: x > 0,
            }),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

/// CNF formula with clauses of one to three literals over variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            if clause.is_empty() || clause.len() > 3 {
                return Err(Error::InvalidFormula(format!(
                    "clause {} has {} literals (expected 1 to 3)",
                    j + 1,
                    clause.len()
                )));
            }
            if let Some(l) = clause.iter().find(|l| l.var == 0 || l.var > variable_count) {
                return Err(Error::InvalidFormula(format!(
                    "variable {} outside 1..={variable_count}",
                    l.var
                )));
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// `assignment[i - 1]` is the value of variable `i`.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| assignment.get(l.var - 1).copied() == Some(l.positive)))
    }

    /// First satisfying assignment in truth-table order, if any.
    pub fn satisfying_assignment(&self) -> Option<Vec<bool>> {
        let n = self.variable_count;
        (0u64..1 << n)
            .map(|bits| (0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.evaluate(a))
    }

    pub fn is_satisfiable(&self) -> bool {
        self.satisfying_assignment().is_some()
    }

    /// Parses the DIMACS CNF subset: comment lines, a `p cnf n m` header and
    /// clauses terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(parse_err(lineno, "expected `p cnf <vars> <clauses>`".into()));
                }
                let n = parts[2]
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad variable count".into()))?;
                let m = parts[3]
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad clause count".into()))?;
                header = Some((n, m));
                continue;
            }
            if header.is_none() {
                return Err(parse_err(lineno, "clause before header".into()));
            }
            for tok in line.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad literal `{tok}`")))?;
                match Literal::from_dimacs(x) {
                    Some(l) => {
                        current.push(l);
                        if current.len() > 3 {
                            return Err(Error::InvalidFormula(format!(
                                "clause {} has more than 3 literals",
                                clauses.len() + 1
                            )));
                        }
                    }
                    None => clauses.push(std::mem::take(&mut current)),
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p cnf` header".into()))?;
        if clauses.len() != m {
            return Err(Error::InvalidFormula(format!(
                "header announces {m} clauses, found {}",
                clauses.len()
            )));
        }
        CnfFormula::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let x = l.var as i64;
                out.push_str(&format!("{} ", if l.positive { x } else { -x }));
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clauses: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c.iter().map(Literal::to_string).collect();
                format!("({})", lits.join(" | "))
            })
            .collect();
        f.write_str(&clauses.join(" & "))
    }
}

/// Node roles of a SAT gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatLayout {
    pub s: Vertex,
    pub d1: Vertex,
    /// Clause nodes per clause, one per literal, in clause order.
    pub clause_nodes: Vec<Vec<Vertex>>,
    pub t: Vertex,
    /// `(o_i, x_i, !x_i)` for each variable `i`.
    pub variables: Vec<(Vertex, Vertex, Vertex)>,
}

impl SatLayout {
    fn literal_node(&self, l: Literal) -> Vertex {
        let (_, x, nx) = self.variables[l.var - 1];
        if l.positive {
            x
        } else {
            nx
        }
    }
}

/// The motion-planning instance produced from a formula, with its layout.
#[derive(Debug, Clone)]
pub struct SatGadget {
    pub formula: CnfFormula,
    pub layout: SatLayout,
    pub instance: CmapfInstance,
}

/// Pebble id of the marked pebble in a SAT gadget; obstacles use `1..=n`.
pub const SAT_MARKED_PEBBLE: PebbleId = 0;

/// Builds the motion-planning gadget for `f`.
///
/// Numbering: `s = 0`, `d1 = 1`, the clause nodes in clause order, `t`, then
/// `o_i, x_i, !x_i` for each variable. The marked pebble starts on `s` and
/// must reach `t`; obstacle `i` starts on `o_i`. Leaving `d1` requires every
/// obstacle to have left its `o_i`, and a clause node is blocked while the
/// obstacle sits on the node of the same literal.
pub fn sat_to_cmp(f: &CnfFormula) -> Result<SatGadget> {
    let s = 0;
    let d1 = 1;
    let mut next = 2;
    let mut clause_nodes = Vec::with_capacity(f.clauses.len());
    for c in &f.clauses {
        clause_nodes.push((next..next + c.len()).collect::<Vec<_>>());
        next += c.len();
    }
    let t = next;
    next += 1;
    let variables: Vec<_> = (0..f.variable_count)
        .map(|i| (next + 3 * i, next + 3 * i + 1, next + 3 * i + 2))
        .collect();
    let layout = SatLayout {
        s,
        d1,
        clause_nodes,
        t,
        variables,
    };

    let mut edges = vec![(s, d1)];
    let mut prev = vec![d1];
    for layer in &layout.clause_nodes {
        edges.extend(prev.iter().flat_map(|&u| layer.iter().map(move |&v| (u, v))));
        prev = layer.clone();
    }
    edges.extend(prev.iter().map(|&u| (u, t)));
    for &(o, x, nx) in &layout.variables {
        edges.push((o, x));
        edges.push((o, nx));
    }
    let node_count = t + 1 + 3 * f.variable_count;
    let graph = Digraph::new(0..node_count, edges)?;

    let mut pairs: Vec<(VertexSet, u64)> = Vec::new();
    for (clause, nodes) in f.clauses.iter().zip(&layout.clause_nodes) {
        for (&l, &c) in clause.iter().zip(nodes) {
            pairs.push((VertexSet::from([c, layout.literal_node(l)]), 1));
        }
    }
    for &(o, _, _) in &layout.variables {
        pairs.push((VertexSet::from([d1, o]), 1));
    }
    let constraints = ConstraintSet::from_pairs(graph.vertex_set(), pairs)?;

    let obstacles = layout
        .variables
        .iter()
        .enumerate()
        .map(|(i, &(o, _, _))| (i as PebbleId + 1, o));
    let source = Configuration::new(std::iter::once((SAT_MARKED_PEBBLE, s)).chain(obstacles.clone()))?;
    let target = Configuration::new(std::iter::once((SAT_MARKED_PEBBLE, t)).chain(obstacles))?;
    let instance = CmapfInstance::new(graph, constraints, source, target, Some(SAT_MARKED_PEBBLE))?;
    Ok(SatGadget {
        formula: f.clone(),
        layout,
        instance,
    })
}

/// Reads a truth assignment off the obstacle positions: an obstacle on the
/// `x_i` node sets `x_i` false, one on `!x_i` sets it true.
pub fn decode_assignment(gadget: &SatGadget, final_cfg: &Configuration) -> Result<Vec<bool>> {
    gadget
        .layout
        .variables
        .iter()
        .enumerate()
        .map(|(i, &(o, x, nx))| {
            let p = i as PebbleId + 1;
            match final_cfg.position(p) {
                Some(v) if v == x => Ok(false),
                Some(v) if v == nx => Ok(true),
                Some(v) if v == o => Err(Error::GadgetContract(format!("obstacle {p} never left o_{}", i + 1))),
                other => Err(Error::GadgetContract(format!(
                    "obstacle {p} at unexpected position {other:?}"
                ))),
            }
        })
        .collect()
}

/// Undirected graph for the classical maximum independent set problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisInstance {
    graph: Digraph,
}

impl MisInstance {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Ok(MisInstance {
            graph: Digraph::undirected(vertices, edges)?,
        })
    }

    /// Wraps a graph whose edge set is symmetric.
    pub fn from_graph(graph: Digraph) -> Result<Self> {
        if let Some((u, v)) = graph.edges().find(|&(u, v)| !graph.has_edge(v, u)) {
            return Err(Error::GadgetContract(format!("edge {u} -> {v} has no reverse")));
        }
        Ok(MisInstance { graph })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Undirected edges with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.graph.edges().filter(|&(u, v)| u < v)
    }

    /// Exhaustive maximum independent set size.
    pub fn brute_force_mis(&self) -> usize {
        let vs: Vec<Vertex> = self.graph.vertices().collect();
        assert!(vs.len() <= 24, "brute force limited to 24 vertices");
        (0u32..1 << vs.len())
            .filter(|&mask| {
                self.edges().all(|(u, v)| {
                    let bit = |x| {
                        vs.iter()
                            .position(|&y| y == x)
                            .map(|i| mask >> i & 1 == 1)
                            .unwrap_or(false)
                    };
                    !(bit(u) && bit(v))
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }
}

/// C-MIS instance built from a classical MIS instance, with its hub vertex.
#[derive(Debug, Clone)]
pub struct MisGadget {
    pub hub: Vertex,
    pub instance: CmisInstance,
}

/// Adds a hub adjacent in both directions to every vertex, a unit pair
/// constraint per original edge, and one knapsack over all vertices with
/// unit weights, hub weight 2 and capacity `k`. The transformed instance
/// has an independent set of size `k` avoiding the hub iff the original
/// graph has an independent set of size `k`.
pub fn mis_to_cmis(m: &MisInstance, k: u64) -> Result<MisGadget> {
    let g = &m.graph;
    let hub = g.vertices().max().map_or(0, |v| v + 1);
    let vertices: Vec<Vertex> = g.vertices().chain(std::iter::once(hub)).collect();
    let edges = g.edges().chain(g.vertices().flat_map(|v| [(v, hub), (hub, v)]));
    let graph = Digraph::new(vertices.iter().copied(), edges)?;

    let mut constraints = m
        .edges()
        .map(|(u, v)| CapacityConstraint::pair(vec![u, v], 1))
        .collect::<Result<Vec<_>>>()?;
    let weights = vertices.iter().map(|&v| if v == hub { 2 } else { 1 }).collect();
    constraints.push(CapacityConstraint::new(vertices.clone(), k, Some(weights))?);
    let constraints = ConstraintSet::new(graph.vertex_set(), constraints)?;
    let instance = CmisInstance::new(graph, constraints, VertexSet::new())?;
    Ok(MisGadget { hub, instance })
}
