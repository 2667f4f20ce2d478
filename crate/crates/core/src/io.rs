//! Plain-text instance and plan files.
//!
//! Instance grammar, one directive per line, `#` starts a comment:
//!
//! ```text
//! nodes 1 2 3 4 5
//! grid 4
//! undirected
//! edge 1 2
//! constraint 1: 1 4
//! constraint 3: 1 2 3 weights 2 1 1
//! adjacency-constraints
//! seed 1 3
//! pebble 1 2 4
//! marked 1
//! ```
//!
//! `grid n` adds the n-by-n grid with its edges. `undirected` makes every
//! `edge` line add both directions. `adjacency-constraints` adds a unit pair
//! for every pair of adjacent vertices. `seed` lists the C-MIS seed set.
//! `pebble id src dst` places a pebble.
//!
//! Plan files hold a status line followed by one `u -> v` move per line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cmis::CmisInstance;
use crate::constraints::{CapacityConstraint, ConstraintSet};
use crate::error::{Error, Result};
use crate::graph::{grid_graph, Digraph, Vertex, VertexSet};
use crate::planner::{CmapfInstance, Configuration, Move, PebbleId, Plan, Verdict};

/// A parsed instance file. Pebbles are optional so the same format carries
/// plain C-MIS instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: Digraph,
    pub constraints: ConstraintSet,
    pub seed: VertexSet,
    /// `(id, source, target)` in id order.
    pub pebbles: Vec<(PebbleId, Vertex, Vertex)>,
    pub marked: Option<PebbleId>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| perr(line, format!("expected {what}, found `{tok}`")))
}

fn parse_ids(toks: &[&str], line: usize) -> Result<Vec<Vertex>> {
    toks.iter().map(|t| parse_num(t, line, "vertex id")).collect()
}

struct RawConstraint {
    line: usize,
    capacity: u64,
    scope: Vec<Vertex>,
    weights: Option<Vec<u64>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut nodes: Vec<Vertex> = Vec::new();
        let mut edges: Vec<(Vertex, Vertex, usize)> = Vec::new();
        let mut undirected = false;
        let mut adjacency = false;
        let mut raw_constraints = Vec::new();
        let mut seed = Vec::new();
        let mut pebbles: BTreeMap<PebbleId, (Vertex, Vertex)> = BTreeMap::new();
        let mut marked = None;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let args = &toks[1..];
            match toks[0] {
                "nodes" => nodes.extend(parse_ids(args, line)?),
                "grid" => {
                    let [n] = args else {
                        return Err(perr(line, "usage: grid <n>"));
                    };
                    let g = grid_graph(parse_num(n, line, "grid side")?).map_err(|e| perr(line, e.to_string()))?;
                    nodes.extend(g.vertices());
                    edges.extend(g.edges().map(|(u, v)| (u, v, line)));
                }
                "undirected" => {
                    if !args.is_empty() {
                        return Err(perr(line, "`undirected` takes no arguments"));
                    }
                    undirected = true;
                }
                "edge" => {
                    let [u, v] = args else {
                        return Err(perr(line, "usage: edge <u> <v>"));
                    };
                    edges.push((parse_num(u, line, "vertex id")?, parse_num(v, line, "vertex id")?, line));
                }
                "constraint" => raw_constraints.push(parse_constraint(content, line)?),
                "adjacency-constraints" => adjacency = true,
                "seed" => seed.extend(parse_ids(args, line)?),
                "pebble" => {
                    let [p, s, t] = args else {
                        return Err(perr(line, "usage: pebble <id> <src> <dst>"));
                    };
                    let p = parse_num(p, line, "pebble id")?;
                    let st = (parse_num(s, line, "vertex id")?, parse_num(t, line, "vertex id")?);
                    if pebbles.insert(p, st).is_some() {
                        return Err(perr(line, format!("pebble {p} declared twice")));
                    }
                }
                "marked" => {
                    let [p] = args else {
                        return Err(perr(line, "usage: marked <id>"));
                    };
                    marked = Some(parse_num(p, line, "pebble id")?);
                }
                other => return Err(perr(line, format!("unknown directive `{other}`"))),
            }
        }

        for &(u, v, line) in &edges {
            for x in [u, v] {
                if !nodes.contains(&x) {
                    return Err(perr(line, format!("edge endpoint {x} is not a declared node")));
                }
            }
            if u == v {
                return Err(perr(line, format!("self-loop on vertex {u}")));
            }
        }
        let mut all_edges: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        if undirected {
            all_edges.extend(edges.iter().map(|&(u, v, _)| (v, u)));
        }
        let graph = Digraph::new(nodes, all_edges).map_err(|e| perr(0, e.to_string()))?;

        let mut constraints = Vec::new();
        if adjacency {
            constraints.extend(ConstraintSet::adjacency(&graph).constraints().iter().cloned());
        }
        for rc in raw_constraints {
            if let Some(&v) = rc.scope.iter().find(|&&v| !graph.contains(v)) {
                return Err(perr(rc.line, format!("constraint vertex {v} is not a declared node")));
            }
            constraints.push(
                CapacityConstraint::new(rc.scope, rc.capacity, rc.weights).map_err(|e| perr(rc.line, e.to_string()))?,
            );
        }
        let constraints = ConstraintSet::new(graph.vertex_set(), constraints).map_err(|e| perr(0, e.to_string()))?;

        let seed: VertexSet = seed.into_iter().collect();
        if let Some(v) = seed.iter().find(|&v| !graph.contains(v)) {
            return Err(perr(0, format!("seed vertex {v} is not a declared node")));
        }
        for (&p, &(s, t)) in &pebbles {
            if !graph.contains(s) || !graph.contains(t) {
                return Err(perr(0, format!("pebble {p} uses an undeclared node")));
            }
        }
        if let Some(p) = marked {
            if !pebbles.contains_key(&p) {
                return Err(perr(0, format!("marked pebble {p} is not declared")));
            }
        }
        let file = InstanceFile {
            graph,
            constraints,
            seed,
            pebbles: pebbles.into_iter().map(|(p, (s, t))| (p, s, t)).collect(),
            marked,
        };
        file.source().map_err(|e| perr(0, e.to_string()))?;
        file.target().map_err(|e| perr(0, e.to_string()))?;
        Ok(file)
    }

    /// Canonical text: explicit node and edge lists, one constraint per line.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let nodes: Vec<String> = self.graph.vertices().map(|v| v.to_string()).collect();
        writeln!(out, "nodes {}", nodes.join(" ")).unwrap();
        for (u, v) in self.graph.edges() {
            writeln!(out, "edge {u} {v}").unwrap();
        }
        for c in self.constraints.constraints() {
            let scope: Vec<String> = c.scope().iter().map(|v| v.to_string()).collect();
            write!(out, "constraint {}: {}", c.capacity(), scope.join(" ")).unwrap();
            if !c.has_unit_weights() {
                let w: Vec<String> = c.weights().iter().map(|w| w.to_string()).collect();
                write!(out, " weights {}", w.join(" ")).unwrap();
            }
            out.push('\n');
        }
        if !self.seed.is_empty() {
            let s: Vec<String> = self.seed.iter().map(|v| v.to_string()).collect();
            writeln!(out, "seed {}", s.join(" ")).unwrap();
        }
        for &(p, s, t) in &self.pebbles {
            writeln!(out, "pebble {p} {s} {t}").unwrap();
        }
        if let Some(p) = self.marked {
            writeln!(out, "marked {p}").unwrap();
        }
        out
    }

    pub fn source(&self) -> Result<Configuration> {
        Configuration::new(self.pebbles.iter().map(|&(p, s, _)| (p, s)))
    }

    pub fn target(&self) -> Result<Configuration> {
        Configuration::new(self.pebbles.iter().map(|&(p, _, t)| (p, t)))
    }

    pub fn to_cmapf(&self) -> Result<CmapfInstance> {
        CmapfInstance::new(
            self.graph.clone(),
            self.constraints.clone(),
            self.source()?,
            self.target()?,
            self.marked,
        )
    }

    pub fn to_cmis(&self) -> Result<CmisInstance> {
        CmisInstance::new(self.graph.clone(), self.constraints.clone(), self.seed.clone())
    }

    pub fn from_cmapf(inst: &CmapfInstance) -> Self {
        InstanceFile {
            graph: inst.graph.clone(),
            constraints: inst.constraints.clone(),
            seed: VertexSet::new(),
            pebbles: inst
                .source
                .iter()
                .map(|(p, s)| (p, s, inst.target.position(p).expect("same pebbles")))
                .collect(),
            marked: inst.marked,
        }
    }

    pub fn from_cmis(inst: &CmisInstance) -> Self {
        InstanceFile {
            graph: inst.graph().clone(),
            constraints: inst.constraints().clone(),
            seed: inst.seed().clone(),
            pebbles: Vec::new(),
            marked: None,
        }
    }
}

fn parse_constraint(content: &str, line: usize) -> Result<RawConstraint> {
    let rest = content["constraint".len()..].trim();
    let (cap, body) = rest
        .split_once(':')
        .ok_or_else(|| perr(line, "usage: constraint <k>: <v>... [weights <w>...]"))?;
    let capacity = parse_num(cap.trim(), line, "capacity")?;
    let toks: Vec<&str> = body.split_whitespace().collect();
    let (scope, weights) = match toks.iter().position(|&t| t == "weights") {
        Some(i) => (&toks[..i], Some(&toks[i + 1..])),
        None => (&toks[..], None),
    };
    let scope = parse_ids(scope, line)?;
    let weights = weights
        .map(|ws| {
            ws.iter()
                .map(|w| parse_num(w, line, "weight"))
                .collect::<Result<Vec<u64>>>()
        })
        .transpose()?;
    if scope.is_empty() {
        return Err(perr(line, "constraint scope is empty"));
    }
    Ok(RawConstraint {
        line,
        capacity,
        scope,
        weights,
    })
}

/// A plan file: a status line and, for feasible plans, the moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanFile {
    pub status: String,
    pub plan: Plan,
}

impl PlanFile {
    pub fn from_verdict(v: &Verdict) -> Self {
        PlanFile {
            status: v.status().to_string(),
            plan: v.plan().cloned().unwrap_or_default(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut status = None;
        let mut moves = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if status.is_none() {
                match content {
                    "FEASIBLE" | "INFEASIBLE_VIA_REDUCTION" | "PROVEN_INFEASIBLE" => {
                        status = Some(content.to_string());
                        continue;
                    }
                    _ => return Err(perr(line, format!("expected a status line, found `{content}`"))),
                }
            }
            let (u, v) = content
                .split_once("->")
                .ok_or_else(|| perr(line, "expected `u -> v`"))?;
            moves.push(Move::new(
                parse_num(u.trim(), line, "vertex id")?,
                parse_num(v.trim(), line, "vertex id")?,
            ));
        }
        let status = status.ok_or_else(|| perr(0, "missing status line"))?;
        Ok(PlanFile {
            status,
            plan: Plan(moves),
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.status);
        for m in self.plan.moves() {
            writeln!(out, "{m}").unwrap();
        }
        out
    }
}
