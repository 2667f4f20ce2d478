//! Command-line front end. [`run`] executes a parsed [`Cli`] against the
//! given output streams and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cmis::{exact_cmis, maximal_independent, multi_restart, CmisInstance, SelectionRule};
use crate::error::Error;
use crate::gadgets::{mis_to_cmis, sat_to_cmp, CnfFormula, MisInstance};
use crate::graph::{Vertex, VertexSet};
use crate::io::{InstanceFile, PlanFile};
use crate::planner::{
    oracle_cmapf, solve_cmapf, two_stage_solve, validate_plan, SolveOptions, Verdict, DEFAULT_MAPF_STATE_CAP,
    DEFAULT_ORACLE_STATE_CAP,
};
use crate::reduction::build_reduced;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_ADMISSIBLE: i32 = 3;
pub const EXIT_INFEASIBLE_VIA_REDUCTION: i32 = 4;
pub const EXIT_PROVEN_INFEASIBLE: i32 = 5;
pub const EXIT_INVALID_PLAN: i32 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "cmapf",
    version,
    about = "Constrained multi-agent path finding via graph reduction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the reduced graph over W and report whether W is independent.
    Reduce {
        instance: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_parser = parse_vertex_list)]
        w: VertexSet,
    },
    /// Grow independent sets and print one CSV row per run.
    Cmis {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Rule::Random)]
        rule: Rule,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append a row from the exact solver.
        #[arg(long)]
        exact: bool,
        /// Time budget in seconds for the exact solver.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Solve through a reduction (default) or with the exhaustive oracle.
    Solve {
        instance: PathBuf,
        #[arg(long, value_parser = parse_vertex_list, conflicts_with_all = ["two_stage", "oracle"])]
        w: Option<VertexSet>,
        /// Two sets `W1;W2`, each comma-separated.
        #[arg(long, value_parser = parse_two_stage, conflicts_with = "oracle")]
        two_stage: Option<(VertexSet, VertexSet)>,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        state_cap: Option<usize>,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the plan file here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Replay a plan with constraint checking.
    Validate { instance: PathBuf, plan: PathBuf },
    /// Emit a gadget instance file.
    Gadget {
        #[command(subcommand)]
        kind: GadgetKind,
    },
    /// Grid benchmark table: random best-of-runs, greedy degree, exact.
    BenchGrid {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest side solved exactly.
        #[arg(long, default_value_t = 5)]
        exact_max: usize,
        /// Time budget in seconds per exact solve.
        #[arg(long, default_value_t = 600.0)]
        budget: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GadgetKind {
    /// 3-SAT formula (DIMACS CNF) to a motion-planning instance.
    Sat {
        dimacs: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Undirected graph instance to a C-MIS instance with a hub vertex.
    Mis {
        instance: PathBuf,
        /// Knapsack capacity of the hub constraint.
        #[arg(long)]
        capacity: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Random,
    GreedyPsi,
    GreedyDegree,
}

fn parse_vertex_list(s: &str) -> Result<VertexSet, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Vertex>().map_err(|_| format!("bad vertex id `{t}`")))
        .collect()
}

fn parse_two_stage(s: &str) -> Result<(VertexSet, VertexSet), String> {
    let (a, b) = s.split_once(';').ok_or("expected `W1;W2`")?;
    Ok((parse_vertex_list(a)?, parse_vertex_list(b)?))
}

/// Failure carrying its exit code.
struct Exit(i32, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidFormula(_) | Error::UnknownVertex(_) => EXIT_INPUT,
            _ => EXIT_FAILURE,
        };
        Exit(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<InstanceFile, Exit> {
    InstanceFile::parse(&read(path)?).map_err(|e| Exit(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Exit> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Exit(EXIT_FAILURE, format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Exit(EXIT_FAILURE, e.to_string())),
    }
}

fn join(set: &VertexSet, sep: &str) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn budget(secs: Option<f64>) -> Result<Option<Duration>, Exit> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|e| Exit(EXIT_INPUT, format!("bad budget: {e}"))))
        .transpose()
}

/// Runs a command; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Reduce { instance, w } => cmd_reduce(&instance, &w, out),
        Command::Cmis {
            instance,
            rule,
            runs,
            seed,
            exact,
            budget,
        } => cmd_cmis(&instance, rule, runs, seed, exact, budget, out),
        Command::Solve {
            instance,
            w,
            two_stage,
            oracle,
            state_cap,
            runs,
            seed,
            out: path,
        } => cmd_solve(
            &instance,
            w,
            two_stage,
            oracle,
            state_cap,
            runs,
            seed,
            path.as_deref(),
            out,
        ),
        Command::Validate { instance, plan } => cmd_validate(&instance, &plan, out),
        Command::Gadget { kind } => cmd_gadget(kind, out),
        Command::BenchGrid {
            n_max,
            runs,
            seed,
            exact_max,
            budget,
        } => cmd_bench_grid(n_max, runs, seed, exact_max, budget, out),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn cmd_reduce(path: &Path, w: &VertexSet, out: &mut dyn Write) -> Result<i32, Exit> {
    let file = load_instance(path)?;
    for v in w {
        file.graph.check(v)?;
    }
    let io = |e: std::io::Error| Exit(EXIT_FAILURE, e.to_string());
    writeln!(out, "W = {w}").map_err(io)?;
    if !file.constraints.is_member(w)? {
        let k = file
            .constraints
            .first_violation(w)?
            .expect("non-member has a violation");
        writeln!(
            out,
            "NOT ADMISSIBLE: constraint {:?} capacity {}",
            k.scope(),
            k.capacity()
        )
        .map_err(io)?;
        return Ok(EXIT_NOT_ADMISSIBLE);
    }
    if w.is_empty() {
        writeln!(out, "INDEPENDENT").map_err(io)?;
        return Ok(EXIT_OK);
    }
    let rg = build_reduced(&file.graph, &file.constraints, w)?;
    for (u, v) in rg.edges() {
        let lift = rg.lift(u, v).expect("edge has a lift");
        let path: Vec<String> = lift.iter().map(|x| x.to_string()).collect();
        writeln!(out, "({u},{v}) [{}]", path.join("-")).map_err(io)?;
    }
    if rg.is_strongly_connected() {
        writeln!(out, "INDEPENDENT").map_err(io)?;
        Ok(EXIT_OK)
    } else {
        let missing: Vec<String> = w
            .iter()
            .flat_map(|u| w.iter().filter(move |&v| v != u).map(move |v| (u, v)))
            .filter(|&(u, v)| !rg.has_edge(u, v))
            .map(|(u, v)| format!("({u},{v})"))
            .collect();
        writeln!(out, "NOT INDEPENDENT, missing {}", missing.join(" ")).map_err(io)?;
        Ok(EXIT_FAILURE)
    }
}

fn cmd_cmis(
    path: &Path,
    rule: Rule,
    runs: usize,
    seed: u64,
    exact: bool,
    budget_secs: Option<f64>,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let inst = load_instance(path)?.to_cmis()?;
    let limit = budget(budget_secs)?;
    let mut csv = String::from("run_index,cardinality,vertex_list,status\n");
    let rows: Vec<VertexSet> = match rule {
        Rule::Random => multi_restart(&inst, runs, seed)?.runs,
        Rule::GreedyPsi => vec![maximal_independent(&inst, SelectionRule::GreedyPsi)?],
        Rule::GreedyDegree => vec![maximal_independent(&inst, SelectionRule::GreedyDegree)?],
    };
    for (i, set) in rows.iter().enumerate() {
        csv.push_str(&format!("{i},{},{},HEURISTIC\n", set.len(), join(set, " ")));
    }
    if exact {
        let res = exact_cmis(&inst, limit)?;
        let status = if res.proven_optimal { "PROVEN" } else { "UNPROVEN" };
        csv.push_str(&format!("exact,{},{},{status}\n", res.best.len(), join(&res.best, " ")));
    }
    emit(out, None, &csv)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    path: &Path,
    w: Option<VertexSet>,
    two_stage: Option<(VertexSet, VertexSet)>,
    oracle: bool,
    state_cap: Option<usize>,
    runs: usize,
    seed: u64,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let inst = load_instance(path)?.to_cmapf()?;
    let verdict = if oracle {
        oracle_cmapf(&inst, state_cap.unwrap_or(DEFAULT_ORACLE_STATE_CAP))?
    } else {
        let opts = SolveOptions {
            state_cap: state_cap.unwrap_or(DEFAULT_MAPF_STATE_CAP),
            restarts: runs,
            base_seed: seed,
        };
        match two_stage {
            Some((w1, w2)) => two_stage_solve(&inst, &w1, &w2, &opts)?,
            None => solve_cmapf(&inst, w.as_ref(), &opts)?,
        }
    };
    if let Verdict::Feasible(plan) = &verdict {
        validate_plan(&inst, plan).map_err(|e| Exit(EXIT_FAILURE, format!("internal: emitted plan invalid: {e}")))?;
    }
    emit(out, out_path, &PlanFile::from_verdict(&verdict).serialize())?;
    Ok(match verdict {
        Verdict::Feasible(_) => EXIT_OK,
        Verdict::InfeasibleViaReduction => EXIT_INFEASIBLE_VIA_REDUCTION,
        Verdict::ProvenInfeasible => EXIT_PROVEN_INFEASIBLE,
    })
}

fn cmd_validate(inst_path: &Path, plan_path: &Path, out: &mut dyn Write) -> Result<i32, Exit> {
    let inst = load_instance(inst_path)?.to_cmapf()?;
    let plan =
        PlanFile::parse(&read(plan_path)?).map_err(|e| Exit(EXIT_INPUT, format!("{}: {e}", plan_path.display())))?;
    let io = |e: std::io::Error| Exit(EXIT_FAILURE, e.to_string());
    match validate_plan(&inst, &plan.plan) {
        Ok(_) => {
            writeln!(out, "VALID").map_err(io)?;
            Ok(EXIT_OK)
        }
        Err(e @ (Error::TransitionUndefined { .. } | Error::ConstraintBreach { .. } | Error::GoalNotReached(_))) => {
            let line = match &e {
                Error::TransitionUndefined { step, from, to, reason } => {
                    format!("INVALID at move {step} ({from} -> {to}): transition undefined: {reason}")
                }
                Error::ConstraintBreach {
                    prefix,
                    scope,
                    capacity,
                } => {
                    format!("INVALID at prefix {prefix}: constraint {scope:?} capacity {capacity} exceeded")
                }
                other => format!("INVALID: {other}"),
            };
            writeln!(out, "{line}").map_err(io)?;
            Ok(EXIT_INVALID_PLAN)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_gadget(kind: GadgetKind, out: &mut dyn Write) -> Result<i32, Exit> {
    match kind {
        GadgetKind::Sat { dimacs, out: path } => {
            let formula = CnfFormula::parse_dimacs(&read(&dimacs)?)
                .map_err(|e| Exit(EXIT_INPUT, format!("{}: {e}", dimacs.display())))?;
            let gadget = sat_to_cmp(&formula)?;
            emit(
                out,
                path.as_deref(),
                &InstanceFile::from_cmapf(&gadget.instance).serialize(),
            )?;
        }
        GadgetKind::Mis {
            instance,
            capacity,
            out: path,
        } => {
            let file = load_instance(&instance)?;
            let m = MisInstance::from_graph(file.graph).map_err(|e| Exit(EXIT_INPUT, e.to_string()))?;
            let gadget = mis_to_cmis(&m, capacity)?;
            emit(
                out,
                path.as_deref(),
                &InstanceFile::from_cmis(&gadget.instance).serialize(),
            )?;
        }
    }
    Ok(EXIT_OK)
}

/// One row of the grid benchmark.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRow {
    pub n: usize,
    pub random_best: usize,
    pub greedy_degree: usize,
    /// `(cardinality, proven)` when solved exactly.
    pub exact: Option<(usize, bool)>,
}

/// Computes the grid benchmark rows for sides `2..=n_max`.
pub fn bench_grid(
    n_max: usize,
    runs: usize,
    seed: u64,
    exact_max: usize,
    budget: Option<Duration>,
) -> crate::Result<Vec<GridRow>> {
    (2..=n_max)
        .map(|n| {
            let inst = CmisInstance::grid(n)?;
            let random_best = multi_restart(&inst, runs, seed)?.best().len();
            let greedy_degree = maximal_independent(&inst, SelectionRule::GreedyDegree)?.len();
            let exact = if n <= exact_max {
                let r = exact_cmis(&inst, budget)?;
                Some((r.best.len(), r.proven_optimal))
            } else {
                None
            };
            Ok(GridRow {
                n,
                random_best,
                greedy_degree,
                exact,
            })
        })
        .collect()
}

fn cmd_bench_grid(
    n_max: usize,
    runs: usize,
    seed: u64,
    exact_max: usize,
    budget_secs: f64,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let rows = bench_grid(n_max, runs, seed, exact_max, budget(Some(budget_secs))?)?;
    let mut csv = String::from("n,random_best,greedy_degree,exact\n");
    for r in rows {
        let exact = match r.exact {
            Some((k, true)) => k.to_string(),
            Some((k, false)) => format!(">={k}"),
            None => String::new(),
        };
        csv.push_str(&format!("{},{},{},{exact}\n", r.n, r.random_best, r.greedy_degree));
    }
    emit(out, None, &csv)?;
    Ok(EXIT_OK)
}
