//! Text instance format and JSON solution output.
//!
//! ```text
//! c comment
//! p flex <n> <m> [k]
//! v <id> s|u        (optional, vertices default to safe)
//! e <u> <v> [s|u]   (edge ids follow line order, default safe)
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::feasibility::{Instance, Problem, Solution};
use crate::graph::{EdgeId, LabeledGraph};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| perr(line, format!("bad {what} {tok:?}")))
}

fn parse_flag(tok: Option<&str>, line: usize) -> Result<bool> {
    match tok {
        None | Some("s") => Ok(true),
        Some("u") => Ok(false),
        Some(t) => Err(perr(line, format!("flag must be s or u, got {t:?}"))),
    }
}

/// Parses an instance. A `k` given in the header is used unless `k_override`
/// is set; FGC always runs with `k = 1`.
pub fn parse_instance(text: &str, problem: Problem, k_override: Option<usize>) -> Result<Instance> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph = LabeledGraph::new(0);
    let mut seen = BTreeSet::new();
    let mut edges_read = 0;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                if toks.next() != Some("flex") {
                    return Err(perr(line, "header must start with `p flex`"));
                }
                let n = parse_num(toks.next(), line, "vertex count")?;
                let m = parse_num(toks.next(), line, "edge count")?;
                let k = match toks.next() {
                    Some(t) => parse_num(Some(t), line, "k")?,
                    None => 1,
                };
                header = Some((n, m, k));
                graph = LabeledGraph::new(n);
            }
            "v" | "e" if header.is_none() => return Err(perr(line, "missing `p flex` header")),
            "v" => {
                let n = graph.n();
                let v = parse_num(toks.next(), line, "vertex id")?;
                if v >= n {
                    return Err(perr(line, format!("vertex {v} out of range (n = {n})")));
                }
                graph.set_vertex_safe(v, parse_flag(toks.next(), line)?);
            }
            "e" => {
                let n = graph.n();
                let u = parse_num(toks.next(), line, "endpoint")?;
                let v = parse_num(toks.next(), line, "endpoint")?;
                let safe = parse_flag(toks.next(), line)?;
                for x in [u, v] {
                    if x >= n {
                        return Err(perr(line, format!("vertex {x} out of range (n = {n})")));
                    }
                }
                if u == v {
                    return Err(perr(line, format!("self-loop at vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) && problem == Problem::Fvc {
                    return Err(perr(line, format!("duplicate edge {u} {v}; FVC needs a simple graph")));
                }
                graph.add_edge(u, v, safe).map_err(|e| perr(line, e.to_string()))?;
                edges_read += 1;
            }
            other => return Err(perr(line, format!("unknown line type {other:?}"))),
        }
        if toks.next().is_some() {
            return Err(perr(line, "trailing tokens"));
        }
    }
    let (_, m, k) = header.ok_or_else(|| perr(last_line.max(1), "missing `p flex` header"))?;
    if edges_read != m {
        return Err(perr(last_line, format!("header declares {m} edges but {edges_read} were given")));
    }
    let k = k_override.unwrap_or(k);
    match problem {
        Problem::Fvc if graph.edges().iter().any(|e| !e.safe) => {
            log::warn!("edge flags are ignored for FVC");
        }
        Problem::Fgc | Problem::Kfgc if graph.vertex_flags().iter().any(|&s| !s) => {
            log::warn!("vertex flags are ignored for {problem}");
        }
        _ => {}
    }
    if problem == Problem::Fgc && k != 1 {
        log::warn!("k = {k} is ignored for FGC");
    }
    Instance::new(graph, problem, k)
}

/// Text form accepted by [`parse_instance`]. Every vertex line is written.
pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let flag = |s: bool| if s { 's' } else { 'u' };
    let mut out = format!("p flex {} {} {}\n", g.n(), g.m(), inst.k);
    for v in 0..g.n() {
        let _ = writeln!(out, "v {v} {}", flag(g.is_vertex_safe(v)));
    }
    // ids are renumbered densely in line order
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u, e.v, flag(e.safe));
    }
    out
}

/// The JSON written for a solved instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub problem: Problem,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub apx_size: usize,
    pub edges: Vec<EdgeId>,
    pub lower_bound: Option<usize>,
    pub exact_opt: Option<usize>,
    pub ratio_vs_lb: Option<f64>,
    pub feasible: bool,
    pub meta: Map<String, Value>,
}

impl SolutionReport {
    /// `lower_bound` is read from the solution meta when present; a known
    /// optimum replaces it.
    pub fn new(inst: &Instance, sol: &Solution, exact_opt: Option<usize>) -> Self {
        let lower_bound = exact_opt.or_else(|| sol.meta_u64("lower_bound").map(|v| v as usize));
        let ratio_vs_lb = lower_bound.filter(|&lb| lb > 0).map(|lb| sol.size() as f64 / lb as f64);
        SolutionReport {
            problem: inst.problem,
            n: inst.graph.n(),
            m: inst.graph.m(),
            k: inst.k,
            apx_size: sol.size(),
            edges: sol.edges.iter().copied().collect(),
            lower_bound,
            exact_opt,
            ratio_vs_lb,
            feasible: inst.is_feasible(&sol.edges),
            meta: sol.meta.clone().into_iter().collect(),
        }
    }
}

pub fn write_solution(report: &SolutionReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report is serializable");
    s.push('\n');
    s
}

/// Short machine-readable name for an error.
pub fn error_code(err: &Error) -> &'static str {
    match err {
        Error::Infeasible(_) | Error::NotConnected => "infeasible",
        Error::Parse { .. } => "parse",
        Error::TooLarge { .. } => "too_large",
        Error::InvalidInput(_) | Error::VertexOutOfRange { .. } | Error::UnknownEdge(_) => "invalid_input",
        Error::NoReducingEdge | Error::Invariant(_) => "internal",
    }
}

pub fn write_error(err: &Error) -> String {
    let v = json!({ "error": { "code": error_code(err), "message": err.to_string() } });
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}

/// Reads an edge set either from a solution JSON (`edges` key) or from
/// whitespace-separated ids.
pub fn parse_edge_list(text: &str) -> Result<BTreeSet<EdgeId>> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
        let arr = v.get("edges").and_then(Value::as_array).ok_or_else(|| perr(1, "no `edges` array"))?;
        return arr
            .iter()
            .map(|x| x.as_u64().map(|i| i as EdgeId).ok_or_else(|| perr(1, format!("bad edge id {x}"))))
            .collect();
    }
    let mut out = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            out.insert(tok.parse().map_err(|_| perr(idx + 1, format!("bad edge id {tok:?}")))?);
        }
    }
    Ok(out)
}
