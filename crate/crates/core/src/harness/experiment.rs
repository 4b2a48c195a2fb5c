//! Batch ratio experiments with CSV output.

use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::driver::{exact_opt, solve_instance, SolveOptions};
use crate::error::{Error, Result};
use crate::feasibility::{Instance, Problem, Solution};
use crate::par::{map_indices, Exec};

use super::generators::{gen_random_instance_with, gen_two_vc_instance_with, row_rng, RandomConfig, TwoVcConfig};

/// Attempts per row before giving up on drawing a feasible instance.
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// `G(n, p)` conditioned on connectivity.
    Gnp,
    /// Ear-grown 2-vertex-connected graphs (FVC only).
    TwoVc,
}

#[derive(Clone, Debug)]
pub struct RatioConfig {
    pub problem: Problem,
    pub k: usize,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub p: f64,
    pub edge_safe_prob: f64,
    pub vertex_safe_prob: f64,
    pub generator: GeneratorKind,
    pub seed: u64,
    pub solve: SolveOptions,
    /// Emit a `wall_ms` column. Off by default since it breaks byte-stability.
    pub timing: bool,
    pub exec: Exec,
}

impl RatioConfig {
    pub fn new(problem: Problem, trials: usize, n_min: usize, n_max: usize, seed: u64) -> Self {
        RatioConfig {
            problem,
            k: 1,
            trials,
            n_min,
            n_max,
            p: 0.5,
            edge_safe_prob: 0.5,
            vertex_safe_prob: 0.5,
            generator: GeneratorKind::Gnp,
            seed,
            solve: SolveOptions::default(),
            timing: false,
            exec: Exec::available(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(Error::InvalidInput(format!("bad n range {}..={}", self.n_min, self.n_max)));
        }
        if self.generator == GeneratorKind::TwoVc && self.problem != Problem::Fvc {
            return Err(Error::InvalidInput("the 2VC generator only serves FVC".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub row: usize,
    pub n: usize,
    pub m: usize,
    pub apx: usize,
    pub opt: Option<usize>,
    pub lower_bound: Option<usize>,
    pub feasible: bool,
    /// Problem-specific details, `key=value` joined by `;`.
    pub note: String,
    pub wall_ms: f64,
}

impl RatioRow {
    pub fn ratio_opt(&self) -> Option<f64> {
        self.opt.filter(|&o| o > 0).map(|o| self.apx as f64 / o as f64)
    }

    pub fn ratio_lb(&self) -> Option<f64> {
        self.lower_bound.filter(|&l| l > 0).map(|l| self.apx as f64 / l as f64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioReport {
    pub rows: Vec<RatioRow>,
    pub timing: bool,
}

fn fmt_opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn fmt_f(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:.6}"))
}

impl RatioReport {
    pub fn max_ratio_opt(&self) -> Option<f64> {
        self.rows.iter().filter_map(RatioRow::ratio_opt).reduce(f64::max)
    }

    pub fn max_ratio_lb(&self) -> Option<f64> {
        self.rows.iter().filter_map(RatioRow::ratio_lb).reduce(f64::max)
    }

    fn mean(vals: impl Iterator<Item = f64>) -> Option<f64> {
        let (sum, count) = vals.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
        (count > 0).then(|| sum / count as f64)
    }

    pub fn all_feasible(&self) -> bool {
        self.rows.iter().all(|r| r.feasible)
    }

    /// Header, one line per row, then `summary_max` and `summary_mean`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,n,m,apx,opt,lower_bound,ratio_opt,ratio_lb,feasible,note");
        if self.timing {
            out.push_str(",wall_ms");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.row,
                r.n,
                r.m,
                r.apx,
                fmt_opt(r.opt),
                fmt_opt(r.lower_bound),
                fmt_f(r.ratio_opt()),
                fmt_f(r.ratio_lb()),
                r.feasible,
                r.note
            );
            if self.timing {
                let _ = write!(out, ",{:.3}", r.wall_ms);
            }
            out.push('\n');
        }
        let tail = if self.timing { "," } else { "" };
        let _ = writeln!(
            out,
            "summary_max,,,,,,{},{},{},{tail}",
            fmt_f(self.max_ratio_opt()),
            fmt_f(self.max_ratio_lb()),
            self.all_feasible()
        );
        let _ = writeln!(
            out,
            "summary_mean,,,,,,{},{},,{tail}",
            fmt_f(Self::mean(self.rows.iter().filter_map(RatioRow::ratio_opt))),
            fmt_f(Self::mean(self.rows.iter().filter_map(RatioRow::ratio_lb)))
        );
        out
    }
}

fn draw_instance(cfg: &RatioConfig, row: usize) -> Result<Instance> {
    let mut rng = row_rng(cfg.seed, row as u64);
    let n = rng.gen_range(cfg.n_min..=cfg.n_max);
    for _ in 0..MAX_ATTEMPTS {
        let inst = match cfg.generator {
            GeneratorKind::Gnp => {
                let rc = RandomConfig {
                    n,
                    p: cfg.p,
                    edge_safe_prob: cfg.edge_safe_prob,
                    vertex_safe_prob: cfg.vertex_safe_prob,
                    problem: cfg.problem,
                    k: cfg.k,
                };
                gen_random_instance_with(&rc, &mut rng)?
            }
            GeneratorKind::TwoVc => {
                let tc = TwoVcConfig { n, vertex_safe_prob: cfg.vertex_safe_prob, short_ear_prob: 0.6, chord_ratio: 0.1 };
                Instance::new(gen_two_vc_instance_with(&tc, &mut rng)?, Problem::Fvc, 1)?
            }
        };
        if inst.has_solution() {
            return Ok(inst);
        }
    }
    Err(Error::InvalidInput(format!("row {row}: no feasible instance in {MAX_ATTEMPTS} draws")))
}

fn note(problem: Problem, sol: &Solution) -> String {
    let keys: &[&str] = match problem {
        Problem::Fvc => &["apx1", "apx2", "reached_apx2"],
        Problem::Fgc => &["f1_size", "f2_size", "beta"],
        Problem::Kfgc => &["ell", "core_size", "sub_solver"],
    };
    keys.iter()
        .filter_map(|k| sol.meta.get(*k).map(|v| format!("{k}={}", v.to_string().trim_matches('"'))))
        .collect::<Vec<_>>()
        .join(";")
}

/// The instance a row is built from; regenerable for inspection.
pub fn row_instance(cfg: &RatioConfig, row: usize) -> Result<Instance> {
    draw_instance(cfg, row)
}

fn run_row(cfg: &RatioConfig, row: usize) -> Result<RatioRow> {
    let inst = draw_instance(cfg, row)?;
    let start = Instant::now();
    let sol = solve_instance(&inst, &cfg.solve)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let opt = exact_opt(&inst, cfg.solve.oracle_cap())?.map(|s| s.size());
    Ok(RatioRow {
        row,
        n: inst.graph.n(),
        m: inst.graph.m(),
        apx: sol.size(),
        opt,
        lower_bound: sol.meta_u64("lower_bound").map(|v| v as usize),
        feasible: inst.is_feasible(&sol.edges),
        note: note(inst.problem, &sol),
        wall_ms,
    })
}

pub fn run_ratio_experiment(cfg: &RatioConfig) -> Result<RatioReport> {
    cfg.validate()?;
    let rows = map_indices(cfg.exec, cfg.trials, |i| run_row(cfg, i)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(RatioReport { rows, timing: cfg.timing })
}
