//! Argument handling for the `flexconn` binary.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flexconn::driver::{exact_opt, solve_instance, SolveOptions};
use flexconn::exact::{exact_solve, DEFAULT_CAP};
use flexconn::harness::{
    check_arithmetic_lemmas, gen_random_instance, gen_safe_tree_family, gen_two_vc_instance, run_ratio_experiment,
    GeneratorKind, RandomConfig, RatioConfig, TwoVcConfig,
};
use flexconn::io::{error_code, parse_edge_list, parse_instance, write_error, write_instance, write_solution, SolutionReport};
use flexconn::par::Exec;
use flexconn::{Error, Instance, Problem};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "flexconn", version, about = "Flexible graph connectivity solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProblemArg {
    Fgc,
    Fvc,
    Kfgc,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Problem {
        match p {
            ProblemArg::Fgc => Problem::Fgc,
            ProblemArg::Fvc => Problem::Fvc,
            ProblemArg::Kfgc => Problem::Kfgc,
        }
    }
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Simultaneous unsafe failures for k-FGC; overrides the header value.
    #[arg(long)]
    k: Option<usize>,
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Largest vertex count handed to any exhaustive search.
    #[arg(long)]
    exact_cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Gnp,
    TwoVc,
    SafeTree,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "gnp")]
    kind: GenKind,
    #[arg(long, value_enum, default_value = "fvc")]
    problem: ProblemArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0.5)]
    edge_safe_prob: f64,
    #[arg(long, default_value_t = 0.5)]
    vertex_safe_prob: f64,
    #[arg(long, default_value_t = 0.6)]
    short_ear_prob: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GeneratorArg {
    Gnp,
    TwoVc,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0.5)]
    edge_safe_prob: f64,
    #[arg(long, default_value_t = 0.5)]
    vertex_safe_prob: f64,
    #[arg(long, value_enum, default_value = "gnp")]
    generator: GeneratorArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    exact_cap: Option<usize>,
    /// Add a wall-time column (output is then no longer byte-stable).
    #[arg(long)]
    timing: bool,
    /// Solve rows one after another instead of in parallel.
    #[arg(long)]
    sequential: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the approximation algorithm and write a solution JSON.
    Solve(SolveArgs),
    /// Solve to optimality by enumeration.
    Exact(SolveArgs),
    /// Check an edge set against an instance.
    Check {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Solution JSON or whitespace-separated edge ids.
        #[arg(long)]
        solution: PathBuf,
    },
    /// Write a random instance.
    Gen(GenArgs),
    /// Ratio experiment over random instances, as CSV.
    Bench(BenchArgs),
    /// Sample the arithmetic inequalities behind the FVC ratio.
    Lemmas(LemmaArgs),
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn load(args: &InstanceArgs) -> Result<Instance> {
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    Ok(parse_instance(&text, args.problem.into(), args.k)?)
}

/// Solver errors become JSON on the output; everything else propagates.
fn solve_cmd(args: &SolveArgs, exact: bool) -> Result<i32> {
    let inst = load(&args.inst)?;
    let opts = SolveOptions { exact_cap: args.exact_cap, ..Default::default() };
    let result = if exact {
        exact_solve(&inst, args.exact_cap.unwrap_or(DEFAULT_CAP)).map(|s| {
            let size = s.size();
            (s, Some(size))
        })
    } else {
        solve_instance(&inst, &opts)
            .and_then(|s| exact_opt(&inst, opts.oracle_cap()).map(|o| (s, o.map(|o| o.size()))))
    };
    match result {
        Ok((sol, opt)) => {
            emit(args.output.as_deref(), &write_solution(&SolutionReport::new(&inst, &sol, opt)))?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            emit(args.output.as_deref(), &write_error(&e))?;
            eprintln!("error: {e}");
            Ok(exit_code(&e))
        }
    }
}

fn check_cmd(inst: &InstanceArgs, solution: &Path) -> Result<i32> {
    let instance = load(inst)?;
    let text = fs::read_to_string(solution).with_context(|| format!("reading {}", solution.display()))?;
    let edges = parse_edge_list(&text)?;
    if let Some(&bad) = edges.iter().find(|&&id| !instance.graph.contains_edge(id)) {
        return Err(Error::UnknownEdge(bad).into());
    }
    let feasible = instance.is_feasible(&edges);
    let v = json!({ "problem": instance.problem, "k": instance.k, "size": edges.len(), "feasible": feasible });
    emit(None, &format!("{}\n", serde_json::to_string_pretty(&v)?))?;
    Ok(if feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn gen_cmd(a: &GenArgs) -> Result<i32> {
    let inst = match a.kind {
        GenKind::Gnp => {
            let cfg = RandomConfig {
                n: a.n,
                p: a.p,
                edge_safe_prob: a.edge_safe_prob,
                vertex_safe_prob: a.vertex_safe_prob,
                problem: a.problem.into(),
                k: a.k,
            };
            gen_random_instance(&cfg, a.seed)?
        }
        GenKind::TwoVc => {
            let cfg = TwoVcConfig { n: a.n, vertex_safe_prob: a.vertex_safe_prob, short_ear_prob: a.short_ear_prob, chord_ratio: 0.1 };
            gen_two_vc_instance(&cfg, a.seed)?
        }
        GenKind::SafeTree => gen_safe_tree_family(a.n, a.k)?,
    };
    let text = format!("c generated kind={:?} seed={}\n{}", a.kind, a.seed, write_instance(&inst));
    emit(a.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn bench_cmd(a: &BenchArgs) -> Result<i32> {
    let mut cfg = RatioConfig::new(a.problem.into(), a.trials, a.n_min, a.n_max, a.seed);
    cfg.k = a.k;
    cfg.p = a.p;
    cfg.edge_safe_prob = a.edge_safe_prob;
    cfg.vertex_safe_prob = a.vertex_safe_prob;
    cfg.generator = match a.generator {
        GeneratorArg::Gnp => GeneratorKind::Gnp,
        GeneratorArg::TwoVc => GeneratorKind::TwoVc,
    };
    cfg.solve.exact_cap = a.exact_cap;
    cfg.timing = a.timing;
    cfg.exec = if a.sequential { Exec::Sequential } else { Exec::available() };
    let report = run_ratio_experiment(&cfg)?;
    emit(a.output.as_deref(), &report.to_csv())?;
    Ok(EXIT_OK)
}

fn lemmas_cmd(a: &LemmaArgs) -> Result<i32> {
    if a.samples == 0 {
        return Err(Error::InvalidInput("--samples must be at least 1".into()).into());
    }
    let report = check_arithmetic_lemmas(a.samples, a.seed, Exec::available());
    let mut v = serde_json::to_value(&report)?;
    v["passed"] = json!(report.passed());
    emit(a.output.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&v)?))?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn exit_code(e: &Error) -> i32 {
    if error_code(e) == "infeasible" {
        EXIT_INFEASIBLE
    } else {
        EXIT_FAILURE
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => solve_cmd(a, false),
        Command::Exact(a) => solve_cmd(a, true),
        Command::Check { inst, solution } => check_cmd(inst, solution),
        Command::Gen(a) => gen_cmd(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Lemmas(a) => lemmas_cmd(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            e.downcast_ref::<Error>().map_or(EXIT_FAILURE, exit_code)
        }
    }
}
