//! One entry point for all three problems, used by the CLI and the harness.

use crate::error::{Error, Result};
use crate::exact::exact_solve;
use crate::feasibility::{Instance, Problem, Solution};
use crate::fgc::{solve_fgc, F1Solver, TwoEcssSolver};
use crate::fvc::solve_fvc;
use crate::kfgc::{solve_kfgc, KecssSolver};

/// Largest instance the exact oracle is run on by default to fill `exact_opt`.
pub const DEFAULT_ORACLE_CAP: usize = 9;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Overrides every exhaustive-search cap: the 2ECSS and (k+1)ECSS
    /// subsolvers and the oracle. `None` keeps the per-solver defaults.
    pub exact_cap: Option<usize>,
    pub f1: F1Solver,
}

impl SolveOptions {
    pub fn with_exact_cap(cap: usize) -> Self {
        SolveOptions { exact_cap: Some(cap), ..Default::default() }
    }

    pub fn oracle_cap(&self) -> usize {
        self.exact_cap.unwrap_or(DEFAULT_ORACLE_CAP)
    }

    fn twoecss(&self) -> TwoEcssSolver {
        self.exact_cap.map_or(TwoEcssSolver::Auto, |cap| TwoEcssSolver::Exact { cap })
    }

    fn kecss(&self) -> KecssSolver {
        self.exact_cap.map_or(KecssSolver::Auto, |cap| KecssSolver::Exact { cap })
    }
}

/// Runs the approximation algorithm for the instance's problem. With an
/// explicit cap, blocks or contracted graphs above it fall back to pruning.
pub fn solve_instance(inst: &Instance, opts: &SolveOptions) -> Result<Solution> {
    let g = &inst.graph;
    match inst.problem {
        Problem::Fvc => solve_fvc(g),
        Problem::Fgc => match solve_fgc(g, &opts.f1, opts.twoecss()) {
            Err(Error::TooLarge { .. }) => solve_fgc(g, &opts.f1, TwoEcssSolver::PruneHeuristic),
            r => r,
        },
        Problem::Kfgc => match solve_kfgc(g, inst.k, opts.kecss()) {
            Err(Error::TooLarge { .. }) => solve_kfgc(g, inst.k, KecssSolver::PruneHeuristic),
            r => r,
        },
    }
}

/// Exact optimum, or `None` above the oracle cap.
pub fn exact_opt(inst: &Instance, cap: usize) -> Result<Option<Solution>> {
    match exact_solve(inst, cap) {
        Ok(s) => Ok(Some(s)),
        Err(Error::TooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}
