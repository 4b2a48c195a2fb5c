//! Flexible graph connectivity: the safe-edge doubling reduction to 2ECSS,
//! a pluggable first solution, and the smaller of the two.
//!
//! The default first solution is plain minimal pruning. The 10/7 guarantee
//! needs an external routine with the `|OPT_S| + 3/2 |OPT_U|` bound, which
//! callers can pass as [`F1Solver::External`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::blocks::{blocks, is_two_edge_connected};
use crate::error::{Error, Result};
use crate::exact::exact_2ecss;
use crate::feasibility::{check_fgc, prune_minimal, Solution};
use crate::graph::{EdgeId, LabeledGraph};

/// Largest graph the default 2ECSS choice hands to the exact solver.
pub const DEFAULT_2ECSS_EXACT_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoEcssSolver {
    /// Exhaustive search; refuses blocks above `cap` vertices.
    Exact { cap: usize },
    /// Minimal pruning, at most twice optimal.
    PruneHeuristic,
    /// Exact up to [`DEFAULT_2ECSS_EXACT_CAP`] vertices per block, pruning above.
    Auto,
}

impl TwoEcssSolver {
    fn resolve(self, n: usize) -> TwoEcssSolver {
        match self {
            TwoEcssSolver::Auto if n <= DEFAULT_2ECSS_EXACT_CAP => TwoEcssSolver::Exact { cap: DEFAULT_2ECSS_EXACT_CAP },
            TwoEcssSolver::Auto => TwoEcssSolver::PruneHeuristic,
            other => other,
        }
    }

    /// Approximation factor claimed for a block of `n` vertices.
    pub fn beta(self, n: usize) -> u64 {
        match self.resolve(n) {
            TwoEcssSolver::Exact { .. } => 1,
            _ => 2,
        }
    }
}

/// Inclusion-minimal 2-edge-connected spanning subgraph.
pub fn twoecss_prune_heuristic(g: &LabeledGraph) -> Result<Solution> {
    if !is_two_edge_connected(g) {
        return Err(Error::Infeasible("graph is not 2-edge-connected".into()));
    }
    let kept = prune_minimal(g, &g.edge_id_set(), |h, f| {
        h.spanning_subgraph(f).is_ok_and(|s| is_two_edge_connected(&s))
    })?;
    debug_assert!(g.n() < 2 || kept.len() <= 2 * g.n() - 2);
    Ok(Solution::new(kept).with_meta("solver", "prune"))
}

/// Solves each block on its own and takes the union. Fails on bridges.
pub fn solve_2ecss_blockwise(g: &LabeledGraph, solver: TwoEcssSolver) -> Result<Solution> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let dec = blocks(g);
    let mut edges = BTreeSet::new();
    let mut beta = 1;
    for (b, verts) in dec.blocks.iter().zip(dec.block_vertices(g)) {
        if b.len() == 1 {
            let id = *b.iter().next().expect("one edge");
            return Err(Error::Infeasible(format!("edge {id} is a bridge")));
        }
        let verts: Vec<_> = verts.into_iter().collect();
        let (h, _) = g.induced_subgraph(&verts)?;
        let sol = match solver.resolve(h.n()) {
            TwoEcssSolver::Exact { cap } => exact_2ecss(&h, cap)?,
            _ => twoecss_prune_heuristic(&h)?,
        };
        beta = beta.max(solver.beta(h.n()));
        edges.extend(sol.edges);
    }
    Ok(Solution::new(edges).with_meta("beta", beta))
}

/// Doubles every safe edge, solves 2ECSS on the result, and maps the chosen
/// copies back to their originals.
pub fn alg2_double_and_solve(g: &LabeledGraph, solver: TwoEcssSolver) -> Result<Solution> {
    if !check_fgc(g, &g.edge_id_set()) {
        return Err(Error::Infeasible("some unsafe edge is a bridge of the whole graph".into()));
    }
    let mut doubled = g.clone();
    let mut original: BTreeMap<EdgeId, EdgeId> = g.edge_ids().map(|id| (id, id)).collect();
    let safe: Vec<_> = g.edges().iter().filter(|e| e.safe).cloned().collect();
    for e in safe {
        let copy = doubled.add_edge(e.u, e.v, true)?;
        original.insert(copy, e.id);
    }
    let sol = solve_2ecss_blockwise(&doubled, solver)?;
    let edges: BTreeSet<EdgeId> = sol.edges.iter().map(|id| original[id]).collect();
    debug_assert!(check_fgc(g, &edges));
    let beta = sol.meta_u64("beta").unwrap_or(1);
    Ok(Solution::new(edges).with_meta("solver", "alg2").with_meta("beta", beta))
}

type ExternalF1 = dyn Fn(&LabeledGraph) -> Result<BTreeSet<EdgeId>> + Send + Sync;

/// Source of the first FGC solution.
#[derive(Clone, Default)]
pub enum F1Solver {
    /// Minimal pruning from all edges under the FGC checker.
    #[default]
    FallbackPrune,
    /// Caller-supplied routine; its output is checked before use.
    External(Arc<ExternalF1>),
}

impl fmt::Debug for F1Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            F1Solver::FallbackPrune => f.write_str("FallbackPrune"),
            F1Solver::External(_) => f.write_str("External(..)"),
        }
    }
}

impl F1Solver {
    pub fn name(&self) -> &'static str {
        match self {
            F1Solver::FallbackPrune => "fallback_prune",
            F1Solver::External(_) => "external",
        }
    }

    pub fn solve(&self, g: &LabeledGraph) -> Result<BTreeSet<EdgeId>> {
        let edges = match self {
            F1Solver::FallbackPrune => prune_minimal(g, &g.edge_id_set(), check_fgc)?,
            F1Solver::External(f) => f(g)?,
        };
        if !check_fgc(g, &edges) {
            return Err(Error::Invariant("first FGC solution is not feasible".into()));
        }
        Ok(edges)
    }
}

/// `max(n - 1, ceil(sum_v req(v) / 2))` with `req(v) = 1` when `v` has a safe
/// edge and 2 otherwise.
pub fn fgc_lower_bound(g: &LabeledGraph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let req: usize = (0..n)
        .map(|v| if g.neighbors(v).iter().any(|&(_, id)| g.edge(id).is_some_and(|e| e.safe)) { 1 } else { 2 })
        .sum();
    (n - 1).max(req.div_ceil(2))
}

/// The smaller of the first solution and the doubling solution; ties keep the
/// first.
pub fn solve_fgc(g: &LabeledGraph, f1: &F1Solver, solver: TwoEcssSolver) -> Result<Solution> {
    let f2 = alg2_double_and_solve(g, solver)?;
    let first = f1.solve(g)?;
    let (f1_size, f2_size) = (first.len(), f2.size());
    let beta = f2.meta_u64("beta").unwrap_or(1);
    let edges = if f2_size < f1_size { f2.edges } else { first };
    Ok(Solution::new(edges)
        .with_meta("solver", "fgc")
        .with_meta("f1", f1.name())
        .with_meta("f1_size", f1_size)
        .with_meta("f2_size", f2_size)
        .with_meta("beta", beta)
        .with_meta("ten_sevenths_applies", matches!(f1, F1Solver::External(_)) && beta == 1)
        .with_meta("lower_bound", fgc_lower_bound(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn unsafe_cycle(n: usize) -> LabeledGraph {
        LabeledGraph::from_edges(vec![true; n], (0..n).map(|i| (i, (i + 1) % n, false))).unwrap()
    }

    #[test]
    fn alg2_examples() {
        let exact = TwoEcssSolver::Exact { cap: 12 };
        assert_eq!(alg2_double_and_solve(&unsafe_cycle(4), exact).unwrap().size(), 4);
        let mut one_safe = unsafe_cycle(4);
        one_safe.set_edge_safe(0, true).unwrap();
        assert_eq!(alg2_double_and_solve(&one_safe, exact).unwrap().size(), 4);
        let sol = alg2_double_and_solve(&path(3), exact).unwrap();
        assert_eq!(sol.edges, [0, 1].into_iter().collect());
    }

    #[test]
    fn blockwise_bowtie() {
        let sol = solve_2ecss_blockwise(&bowtie(), TwoEcssSolver::Exact { cap: 12 }).unwrap();
        assert_eq!(sol.size(), 6);
        assert!(solve_2ecss_blockwise(&path(3), TwoEcssSolver::Auto).is_err());
    }

    #[test]
    fn prune_heuristic_examples() {
        assert_eq!(twoecss_prune_heuristic(&complete(4)).unwrap().size(), 4);
        assert_eq!(twoecss_prune_heuristic(&cycle(5)).unwrap().size(), 5);
        assert!(twoecss_prune_heuristic(&path(4)).is_err());
    }

    #[test]
    fn solve_fgc_examples() {
        let sol = solve_fgc(&cycle(4), &F1Solver::FallbackPrune, TwoEcssSolver::Auto).unwrap();
        assert_eq!(sol.size(), 3);
        let mut one_safe = unsafe_cycle(4);
        one_safe.set_edge_safe(0, true).unwrap();
        let sol = solve_fgc(&one_safe, &F1Solver::FallbackPrune, TwoEcssSolver::Auto).unwrap();
        assert_eq!(sol.size(), 4);
        assert_eq!(sol.meta["ten_sevenths_applies"], false);
    }

    #[test]
    fn external_f1_is_checked() {
        let bad = F1Solver::External(Arc::new(|_| Ok(BTreeSet::new())));
        assert!(solve_fgc(&cycle(4), &bad, TwoEcssSolver::Auto).is_err());
        let good = F1Solver::External(Arc::new(|g: &LabeledGraph| Ok(g.edge_id_set())));
        let sol = solve_fgc(&cycle(4), &good, TwoEcssSolver::Auto).unwrap();
        assert_eq!(sol.meta["ten_sevenths_applies"], true);
    }

    #[test]
    fn infeasible_fgc() {
        let g = LabeledGraph::from_edges(vec![true; 3], [(0, 1, false), (1, 2, true)]).unwrap();
        assert!(matches!(solve_fgc(&g, &F1Solver::FallbackPrune, TwoEcssSolver::Auto), Err(Error::Infeasible(_))));
    }
}
