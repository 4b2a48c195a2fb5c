//! k-flexible graph connectivity: a maximum safe forest plus a
//! (k+1)-edge-connected spanning subgraph of the graph contracted along it.

use std::collections::BTreeSet;

use crate::connectivity::is_k_edge_connected;
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::exact::exact_kecss;
use crate::feasibility::{check_kfgc, prune_minimal, Solution};
use crate::graph::{EdgeId, LabeledGraph};

/// Largest contracted graph the default choice hands to the exact solver.
pub const DEFAULT_KECSS_EXACT_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KecssSolver {
    Exact { cap: usize },
    PruneHeuristic,
    /// Exact up to [`DEFAULT_KECSS_EXACT_CAP`] contracted vertices.
    Auto,
}

/// Spanning forest of the safe edges, greedy by ascending edge id.
pub fn max_safe_forest(g: &LabeledGraph) -> BTreeSet<EdgeId> {
    let mut dsu = Dsu::new(g.n());
    g.edges().iter().filter(|e| e.safe && dsu.union(e.u, e.v)).map(|e| e.id).collect()
}

fn kec_pred(k: usize) -> impl Fn(&LabeledGraph, &BTreeSet<EdgeId>) -> bool {
    move |h, f| h.spanning_subgraph(f).is_ok_and(|s| is_k_edge_connected(&s, k))
}

/// Inclusion-minimal k-edge-connected spanning subgraph; at most `nk` edges.
pub fn kecss_prune_heuristic(g: &LabeledGraph, k: usize) -> Result<BTreeSet<EdgeId>> {
    if !is_k_edge_connected(g, k) {
        return Err(Error::Infeasible(format!("graph is not {k}-edge-connected")));
    }
    let kept = prune_minimal(g, &g.edge_id_set(), kec_pred(k))?;
    if kept.len() > g.n() * k {
        return Err(Error::Invariant("minimal k-edge-connected subgraph exceeds nk edges".into()));
    }
    Ok(kept)
}

/// `n - 1` when the safe forest spans, else `l + ceil((n - l)(k + 1) / 2)`.
pub fn kfgc_lower_bound(g: &LabeledGraph, k: usize) -> usize {
    let n = g.n();
    let ell = max_safe_forest(g).len();
    if n <= 1 {
        0
    } else if ell + 1 == n {
        n - 1
    } else {
        ell + ((n - ell) * (k + 1)).div_ceil(2)
    }
}

pub fn solve_kfgc(g: &LabeledGraph, k: usize, sub: KecssSolver) -> Result<Solution> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if !check_kfgc(g, &g.edge_id_set(), k) {
        return Err(Error::Infeasible(format!("no edge set survives {k} unsafe failures")));
    }
    let forest = max_safe_forest(g);
    let c = g.contract_edges(&forest)?;
    // every safe edge now lies inside a contracted vertex
    let core = &c.graph;
    let cn = core.n();
    let (chosen, sub_name) = if cn <= 1 {
        (BTreeSet::new(), "none")
    } else {
        let exact_cap = match sub {
            KecssSolver::Exact { cap } => Some(cap),
            KecssSolver::Auto if cn <= DEFAULT_KECSS_EXACT_CAP => Some(DEFAULT_KECSS_EXACT_CAP),
            _ => None,
        };
        match exact_cap {
            Some(cap) => (exact_kecss(core, k + 1, cap)?.edges, "exact"),
            None => (kecss_prune_heuristic(core, k + 1)?, "prune"),
        }
    };
    let core_edges = if chosen.is_empty() { chosen } else { prune_minimal(core, &chosen, kec_pred(k + 1))? };
    let mut edges: BTreeSet<EdgeId> = core_edges.iter().map(|id| c.edge_map[id]).collect();
    let core_size = edges.len();
    edges.extend(forest.iter().copied());
    if !check_kfgc(g, &edges, k) {
        return Err(Error::Invariant("k-FGC solution fails the checker".into()));
    }
    Ok(Solution::new(edges)
        .with_meta("solver", "kfgc")
        .with_meta("k", k)
        .with_meta("ell", forest.len())
        .with_meta("core_size", core_size)
        .with_meta("contracted_n", cn)
        .with_meta("sub_solver", sub_name)
        .with_meta("lower_bound", kfgc_lower_bound(g, k)))
}
