//! Exhaustive minimum-cardinality solvers for small instances.
//!
//! Sizes are tried in ascending order and subsets are enumerated in
//! lexicographic order of their sorted edge ids, so the first feasible set
//! found is the lexicographically smallest optimum. Per-vertex degree lower
//! bounds prune the search, and interchangeable parallel edges (same
//! endpoints, same label) may only be taken as a prefix of their class.

use std::collections::BTreeSet;

use crate::connectivity::is_k_edge_connected;
use crate::error::{Error, Result};
use crate::feasibility::{check_fgc, check_fvc, check_kfgc, Instance, Problem, Solution};
use crate::graph::{EdgeId, LabeledGraph};

pub const DEFAULT_CAP: usize = 10;

struct Search<'a, P> {
    g: &'a LabeledGraph,
    edges: Vec<(usize, usize, EdgeId)>,
    twin_prev: Vec<Option<usize>>,
    req: Vec<usize>,
    deg: Vec<usize>,
    avail: Vec<usize>,
    deficit: usize,
    taken: Vec<bool>,
    chosen: Vec<EdgeId>,
    pred: P,
}

impl<'a, P> Search<'a, P>
where
    P: Fn(&LabeledGraph, &BTreeSet<EdgeId>) -> bool,
{
    fn new(g: &'a LabeledGraph, req: Vec<usize>, pred: P) -> Self {
        let edges: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.id)).collect();
        let mut twin_prev = vec![None; edges.len()];
        for i in 0..edges.len() {
            let ei = g.edge(edges[i].2).expect("edge");
            twin_prev[i] = (0..i).rev().find(|&j| {
                let ej = g.edge(edges[j].2).expect("edge");
                ej.key() == ei.key() && ej.safe == ei.safe
            });
        }
        let mut avail = vec![0; g.n()];
        for &(u, v, _) in &edges {
            avail[u] += 1;
            avail[v] += 1;
        }
        let deficit = req.iter().sum();
        Search {
            g,
            twin_prev,
            deg: vec![0; g.n()],
            avail,
            deficit,
            taken: vec![false; edges.len()],
            chosen: Vec::new(),
            req,
            edges,
            pred,
        }
    }

    fn lacking(&self, v: usize) -> usize {
        self.req[v].saturating_sub(self.deg[v])
    }

    fn starved(&self, v: usize) -> bool {
        self.lacking(v) > self.avail[v]
    }

    fn set_taken(&mut self, pos: usize, on: bool) {
        let (u, v, id) = self.edges[pos];
        for x in [u, v] {
            let before = self.lacking(x);
            if on {
                self.deg[x] += 1;
            } else {
                self.deg[x] -= 1;
            }
            let after = self.lacking(x);
            self.deficit = self.deficit + after - before;
        }
        self.taken[pos] = on;
        if on {
            self.chosen.push(id);
        } else {
            self.chosen.pop();
        }
    }

    fn run(&mut self, pos: usize, left: usize) -> bool {
        if left == 0 {
            if self.deficit != 0 {
                return false;
            }
            let set: BTreeSet<EdgeId> = self.chosen.iter().copied().collect();
            return (self.pred)(self.g, &set);
        }
        if pos == self.edges.len() || self.edges.len() - pos < left || self.deficit > 2 * left {
            return false;
        }
        let (u, v, _) = self.edges[pos];
        self.avail[u] -= 1;
        self.avail[v] -= 1;
        let mut found = false;
        if self.twin_prev[pos].is_none_or(|j| self.taken[j]) {
            self.set_taken(pos, true);
            found = self.run(pos + 1, left - 1);
            if !found {
                self.set_taken(pos, false);
            }
        }
        if !found && !self.starved(u) && !self.starved(v) {
            found = self.run(pos + 1, left);
        }
        if !found {
            self.avail[u] += 1;
            self.avail[v] += 1;
        }
        found
    }
}

/// Smallest feasible edge set under `pred`, lexicographically first among
/// optima. `req[v]` is a degree every feasible set must give `v`.
fn minimum_feasible<P>(g: &LabeledGraph, req: Vec<usize>, pred: P) -> Result<BTreeSet<EdgeId>>
where
    P: Fn(&LabeledGraph, &BTreeSet<EdgeId>) -> bool,
{
    let all = g.edge_id_set();
    if !pred(g, &all) {
        return Err(Error::Infeasible("no feasible edge set exists".into()));
    }
    let n = g.n();
    let start = n.saturating_sub(1).max(req.iter().sum::<usize>().div_ceil(2));
    for size in start..=g.m() {
        let mut s = Search::new(g, req.clone(), &pred);
        if s.run(0, size) {
            return Ok(s.chosen.iter().copied().collect());
        }
    }
    // pred(E) holds, so the loop always returns by size m
    Err(Error::Invariant("exhaustive search missed the full edge set".into()))
}

fn degree_requirements(inst: &Instance) -> Vec<usize> {
    let g = &inst.graph;
    let n = g.n();
    if n <= 1 {
        return vec![0; n];
    }
    (0..n)
        .map(|v| match inst.problem {
            Problem::Fvc => {
                let safe_nbr = g.neighbors(v).iter().any(|&(w, _)| g.is_vertex_safe(w));
                if n >= 3 && !safe_nbr {
                    2
                } else {
                    1
                }
            }
            Problem::Fgc | Problem::Kfgc => {
                let safe_edge = g.neighbors(v).iter().any(|&(_, id)| g.edge(id).is_some_and(|e| e.safe));
                if safe_edge {
                    1
                } else {
                    inst.k + 1
                }
            }
        })
        .collect()
}

/// Minimum feasible solution by enumeration. Refuses instances with more than
/// `cap_n` vertices.
pub fn exact_solve(inst: &Instance, cap_n: usize) -> Result<Solution> {
    let n = inst.graph.n();
    if n > cap_n {
        return Err(Error::TooLarge { n, cap: cap_n });
    }
    let req = degree_requirements(inst);
    let k = inst.k;
    let edges = match inst.problem {
        Problem::Fvc => minimum_feasible(&inst.graph, req, check_fvc)?,
        Problem::Fgc => minimum_feasible(&inst.graph, req, check_fgc)?,
        Problem::Kfgc => minimum_feasible(&inst.graph, req, |g, f| check_kfgc(g, f, k))?,
    };
    Ok(Solution::new(edges).with_meta("solver", "exact"))
}

/// Minimum k-edge-connected spanning subgraph by enumeration.
pub fn exact_kecss(g: &LabeledGraph, k: usize, cap_n: usize) -> Result<Solution> {
    let n = g.n();
    if n > cap_n {
        return Err(Error::TooLarge { n, cap: cap_n });
    }
    if !is_k_edge_connected(g, k) {
        return Err(Error::Infeasible(format!("graph is not {k}-edge-connected")));
    }
    let req = vec![if n <= 1 { 0 } else { k }; n];
    let edges = minimum_feasible(g, req, |h, f| {
        h.spanning_subgraph(f).is_ok_and(|s| is_k_edge_connected(&s, k))
    })?;
    Ok(Solution::new(edges).with_meta("solver", "exact"))
}

/// Minimum 2-edge-connected spanning subgraph by enumeration.
pub fn exact_2ecss(g: &LabeledGraph, cap_n: usize) -> Result<Solution> {
    exact_kecss(g, 2, cap_n)
}
