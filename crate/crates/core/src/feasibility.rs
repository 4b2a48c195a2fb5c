//! Problem definitions, feasibility checkers and minimal pruning.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::blocks::{blocks, bridges};
use crate::connectivity::is_k_edge_connected;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Fgc,
    Fvc,
    Kfgc,
}

impl Problem {
    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Fgc => "fgc",
            Problem::Fvc => "fvc",
            Problem::Kfgc => "kfgc",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fgc" => Ok(Problem::Fgc),
            "fvc" => Ok(Problem::Fvc),
            "kfgc" | "k-fgc" => Ok(Problem::Kfgc),
            other => Err(Error::InvalidInput(format!("unknown problem {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: LabeledGraph,
    pub problem: Problem,
    /// Number of simultaneous unsafe-edge failures; 1 for FGC, unused for FVC.
    pub k: usize,
}

impl Instance {
    pub fn new(graph: LabeledGraph, problem: Problem, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("k must be positive".into()));
        }
        if problem == Problem::Fvc && !graph.is_simple() {
            return Err(Error::InvalidInput("FVC instances must be simple graphs".into()));
        }
        let k = if problem == Problem::Fgc { 1 } else { k };
        Ok(Instance { graph, problem, k })
    }

    pub fn is_feasible(&self, f: &BTreeSet<EdgeId>) -> bool {
        match self.problem {
            Problem::Fgc => check_fgc(&self.graph, f),
            Problem::Fvc => check_fvc(&self.graph, f),
            Problem::Kfgc => check_kfgc(&self.graph, f, self.k),
        }
    }

    /// Whether taking every edge is feasible, i.e. whether any solution exists.
    pub fn has_solution(&self) -> bool {
        self.is_feasible(&self.graph.edge_id_set())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Solution {
    pub edges: BTreeSet<EdgeId>,
    pub meta: BTreeMap<String, Value>,
}

impl Solution {
    pub fn new(edges: BTreeSet<EdgeId>) -> Self {
        Solution { edges, meta: BTreeMap::new() }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.insert(key.to_string(), value.into());
    }

    pub fn meta_u64(&self, key: &str) -> Option<u64> {
        self.meta.get(key).and_then(Value::as_u64)
    }
}

fn subgraph(g: &LabeledGraph, f: &BTreeSet<EdgeId>) -> Option<LabeledGraph> {
    g.spanning_subgraph(f).ok()
}

/// Connected, and no unsafe edge of `F` is a bridge of `(V, F)`.
pub fn check_fgc(g: &LabeledGraph, f: &BTreeSet<EdgeId>) -> bool {
    let Some(h) = subgraph(g, f) else { return false };
    if !h.is_connected() {
        return false;
    }
    bridges(&h).iter().all(|&id| h.edge(id).is_some_and(|e| e.safe))
}

/// Connected, and no unsafe vertex is a cut vertex of `(V, F)`.
pub fn check_fvc(g: &LabeledGraph, f: &BTreeSet<EdgeId>) -> bool {
    let Some(h) = subgraph(g, f) else { return false };
    if !h.is_connected() {
        return false;
    }
    blocks(&h).cut_vertices.iter().all(|&v| h.is_vertex_safe(v))
}

/// Connected, and contracting the safe edges of `F` leaves a
/// (k+1)-edge-connected graph.
pub fn check_kfgc(g: &LabeledGraph, f: &BTreeSet<EdgeId>, k: usize) -> bool {
    let fast = check_kfgc_fast(g, f, k);
    #[cfg(debug_assertions)]
    {
        let unsafe_count = f.iter().filter(|&&id| g.edge(id).is_some_and(|e| !e.safe)).count();
        if k <= 2 && unsafe_count <= 12 {
            debug_assert_eq!(fast, check_kfgc_literal(g, f, k), "k-FGC fast check disagrees with enumeration");
        }
    }
    fast
}

fn check_kfgc_fast(g: &LabeledGraph, f: &BTreeSet<EdgeId>, k: usize) -> bool {
    let Some(h) = subgraph(g, f) else { return false };
    if !h.is_connected() {
        return false;
    }
    let safe: BTreeSet<EdgeId> = h.edges().iter().filter(|e| e.safe).map(|e| e.id).collect();
    let c = h.contract_edges(&safe).expect("safe edges belong to h");
    is_k_edge_connected(&c.graph, k + 1)
}

/// The definition taken literally: `(V, F \ S)` stays connected for every set
/// `S` of at most `k` unsafe edges of `F`. Exponential in `k`.
pub fn check_kfgc_literal(g: &LabeledGraph, f: &BTreeSet<EdgeId>, k: usize) -> bool {
    let Some(h) = subgraph(g, f) else { return false };
    if !h.is_connected() {
        return false;
    }
    let unsafe_edges: Vec<EdgeId> = h.edges().iter().filter(|e| !e.safe).map(|e| e.id).collect();
    let mut chosen = Vec::new();
    removal_sets_ok(&h, &unsafe_edges, 0, k, &mut chosen)
}

fn removal_sets_ok(h: &LabeledGraph, pool: &[EdgeId], start: usize, left: usize, chosen: &mut Vec<EdgeId>) -> bool {
    if !chosen.is_empty() {
        let removed: BTreeSet<EdgeId> = chosen.iter().copied().collect();
        if !h.without_edges(&removed).is_connected() {
            return false;
        }
    }
    if left == 0 {
        return true;
    }
    for i in start..pool.len() {
        chosen.push(pool[i]);
        let ok = removal_sets_ok(h, pool, i + 1, left - 1, chosen);
        chosen.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Removes edges in ascending id order while `checker` stays true. The
/// predicates used in this crate are monotone, so one pass gives an
/// inclusion-minimal set.
pub fn prune_minimal<C>(g: &LabeledGraph, f: &BTreeSet<EdgeId>, checker: C) -> Result<BTreeSet<EdgeId>>
where
    C: Fn(&LabeledGraph, &BTreeSet<EdgeId>) -> bool,
{
    if !checker(g, f) {
        return Err(Error::Infeasible("cannot prune an infeasible edge set".into()));
    }
    let mut cur = f.clone();
    for &id in f {
        cur.remove(&id);
        if !checker(g, &cur) {
            cur.insert(id);
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn set(ids: &[EdgeId]) -> BTreeSet<EdgeId> {
        ids.iter().copied().collect()
    }

    fn unsafe_cycle(n: usize) -> LabeledGraph {
        LabeledGraph::from_edges(vec![false; n], (0..n).map(|i| (i, (i + 1) % n, false))).unwrap()
    }

    #[test]
    fn fgc_examples() {
        let g = unsafe_cycle(4);
        assert!(check_fgc(&g, &set(&[0, 1, 2, 3])));
        assert!(!check_fgc(&g, &set(&[0, 1, 2])));
        let mut g2 = g.clone();
        g2.set_edge_safe(0, true).unwrap();
        assert!(!check_fgc(&g2, &set(&[0, 1, 2])));
    }

    #[test]
    fn fvc_examples() {
        let g = unsafe_cycle(4);
        assert!(check_fvc(&g, &set(&[0, 1, 2, 3])));
        assert!(!check_fvc(&g, &set(&[0, 1, 2])));
        let mut p = path(3);
        p.set_vertex_safe(0, false);
        p.set_vertex_safe(2, false);
        assert!(check_fvc(&p, &set(&[0, 1])));
        p.set_vertex_safe(1, false);
        assert!(!check_fvc(&p, &set(&[0, 1])));
    }

    #[test]
    fn kfgc_examples() {
        let mut k4 = complete(4);
        for id in 0..6 {
            k4.set_edge_safe(id, false).unwrap();
        }
        assert!(check_kfgc(&k4, &k4.edge_id_set(), 2));
        // 01, 12, 23, 03 in K4's lexicographic edge numbering
        assert!(!check_kfgc(&k4, &set(&[0, 2, 3, 5]), 2));

        let mut star = LabeledGraph::new(5);
        for leaf in 1..5 {
            star.add_edge(0, leaf, true).unwrap();
        }
        for leaf in 1..4 {
            star.add_edge(leaf, leaf + 1, false).unwrap();
        }
        for k in 1..5 {
            assert!(check_kfgc(&star, &set(&[0, 1, 2, 3]), k));
        }
    }

    #[test]
    fn literal_reading_is_at_most_k() {
        // a single unsafe edge with k = 2 must fail even though no 2-subset exists
        let g = LabeledGraph::from_edges(vec![true; 2], [(0, 1, false)]).unwrap();
        assert!(!check_kfgc_literal(&g, &set(&[0]), 2));
        assert!(!check_kfgc(&g, &set(&[0]), 2));
    }

    #[test]
    fn prune_examples() {
        let c4 = cycle(4);
        let pruned = prune_minimal(&c4, &c4.edge_id_set(), check_fgc).unwrap();
        assert_eq!(pruned.len(), 3);

        let u4 = unsafe_cycle(4);
        let kept = prune_minimal(&u4, &u4.edge_id_set(), check_fvc).unwrap();
        assert_eq!(kept.len(), 4);

        assert!(prune_minimal(&u4, &set(&[0]), check_fvc).is_err());
    }

    #[test]
    fn fvc_instances_must_be_simple() {
        let g = LabeledGraph::from_edges(vec![true; 2], [(0, 1, true), (1, 0, true)]).unwrap();
        assert!(Instance::new(g.clone(), Problem::Fvc, 1).is_err());
        assert!(Instance::new(g, Problem::Fgc, 3).unwrap().k == 1);
    }

    #[test]
    fn problem_parsing() {
        assert_eq!("FVC".parse::<Problem>().unwrap(), Problem::Fvc);
        assert_eq!("k-fgc".parse::<Problem>().unwrap(), Problem::Kfgc);
        assert!("tsp".parse::<Problem>().is_err());
    }
}
