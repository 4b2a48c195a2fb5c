//! Classification of the vertices outside `D`, the first approximation and
//! the spanning-tree special case.

use std::collections::{BTreeMap, BTreeSet};

use crate::dsu::Dsu;
use crate::ear::{outside_is_matching, EarDecomposition};
use crate::error::{invariant, Result};
use crate::feasibility::Solution;
use crate::graph::{EdgeId, LabeledGraph, VertexId};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KPartition {
    pub vd: BTreeSet<VertexId>,
    pub k11: BTreeSet<VertexId>,
    pub k12: BTreeSet<VertexId>,
    pub k22: BTreeSet<VertexId>,
    pub k23: BTreeSet<VertexId>,
    /// Matching partner of every vertex in `k22 ∪ k23`.
    pub mate: BTreeMap<VertexId, VertexId>,
}

impl KPartition {
    /// `|K11| + |K12| + |K22| + |K23|`.
    pub fn outside_count(&self) -> usize {
        self.k11.len() + self.k12.len() + self.k22.len() + self.k23.len()
    }

    /// `|K11| + 2|K12| + |K22| + 3/2 |K23|`, doubled to stay integral.
    pub fn weighted_twice(&self) -> usize {
        2 * self.k11.len() + 4 * self.k12.len() + 2 * self.k22.len() + 3 * self.k23.len()
    }

    /// Matched pairs `(u, v)` with `u < v` inside `set`.
    pub fn pairs(&self, set: &BTreeSet<VertexId>) -> Vec<(VertexId, VertexId)> {
        set.iter().filter_map(|&u| self.mate.get(&u).filter(|&&v| u < v).map(|&v| (u, v))).collect()
    }
}

/// Neighbours of `v` inside `D`, by ascending edge id.
pub(crate) fn d_edges(g: &LabeledGraph, in_d: &[bool], v: VertexId) -> Vec<(VertexId, EdgeId)> {
    g.neighbors(v).iter().copied().filter(|&(w, _)| in_d[w]).collect()
}

/// Lowest-id edge from `v` to a safe vertex of `D`.
pub(crate) fn safe_d_edge(g: &LabeledGraph, in_d: &[bool], v: VertexId) -> Option<EdgeId> {
    d_edges(g, in_d, v).into_iter().find(|&(w, _)| g.is_vertex_safe(w)).map(|(_, id)| id)
}

pub fn partition_k_sets(g: &LabeledGraph, d: &EarDecomposition) -> Result<KPartition> {
    if !outside_is_matching(g, d) {
        return invariant("vertices outside the ear decomposition do not induce a matching");
    }
    let n = g.n();
    let in_d = d.vertex_mask(n);
    let mut k = KPartition { vd: d.vertices(), ..Default::default() };
    for v in (0..n).filter(|&v| !in_d[v]) {
        let partner = g.neighbors(v).iter().map(|&(w, _)| w).find(|&w| !in_d[w]);
        match partner {
            None => {
                if safe_d_edge(g, &in_d, v).is_some() {
                    k.k11.insert(v);
                } else {
                    k.k12.insert(v);
                }
            }
            Some(w) => {
                k.mate.insert(v, w);
                if v > w {
                    continue;
                }
                let anchored = |x: VertexId| safe_d_edge(g, &in_d, x).is_some();
                let safe_anchored = |x: VertexId| g.is_vertex_safe(x) && anchored(x);
                let class = if (anchored(v) && anchored(w)) || safe_anchored(v) || safe_anchored(w) {
                    &mut k.k22
                } else {
                    &mut k.k23
                };
                class.insert(v);
                class.insert(w);
            }
        }
    }
    Ok(k)
}

/// Edges chosen for a `K22` pair: both anchor edges when both ends reach a
/// safe vertex of `D`, otherwise the matching edge plus the anchor edge of
/// the safe end.
pub(crate) fn k22_edges(g: &LabeledGraph, in_d: &[bool], u: VertexId, v: VertexId) -> Result<[EdgeId; 2]> {
    if let (Some(a), Some(b)) = (safe_d_edge(g, in_d, u), safe_d_edge(g, in_d, v)) {
        return Ok([a, b]);
    }
    for x in [u, v] {
        if g.is_vertex_safe(x) {
            if let Some(a) = safe_d_edge(g, in_d, x) {
                let uv = g.edge_between(u, v).expect("matched pair is adjacent");
                return Ok([uv, a]);
            }
        }
    }
    invariant(format!("K22 pair ({u}, {v}) has no valid edge pair"))
}

/// Lowest `(uu', vv')` edge pair, in lexicographic edge-id order, with
/// `u' != v'`.
pub(crate) fn k23_anchor_edges(g: &LabeledGraph, in_d: &[bool], u: VertexId, v: VertexId) -> Result<[EdgeId; 2]> {
    for (a, ea) in d_edges(g, in_d, u) {
        for (b, eb) in d_edges(g, in_d, v) {
            if a != b {
                return Ok([ea, eb]);
            }
        }
    }
    invariant(format!("K23 pair ({u}, {v}) has no distinct anchors"))
}

/// `E(D)` plus the per-class attachment edges.
pub fn build_apx1(g: &LabeledGraph, d: &EarDecomposition, k: &KPartition) -> Result<Solution> {
    let in_d = d.vertex_mask(g.n());
    let mut edges = d.edges();
    for &v in &k.k11 {
        edges.insert(safe_d_edge(g, &in_d, v).expect("K11 vertex has a safe anchor"));
    }
    for &v in &k.k12 {
        let nb = d_edges(g, &in_d, v);
        if nb.len() < 2 {
            return invariant(format!("K12 vertex {v} has fewer than two neighbours"));
        }
        edges.insert(nb[0].1);
        edges.insert(nb[1].1);
    }
    for (u, v) in k.pairs(&k.k22) {
        edges.extend(k22_edges(g, &in_d, u, v)?);
    }
    for (u, v) in k.pairs(&k.k23) {
        edges.insert(g.edge_between(u, v).expect("matched pair is adjacent"));
        edges.extend(k23_anchor_edges(g, &in_d, u, v)?);
    }
    // 3|APX1| <= 4(|V(D)| - 1) + 3/2 * weighted_twice
    let bound_six = 8 * (k.vd.len() - 1) + 3 * k.weighted_twice();
    if 6 * edges.len() > bound_six {
        return invariant("APX1 exceeds its size bound");
    }
    Ok(Solution::new(edges))
}

/// A feasible spanning tree when one exists: a spanning tree of the safe
/// vertices plus one safe-neighbour edge for every unsafe vertex.
pub fn solve_tree_case(g: &LabeledGraph) -> Option<Solution> {
    let n = g.n();
    if n <= 1 {
        return Some(Solution::new(BTreeSet::new()));
    }
    if n == 2 {
        return g.edges().first().map(|e| Solution::new([e.id].into_iter().collect()));
    }
    let safe: Vec<VertexId> = (0..n).filter(|&v| g.is_vertex_safe(v)).collect();
    if safe.is_empty() {
        return None;
    }
    let mut dsu = Dsu::new(n);
    let mut edges = BTreeSet::new();
    for e in g.edges() {
        if g.is_vertex_safe(e.u) && g.is_vertex_safe(e.v) && dsu.union(e.u, e.v) {
            edges.insert(e.id);
        }
    }
    if dsu.set_size(safe[0]) != safe.len() {
        return None;
    }
    for v in (0..n).filter(|&v| !g.is_vertex_safe(v)) {
        let pendant = g.neighbors(v).iter().find(|&&(w, _)| g.is_vertex_safe(w))?;
        edges.insert(pendant.1);
    }
    Some(Solution::new(edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ear::build_long_ear_decomposition;
    use crate::feasibility::check_fvc;
    use crate::fvc::fixtures::{fix_a, fix_b};
    use crate::graph::fixtures::*;

    #[test]
    fn fix_a_partition_and_apx1() {
        let g = fix_a();
        let d = build_long_ear_decomposition(&g).unwrap();
        let k = partition_k_sets(&g, &d).unwrap();
        assert_eq!(k.k12, [4, 5].into_iter().collect());
        assert!(k.k11.is_empty() && k.k22.is_empty() && k.k23.is_empty());
        let apx = build_apx1(&g, &d, &k).unwrap();
        assert_eq!(apx.size(), 8);
        assert!(check_fvc(&g, &apx.edges));
    }

    #[test]
    fn fix_a_with_safe_zero() {
        let mut g = fix_a();
        g.set_vertex_safe(0, true);
        let d = build_long_ear_decomposition(&g).unwrap();
        let k = partition_k_sets(&g, &d).unwrap();
        assert_eq!(k.k11, [4].into_iter().collect());
        assert_eq!(k.k12, [5].into_iter().collect());
    }

    #[test]
    fn fix_b_apx1_has_ten_edges() {
        let g = fix_b();
        let d = build_long_ear_decomposition(&g).unwrap();
        let k = partition_k_sets(&g, &d).unwrap();
        assert_eq!(k.k12, [4, 5, 6].into_iter().collect());
        let apx = build_apx1(&g, &d, &k).unwrap();
        assert_eq!(apx.size(), 10);
        assert!(check_fvc(&g, &apx.edges));
    }

    #[test]
    fn k4_has_no_outside_vertices() {
        let g = complete(4);
        let d = build_long_ear_decomposition(&g).unwrap();
        let k = partition_k_sets(&g, &d).unwrap();
        assert_eq!(k.outside_count(), 0);
        assert_eq!(build_apx1(&g, &d, &k).unwrap().size(), 4);
    }

    #[test]
    fn length_three_ear_becomes_k23_pair() {
        // unsafe C4 0-1-2-3 plus the path 0-4-5-1 with 5 safe
        let mut flags = vec![false; 6];
        flags[5] = true;
        let g = LabeledGraph::from_edges(
            flags,
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 1)].map(|(u, v)| (u, v, true)),
        )
        .unwrap();
        let d = build_long_ear_decomposition(&g).unwrap();
        let k = partition_k_sets(&g, &d).unwrap();
        assert_eq!(k.vd, (0..4).collect());
        assert_eq!(k.k23, [4, 5].into_iter().collect());
        let apx = build_apx1(&g, &d, &k).unwrap();
        assert_eq!(apx.size(), 7);
        assert!(check_fvc(&g, &apx.edges));
    }

    #[test]
    fn tree_case_examples() {
        let mut star = LabeledGraph::new(5);
        for leaf in 1..5 {
            star.add_edge(0, leaf, true).unwrap();
            star.set_vertex_safe(leaf, false);
        }
        assert_eq!(solve_tree_case(&star).unwrap().size(), 4);

        let mut c4 = cycle(4);
        for v in 0..4 {
            c4.set_vertex_safe(v, false);
        }
        assert!(solve_tree_case(&c4).is_none());
        assert!(solve_tree_case(&fix_b()).is_none());
    }
}
