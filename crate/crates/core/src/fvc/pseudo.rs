//! Coloured pseudo-edges on `V(D)` and their realisation by real edges.

use std::collections::BTreeSet;

use serde::Serialize;

use super::kpartition::{d_edges, k22_edges, safe_d_edge, KPartition};
use super::rainbow::RainbowSolution;
use crate::error::{invariant, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Colour {
    /// A vertex of `K12`.
    Vertex(VertexId),
    /// A matched pair of `K23`, smaller vertex first.
    Pair(VertexId, VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PseudoEdge {
    pub colour: Colour,
    /// `u < v`, both in `V(D)`.
    pub u: VertexId,
    pub v: VertexId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PseudoEdgeSet {
    /// Sorted by colour, then endpoints; no duplicates.
    pub edges: Vec<PseudoEdge>,
}

impl PseudoEdgeSet {
    pub fn from_edges(mut edges: Vec<PseudoEdge>) -> Self {
        edges.sort();
        edges.dedup();
        PseudoEdgeSet { edges }
    }

    pub fn colours(&self) -> BTreeSet<Colour> {
        self.edges.iter().map(|e| e.colour).collect()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

fn push_pairs(out: &mut Vec<PseudoEdge>, colour: Colour, ends: &[VertexId]) {
    for (i, &a) in ends.iter().enumerate() {
        for &b in &ends[i + 1..] {
            if a != b {
                out.push(PseudoEdge { colour, u: a.min(b), v: a.max(b) });
            }
        }
    }
}

pub fn build_pseudo_edges(g: &LabeledGraph, k: &KPartition) -> Result<PseudoEdgeSet> {
    let mut in_d = vec![false; g.n()];
    for &v in &k.vd {
        in_d[v] = true;
    }
    let ends = |x: VertexId| -> Vec<VertexId> { d_edges(g, &in_d, x).into_iter().map(|(w, _)| w).collect() };
    let mut out = Vec::new();
    for &u in &k.k12 {
        let nb = ends(u);
        if nb.len() < 2 {
            return invariant(format!("K12 vertex {u} has fewer than two neighbours"));
        }
        push_pairs(&mut out, Colour::Vertex(u), &nb);
    }
    for (a, b) in k.pairs(&k.k23) {
        let colour = Colour::Pair(a, b);
        for (u, v) in [(a, b), (b, a)] {
            let (nu, nv) = (ends(u), ends(v));
            for &x in &nu {
                for &y in &nv {
                    if x != y {
                        out.push(PseudoEdge { colour, u: x.min(y), v: x.max(y) });
                    }
                }
            }
            if safe_d_edge(g, &in_d, u).is_some() {
                push_pairs(&mut out, colour, &nv);
            }
            if g.is_vertex_safe(u) {
                push_pairs(&mut out, colour, &nu);
            }
        }
    }
    Ok(PseudoEdgeSet::from_edges(out))
}

fn edge(g: &LabeledGraph, a: VertexId, b: VertexId) -> Option<EdgeId> {
    g.edge_between(a, b)
}

/// Real edges for one `K23` pseudo-edge: the first applicable of the six
/// patterns.
fn realize_pair(g: &LabeledGraph, in_d: &[bool], u: VertexId, v: VertexId, v1: VertexId, v2: VertexId) -> Option<[EdgeId; 3]> {
    let uv = edge(g, u, v)?;
    let (uv1, uv2, vv1, vv2) = (edge(g, u, v1), edge(g, u, v2), edge(g, v, v1), edge(g, v, v2));
    if let (Some(a), Some(b)) = (uv1, vv2) {
        return Some([a, b, uv]);
    }
    if let (Some(a), Some(b)) = (uv2, vv1) {
        return Some([a, b, uv]);
    }
    if g.is_vertex_safe(u) {
        if let (Some(a), Some(b)) = (uv1, uv2) {
            return Some([a, b, uv]);
        }
    }
    if g.is_vertex_safe(v) {
        if let (Some(a), Some(b)) = (vv1, vv2) {
            return Some([a, b, uv]);
        }
    }
    if let (Some(a), Some(b), Some(c)) = (vv1, vv2, safe_d_edge(g, in_d, u)) {
        return Some([a, b, c]);
    }
    if let (Some(a), Some(b), Some(c)) = (uv1, uv2, safe_d_edge(g, in_d, v)) {
        return Some([a, b, c]);
    }
    None
}

/// `S_P`: real edges standing for the chosen pseudo-edges, plus the fixed
/// attachments of `K11` and `K22`.
pub fn realize_sp(g: &LabeledGraph, k: &KPartition, pe: &PseudoEdgeSet, p: &RainbowSolution) -> Result<BTreeSet<EdgeId>> {
    let mut in_d = vec![false; g.n()];
    for &v in &k.vd {
        in_d[v] = true;
    }
    let mut sp = BTreeSet::new();
    for &idx in &p.chosen {
        let e = pe.edges[idx];
        match e.colour {
            Colour::Vertex(u) => {
                let (Some(a), Some(b)) = (edge(g, u, e.u), edge(g, u, e.v)) else {
                    return invariant(format!("pseudo-edge {}-{} does not match K12 vertex {u}", e.u, e.v));
                };
                sp.insert(a);
                sp.insert(b);
            }
            Colour::Pair(u, v) => match realize_pair(g, &in_d, u, v, e.u, e.v) {
                Some(ids) => sp.extend(ids),
                None => return invariant(format!("no realisation for pseudo-edge {}-{} of pair ({u}, {v})", e.u, e.v)),
            },
        }
    }
    for &v in &k.k11 {
        sp.insert(safe_d_edge(g, &in_d, v).expect("K11 vertex has a safe anchor"));
    }
    for (u, v) in k.pairs(&k.k22) {
        sp.extend(k22_edges(g, &in_d, u, v)?);
    }
    Ok(sp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ear::build_long_ear_decomposition;
    use crate::fvc::fixtures::fix_b;
    use crate::fvc::kpartition::partition_k_sets;
    use crate::fvc::rainbow::solve_rainbow;

    fn pe(colour: Colour, u: VertexId, v: VertexId) -> PseudoEdge {
        PseudoEdge { colour, u, v }
    }

    #[test]
    fn fix_b_pseudo_edges_and_sp() {
        let g = fix_b();
        let d = build_long_ear_decomposition(&g).unwrap();
        let k = partition_k_sets(&g, &d).unwrap();
        let set = build_pseudo_edges(&g, &k).unwrap();
        assert_eq!(
            set.edges,
            vec![pe(Colour::Vertex(4), 0, 2), pe(Colour::Vertex(5), 1, 3), pe(Colour::Vertex(6), 0, 1)]
        );
        let p = solve_rainbow(&set, &k.vd).unwrap();
        let sp = realize_sp(&g, &k, &set, &p).unwrap();
        // 04=4, 24=5, 15=6, 35=7, 06=8, 16=9
        assert_eq!(sp, (4..10).collect());
    }

    fn k23_host(u_safe: bool, anchor_safe: bool) -> (LabeledGraph, KPartition) {
        // unsafe C4 on 0..3, pair 4-5 with 4 ~ {0, 2}, 5 ~ {1}
        let mut flags = vec![false; 6];
        flags[4] = u_safe;
        flags[2] = anchor_safe;
        let g = LabeledGraph::from_edges(
            flags,
            [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 2), (4, 5), (5, 1)].map(|(u, v)| (u, v, true)),
        )
        .unwrap();
        let k = KPartition {
            vd: (0..4).collect(),
            k23: [4, 5].into_iter().collect(),
            mate: [(4, 5), (5, 4)].into_iter().collect(),
            ..Default::default()
        };
        (g, k)
    }

    #[test]
    fn distinct_anchor_rule() {
        let (g, k) = k23_host(false, false);
        let set = build_pseudo_edges(&g, &k).unwrap();
        let c = Colour::Pair(4, 5);
        assert_eq!(set.edges, vec![pe(c, 0, 1), pe(c, 1, 2)]);
    }

    #[test]
    fn safe_vertex_rule_adds_neighbour_pair() {
        let (g, k) = k23_host(true, false);
        let set = build_pseudo_edges(&g, &k).unwrap();
        assert!(set.edges.contains(&pe(Colour::Pair(4, 5), 0, 2)));
    }

    #[test]
    fn k11_and_k22_attachments() {
        let mut flags = vec![false; 8];
        flags[0] = true;
        flags[2] = true;
        let g = LabeledGraph::from_edges(
            flags,
            [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (5, 2), (5, 6), (6, 0), (7, 1), (7, 3)]
                .map(|(u, v)| (u, v, true)),
        )
        .unwrap();
        let k = KPartition {
            vd: (0..4).collect(),
            k11: [4].into_iter().collect(),
            k12: [7].into_iter().collect(),
            k22: [5, 6].into_iter().collect(),
            mate: [(5, 6), (6, 5)].into_iter().collect(),
            ..Default::default()
        };
        let set = build_pseudo_edges(&g, &k).unwrap();
        let p = solve_rainbow(&set, &k.vd).unwrap();
        let sp = realize_sp(&g, &k, &set, &p).unwrap();
        // 40 (id 4), 52 (id 6), 60 (id 8), plus 71, 73 (ids 9, 10)
        assert_eq!(sp, [4, 6, 8, 9, 10].into_iter().collect());
    }
}
