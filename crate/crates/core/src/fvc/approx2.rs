//! The rainbow-based second approximation: buy good cycles, make the large
//! component 2-vertex-connected, attach the remaining singletons, then replace
//! pseudo-edges by real edges.

use std::collections::BTreeSet;

use serde::Serialize;

use super::goodcycle::{find_good_cycle, precondition, Partition};
use super::kpartition::KPartition;
use super::pseudo::{build_pseudo_edges, realize_sp, PseudoEdgeSet};
use super::rainbow::{component_sets, solve_rainbow, RainbowSolution};
use crate::blocks::block_count;
use crate::error::{invariant, Result};
use crate::feasibility::{check_fvc, Solution};
use crate::graph::{EdgeId, LabeledGraph, VertexId};

/// `g` restricted to the edges in `real` (all inside `keep`), plus the chosen
/// pseudo-edges under ids past the largest real id.
fn overlay(
    g: &LabeledGraph,
    keep: &BTreeSet<VertexId>,
    real: impl IntoIterator<Item = EdgeId>,
    pe: &PseudoEdgeSet,
    p: &RainbowSolution,
) -> LabeledGraph {
    let mut h = LabeledGraph::with_vertex_flags(g.vertex_flags().to_vec());
    for id in real {
        let e = g.edge(id).expect("real edge");
        if keep.contains(&e.u) && keep.contains(&e.v) {
            h.add_edge_with_id(id, e.u, e.v, e.safe).expect("fresh id");
        }
    }
    let base = g.max_edge_id().map_or(0, |m| m + 1);
    for &i in &p.chosen {
        let e = pe.edges[i];
        if keep.contains(&e.u) && keep.contains(&e.v) {
            h.add_edge_with_id(base + i, e.u, e.v, true).expect("fresh id");
        }
    }
    h
}

fn induced_ids(g: &LabeledGraph, keep: &BTreeSet<VertexId>) -> Vec<EdgeId> {
    g.edges().iter().filter(|e| keep.contains(&e.u) && keep.contains(&e.v)).map(|e| e.id).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alg1Output {
    /// Singletons of the rainbow forest.
    pub y: BTreeSet<VertexId>,
    pub x1: BTreeSet<VertexId>,
    pub s1: BTreeSet<EdgeId>,
    /// Vertices of the large component.
    pub a: BTreeSet<VertexId>,
    pub cycles: usize,
}

fn pipeline_components(
    g: &LabeledGraph,
    vd: &BTreeSet<VertexId>,
    pe: &PseudoEdgeSet,
    p: &RainbowSolution,
    s1: &BTreeSet<EdgeId>,
) -> Vec<BTreeSet<VertexId>> {
    let pseudo = p.chosen.iter().map(|&i| (pe.edges[i].u, pe.edges[i].v));
    let real = s1.iter().map(|&id| {
        let e = g.edge(id).expect("real edge");
        (e.u, e.v)
    });
    component_sets(vd, pseudo.chain(real))
}

/// Buys good cycles until none exists.
pub fn algorithm1_buy_good_cycles(
    g: &LabeledGraph,
    vd: &BTreeSet<VertexId>,
    pe: &PseudoEdgeSet,
    p: &RainbowSolution,
) -> Result<Alg1Output> {
    let mut s1 = BTreeSet::new();
    let mut cycles = 0;
    let comps = loop {
        let comps = pipeline_components(g, vd, pe, p, &s1);
        let part = Partition::new(g.n(), comps.clone())?;
        match find_good_cycle(g, &part)? {
            Some(c) => {
                s1.extend(c);
                cycles += 1;
            }
            None if precondition(g, &part) => return invariant("no good cycle found although one must exist"),
            None => break comps,
        }
    };
    let large: Vec<&BTreeSet<VertexId>> = comps.iter().filter(|c| c.len() >= 2).collect();
    if large.len() != 1 {
        return invariant(format!("{} large components after buying good cycles", large.len()));
    }
    let a = large[0].clone();
    let rest: BTreeSet<VertexId> = vd.difference(&a).copied().collect();
    if g.edges().iter().any(|e| rest.contains(&e.u) && rest.contains(&e.v)) {
        return invariant("vertices outside the large component are not independent");
    }
    // blocks(V(D), P + S1) <= |V(D)| - alpha - alpha_large + 1
    let h = overlay(g, vd, s1.iter().copied(), pe, p);
    if block_count(&h) + p.alpha + p.alpha_large > vd.len() + 1 {
        return invariant("block count after buying good cycles exceeds its bound");
    }
    let x1: BTreeSet<VertexId> = p.singletons.intersection(&a).copied().collect();
    // |S1| <= 2 alpha_large + 3/2 |X1| - 2
    if 2 * s1.len() + 4 > 4 * p.alpha_large + 3 * x1.len() {
        return invariant("good cycles use too many edges");
    }
    Ok(Alg1Output { y: p.singletons.clone(), x1, s1, a, cycles })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alg2Output {
    pub x2: BTreeSet<VertexId>,
    pub s2: BTreeSet<EdgeId>,
}

/// Grows the large component by vertices and edge pairs until its induced
/// graph plus `P` is a single block, then adds block-reducing edges.
pub fn algorithm2_make_2vc(
    g: &LabeledGraph,
    vd: &BTreeSet<VertexId>,
    pe: &PseudoEdgeSet,
    p: &RainbowSolution,
    s1: &BTreeSet<EdgeId>,
    a: &BTreeSet<VertexId>,
) -> Result<Alg2Output> {
    let mut w = a.clone();
    let mut x2 = BTreeSet::new();
    let mut s2: BTreeSet<EdgeId> = BTreeSet::new();
    let full_blocks = |w: &BTreeSet<VertexId>| block_count(&overlay(g, w, induced_ids(g, w), pe, p));
    loop {
        let current = full_blocks(&w);
        if current <= 1 {
            break;
        }
        let candidates: Vec<VertexId> = vd.difference(&w).copied().collect();
        let Some(v) = candidates.into_iter().find(|&v| {
            let mut w2 = w.clone();
            w2.insert(v);
            full_blocks(&w2) < current
        }) else {
            return invariant("no vertex reduces the block count");
        };
        let bought: BTreeSet<EdgeId> = s1.union(&s2).copied().collect();
        let before = block_count(&overlay(g, &w, bought.iter().copied(), pe, p));
        let mut w2 = w.clone();
        w2.insert(v);
        let into_w: Vec<(VertexId, EdgeId)> = g.neighbors(v).iter().copied().filter(|(x, _)| w.contains(x)).collect();
        let mut pair = None;
        'search: for (i, &(x, e1)) in into_w.iter().enumerate() {
            for &(y, e2) in &into_w[i + 1..] {
                if x == y {
                    continue;
                }
                let trial = bought.iter().copied().chain([e1, e2]);
                if block_count(&overlay(g, &w2, trial, pe, p)) < before {
                    pair = Some((e1, e2));
                    break 'search;
                }
            }
        }
        let Some((e1, e2)) = pair else {
            return invariant(format!("no edge pair attaches vertex {v} with fewer blocks"));
        };
        s2.insert(e1);
        s2.insert(e2);
        x2.insert(v);
        w = w2;
    }
    // one ascending pass suffices: blocks only merge, so an edge that does not
    // help now never helps later
    for id in induced_ids(g, &w) {
        if s1.contains(&id) || s2.contains(&id) {
            continue;
        }
        let bought: Vec<EdgeId> = s1.iter().chain(s2.iter()).copied().collect();
        let before = block_count(&overlay(g, &w, bought.iter().copied(), pe, p));
        let after = block_count(&overlay(g, &w, bought.into_iter().chain([id]), pe, p));
        if after < before {
            s2.insert(id);
        }
    }
    let bought: BTreeSet<EdgeId> = s1.union(&s2).copied().collect();
    let h = overlay(g, &w, bought.iter().copied(), pe, p);
    if block_count(&h) != 1 {
        return invariant(format!("large component ends with {} blocks", block_count(&h)));
    }
    Ok(Alg2Output { x2, s2 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alg3Output {
    pub x3: BTreeSet<VertexId>,
    pub s3: BTreeSet<EdgeId>,
    pub alpha1p: usize,
    pub alpha2p: usize,
}

/// Attaches each leftover vertex of `V(D)` by one edge to a safe vertex or by
/// two edges otherwise.
pub fn algorithm3_make_feasible(
    g: &LabeledGraph,
    vd: &BTreeSet<VertexId>,
    a: &BTreeSet<VertexId>,
    x2: &BTreeSet<VertexId>,
) -> Result<Alg3Output> {
    let w: BTreeSet<VertexId> = a.union(x2).copied().collect();
    let mut out = Alg3Output { x3: vd.difference(&w).copied().collect(), s3: BTreeSet::new(), alpha1p: 0, alpha2p: 0 };
    for &v in &out.x3 {
        let into_w: Vec<(VertexId, EdgeId)> = g.neighbors(v).iter().copied().filter(|(x, _)| w.contains(x)).collect();
        if let Some(&(_, id)) = into_w.iter().find(|&&(x, _)| g.is_vertex_safe(x)) {
            out.s3.insert(id);
            out.alpha1p += 1;
        } else if into_w.len() >= 2 {
            out.s3.insert(into_w[0].1);
            out.s3.insert(into_w[1].1);
            out.alpha2p += 1;
        } else {
            return invariant(format!("vertex {v} has fewer than two neighbours in the large component"));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FvcPipelineState {
    pub s1: BTreeSet<EdgeId>,
    pub s2: BTreeSet<EdgeId>,
    pub s3: BTreeSet<EdgeId>,
    pub sp: BTreeSet<EdgeId>,
    pub x1: BTreeSet<VertexId>,
    pub x2: BTreeSet<VertexId>,
    pub x3: BTreeSet<VertexId>,
    pub a: BTreeSet<VertexId>,
    pub alpha: usize,
    pub alpha_large: usize,
    pub alpha1p: usize,
    pub alpha2p: usize,
    pub good_cycles: usize,
}

impl FvcPipelineState {
    pub fn alphap(&self) -> usize {
        self.alpha1p + self.alpha2p
    }

    pub fn edges(&self) -> BTreeSet<EdgeId> {
        let mut out = self.sp.clone();
        out.extend(self.s1.iter().chain(&self.s2).chain(&self.s3).copied());
        out
    }

    /// Twice the size bound: `2(|V(D)|-1) + 2|S_P| + 2(alpha-1) - (alpha - alpha') - alpha_large - 2 alpha'_1`.
    pub fn size_bound_twice(&self, vd: usize) -> i64 {
        let (vd, sp, a, al, ap, a1) =
            (vd as i64, self.sp.len() as i64, self.alpha as i64, self.alpha_large as i64, self.alphap() as i64, self.alpha1p as i64);
        2 * (vd - 1) + 2 * sp + 2 * (a - 1) - (a - ap) - al - 2 * a1
    }

    /// `max{|S_P| + alpha - 1, 2|K12| - 2 alpha_large + alpha'_1 + 2 alpha'_2, n}`.
    pub fn lower_bound(&self, n: usize, k: &KPartition) -> usize {
        let first = self.sp.len() + self.alpha - 1;
        let second = (2 * k.k12.len() + self.alpha1p + 2 * self.alpha2p).saturating_sub(2 * self.alpha_large);
        first.max(second).max(n)
    }
}

/// `|K11| + 2|K12| + 2|K22| + 3/2 |K23|`, the alternative closed form.
pub fn sp_formula_alt(k: &KPartition) -> usize {
    k.k11.len() + 2 * k.k12.len() + 2 * k.k22.len() + 3 * k.k23.len() / 2
}

/// Runs the whole second approximation on a preprocessed instance.
pub fn run_approx2(g: &LabeledGraph, k: &KPartition) -> Result<(Solution, FvcPipelineState)> {
    let pe = build_pseudo_edges(g, k)?;
    if pe.is_empty() {
        return invariant("the second approximation needs at least one pseudo-edge");
    }
    let p = solve_rainbow(&pe, &k.vd)?;
    let a1 = algorithm1_buy_good_cycles(g, &k.vd, &pe, &p)?;
    let a2 = algorithm2_make_2vc(g, &k.vd, &pe, &p, &a1.s1, &a1.a)?;
    let a3 = algorithm3_make_feasible(g, &k.vd, &a1.a, &a2.x2)?;
    let sp = realize_sp(g, k, &pe, &p)?;
    let state = FvcPipelineState {
        s1: a1.s1,
        s2: a2.s2,
        s3: a3.s3,
        sp,
        x1: a1.x1,
        x2: a2.x2,
        x3: a3.x3,
        a: a1.a,
        alpha: p.alpha,
        alpha_large: p.alpha_large,
        alpha1p: a3.alpha1p,
        alpha2p: a3.alpha2p,
        good_cycles: a1.cycles,
    };
    if state.alpha != state.alpha_large + state.x1.len() + state.x2.len() + state.x3.len() {
        return invariant("component count does not split over X1, X2, X3");
    }
    let edges = state.edges();
    if !check_fvc(g, &edges) {
        return invariant("APX2 is not feasible");
    }
    if 2 * edges.len() as i64 > state.size_bound_twice(k.vd.len()) {
        return invariant("APX2 exceeds its size bound");
    }
    Ok((Solution::new(edges), state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ear::build_long_ear_decomposition;
    use crate::fvc::fixtures::fix_b;
    use crate::fvc::kpartition::partition_k_sets;
    use crate::fvc::pseudo::{Colour, PseudoEdge};

    #[test]
    fn fix_b_trace() {
        let g = fix_b();
        let d = build_long_ear_decomposition(&g).unwrap();
        let k = partition_k_sets(&g, &d).unwrap();
        let pe = build_pseudo_edges(&g, &k).unwrap();
        let p = solve_rainbow(&pe, &k.vd).unwrap();
        assert_eq!((p.alpha, p.alpha_large), (1, 1));
        let a1 = algorithm1_buy_good_cycles(&g, &k.vd, &pe, &p).unwrap();
        assert!(a1.s1.is_empty() && a1.x1.is_empty());
        assert_eq!(a1.a, (0..4).collect());
        let a2 = algorithm2_make_2vc(&g, &k.vd, &pe, &p, &a1.s1, &a1.a).unwrap();
        assert!(a2.x2.is_empty());
        assert_eq!(a2.s2, [1, 2].into_iter().collect());
        let (sol, state) = run_approx2(&g, &k).unwrap();
        assert_eq!(sol.size(), 8);
        assert_eq!(state.lower_bound(g.n(), &k), 7);
        assert_eq!(sp_formula_alt(&k), 6);
    }

    #[test]
    fn two_pairs_merge_through_a_two_cycle() {
        // C4 0-1-2-3 with pseudo-edges 01 and 23: cross edges 12, 30
        let g = crate::graph::fixtures::cycle(4);
        let vd: BTreeSet<VertexId> = (0..4).collect();
        let pe = PseudoEdgeSet::from_edges(vec![
            PseudoEdge { colour: Colour::Vertex(10), u: 0, v: 1 },
            PseudoEdge { colour: Colour::Vertex(11), u: 2, v: 3 },
        ]);
        let p = solve_rainbow(&pe, &vd).unwrap();
        let a1 = algorithm1_buy_good_cycles(&g, &vd, &pe, &p).unwrap();
        assert_eq!(a1.s1.len(), 2);
        assert_eq!(a1.a, vd);
    }

    #[test]
    fn already_biconnected_needs_nothing() {
        let g = crate::graph::fixtures::cycle(3);
        let vd: BTreeSet<VertexId> = (0..3).collect();
        let c = Colour::Vertex(10);
        let pe = PseudoEdgeSet::from_edges(vec![
            PseudoEdge { colour: c, u: 0, v: 1 },
            PseudoEdge { colour: Colour::Vertex(11), u: 1, v: 2 },
            PseudoEdge { colour: Colour::Vertex(12), u: 0, v: 2 },
        ]);
        let p = solve_rainbow(&pe, &vd).unwrap();
        let a2 = algorithm2_make_2vc(&g, &vd, &pe, &p, &BTreeSet::new(), &vd).unwrap();
        assert!(a2.x2.is_empty() && a2.s2.is_empty());
    }

    #[test]
    fn algorithm3_cases() {
        // path 0-1 inside A, vertex 2 adjacent to both
        let mut g = LabeledGraph::from_edges(vec![false; 3], [(0, 1, true), (2, 0, true), (2, 1, true)]).unwrap();
        let vd: BTreeSet<VertexId> = (0..3).collect();
        let a: BTreeSet<VertexId> = [0, 1].into_iter().collect();
        let none = BTreeSet::new();
        let out = algorithm3_make_feasible(&g, &vd, &a, &none).unwrap();
        assert_eq!((out.alpha1p, out.alpha2p, out.s3.len()), (0, 1, 2));
        g.set_vertex_safe(1, true);
        let out = algorithm3_make_feasible(&g, &vd, &a, &none).unwrap();
        assert_eq!((out.alpha1p, out.alpha2p), (1, 0));
        assert_eq!(out.s3, [2].into_iter().collect());
        let out = algorithm3_make_feasible(&g, &vd, &vd, &none).unwrap();
        assert!(out.x3.is_empty() && out.s3.is_empty());
    }
}
