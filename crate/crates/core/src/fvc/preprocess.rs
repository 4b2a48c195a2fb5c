//! Reductions to 2-vertex-connected instances without forbidden cycles.
//!
//! Applied repeatedly, first applicable rule wins:
//! 1. fewer than five vertices: leave for enumeration;
//! 2. smallest cut vertex `x`: split at `x` if safe, report infeasible if not;
//! 3. forbidden cycle `u w v z` with both `u`, `v` unsafe: force `uw`, `wv` and
//!    delete `w`;
//! 4. forbidden cycle with a safe `v`: delete the edge `uw`.

use std::collections::{BTreeSet, VecDeque};

use crate::blocks::blocks;
use crate::error::{Error, Result};
use crate::feasibility::check_fvc;
use crate::graph::{EdgeId, LabeledGraph, VertexId};

/// An induced piece of the input, relabelled `0..n`, with the original edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubInstance {
    pub graph: LabeledGraph,
    /// Local vertex to input vertex.
    pub orig_vertices: Vec<VertexId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReconstructionPlan {
    /// Edges every optimum contains, bought when a degree-2 vertex is removed.
    pub forced: BTreeSet<EdgeId>,
    pub splits: usize,
    /// Input vertices removed by the unsafe forbidden-cycle rule.
    pub deleted_vertices: Vec<VertexId>,
    /// Edges dropped by the safe forbidden-cycle rule.
    pub deleted_edges: Vec<EdgeId>,
}

impl ReconstructionPlan {
    /// Union of the sub-solutions and the forced edges.
    pub fn stitch<'a>(&self, parts: impl IntoIterator<Item = &'a BTreeSet<EdgeId>>) -> BTreeSet<EdgeId> {
        let mut out = self.forced.clone();
        for p in parts {
            out.extend(p.iter().copied());
        }
        out
    }
}

/// Smallest pair `w < z` of non-adjacent degree-2 vertices with the same two
/// neighbours `u < v`. Returned as `(u, w, v, z)`.
pub fn find_forbidden_cycle(g: &LabeledGraph) -> Option<(VertexId, VertexId, VertexId, VertexId)> {
    let n = g.n();
    let pair = |x: VertexId| -> Option<(VertexId, VertexId)> {
        let nb = g.neighbor_set(x);
        (g.degree(x) == 2 && nb.len() == 2).then(|| {
            let mut it = nb.into_iter();
            (it.next().expect("two"), it.next().expect("two"))
        })
    };
    for w in 0..n {
        let Some(nw) = pair(w) else { continue };
        for z in w + 1..n {
            if pair(z) == Some(nw) && !g.has_edge_between(w, z) {
                return Some((nw.0, w, nw.1, z));
            }
        }
    }
    None
}

fn induce(cur: &SubInstance, keep: &[VertexId]) -> Result<SubInstance> {
    let (graph, map) = cur.graph.induced_subgraph(keep)?;
    Ok(SubInstance { graph, orig_vertices: map.iter().map(|&i| cur.orig_vertices[i]).collect() })
}

/// Splits `g` into reduced sub-instances. Errors when `g` is disconnected or
/// has an unsafe cut vertex.
pub fn preprocess(g: &LabeledGraph) -> Result<(Vec<SubInstance>, ReconstructionPlan)> {
    if !g.is_connected() {
        return Err(Error::Infeasible("graph is not connected".into()));
    }
    if !check_fvc(g, &g.edge_id_set()) {
        return Err(Error::Infeasible("an unsafe vertex is a cut vertex of the whole graph".into()));
    }
    let mut plan = ReconstructionPlan::default();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([SubInstance { graph: g.clone(), orig_vertices: (0..g.n()).collect() }]);
    while let Some(cur) = queue.pop_front() {
        let h = &cur.graph;
        let n = h.n();
        if n < 5 {
            out.push(cur);
            continue;
        }
        if let Some(&x) = blocks(h).cut_vertices.iter().next() {
            if !h.is_vertex_safe(x) {
                return Err(Error::Infeasible(format!("unsafe cut vertex {}", cur.orig_vertices[x])));
            }
            let others: Vec<VertexId> = (0..n).filter(|&v| v != x).collect();
            let (rest, _) = h.induced_subgraph(&others)?;
            let (label, _) = rest.components();
            // the component holding the smallest remaining vertex goes first
            let mut first: Vec<VertexId> = others.iter().zip(&label).filter(|(_, &l)| l == label[0]).map(|(&v, _)| v).collect();
            let mut second: Vec<VertexId> = others.iter().zip(&label).filter(|(_, &l)| l != label[0]).map(|(&v, _)| v).collect();
            first.push(x);
            second.push(x);
            first.sort_unstable();
            second.sort_unstable();
            plan.splits += 1;
            queue.push_back(induce(&cur, &first)?);
            queue.push_back(induce(&cur, &second)?);
            continue;
        }
        if let Some((u, mut w, v, mut z)) = find_forbidden_cycle(h) {
            if !h.is_vertex_safe(u) && !h.is_vertex_safe(v) {
                plan.forced.insert(h.edge_between(u, w).expect("cycle edge"));
                plan.forced.insert(h.edge_between(w, v).expect("cycle edge"));
                plan.deleted_vertices.push(cur.orig_vertices[w]);
                let keep: Vec<VertexId> = (0..n).filter(|&x| x != w).collect();
                queue.push_back(induce(&cur, &keep)?);
                continue;
            }
            // the safe end plays v; the smaller one when both are safe
            let (u, _v) = if h.is_vertex_safe(u) { (v, u) } else { (u, v) };
            if h.is_vertex_safe(w) && !h.is_vertex_safe(z) {
                std::mem::swap(&mut w, &mut z);
            }
            let uw = h.edge_between(u, w).expect("cycle edge");
            plan.deleted_edges.push(uw);
            let graph = h.without_edges(&BTreeSet::from([uw]));
            queue.push_back(SubInstance { graph, orig_vertices: cur.orig_vertices });
            continue;
        }
        out.push(cur);
    }
    Ok((out, plan))
}
