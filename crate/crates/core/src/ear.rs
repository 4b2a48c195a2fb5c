//! Open ear decompositions whose ears all have at least four edges.

use std::collections::{BTreeSet, VecDeque};

use crate::blocks::is_biconnected;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    /// For the first ear the cycle `v0 v1 .. v(l-1)` (closing edge implicit);
    /// for later ears the path from one attachment vertex to the other.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Ear {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.ears.iter().flat_map(|e| e.vertices.iter().copied()).collect()
    }

    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.ears.iter().flat_map(|e| e.edges.iter().copied()).collect()
    }

    pub fn vertex_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.vertices() {
            mask[v] = true;
        }
        mask
    }

    /// `|E(D)| <= 4/3 (|V(D)| - 1)`, compared in integers.
    pub fn satisfies_size_bound(&self) -> bool {
        3 * self.edges().len() <= 4 * (self.vertices().len().saturating_sub(1))
    }

    /// Structural validity against `g`: first ear a cycle, later ears open and
    /// attached only at their endpoints, every ear of length at least 4.
    pub fn validate(&self, g: &LabeledGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::Invariant(msg));
        let Some(first) = self.ears.first() else {
            return bad("empty ear decomposition".into());
        };
        let l = first.vertices.len();
        if l < 4 || first.edges.len() != l {
            return bad("initial cycle shorter than 4".into());
        }
        let mut seen = vec![false; g.n()];
        for (i, &v) in first.vertices.iter().enumerate() {
            let w = first.vertices[(i + 1) % l];
            if seen[v] || !edge_matches(g, first.edges[i], v, w) {
                return bad(format!("initial cycle broken at {v}"));
            }
            seen[v] = true;
        }
        for ear in &self.ears[1..] {
            let k = ear.vertices.len();
            if ear.edges.len() < 4 || ear.edges.len() + 1 != k {
                return bad("ear shorter than 4".into());
            }
            let (a, b) = (ear.vertices[0], ear.vertices[k - 1]);
            if a == b || !seen[a] || !seen[b] {
                return bad("ear is not open on the current decomposition".into());
            }
            for (i, &v) in ear.vertices.iter().enumerate() {
                if i > 0 && i + 1 < k && seen[v] {
                    return bad(format!("ear interior vertex {v} already covered"));
                }
                if i + 1 < k && !edge_matches(g, ear.edges[i], v, ear.vertices[i + 1]) {
                    return bad("ear edge mismatch".into());
                }
            }
            for &v in &ear.vertices[1..k - 1] {
                seen[v] = true;
            }
        }
        Ok(())
    }
}

fn edge_matches(g: &LabeledGraph, id: EdgeId, a: VertexId, b: VertexId) -> bool {
    g.edge(id).is_some_and(|e| e.key() == (a.min(b), a.max(b)))
}

fn edge_of(g: &LabeledGraph, a: VertexId, b: VertexId) -> EdgeId {
    g.edge_between(a, b).expect("consecutive path vertices are adjacent")
}

/// Shortest cycle of length at least 4, lexicographically smallest as a
/// vertex sequence that starts at its minimum vertex and whose second vertex
/// is smaller than its last.
fn initial_cycle(g: &LabeledGraph) -> Option<Vec<VertexId>> {
    let n = g.n();
    for len in 4..=n {
        for s in 0..n {
            let allowed: Vec<bool> = (0..n).map(|v| v >= s).collect();
            let dist = bfs_dist(g, s, &allowed);
            let mut path = vec![s];
            let mut on = vec![false; n];
            on[s] = true;
            if extend_cycle(g, len, &dist, &allowed, &mut path, &mut on) {
                return Some(path);
            }
        }
    }
    None
}

fn bfs_dist(g: &LabeledGraph, s: VertexId, allowed: &[bool]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &(y, _) in g.neighbors(x) {
            if allowed[y] && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    dist
}

fn extend_cycle(
    g: &LabeledGraph,
    len: usize,
    dist: &[usize],
    allowed: &[bool],
    path: &mut Vec<VertexId>,
    on: &mut [bool],
) -> bool {
    let s = path[0];
    let last = *path.last().expect("non-empty");
    if path.len() == len {
        return path[1] < last && g.has_edge_between(last, s);
    }
    let remaining = len - path.len();
    for y in g.neighbor_set(last) {
        if !allowed[y] || on[y] || dist[y] > remaining {
            continue;
        }
        path.push(y);
        on[y] = true;
        if extend_cycle(g, len, dist, allowed, path, on) {
            return true;
        }
        on[y] = false;
        path.pop();
    }
    false
}

/// A path `x y1 y2 y3 .. z` with `x, z` distinct vertices of the decomposition,
/// all other vertices outside it, and at least four edges. Tuples
/// `(x, y1, y2, y3)` are scanned in lexicographic order and the shortest
/// completion from `y3` is returned for the first tuple admitting one.
pub fn find_potential_open_ear_ge4(g: &LabeledGraph, d: &EarDecomposition) -> Option<Vec<VertexId>> {
    let n = g.n();
    let in_d = d.vertex_mask(n);
    for x in 0..n {
        if !in_d[x] {
            continue;
        }
        for y1 in g.neighbor_set(x) {
            if in_d[y1] {
                continue;
            }
            for y2 in g.neighbor_set(y1) {
                if in_d[y2] {
                    continue;
                }
                for y3 in g.neighbor_set(y2) {
                    if in_d[y3] || y3 == y1 {
                        continue;
                    }
                    if let Some(tail) = completion(g, &in_d, x, &[y1, y2], y3) {
                        let mut ear = vec![x, y1, y2];
                        ear.extend(tail);
                        return Some(ear);
                    }
                }
            }
        }
    }
    None
}

/// Shortest path from `y3` through vertices outside `D` (avoiding `blocked`)
/// ending at a vertex of `D` other than `x`.
fn completion(g: &LabeledGraph, in_d: &[bool], x: VertexId, blocked: &[VertexId], y3: VertexId) -> Option<Vec<VertexId>> {
    let n = g.n();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[y3] = true;
    for &b in blocked {
        seen[b] = true;
    }
    let mut q = VecDeque::from([y3]);
    while let Some(w) = q.pop_front() {
        let nbrs = g.neighbor_set(w);
        if let Some(&z) = nbrs.iter().find(|&&z| in_d[z] && z != x) {
            let mut path = vec![z, w];
            let mut cur = w;
            while prev[cur] != usize::MAX {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in &nbrs {
            if !in_d[y] && !seen[y] {
                seen[y] = true;
                prev[y] = w;
                q.push_back(y);
            }
        }
    }
    None
}

/// Builds `D` starting from the shortest cycle of length at least 4 and
/// repeatedly attaching potential open ears of length at least 4.
pub fn build_long_ear_decomposition(g: &LabeledGraph) -> Result<EarDecomposition> {
    if g.n() < 4 {
        return Err(Error::InvalidInput("ear decomposition needs at least 4 vertices".into()));
    }
    if !g.is_simple() {
        return Err(Error::InvalidInput("ear decomposition needs a simple graph".into()));
    }
    if !is_biconnected(g) {
        return Err(Error::InvalidInput("graph is not 2-vertex-connected".into()));
    }
    let cycle = initial_cycle(g).ok_or_else(|| Error::Invariant("2VC graph without a cycle of length >= 4".into()))?;
    let l = cycle.len();
    let edges = (0..l).map(|i| edge_of(g, cycle[i], cycle[(i + 1) % l])).collect();
    let mut d = EarDecomposition { ears: vec![Ear { vertices: cycle, edges }] };
    while let Some(path) = find_potential_open_ear_ge4(g, &d) {
        let edges = path.windows(2).map(|w| edge_of(g, w[0], w[1])).collect();
        d.ears.push(Ear { vertices: path, edges });
    }
    if !d.satisfies_size_bound() {
        return Err(Error::Invariant("ear decomposition exceeds 4/3 (|V(D)| - 1) edges".into()));
    }
    Ok(d)
}

/// Every vertex outside `D` has at most one neighbour outside `D`.
pub fn outside_is_matching(g: &LabeledGraph, d: &EarDecomposition) -> bool {
    let in_d = d.vertex_mask(g.n());
    (0..g.n()).filter(|&v| !in_d[v]).all(|v| g.neighbors(v).iter().filter(|&&(w, _)| !in_d[w]).count() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    pub(crate) fn fix_a() -> LabeledGraph {
        let mut flags = vec![false; 6];
        flags[5] = true;
        LabeledGraph::from_edges(
            flags,
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 4), (1, 5), (3, 5)].map(|(u, v)| (u, v, true)),
        )
        .unwrap()
    }

    fn petersen() -> LabeledGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5, true));
            edges.push((i, i + 5, true));
            edges.push((i + 5, (i + 2) % 5 + 5, true));
        }
        LabeledGraph::from_edges(vec![true; 10], edges).unwrap()
    }

    #[test]
    fn c5_is_a_single_ear() {
        let d = build_long_ear_decomposition(&cycle(5)).unwrap();
        assert_eq!(d.ears.len(), 1);
        assert_eq!(d.ears[0].vertices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn k4_starts_from_lexicographic_four_cycle() {
        let d = build_long_ear_decomposition(&complete(4)).unwrap();
        assert_eq!(d.ears.len(), 1);
        assert_eq!(d.ears[0].vertices, vec![0, 1, 2, 3]);
        assert!(d.satisfies_size_bound());
    }

    #[test]
    fn petersen_respects_size_bound() {
        let g = petersen();
        let d = build_long_ear_decomposition(&g).unwrap();
        d.validate(&g).unwrap();
        // the last two vertices are only reachable through ears of length 3
        assert_eq!(d.vertices().len(), 8);
        assert!(d.satisfies_size_bound());
        assert!(outside_is_matching(&g, &d));
    }

    #[test]
    fn c8_complement_arc_is_found() {
        let g = cycle(8);
        let d = EarDecomposition {
            ears: vec![Ear { vertices: vec![0, 1, 2, 3], edges: vec![0, 1, 2, 99] }],
        };
        // only the vertex set matters for the search
        let ear = find_potential_open_ear_ge4(&g, &d).unwrap();
        assert_eq!(ear, vec![0, 7, 6, 5, 4, 3]);
    }

    #[test]
    fn fix_a_has_four_cycle_and_no_long_ear() {
        let g = fix_a();
        let d = build_long_ear_decomposition(&g).unwrap();
        assert_eq!(d.vertices(), (0..4).collect());
        assert!(find_potential_open_ear_ge4(&g, &d).is_none());
        assert!(outside_is_matching(&g, &d));
    }

    #[test]
    fn rejects_non_2vc() {
        assert!(build_long_ear_decomposition(&bowtie()).is_err());
        assert!(build_long_ear_decomposition(&cycle(3)).is_err());
    }
}
