//! Undirected multigraph with safety labels on vertices and edges.
//!
//! Edge identifiers are stable: every derived graph (subgraph, induced
//! subgraph, contraction) keeps the identifiers of the edges it inherits, so
//! solutions on derived graphs are already expressed in original ids.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub safe: bool,
}

impl Edge {
    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Endpoints as an ordered pair `(min, max)`.
    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertex_safe: Vec<bool>,
    // sorted by id
    edges: Vec<Edge>,
    // per vertex, sorted by edge id
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

#[derive(Clone, Debug)]
pub struct ContractionResult {
    pub graph: LabeledGraph,
    /// original vertex -> contracted vertex
    pub vertex_map: Vec<VertexId>,
    /// contracted edge id -> original edge id
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

impl LabeledGraph {
    /// `n` vertices, all safe, no edges.
    pub fn new(n: usize) -> Self {
        Self::with_vertex_flags(vec![true; n])
    }

    pub fn with_vertex_flags(vertex_safe: Vec<bool>) -> Self {
        let n = vertex_safe.len();
        LabeledGraph { vertex_safe, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Builds a graph whose edge ids follow the iteration order (0, 1, ...).
    pub fn from_edges<I>(vertex_safe: Vec<bool>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, bool)>,
    {
        let mut g = Self::with_vertex_flags(vertex_safe);
        for (u, v, safe) in edges {
            g.add_edge(u, v, safe)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.vertex_safe.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex_safe(&self, v: VertexId) -> bool {
        self.vertex_safe[v]
    }

    pub fn vertex_flags(&self) -> &[bool] {
        &self.vertex_safe
    }

    pub fn set_vertex_safe(&mut self, v: VertexId, safe: bool) {
        self.vertex_safe[v] = safe;
    }

    pub fn set_edge_safe(&mut self, id: EdgeId, safe: bool) -> Result<()> {
        let pos = self.position(id).ok_or(Error::UnknownEdge(id))?;
        self.edges[pos].safe = safe;
        Ok(())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge_id_set(&self) -> BTreeSet<EdgeId> {
        self.edge_ids().collect()
    }

    fn position(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.position(id).map(|p| &self.edges[p])
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.position(id).is_some()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.last().map(|e| e.id)
    }

    /// Incident `(neighbour, edge id)` pairs, ascending by edge id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Distinct neighbours of `v` in ascending order.
    pub fn neighbor_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.adj[v].iter().map(|&(w, _)| w).collect()
    }

    /// Lowest-id edge between `u` and `v`.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, id)| id)
    }

    pub fn has_edge_between(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, safe: bool) -> Result<EdgeId> {
        let id = self.max_edge_id().map_or(0, |m| m + 1);
        self.add_edge_with_id(id, u, v, safe)?;
        Ok(id)
    }

    pub fn add_edge_with_id(&mut self, id: EdgeId, u: VertexId, v: VertexId, safe: bool) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        let pos = match self.edges.binary_search_by_key(&id, |e| e.id) {
            Ok(_) => return Err(Error::InvalidInput(format!("duplicate edge id {id}"))),
            Err(p) => p,
        };
        self.edges.insert(pos, Edge { id, u, v, safe });
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let at = list.partition_point(|&(_, e)| e < id);
            list.insert(at, (b, id));
        }
        Ok(())
    }

    /// True when no two edges share the same endpoint pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.key()))
    }

    /// Same vertex set, only the listed edges.
    pub fn spanning_subgraph<'a, I>(&self, ids: I) -> Result<LabeledGraph>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        let mut g = Self::with_vertex_flags(self.vertex_safe.clone());
        for &id in ids {
            let e = self.edge(id).ok_or(Error::UnknownEdge(id))?;
            g.add_edge_with_id(e.id, e.u, e.v, e.safe)?;
        }
        Ok(g)
    }

    /// Graph minus the listed edges.
    pub fn without_edges(&self, removed: &BTreeSet<EdgeId>) -> LabeledGraph {
        let mut g = Self::with_vertex_flags(self.vertex_safe.clone());
        for e in self.edges.iter().filter(|e| !removed.contains(&e.id)) {
            g.add_edge_with_id(e.id, e.u, e.v, e.safe).expect("edge of a valid graph");
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    /// Returns the graph and the new-to-original vertex map. Edge ids are kept.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<(LabeledGraph, Vec<VertexId>)> {
        let n = self.n();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if local[v] != usize::MAX {
                return Err(Error::InvalidInput(format!("vertex {v} listed twice")));
            }
            local[v] = i;
        }
        let mut g = Self::with_vertex_flags(vertices.iter().map(|&v| self.vertex_safe[v]).collect());
        for e in &self.edges {
            if local[e.u] != usize::MAX && local[e.v] != usize::MAX {
                g.add_edge_with_id(e.id, local[e.u], local[e.v], e.safe)?;
            }
        }
        Ok((g, vertices.to_vec()))
    }

    /// Component label per vertex (labels ordered by smallest member) and the
    /// number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// Connected over all `n` vertices. The empty and one-vertex graphs count
    /// as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn contract_vertices(&self, set: &BTreeSet<VertexId>) -> Result<ContractionResult> {
        if set.is_empty() {
            return Err(Error::InvalidInput("cannot contract an empty vertex set".into()));
        }
        let n = self.n();
        let mut dsu = Dsu::new(n);
        let mut it = set.iter();
        let first = *it.next().expect("non-empty");
        if first >= n {
            return Err(Error::VertexOutOfRange { vertex: first, n });
        }
        for &v in it {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            dsu.union(first, v);
        }
        Ok(self.contract_by(&mut dsu))
    }

    /// Contracts every component of `(V, F)` into one vertex. Loops are
    /// dropped, parallel edges kept.
    pub fn contract_edges(&self, f: &BTreeSet<EdgeId>) -> Result<ContractionResult> {
        let mut dsu = Dsu::new(self.n());
        for &id in f {
            let e = self.edge(id).ok_or(Error::UnknownEdge(id))?;
            dsu.union(e.u, e.v);
        }
        Ok(self.contract_by(&mut dsu))
    }

    fn contract_by(&self, dsu: &mut Dsu) -> ContractionResult {
        let n = self.n();
        // contracted vertices are numbered by their smallest member
        let mut root_to_new = vec![usize::MAX; n];
        let mut vertex_map = vec![0; n];
        let mut flags: Vec<bool> = Vec::new();
        for v in 0..n {
            let r = dsu.find(v);
            if root_to_new[r] == usize::MAX {
                root_to_new[r] = flags.len();
                flags.push(true);
            }
            vertex_map[v] = root_to_new[r];
            let c = vertex_map[v];
            flags[c] = flags[c] && self.vertex_safe[v];
        }
        let mut graph = Self::with_vertex_flags(flags);
        let mut edge_map = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
            if a != b {
                graph.add_edge_with_id(e.id, a, b, e.safe).expect("fresh contracted edge");
                edge_map.insert(e.id, e.id);
            }
        }
        ContractionResult { graph, vertex_map, edge_map }
    }
}
