//! Biconnected components (blocks), cut vertices and bridges of multigraphs.
//!
//! Parallel edges between the same pair of vertices lie on a common 2-cycle,
//! so they always end up in one block.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Edge sets of the blocks, each sorted; blocks ordered by smallest edge id.
    pub blocks: Vec<BTreeSet<EdgeId>>,
    pub cut_vertices: BTreeSet<VertexId>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Vertex sets of the blocks, in block order.
    pub fn block_vertices(&self, g: &LabeledGraph) -> Vec<BTreeSet<VertexId>> {
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .flat_map(|&id| {
                        let e = g.edge(id).expect("block edge");
                        [e.u, e.v]
                    })
                    .collect()
            })
            .collect()
    }
}

struct Frame {
    v: VertexId,
    parent_edge: Option<EdgeId>,
    next: usize,
}

/// Blocks and cut vertices via an iterative Tarjan traversal. Works on
/// disconnected graphs too; isolated vertices contribute no block.
pub fn blocks(g: &LabeledGraph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut out = BlockDecomposition::default();

    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        let mut stack = vec![Frame { v: root, parent_edge: None, next: 0 }];
        while let Some(top) = stack.last_mut() {
            let v = top.v;
            if let Some(&(w, id)) = g.neighbors(v).get(top.next) {
                top.next += 1;
                if Some(id) == top.parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(id);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push(Frame { v: w, parent_edge: Some(id), next: 0 });
                } else if disc[w] < disc[v] {
                    edge_stack.push(id);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            let done = stack.pop().expect("non-empty");
            if let Some(parent) = stack.last() {
                let u = parent.v;
                low[u] = low[u].min(low[done.v]);
                if low[done.v] >= disc[u] {
                    let tree_edge = done.parent_edge.expect("child frame has a parent edge");
                    let mut block = BTreeSet::new();
                    while let Some(e) = edge_stack.pop() {
                        block.insert(e);
                        if e == tree_edge {
                            break;
                        }
                    }
                    out.blocks.push(block);
                    if u != root {
                        out.cut_vertices.insert(u);
                    }
                }
            }
        }
        if root_children >= 2 {
            out.cut_vertices.insert(root);
        }
    }
    out.blocks.sort_by_key(|b| *b.iter().next().expect("blocks are non-empty"));
    out
}

pub fn block_count(g: &LabeledGraph) -> usize {
    blocks(g).len()
}

/// Cut vertices of a connected graph.
pub fn cut_vertices(g: &LabeledGraph) -> Result<BTreeSet<VertexId>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(blocks(g).cut_vertices)
}

/// Edges whose removal disconnects their component: exactly the one-edge blocks.
pub fn bridges(g: &LabeledGraph) -> BTreeSet<EdgeId> {
    blocks(g).blocks.into_iter().filter(|b| b.len() == 1).flat_map(|b| b.into_iter()).collect()
}

/// 2-vertex-connected: at least 3 vertices, connected, no cut vertex.
pub fn is_biconnected(g: &LabeledGraph) -> bool {
    g.n() >= 3 && g.is_connected() && blocks(g).cut_vertices.is_empty()
}

/// 2-edge-connected: connected and bridgeless (one vertex counts as 2EC).
pub fn is_two_edge_connected(g: &LabeledGraph) -> bool {
    g.is_connected() && bridges(g).is_empty()
}

/// An edge of `g` outside `h_edges` whose addition lowers the block count of
/// the spanning subgraph `(V, h_edges)`. Candidates are tried by ascending id.
pub fn find_block_reducing_edge(g: &LabeledGraph, h_edges: &BTreeSet<EdgeId>) -> Result<EdgeId> {
    let h = g.spanning_subgraph(h_edges)?;
    if !h.is_connected() {
        return Err(Error::NoReducingEdge);
    }
    let before = block_count(&h);
    if before <= block_count(g) {
        return Err(Error::NoReducingEdge);
    }
    for e in g.edges() {
        if h_edges.contains(&e.id) {
            continue;
        }
        let mut h2 = h.clone();
        h2.add_edge_with_id(e.id, e.u, e.v, e.safe)?;
        if block_count(&h2) < before {
            return Ok(e.id);
        }
    }
    Err(Error::NoReducingEdge)
}
