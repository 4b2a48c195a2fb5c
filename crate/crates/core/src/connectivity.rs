//! Edge connectivity through unit-capacity augmenting paths.

use std::collections::VecDeque;

use crate::graph::{LabeledGraph, VertexId};

/// Residual network of an undirected multigraph: each edge becomes a pair of
/// opposite arcs of capacity one.
struct FlowNet {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<VertexId>,
    cap: Vec<i32>,
}

const NIL: usize = usize::MAX;

impl FlowNet {
    fn new(g: &LabeledGraph) -> Self {
        let mut net = FlowNet { head: vec![NIL; g.n()], next: Vec::new(), to: Vec::new(), cap: Vec::new() };
        for e in g.edges() {
            net.arc(e.u, e.v);
            net.arc(e.v, e.u);
        }
        net
    }

    fn arc(&mut self, a: VertexId, b: VertexId) {
        self.to.push(b);
        self.cap.push(1);
        self.next.push(self.head[a]);
        self.head[a] = self.to.len() - 1;
    }

    fn reset(&mut self) {
        self.cap.iter_mut().for_each(|c| *c = 1);
    }

    /// Max flow from `s` to `t`, stopping once `limit` is reached.
    fn max_flow(&mut self, s: VertexId, t: VertexId, limit: usize) -> usize {
        let n = self.head.len();
        let mut flow = 0;
        let mut via = vec![NIL; n];
        while flow < limit {
            via.iter_mut().for_each(|x| *x = NIL);
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                let mut a = self.head[x];
                while a != NIL {
                    let y = self.to[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        via[y] = a;
                        queue.push_back(y);
                    }
                    a = self.next[a];
                }
            }
            if !seen[t] {
                break;
            }
            let mut y = t;
            while y != s {
                let a = via[y];
                self.cap[a] -= 1;
                // arcs are created in pairs, so the reverse arc is a ^ 1
                self.cap[a ^ 1] += 1;
                y = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Every edge cut has at least `k` edges. A graph with at most one vertex is
/// k-edge-connected for every k.
pub fn is_k_edge_connected(g: &LabeledGraph, k: usize) -> bool {
    let n = g.n();
    if n <= 1 || k == 0 {
        return true;
    }
    if !g.is_connected() {
        return false;
    }
    if (0..n).any(|v| g.degree(v) < k) {
        return false;
    }
    let mut net = FlowNet::new(g);
    (1..n).all(|t| {
        net.reset();
        net.max_flow(0, t, k) >= k
    })
}

/// Global edge connectivity, capped at `cap`.
pub fn edge_connectivity(g: &LabeledGraph, cap: usize) -> usize {
    let n = g.n();
    if n <= 1 {
        return cap;
    }
    let mut net = FlowNet::new(g);
    let mut best = cap;
    for t in 1..n {
        net.reset();
        best = best.min(net.max_flow(0, t, best));
        if best == 0 {
            break;
        }
    }
    best
}
