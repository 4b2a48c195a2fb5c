//! Good cycles of a vertex partition, found through a coarser partition in
//! which a nice cycle is searched and then expanded.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{invariant, Result};
use crate::graph::{EdgeId, LabeledGraph, VertexId};

/// A partition of a vertex subset `W` of a graph. Only edges with both ends in
/// `W` are considered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<BTreeSet<VertexId>>,
    part_of: Vec<Option<usize>>,
}

impl Partition {
    /// Parts are reordered by smallest vertex. Empty parts are dropped.
    pub fn new(n: usize, parts: impl IntoIterator<Item = BTreeSet<VertexId>>) -> Result<Self> {
        let mut parts: Vec<_> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        parts.sort_by_key(|p| *p.iter().next().expect("nonempty"));
        let mut part_of = vec![None; n];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                if v >= n || part_of[v].is_some() {
                    return invariant(format!("vertex {v} is out of range or in two parts"));
                }
                part_of[v] = Some(i);
            }
        }
        Ok(Partition { parts, part_of })
    }

    pub fn part_of(&self, v: VertexId) -> Option<usize> {
        self.part_of.get(v).copied().flatten()
    }

    pub fn is_large(&self, i: usize) -> bool {
        self.parts[i].len() >= 2
    }

    pub fn large_count(&self) -> usize {
        (0..self.parts.len()).filter(|&i| self.is_large(i)).count()
    }

    fn inside(&self, v: VertexId) -> bool {
        self.part_of(v).is_some()
    }

    /// Neighbours of `v` inside `W`, by ascending edge id.
    fn nbrs<'a>(&'a self, g: &'a LabeledGraph, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + 'a {
        g.neighbors(v).iter().copied().filter(move |&(w, _)| self.inside(w))
    }
}

/// At least two parts, at least one large part, and two adjacent singletons
/// when there is only one large part.
pub fn precondition(g: &LabeledGraph, p: &Partition) -> bool {
    let large = p.large_count();
    if p.parts.len() < 2 || large == 0 {
        return false;
    }
    large >= 2 || adjacent_singletons(g, p).next().is_some()
}

fn adjacent_singletons<'a>(g: &'a LabeledGraph, p: &'a Partition) -> impl Iterator<Item = VertexId> + 'a {
    p.parts.iter().enumerate().filter(|&(i, _)| !p.is_large(i)).map(|(_, s)| *s.iter().next().expect("nonempty")).filter(
        move |&v| p.nbrs(g, v).any(|(w, _)| p.part_of(w).is_some_and(|j| !p.is_large(j))),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum CoarseKind {
    /// A large part of the original partition, unchanged.
    Large(usize),
    /// A connected group of mutually adjacent singletons.
    Merged,
    /// A large part together with singletons having two edges into it.
    Absorbing { large: usize, absorbed: BTreeSet<VertexId> },
    /// A singleton left alone.
    Single,
}

#[derive(Clone, Debug)]
pub(crate) struct Coarse {
    pub(crate) partition: Partition,
    pub(crate) kinds: Vec<CoarseKind>,
}

pub(crate) fn coarsen(g: &LabeledGraph, p: &Partition) -> Result<Coarse> {
    let n = g.n();
    let is_single = |v: VertexId| p.part_of(v).is_some_and(|i| !p.is_large(i));
    let a1: BTreeSet<VertexId> = adjacent_singletons(g, p).collect();

    let mut groups: Vec<(BTreeSet<VertexId>, CoarseKind)> = Vec::new();
    let mut seen = BTreeSet::new();
    for &s in &a1 {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for (y, _) in p.nbrs(g, x) {
                if a1.contains(&y) && seen.insert(y) {
                    comp.insert(y);
                    queue.push_back(y);
                }
            }
        }
        groups.push((comp, CoarseKind::Merged));
    }

    let mut rest: BTreeSet<VertexId> =
        (0..n).filter(|&v| is_single(v) && !a1.contains(&v)).collect();
    for li in (0..p.parts.len()).filter(|&i| p.is_large(i)) {
        let absorbed: BTreeSet<VertexId> = rest
            .iter()
            .copied()
            .filter(|&s| p.nbrs(g, s).filter(|&(w, _)| p.part_of(w) == Some(li)).count() >= 2)
            .collect();
        let mut verts = p.parts[li].clone();
        if absorbed.is_empty() {
            groups.push((verts, CoarseKind::Large(li)));
        } else {
            rest.retain(|s| !absorbed.contains(s));
            verts.extend(absorbed.iter().copied());
            groups.push((verts, CoarseKind::Absorbing { large: li, absorbed }));
        }
    }
    for s in rest {
        groups.push((BTreeSet::from([s]), CoarseKind::Single));
    }
    groups.sort_by_key(|(verts, _)| *verts.iter().next().expect("nonempty"));
    let (sets, kinds): (Vec<_>, Vec<_>) = groups.into_iter().unzip();
    Ok(Coarse { partition: Partition::new(n, sets)?, kinds })
}

struct NiceSearch<'a> {
    g: &'a LabeledGraph,
    p: &'a Partition,
    start: usize,
    len: usize,
    dist: Vec<usize>,
    used: Vec<bool>,
    path: Vec<EdgeId>,
    first: (VertexId, EdgeId),
}

impl NiceSearch<'_> {
    fn exits(&self, part: usize, entry: VertexId) -> Vec<VertexId> {
        if self.p.is_large(part) {
            self.p.parts[part].iter().copied().filter(|&x| x != entry).collect()
        } else {
            vec![entry]
        }
    }

    fn extend(&mut self, part: usize, entry: VertexId) -> bool {
        for x in self.exits(part, entry) {
            for (y, id) in self.p.nbrs(self.g, x).collect::<Vec<_>>() {
                let Some(q) = self.p.part_of(y) else { continue };
                let depth = self.path.len() + 1;
                if q == self.start {
                    let (a, first_id) = self.first;
                    let distinct_end = !self.p.is_large(q) || y != a;
                    if depth == self.len && id != first_id && distinct_end {
                        self.path.push(id);
                        return true;
                    }
                    continue;
                }
                if q < self.start || self.used[q] || depth >= self.len || self.dist[q] > self.len - depth {
                    continue;
                }
                self.used[q] = true;
                self.path.push(id);
                if self.extend(q, y) {
                    return true;
                }
                self.path.pop();
                self.used[q] = false;
            }
        }
        false
    }
}

fn quotient_adjacency(g: &LabeledGraph, p: &Partition) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); p.parts.len()];
    for e in g.edges() {
        if let (Some(a), Some(b)) = (p.part_of(e.u), p.part_of(e.v)) {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    adj
}

/// A shortest nice cycle, as an ordered edge list. Candidates are tried by
/// length, then by smallest part, then by ascending vertex and edge id.
pub fn find_nice_cycle(g: &LabeledGraph, p: &Partition) -> Option<Vec<EdgeId>> {
    let k = p.parts.len();
    if k < 2 {
        return None;
    }
    let adj = quotient_adjacency(g, p);
    let dists: Vec<Vec<usize>> = (0..k)
        .map(|s| {
            let mut dist = vec![usize::MAX; k];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                for &b in &adj[a] {
                    if b > s && dist[b] == usize::MAX {
                        dist[b] = dist[a] + 1;
                        queue.push_back(b);
                    }
                }
            }
            dist
        })
        .collect();
    for len in 2..=k {
        for s in 0..k {
            let mut search = NiceSearch {
                g,
                p,
                start: s,
                len,
                dist: dists[s].clone(),
                used: vec![false; k],
                path: Vec::new(),
                first: (0, 0),
            };
            search.used[s] = true;
            for &a in &p.parts[s] {
                for (b, id) in p.nbrs(g, a).collect::<Vec<_>>() {
                    let Some(q) = p.part_of(b) else { continue };
                    if q <= s || search.dist[q] > len - 1 {
                        continue;
                    }
                    search.first = (a, id);
                    search.path = vec![id];
                    search.used[q] = true;
                    if search.extend(q, b) {
                        return Some(search.path);
                    }
                    search.used[q] = false;
                }
            }
        }
    }
    None
}

/// Where the two cycle edges meet each touched part.
fn attachments(g: &LabeledGraph, p: &Partition, cycle: &[EdgeId]) -> BTreeMap<usize, Vec<VertexId>> {
    let mut at: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for &id in cycle {
        let e = g.edge(id).expect("cycle edge");
        for x in [e.u, e.v] {
            if let Some(i) = p.part_of(x) {
                at.entry(i).or_default().push(x);
            }
        }
    }
    at
}

fn bfs_path(g: &LabeledGraph, within: &BTreeSet<VertexId>, from: VertexId, to: VertexId) -> Option<Vec<EdgeId>> {
    let mut prev: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut out = Vec::new();
            let mut cur = to;
            while cur != from {
                let (p, id) = prev[&cur];
                out.push(id);
                cur = p;
            }
            return Some(out);
        }
        for &(y, id) in g.neighbors(x) {
            if within.contains(&y) && seen.insert(y) {
                prev.insert(y, (x, id));
                queue.push_back(y);
            }
        }
    }
    None
}

fn edge_into(g: &LabeledGraph, s: VertexId, target: &BTreeSet<VertexId>, avoid: Option<VertexId>) -> Option<(VertexId, EdgeId)> {
    g.neighbors(s).iter().copied().find(|&(w, _)| target.contains(&w) && Some(w) != avoid)
}

/// A good cycle of `p` in the graph induced by the partitioned vertices, or
/// `None` when the precondition fails or no cycle is found.
pub fn find_good_cycle(g: &LabeledGraph, p: &Partition) -> Result<Option<BTreeSet<EdgeId>>> {
    if !precondition(g, p) {
        return Ok(None);
    }
    let coarse = coarsen(g, p)?;
    let Some(nice) = find_nice_cycle(g, &coarse.partition) else {
        return Ok(None);
    };
    let mut out: BTreeSet<EdgeId> = nice.iter().copied().collect();
    for (ci, ends) in attachments(g, &coarse.partition, &nice) {
        if ends.len() != 2 {
            return invariant("nice cycle touches a part other than twice");
        }
        let (v3, v4) = (ends[0], ends[1]);
        match &coarse.kinds[ci] {
            CoarseKind::Large(_) | CoarseKind::Single => {}
            CoarseKind::Merged => {
                let Some(path) = bfs_path(g, &coarse.partition.parts[ci], v3, v4) else {
                    return invariant("merged singletons are not connected");
                };
                out.extend(path);
            }
            CoarseKind::Absorbing { large, absorbed } => {
                let l = &p.parts[*large];
                match (absorbed.contains(&v3), absorbed.contains(&v4)) {
                    (false, false) => {}
                    (true, false) | (false, true) => {
                        let (s, other) = if absorbed.contains(&v3) { (v3, v4) } else { (v4, v3) };
                        let Some((_, id)) = edge_into(g, s, l, Some(other)) else {
                            return invariant("absorbed singleton lacks a second edge");
                        };
                        out.insert(id);
                    }
                    (true, true) => {
                        let Some((x, id3)) = edge_into(g, v3, l, None) else {
                            return invariant("absorbed singleton lacks an edge");
                        };
                        let Some((_, id4)) = edge_into(g, v4, l, Some(x)) else {
                            return invariant("absorbed singleton lacks a second edge");
                        };
                        out.insert(id3);
                        out.insert(id4);
                    }
                }
            }
        }
    }
    if !check_good_cycle(g, p, &out) {
        return invariant("expanded cycle is not a good cycle");
    }
    Ok(Some(out))
}

/// Validates the four good-cycle conditions against `p`.
pub fn check_good_cycle(g: &LabeledGraph, p: &Partition, c: &BTreeSet<EdgeId>) -> bool {
    if c.len() < 2 {
        return false;
    }
    let mut ends: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    let mut quotient: Vec<(usize, usize)> = Vec::new();
    for &id in c {
        let Some(e) = g.edge(id) else { return false };
        let (Some(a), Some(b)) = (p.part_of(e.u), p.part_of(e.v)) else { return false };
        if a == b {
            return false;
        }
        ends.entry(a).or_default().push(e.u);
        ends.entry(b).or_default().push(e.v);
        quotient.push((a, b));
    }
    if ends.values().any(|v| v.len() != 2) {
        return false;
    }
    // degree two everywhere plus connected means one cycle
    let touched: Vec<usize> = ends.keys().copied().collect();
    let mut reach = BTreeSet::from([touched[0]]);
    let mut grew = true;
    while grew {
        grew = false;
        for &(a, b) in &quotient {
            if reach.contains(&a) != reach.contains(&b) {
                reach.insert(a);
                reach.insert(b);
                grew = true;
            }
        }
    }
    if reach.len() != touched.len() {
        return false;
    }
    for (&i, v) in &ends {
        if p.is_large(i) && v[0] == v[1] {
            return false;
        }
    }
    if !touched.iter().any(|&i| p.is_large(i)) {
        return false;
    }
    c.len() != 2 || touched.iter().all(|&i| p.is_large(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn parts(n: usize, sets: &[&[VertexId]]) -> Partition {
        Partition::new(n, sets.iter().map(|s| s.iter().copied().collect())).unwrap()
    }

    #[test]
    fn two_large_parts_give_a_two_cycle() {
        // C4 0-1-2-3 split into {0,1} and {2,3}: cross edges 12 and 30
        let g = cycle(4);
        let p = parts(4, &[&[0, 1], &[2, 3]]);
        let c = find_good_cycle(&g, &p).unwrap().unwrap();
        assert_eq!(c, [1, 3].into_iter().collect());
    }

    #[test]
    fn one_large_part_and_two_adjacent_singletons() {
        // C5 0-1-2-3-4 with {0,1,2} large and singletons 3, 4
        let g = cycle(5);
        let p = parts(5, &[&[0, 1, 2], &[3], &[4]]);
        let c = find_good_cycle(&g, &p).unwrap().unwrap();
        assert_eq!(c, [2, 3, 4].into_iter().collect());
        assert!(check_good_cycle(&g, &p, &c));
    }

    #[test]
    fn precondition_failures() {
        let g = cycle(4);
        assert!(find_good_cycle(&g, &parts(4, &[&[0, 1, 2, 3]])).unwrap().is_none());
        // no large part
        let p = parts(4, &[&[0], &[1], &[2], &[3]]);
        assert!(find_good_cycle(&g, &p).unwrap().is_none());
        let k4 = complete(4);
        assert!(find_good_cycle(&k4, &parts(4, &[&[0, 1, 2], &[3]])).unwrap().is_none());
    }

    #[test]
    fn absorbed_singleton_is_expanded() {
        // parts {0,1}, {2,3} joined by 12; singleton 4 has edges 40, 41, 43
        let g = LabeledGraph::from_edges(
            vec![true; 5],
            [(0, 1), (2, 3), (1, 2), (4, 0), (4, 1), (4, 3)].map(|(u, v)| (u, v, true)),
        )
        .unwrap();
        let p = parts(5, &[&[0, 1], &[2, 3], &[4]]);
        let coarse = coarsen(&g, &p).unwrap();
        assert_eq!(coarse.partition.parts[0], [0, 1, 4].into_iter().collect());
        let c = find_good_cycle(&g, &p).unwrap().unwrap();
        assert_eq!(c, [2, 3, 5].into_iter().collect());
        assert!(check_good_cycle(&g, &p, &c));
    }

    #[test]
    fn checker_rejects_bad_sets() {
        let g = cycle(4);
        let p = parts(4, &[&[0, 1], &[2], &[3]]);
        // 12, 23, 30 is good; dropping one edge breaks the cycle
        assert!(check_good_cycle(&g, &p, &[1, 2, 3].into_iter().collect()));
        assert!(!check_good_cycle(&g, &p, &[1, 2].into_iter().collect()));
        // edge 01 lies inside a part
        assert!(!check_good_cycle(&g, &p, &[0, 1, 2, 3].into_iter().collect()));
        // same attachment vertex in a large part
        let p2 = parts(4, &[&[0, 1, 3], &[2]]);
        assert!(!check_good_cycle(&complete(4), &p2, &[2, 4].into_iter().collect()));
    }
}
