//! Colourful forests of pseudo-edges with the fewest components.
//!
//! A maximum forest using each colour at most once is a maximum common
//! independent set of the graphic matroid on `V(D)` and the partition matroid
//! of the colours. Uncovered colours then take their lowest-index edge, and
//! same-colour swaps that shrink the set of isolated vertices are applied
//! until none is left.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::pseudo::{Colour, PseudoEdgeSet};
use crate::dsu::Dsu;
use crate::error::{invariant, Result};
use crate::graph::VertexId;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RainbowSolution {
    /// Indices into the pseudo-edge list, one per colour, ascending.
    pub chosen: Vec<usize>,
    pub alpha: usize,
    pub alpha_large: usize,
    pub singletons: BTreeSet<VertexId>,
}

/// Vertex classes of `(vd, edges)`, each sorted, ordered by smallest vertex.
pub fn component_sets(vd: &BTreeSet<VertexId>, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Vec<BTreeSet<VertexId>> {
    let size = vd.iter().next_back().map_or(0, |&v| v + 1);
    let mut dsu = Dsu::new(size);
    for (u, v) in edges {
        dsu.union(u, v);
    }
    let mut by_root: BTreeMap<usize, BTreeSet<VertexId>> = BTreeMap::new();
    for &v in vd {
        by_root.entry(dsu.find(v)).or_default().insert(v);
    }
    let mut out: Vec<_> = by_root.into_values().collect();
    out.sort_by_key(|c| *c.iter().next().expect("nonempty"));
    out
}

fn summarize(pe: &PseudoEdgeSet, vd: &BTreeSet<VertexId>, chosen: Vec<usize>) -> RainbowSolution {
    let comps = component_sets(vd, chosen.iter().map(|&i| (pe.edges[i].u, pe.edges[i].v)));
    let singletons: BTreeSet<VertexId> = comps.iter().filter(|c| c.len() == 1).flat_map(|c| c.iter().copied()).collect();
    RainbowSolution { alpha: comps.len(), alpha_large: comps.len() - singletons.len(), singletons, chosen }
}

struct Intersection<'a> {
    pe: &'a PseudoEdgeSet,
    size: usize,
    colour_of: Vec<usize>,
}

impl Intersection<'_> {
    fn forest_without(&self, in_set: &[bool], skip: Option<usize>) -> Dsu {
        let mut dsu = Dsu::new(self.size);
        for (i, e) in self.pe.edges.iter().enumerate() {
            if in_set[i] && Some(i) != skip {
                dsu.union(e.u, e.v);
            }
        }
        dsu
    }

    /// One augmentation along a shortest exchange path. Returns false when the
    /// current set is already maximum.
    fn augment(&self, in_set: &mut [bool], colour_used: &mut [bool]) -> bool {
        let m = self.pe.len();
        let members: Vec<usize> = (0..m).filter(|&i| in_set[i]).collect();
        let mut whole = self.forest_without(in_set, None);
        let sources: Vec<usize> = (0..m)
            .filter(|&y| !in_set[y] && !whole.same(self.pe.edges[y].u, self.pe.edges[y].v))
            .collect();
        let is_sink = |y: usize| !in_set[y] && !colour_used[self.colour_of[y]];

        // x -> y when I - x + y is a forest
        let mut out_arcs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &x in &members {
            let mut dsu = self.forest_without(in_set, Some(x));
            let list = (0..m).filter(|&y| !in_set[y] && !dsu.same(self.pe.edges[y].u, self.pe.edges[y].v)).collect();
            out_arcs.insert(x, list);
        }

        let mut prev = vec![usize::MAX; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for &y in &sources {
            seen[y] = true;
            queue.push_back(y);
        }
        let mut end = None;
        while let Some(a) = queue.pop_front() {
            if !in_set[a] {
                if is_sink(a) {
                    end = Some(a);
                    break;
                }
                // y -> x when I - x + y respects the colours
                for &x in &members {
                    if !seen[x] && self.colour_of[x] == self.colour_of[a] {
                        seen[x] = true;
                        prev[x] = a;
                        queue.push_back(x);
                    }
                }
            } else {
                for &y in &out_arcs[&a] {
                    if !seen[y] {
                        seen[y] = true;
                        prev[y] = a;
                        queue.push_back(y);
                    }
                }
            }
        }
        let Some(mut cur) = end else { return false };
        loop {
            in_set[cur] = !in_set[cur];
            if prev[cur] == usize::MAX {
                break;
            }
            cur = prev[cur];
        }
        colour_used.iter_mut().for_each(|c| *c = false);
        for i in 0..m {
            if in_set[i] {
                colour_used[self.colour_of[i]] = true;
            }
        }
        true
    }
}

fn singleton_count(pe: &PseudoEdgeSet, vd: &BTreeSet<VertexId>, chosen: &[usize]) -> usize {
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &i in chosen {
        *deg.entry(pe.edges[i].u).or_default() += 1;
        *deg.entry(pe.edges[i].v).or_default() += 1;
    }
    vd.iter().filter(|v| !deg.contains_key(v)).count()
}

pub fn solve_rainbow(pe: &PseudoEdgeSet, vd: &BTreeSet<VertexId>) -> Result<RainbowSolution> {
    let m = pe.len();
    let colours: Vec<Colour> = pe.colours().into_iter().collect();
    let colour_index: BTreeMap<Colour, usize> = colours.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let colour_of: Vec<usize> = pe.edges.iter().map(|e| colour_index[&e.colour]).collect();
    let size = vd.iter().next_back().map_or(0, |&v| v + 1);
    if pe.edges.iter().any(|e| !vd.contains(&e.u) || !vd.contains(&e.v)) {
        return invariant("pseudo-edge endpoint outside V(D)");
    }
    let solver = Intersection { pe, size, colour_of: colour_of.clone() };

    let mut in_set = vec![false; m];
    let mut colour_used = vec![false; colours.len()];
    let mut dsu = Dsu::new(size);
    for (i, e) in pe.edges.iter().enumerate() {
        if !colour_used[colour_of[i]] && dsu.union(e.u, e.v) {
            in_set[i] = true;
            colour_used[colour_of[i]] = true;
        }
    }
    while solver.augment(&mut in_set, &mut colour_used) {}

    let mut by_colour: Vec<Option<usize>> = vec![None; colours.len()];
    for i in 0..m {
        if in_set[i] {
            by_colour[colour_of[i]] = Some(i);
        }
    }
    for i in 0..m {
        by_colour[colour_of[i]].get_or_insert(i);
    }
    let mut chosen: Vec<usize> = by_colour.into_iter().map(|c| c.expect("every colour has an edge")).collect();
    chosen.sort_unstable();
    let alpha = summarize(pe, vd, chosen.clone()).alpha;

    // same-colour swaps, lowest index first, restarting after every swap
    let mut singles = singleton_count(pe, vd, &chosen);
    'outer: loop {
        for slot in 0..chosen.len() {
            let cur = chosen[slot];
            for cand in (0..m).filter(|&j| j != cur && colour_of[j] == colour_of[cur]) {
                let mut trial = chosen.clone();
                trial[slot] = cand;
                let s = singleton_count(pe, vd, &trial);
                if s < singles {
                    trial.sort_unstable();
                    chosen = trial;
                    singles = s;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let out = summarize(pe, vd, chosen);
    if out.alpha != alpha {
        return invariant("a singleton-reducing swap changed the component count");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fvc::pseudo::PseudoEdge;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set_of(edges: &[(Colour, VertexId, VertexId)]) -> PseudoEdgeSet {
        PseudoEdgeSet::from_edges(edges.iter().map(|&(colour, u, v)| PseudoEdge { colour, u, v }).collect())
    }

    #[test]
    fn parallel_colours_collapse() {
        let pe = set_of(&[(Colour::Vertex(10), 0, 1), (Colour::Vertex(11), 0, 1)]);
        let vd: BTreeSet<_> = (0..4).collect();
        let r = solve_rainbow(&pe, &vd).unwrap();
        assert_eq!(r.alpha, 3);
        assert_eq!(r.alpha_large, 1);
        assert_eq!(r.singletons, [2, 3].into_iter().collect());
    }

    #[test]
    fn greedy_trap_is_escaped() {
        // greedy takes colour A on 0-1, blocking colour B whose only edge is 0-1
        let a = Colour::Vertex(10);
        let b = Colour::Vertex(11);
        let pe = set_of(&[(a, 0, 1), (a, 2, 3), (b, 0, 1)]);
        let vd: BTreeSet<_> = (0..4).collect();
        let r = solve_rainbow(&pe, &vd).unwrap();
        assert_eq!(r.alpha, 2);
    }

    fn brute_alpha(pe: &PseudoEdgeSet, vd: &BTreeSet<VertexId>) -> usize {
        let colours: Vec<Colour> = pe.colours().into_iter().collect();
        let groups: Vec<Vec<usize>> =
            colours.iter().map(|&c| (0..pe.len()).filter(|&i| pe.edges[i].colour == c).collect()).collect();
        let mut best = usize::MAX;
        let mut idx = vec![0; groups.len()];
        loop {
            let pick: Vec<usize> = idx.iter().zip(&groups).map(|(&i, g)| g[i]).collect();
            best = best.min(component_sets(vd, pick.iter().map(|&i| (pe.edges[i].u, pe.edges[i].v))).len());
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < groups[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                return best;
            }
        }
    }

    #[test]
    fn matches_exhaustive_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(3..9);
            let colours = rng.gen_range(1..7);
            let mut raw = Vec::new();
            for c in 0..colours {
                for _ in 0..rng.gen_range(1..4) {
                    let u = rng.gen_range(0..n);
                    let mut v = rng.gen_range(0..n - 1);
                    if v >= u {
                        v += 1;
                    }
                    raw.push((Colour::Vertex(100 + c), u.min(v), u.max(v)));
                }
            }
            let pe = set_of(&raw);
            let vd: BTreeSet<_> = (0..n).collect();
            let r = solve_rainbow(&pe, &vd).unwrap();
            assert_eq!(r.alpha, brute_alpha(&pe, &vd));
            assert_eq!(r.chosen.len(), pe.colours().len());
            // no single swap reduces the singletons
            let base = singleton_count(&pe, &vd, &r.chosen);
            for slot in 0..r.chosen.len() {
                for j in 0..pe.len() {
                    if pe.edges[j].colour == pe.edges[r.chosen[slot]].colour {
                        let mut t = r.chosen.clone();
                        t[slot] = j;
                        assert!(singleton_count(&pe, &vd, &t) >= base);
                    }
                }
            }
        }
    }
}
