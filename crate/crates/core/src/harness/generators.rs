//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::feasibility::{Instance, Problem};
use crate::graph::LabeledGraph;

/// splitmix64 of `seed` combined with `index`, so each row of an experiment
/// gets its own stream regardless of evaluation order.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn row_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(seed, index))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomConfig {
    pub n: usize,
    pub p: f64,
    pub edge_safe_prob: f64,
    pub vertex_safe_prob: f64,
    pub problem: Problem,
    pub k: usize,
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must lie in [0, 1], got {p}")))
    }
}

/// `G(n, p)` resampled until connected, then independent safety flags.
pub fn gen_random_instance_with<R: Rng>(cfg: &RandomConfig, rng: &mut R) -> Result<Instance> {
    let RandomConfig { n, p, edge_safe_prob, vertex_safe_prob, problem, k } = *cfg;
    if n < 2 {
        return Err(Error::InvalidInput("random instances need n >= 2".into()));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidInput(format!("edge probability must lie in (0, 1], got {p}")));
    }
    check_prob("edge_safe_prob", edge_safe_prob)?;
    check_prob("vertex_safe_prob", vertex_safe_prob)?;
    let pairs = loop {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        let g = LabeledGraph::from_edges(vec![true; n], pairs.iter().map(|&(u, v)| (u, v, true)))?;
        if g.is_connected() {
            break pairs;
        }
    };
    let flags: Vec<bool> = (0..n).map(|_| rng.gen_bool(vertex_safe_prob)).collect();
    let edges: Vec<_> = pairs.into_iter().map(|(u, v)| (u, v, rng.gen_bool(edge_safe_prob))).collect();
    Instance::new(LabeledGraph::from_edges(flags, edges)?, problem, k)
}

pub fn gen_random_instance(cfg: &RandomConfig, seed: u64) -> Result<Instance> {
    gen_random_instance_with(cfg, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Star with safe spokes from vertex 0 and an unsafe cycle through the leaves
/// (a single edge when there are two leaves).
pub fn gen_safe_tree_family(n: usize, k: usize) -> Result<Instance> {
    if n < 3 || k == 0 {
        return Err(Error::InvalidInput("safe tree family needs n >= 3 and k >= 1".into()));
    }
    let mut g = LabeledGraph::new(n);
    for leaf in 1..n {
        g.add_edge(0, leaf, true)?;
    }
    for leaf in 1..n - 1 {
        g.add_edge(leaf, leaf + 1, false)?;
    }
    if n > 3 {
        g.add_edge(n - 1, 1, false)?;
    }
    Instance::new(g, Problem::Kfgc, k)
}

/// Random 2-vertex-connected simple graph grown from a cycle by open ears.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoVcConfig {
    pub n: usize,
    pub vertex_safe_prob: f64,
    /// Chance that an ear has one or two inner vertices instead of three to six.
    pub short_ear_prob: f64,
    /// Extra chords, as a fraction of `n`.
    pub chord_ratio: f64,
}

pub fn gen_two_vc_instance_with<R: Rng>(cfg: &TwoVcConfig, rng: &mut R) -> Result<LabeledGraph> {
    let TwoVcConfig { n, vertex_safe_prob, short_ear_prob, chord_ratio } = *cfg;
    if n < 3 {
        return Err(Error::InvalidInput("2-vertex-connected instances need n >= 3".into()));
    }
    check_prob("vertex_safe_prob", vertex_safe_prob)?;
    check_prob("short_ear_prob", short_ear_prob)?;
    let flags: Vec<bool> = (0..n).map(|_| rng.gen_bool(vertex_safe_prob)).collect();
    let mut g = LabeledGraph::with_vertex_flags(flags);
    let first = rng.gen_range(3..=n.min(8));
    for i in 0..first {
        g.add_edge(i, (i + 1) % first, true)?;
    }
    let mut used = first;
    while used < n {
        let inner = if rng.gen_bool(short_ear_prob) { rng.gen_range(1..=2) } else { rng.gen_range(3..=6) };
        let inner = inner.min(n - used);
        let a = rng.gen_range(0..used);
        let b = (a + rng.gen_range(1..used)) % used;
        let mut prev = a;
        for v in used..used + inner {
            g.add_edge(prev, v, true)?;
            prev = v;
        }
        g.add_edge(prev, b, true)?;
        used += inner;
    }
    let chords = (chord_ratio * n as f64).round() as usize;
    for _ in 0..chords {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && !g.has_edge_between(a, b) {
            g.add_edge(a, b, true)?;
        }
    }
    Ok(g)
}

pub fn gen_two_vc_instance(cfg: &TwoVcConfig, seed: u64) -> Result<Instance> {
    let g = gen_two_vc_instance_with(cfg, &mut ChaCha8Rng::seed_from_u64(seed))?;
    Instance::new(g, Problem::Fvc, 1)
}
