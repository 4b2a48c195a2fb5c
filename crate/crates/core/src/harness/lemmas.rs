//! Sampled checks of the real-valued ratio inequalities behind the 11/7
//! analysis, and of the integer inequality used to simplify its third lower
//! bound.
//!
//! `|K12|` is not free: with `|S_P| = |K11| + 2|K12| + |K22| + 3/2 |K23|` and
//! `|K| = |K11| + |K12| + |K22| + |K23|` it satisfies
//! `max(0, 2|S_P| - 3|K|) <= |K12| <= |S_P| - |K|`, and samples respect that.

use rand::Rng;
use serde::Serialize;

use crate::par::{map_indices, Exec};

use super::generators::row_rng;

pub const ELEVEN_SEVENTHS: f64 = 11.0 / 7.0;
const TOL: f64 = 1e-9;

/// `min{(4vd-4)/3 + sp, sp + vd - 2 + 3a/4} / max{sp + a - 1, vd + k}`.
pub fn ratio_without_x(vd: f64, alpha: f64, k: f64, sp: f64) -> f64 {
    let num = ((4.0 * vd - 4.0) / 3.0 + sp).min(sp + vd - 2.0 + 0.75 * alpha);
    num / (sp + alpha - 1.0).max(vd + k)
}

/// `min{(4vd-4)/3 + sp, sp + vd - 2 + a - x} / max{sp + a - 1, vd + k, 2 k12 + 2a - 4x}`.
pub fn ratio_with_x(vd: f64, alpha: f64, x: f64, k: f64, sp: f64, k12: f64) -> f64 {
    let num = ((4.0 * vd - 4.0) / 3.0 + sp).min(sp + vd - 2.0 + alpha - x);
    num / (sp + alpha - 1.0).max(vd + k).max(2.0 * k12 + 2.0 * alpha - 4.0 * x)
}

/// Integer form with `x = (a - a')/2 + a_large/2 + a'_1` multiplied out:
/// `a'_1 + 2a'_2 - 2a_large >= 2a - 4x`.
pub fn third_bound_claim(alpha: i64, alpha_large: i64, alpha1p: i64, alpha2p: i64) -> bool {
    let alphap = alpha1p + alpha2p;
    let four_x = 2 * (alpha - alphap) + 2 * alpha_large + 4 * alpha1p;
    alpha1p + 2 * alpha2p - 2 * alpha_large >= 2 * alpha - four_x
}

/// One real-valued tuple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tuple {
    pub vd: f64,
    pub alpha: f64,
    pub x: f64,
    pub k: f64,
    pub sp: f64,
    pub k12: f64,
}

impl Tuple {
    pub fn ratio_without_x(&self) -> f64 {
        ratio_without_x(self.vd, self.alpha, self.k, self.sp)
    }

    pub fn ratio_with_x(&self) -> f64 {
        ratio_with_x(self.vd, self.alpha, self.x, self.k, self.sp, self.k12)
    }

    pub fn k12_range(k: f64, sp: f64) -> (f64, f64) {
        ((2.0 * sp - 3.0 * k).max(0.0), sp - k)
    }
}

fn pick<R: Rng>(rng: &mut R, lo: f64, hi: f64, corners: &[f64]) -> f64 {
    // half the draws land on a corner point
    if !corners.is_empty() && rng.gen_bool(0.5) {
        corners[rng.gen_range(0..corners.len())]
    } else if hi > lo {
        rng.gen_range(lo..=hi)
    } else {
        lo
    }
}

fn sample<R: Rng>(rng: &mut R) -> Tuple {
    let k = pick(rng, 1.0, 200.0, &[1.0, 2.0, 7.0]);
    let sp = pick(rng, k, 2.0 * k, &[k, 11.0 * k / 7.0, 2.0 * k]);
    let vd = pick(rng, 0.0, 4.0 * k + 10.0, &[0.0, 1.5 * k, 2.0 + 2.25 * k]);
    let alpha = pick(rng, 0.0, vd, &[0.0, vd / 2.0, vd]);
    let x = pick(rng, 0.0, alpha, &[0.0, alpha / 4.0, alpha]);
    let (lo, hi) = Tuple::k12_range(k, sp);
    let k12 = pick(rng, lo, hi, &[lo, hi]);
    Tuple { vd, alpha, x, k, sp, k12 }
}

/// Hand-picked points where the case analysis is tight.
pub fn corner_tuples() -> Vec<Tuple> {
    let mut out = Vec::new();
    for k in [1.0, 3.0, 7.0, 39.0, 100.0] {
        for sp in [k, 11.0 * k / 7.0, 2.0 * k] {
            for vd in [0.0, 1.0, k, 1.5 * k, 2.0 + 2.25 * k, 3.0 * k] {
                for alpha in [0.0, vd / 4.0, vd / 2.0, vd] {
                    for x in [0.0, alpha / 4.0, alpha] {
                        let (lo, hi) = Tuple::k12_range(k, sp);
                        for k12 in [lo, hi] {
                            out.push(Tuple { vd, alpha, x, k, sp, k12 });
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub samples: usize,
    pub corners: usize,
    pub seed: u64,
    pub max_ratio_without_x: f64,
    pub max_ratio_with_x: f64,
    pub violations_without_x: usize,
    pub violations_with_x: usize,
    pub claim_samples: usize,
    pub claim_violations: usize,
    /// Worst tuple for the bound with `x`.
    pub worst: Option<Tuple>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations_without_x == 0 && self.violations_with_x == 0 && self.claim_violations == 0
    }
}

const CHUNK: usize = 1024;

pub fn check_arithmetic_lemmas(samples: usize, seed: u64, exec: Exec) -> LemmaReport {
    let chunks = samples.div_ceil(CHUNK);
    let sampled = map_indices(exec, chunks, |c| {
        (c * CHUNK..((c + 1) * CHUNK).min(samples)).map(|i| sample(&mut row_rng(seed, i as u64))).collect::<Vec<_>>()
    });
    let corners = corner_tuples();
    let mut report = LemmaReport {
        samples,
        corners: corners.len(),
        seed,
        max_ratio_without_x: f64::NEG_INFINITY,
        max_ratio_with_x: f64::NEG_INFINITY,
        violations_without_x: 0,
        violations_with_x: 0,
        claim_samples: samples,
        claim_violations: 0,
        worst: None,
    };
    for t in sampled.into_iter().flatten().chain(corners) {
        let a = t.ratio_without_x();
        let b = t.ratio_with_x();
        report.violations_without_x += usize::from(a > ELEVEN_SEVENTHS + TOL);
        report.violations_with_x += usize::from(b > ELEVEN_SEVENTHS + TOL);
        report.max_ratio_without_x = report.max_ratio_without_x.max(a);
        if b > report.max_ratio_with_x {
            report.max_ratio_with_x = b;
            report.worst = Some(t);
        }
    }
    // integer tuples with a_large, a'_1 + a'_2 <= a
    report.claim_violations = (0..samples)
        .filter(|&i| {
            let mut rng = row_rng(seed ^ 0xB15, i as u64);
            let alpha = rng.gen_range(0..=60i64);
            let alpha_large = rng.gen_range(0..=alpha);
            let alphap = rng.gen_range(0..=alpha);
            let alpha1p = rng.gen_range(0..=alphap);
            !third_bound_claim(alpha, alpha_large, alpha1p, alphap - alpha1p)
        })
        .count();
    report
}
