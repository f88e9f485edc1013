//! Smooth distributions over flipping blocks, and turning one into a
//! disjoint packing by random sampling.

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::witness::{PackingWitness, SmoothDistribution};
use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::poly::MultilinearPoly;
use crate::rational::Rational;

/// `Pr_{w∼d}[f(z) ≠ f(z ∨ w)]`, exactly.
pub fn smooth_flip_probability(f: &MultilinearPoly, z: &BitVec, d: &SmoothDistribution) -> Rational {
    let base = f.evaluate(z);
    d.support()
        .iter()
        .filter(|(w, _)| f.evaluate(&z.union(w)) != base)
        .map(|(_, p)| p)
        .sum()
}

/// Smallest `k >= 1` with `k >= 1 / (2√p)`, i.e. `4k²p >= 1`.
pub fn sample_count(p: &Rational) -> usize {
    assert!(p.is_positive(), "smoothness must be positive");
    let mut k = 1usize;
    while Rational::from(4 * k * k) * p < Rational::one() {
        k += 1;
    }
    k
}

/// Successful outcome of [`disjointify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjointified {
    pub witness: PackingWitness,
    /// Blocks sampled per attempt.
    pub k: usize,
    /// Attempts used, counting the successful one.
    pub attempts: usize,
}

/// Samples `k = ⌈1/(2√p)⌉` blocks from `d` and removes every coordinate
/// they share. With `u` the shared coordinates, an attempt succeeds when
/// `f(z ∨ u) = f(z)` and at least `⌈2k/3⌉` sampled `w_t` satisfy
/// `f(z ∨ w_t ∨ u) = f(z ∨ w_t)`; those `w_t \ u` are then disjoint
/// flipping blocks at `z ∨ u`.
pub fn disjointify(
    f: &MultilinearPoly,
    z: &BitVec,
    d: &SmoothDistribution,
    seed: u64,
    max_attempts: usize,
) -> Result<Disjointified> {
    let base = f.evaluate(z);
    for (w, _) in d.support() {
        if w.intersects(z) || f.evaluate(&z.union(w)) == base {
            return Err(Error::InvalidInput(format!("support block {w} does not flip f at {z}")));
        }
    }
    let k = sample_count(d.smoothness());
    let need = (2 * k).div_ceil(3);
    let weights: Vec<f64> = d.support().iter().map(|(_, p)| p.to_f64()).collect();
    let sampler = WeightedIndex::new(&weights).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let ws: Vec<&BitVec> = (0..k).map(|_| &d.support()[sampler.sample(&mut rng)].0).collect();
        let mut u = BitVec::empty(f.n());
        for i in 0..k {
            for j in i + 1..k {
                u.union_with(&ws[i].intersection(ws[j]));
            }
        }
        let z2 = z.union(&u);
        if f.evaluate(&z2) != base {
            continue;
        }
        let blocks: Vec<BitVec> = ws
            .iter()
            .filter(|w| {
                let zw = z.union(w);
                f.evaluate(&zw.union(&u)) == f.evaluate(&zw)
            })
            .map(|w| w.difference(&u))
            .collect();
        if blocks.len() < need {
            continue;
        }
        let witness = PackingWitness { point: z2, blocks };
        witness.verify(f)?;
        return Ok(Disjointified { witness, k, attempts: attempt });
    }
    Err(Error::AttemptsExhausted { attempts: max_attempts })
}
