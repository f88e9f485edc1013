use serde::{Deserialize, Serialize};

use super::family::{family_with, Oracle};
use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::optkern::SetSystem;
use crate::poly::MultilinearPoly;
use crate::rational::Rational;

/// A distribution over blocks with `max_i Pr[w_i = 1] = smoothness`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution", into = "RawDistribution")]
pub struct SmoothDistribution {
    support: Vec<(BitVec, Rational)>,
    smoothness: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawDistribution {
    support: Vec<(BitVec, Rational)>,
    smoothness: Rational,
}

impl TryFrom<RawDistribution> for SmoothDistribution {
    type Error = Error;

    fn try_from(raw: RawDistribution) -> Result<Self> {
        let d = SmoothDistribution::new(raw.support)?;
        if d.smoothness != raw.smoothness {
            return Err(Error::InvalidInput(format!("stated smoothness {} but marginals give {}", raw.smoothness, d.smoothness)));
        }
        Ok(d)
    }
}

impl From<SmoothDistribution> for RawDistribution {
    fn from(d: SmoothDistribution) -> Self {
        RawDistribution { support: d.support, smoothness: d.smoothness }
    }
}

impl SmoothDistribution {
    /// Validates positivity and total mass 1, and computes the smoothness.
    pub fn new(support: Vec<(BitVec, Rational)>) -> Result<Self> {
        let Some(n) = support.first().map(|(w, _)| w.n()) else {
            return Err(Error::InvalidInput("empty distribution".into()));
        };
        if support.iter().any(|(w, p)| w.n() != n || !p.is_positive()) {
            return Err(Error::InvalidInput("probabilities must be positive and blocks over a common n".into()));
        }
        let total: Rational = support.iter().map(|(_, p)| p).sum();
        if !total.is_one() {
            return Err(Error::InvalidInput(format!("probabilities sum to {total}")));
        }
        let mut marginal = vec![Rational::zero(); n];
        for (w, p) in &support {
            for i in w.iter() {
                marginal[i] += p;
            }
        }
        let smoothness = marginal.into_iter().max().unwrap_or_default();
        Ok(SmoothDistribution { support, smoothness })
    }

    /// Uniform over the given blocks.
    pub fn uniform(blocks: &[BitVec]) -> Result<Self> {
        let p = Rational::new(1, blocks.len().max(1) as i64);
        Self::new(blocks.iter().map(|w| (w.clone(), p.clone())).collect())
    }

    pub fn support(&self) -> &[(BitVec, Rational)] {
        &self.support
    }

    pub fn smoothness(&self) -> &Rational {
        &self.smoothness
    }

    pub fn n(&self) -> usize {
        self.support[0].0.n()
    }
}

/// Pairwise disjoint blocks, disjoint from `point`, each flipping `f` there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingWitness {
    pub point: BitVec,
    pub blocks: Vec<BitVec>,
}

impl PackingWitness {
    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn verify(&self, f: &MultilinearPoly) -> Result<()> {
        let mut used = self.point.clone();
        let base = f.evaluate(&self.point);
        for w in &self.blocks {
            if w.n() != f.n() || w.is_empty() {
                return Err(Error::Internal(format!("block {w:?} is empty or over the wrong n")));
            }
            if w.intersects(&used) {
                return Err(Error::Internal(format!("block {w} overlaps the point or an earlier block")));
            }
            used.union_with(w);
            if f.evaluate(&self.point.union(w)) == base {
                return Err(Error::Internal(format!("block {w} does not flip f at {}", self.point)));
            }
        }
        Ok(())
    }
}

/// A set of coordinates meeting every minimal flipping block at `point`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSetWitness {
    pub point: BitVec,
    pub elements: BitVec,
}

/// An optimal smooth distribution at `point`; absent when nothing flips.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionWitness {
    pub point: BitVec,
    pub distribution: Option<SmoothDistribution>,
}

/// Fractional hitting-set weights, one per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub point: BitVec,
    pub weights: Vec<Rational>,
}

impl CoverWitness {
    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn is_feasible_for(&self, blocks: &SetSystem) -> bool {
        !self.weights.iter().any(Rational::is_negative)
            && blocks.sets().iter().all(|w| w.iter().map(|i| &self.weights[i]).sum::<Rational>() >= Rational::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub packing: PackingWitness,
    pub hitting_set: HittingSetWitness,
    pub distribution: DistributionWitness,
    pub cover: CoverWitness,
}

impl Witnesses {
    /// Re-checks every witness against `f` and the claimed values.
    pub fn verify(&self, f: &MultilinearPoly, mbs: usize, fmbs: &Rational, fhsc: &Rational, hsc: usize) -> Result<()> {
        let fail = |m: String| Err(Error::Internal(m));
        self.packing.verify(f)?;
        if self.packing.size() != mbs {
            return fail(format!("packing has {} blocks, MBS claimed {mbs}", self.packing.size()));
        }
        let fam = family_with(f, &self.hitting_set.point, Oracle::Poly(f))?;
        if !fam.blocks.is_hit_by(&self.hitting_set.elements) || self.hitting_set.elements.count() != hsc {
            return fail(format!("hitting set {} invalid for HSC {hsc}", self.hitting_set.elements));
        }
        match &self.distribution.distribution {
            None if fmbs.is_zero() => {}
            None => return fail("missing distribution for positive FMBS".into()),
            Some(d) => {
                let base = f.evaluate(&self.distribution.point);
                for (w, _) in d.support() {
                    if w.intersects(&self.distribution.point) || f.evaluate(&self.distribution.point.union(w)) == base {
                        return fail(format!("distribution block {w} does not flip f"));
                    }
                }
                if d.smoothness().recip() != *fmbs {
                    return fail(format!("distribution is {}-smooth, FMBS claimed {fmbs}", d.smoothness()));
                }
            }
        }
        let fam = family_with(f, &self.cover.point, Oracle::Poly(f))?;
        if !self.cover.is_feasible_for(&fam.blocks) || self.cover.total() != *fhsc {
            return fail(format!("cover weights invalid for FHSC {fhsc}"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_validation() {
        let a = BitVec::from_indices(3, [0, 1]);
        let b = BitVec::from_indices(3, [1, 2]);
        let d = SmoothDistribution::uniform(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(d.smoothness(), &Rational::one());
        let d = SmoothDistribution::new(vec![(a.clone(), Rational::new(1, 4)), (BitVec::from_indices(3, [2]), Rational::new(3, 4))]).unwrap();
        assert_eq!(d.smoothness(), &Rational::new(3, 4));
        assert!(SmoothDistribution::new(vec![(a.clone(), Rational::new(1, 2))]).is_err());
        assert!(SmoothDistribution::new(vec![(a, Rational::new(3, 2)), (b, Rational::new(-1, 2))]).is_err());
        assert!(SmoothDistribution::new(vec![]).is_err());
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<SmoothDistribution>(&json).unwrap(), d);
        let tampered = json.replace("\"3/4\"}", "\"1/4\"}");
        assert!(serde_json::from_str::<SmoothDistribution>(&tampered).is_err());
    }

    #[test]
    fn packing_verifier() {
        let or3 = crate::poly::TruthTable::from_bits(3, 0xfe).to_poly().unwrap();
        let z = BitVec::empty(3);
        let singles: Vec<BitVec> = (0..3).map(|i| BitVec::from_indices(3, [i])).collect();
        assert!(PackingWitness { point: z.clone(), blocks: singles.clone() }.verify(&or3).is_ok());
        let overlap = vec![BitVec::from_indices(3, [0, 1]), BitVec::from_indices(3, [1])];
        assert!(PackingWitness { point: z.clone(), blocks: overlap }.verify(&or3).is_err());
        let at_one = BitVec::from_indices(3, [0]);
        assert!(PackingWitness { point: at_one, blocks: vec![singles[1].clone()] }.verify(&or3).is_err());
        assert!(PackingWitness { point: z, blocks: vec![BitVec::empty(3)] }.verify(&or3).is_err());
    }
}
