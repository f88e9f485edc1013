use serde::{Deserialize, Serialize};

use crate::bitvec::BitVec;
use crate::capacity;
use crate::error::{Error, Result};
use crate::measures::PackingWitness;
use crate::poly::MultilinearPoly;
use crate::rational::Rational;

/// Verification enumerates every `(a, b)` with `|a ∧ b| <= 1`.
pub const VERIFY_LIMIT: usize = 12;

/// Maps `a ∈ {0,1}^k` to `z ∨ ⋁_{i∈a} w_i` on both sides, so that on every
/// pair with `|a ∧ b| <= 1`, `UDISJ_k(a, b) = f(x(a) ∧ y(b)) ⊕ flip`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UdisjEmbedding {
    pub point: BitVec,
    pub blocks: Vec<BitVec>,
    /// Set when `f(z) = 0`.
    pub flip: bool,
}

pub fn udisj_embedding(f: &MultilinearPoly, witness: &PackingWitness) -> Result<UdisjEmbedding> {
    witness.verify(f)?;
    let base = f.evaluate(&witness.point);
    if !base.is_zero() && !base.is_one() {
        return Err(Error::NotBoolean);
    }
    Ok(UdisjEmbedding { point: witness.point.clone(), blocks: witness.blocks.clone(), flip: base.is_zero() })
}

/// `Some(true)` on disjoint pairs, `Some(false)` on pairs meeting once,
/// `None` outside the promise.
pub fn udisj(a: &BitVec, b: &BitVec) -> Option<bool> {
    match a.intersection(b).count() {
        0 => Some(true),
        1 => Some(false),
        _ => None,
    }
}

impl UdisjEmbedding {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// The same map serves Alice's `x(·)` and Bob's `y(·)`.
    pub fn map(&self, a: &BitVec) -> BitVec {
        a.iter().fold(self.point.clone(), |acc, i| acc.union(&self.blocks[i]))
    }

    /// Every promise pair `(a, b)` on which the embedding disagrees with
    /// `UDISJ_k`.
    pub fn violations(&self, f: &MultilinearPoly) -> Result<Vec<(BitVec, BitVec)>> {
        let k = self.k();
        capacity::check_or_override("unique disjointness check", k, VERIFY_LIMIT)?;
        let mut bad = Vec::new();
        // each coordinate is in neither, a only, b only, or (at most once) both
        let mut digits = vec![0u8; k];
        loop {
            let a = BitVec::from_indices(k, (0..k).filter(|&i| digits[i] == 1));
            let b = BitVec::from_indices(k, (0..k).filter(|&i| digits[i] == 2));
            for shared in std::iter::once(None).chain((0..k).filter(|&i| digits[i] == 0).map(Some)) {
                let (a, b) = match shared {
                    Some(i) => (a.with(i), b.with(i)),
                    None => (a.clone(), b.clone()),
                };
                let want = udisj(&a, &b).expect("promise pair");
                let v = f.evaluate(&self.map(&a).intersection(&self.map(&b)));
                if (v == Rational::one()) != (want ^ self.flip) {
                    bad.push((a, b));
                }
            }
            let Some(pos) = digits.iter().position(|&d| d < 2) else { break };
            digits[pos] += 1;
            digits[..pos].fill(0);
        }
        Ok(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TruthTable;

    fn singletons(n: usize) -> Vec<BitVec> {
        (0..n).map(|i| BitVec::from_indices(n, [i])).collect()
    }

    #[test]
    fn or_embedding() {
        for n in 1..=6 {
            let f = TruthTable::from_predicate(n, |z| !z.is_empty()).unwrap().to_poly().unwrap();
            let w = PackingWitness { point: BitVec::empty(n), blocks: singletons(n) };
            let e = udisj_embedding(&f, &w).unwrap();
            assert_eq!(e.k(), n);
            assert!(e.flip);
            let a = BitVec::from_indices(n, [0]);
            assert_eq!(f.evaluate(&e.map(&a).intersection(&e.map(&a))), Rational::one());
            assert!(e.violations(&f).unwrap().is_empty());
        }
    }

    #[test]
    fn and_embedding() {
        let n = 4;
        let f = TruthTable::from_predicate(n, |z| z.count() == n).unwrap().to_poly().unwrap();
        let e = udisj_embedding(&f, &PackingWitness { point: BitVec::empty(n), blocks: vec![BitVec::full(n)] }).unwrap();
        assert_eq!(e.k(), 1);
        assert!(e.violations(&f).unwrap().is_empty());
    }

    #[test]
    fn counts_promise_pairs_and_catches_bad_maps() {
        // x1 ∨ x2 with f(0) = 0: claiming flip = false breaks every pair
        let f = TruthTable::from_predicate(2, |z| !z.is_empty()).unwrap().to_poly().unwrap();
        let mut e = udisj_embedding(&f, &PackingWitness { point: BitVec::empty(2), blocks: singletons(2) }).unwrap();
        e.flip = false;
        // 3^2 disjoint pairs plus 2·3 pairs sharing one coordinate
        assert_eq!(e.violations(&f).unwrap().len(), 9 + 6);
    }

    #[test]
    fn rejects_invalid_witness() {
        let f = TruthTable::from_predicate(2, |z| z.count() == 2).unwrap().to_poly().unwrap();
        assert!(udisj_embedding(&f, &PackingWitness { point: BitVec::empty(2), blocks: singletons(2) }).is_err());
    }
}
