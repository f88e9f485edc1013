//! Sensitivity, degree and block sensitivity, plus the block collapse used to
//! turn a packing into a fully sensitive function.

use std::collections::BTreeMap;

use crate::bitvec::BitVec;
use crate::capacity;
use crate::error::{Error, Result};
use crate::optkern::{integral_pack, minimal_indices, SetSystem};
use crate::poly::{MultilinearPoly, TruthTable};
use crate::rational::Rational;

/// Block sensitivity enumerates all `4^n` (point, block) pairs.
const BLOCK_SENSITIVITY_LIMIT: usize = 12;

fn boolean_bits(f: &TruthTable) -> Result<Vec<bool>> {
    f.to_bools().ok_or(Error::NotBoolean)
}

/// `max_z #{i : f(z) ≠ f(z ⊕ e_i)}`.
pub fn sensitivity(f: &TruthTable) -> Result<usize> {
    let bits = boolean_bits(f)?;
    let n = f.n();
    Ok((0..bits.len())
        .map(|j| (0..n).filter(|i| bits[j] != bits[j ^ (1 << i)]).count())
        .max()
        .unwrap_or(0))
}

/// Size of the largest monomial.
pub fn degree(f: &MultilinearPoly) -> usize {
    f.degree()
}

/// `max_z` of the largest number of disjoint blocks `B` with
/// `f(z) ≠ f(z ⊕ B)`.
pub fn block_sensitivity(f: &TruthTable) -> Result<usize> {
    let bits = boolean_bits(f)?;
    let n = f.n();
    capacity::check_or_override("block sensitivity", n, BLOCK_SENSITIVITY_LIMIT)?;
    let mut best = 0;
    for z in 0..bits.len() {
        let blocks: Vec<BitVec> = (1..bits.len())
            .filter(|&b| bits[z ^ b] != bits[z])
            .map(|b| BitVec::from_index(n, b as u64))
            .collect();
        if blocks.len() <= best {
            continue;
        }
        let minimal: Vec<BitVec> = minimal_indices(&blocks).into_iter().map(|k| blocks[k].clone()).collect();
        let system = SetSystem::new(n, minimal).expect("distinct nonempty blocks");
        best = best.max(integral_pack(&system).len());
    }
    Ok(best)
}

/// `g(x) = f(z + Σ_i x_i w_i)` over `k = |blocks|` variables.
///
/// Coordinates outside `z` and the blocks stay 0. Fails if `z` and the
/// blocks are not pairwise disjoint.
pub fn block_collapse(f: &MultilinearPoly, z: &BitVec, blocks: &SetSystem) -> Result<MultilinearPoly> {
    let mut used = z.clone();
    for w in blocks.sets() {
        if w.intersects(&used) {
            return Err(Error::InvalidInput(format!("block {w} overlaps the point or another block")));
        }
        used.union_with(w);
    }
    let k = blocks.len();
    let g = f.restrict_ones(z).restrict_zeros(&used.complement());
    let mut terms: BTreeMap<BitVec, Rational> = BTreeMap::new();
    for (s, c) in g.terms() {
        let touched = BitVec::from_indices(k, (0..k).filter(|&i| s.intersects(&blocks.sets()[i])));
        *terms.entry(touched).or_default() += c;
    }
    MultilinearPoly::from_terms(k, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::all_inputs;
    use crate::measures::{local_measures, sensitive_family};

    fn or(n: usize) -> TruthTable {
        TruthTable::from_predicate(n, |z| !z.is_empty()).unwrap()
    }

    fn and(n: usize) -> TruthTable {
        TruthTable::from_predicate(n, |z| z.count() == n).unwrap()
    }

    #[test]
    fn named_values() {
        assert_eq!(sensitivity(&and(5)).unwrap(), 5);
        assert_eq!(sensitivity(&or(3)).unwrap(), 3);
        let maj = TruthTable::from_predicate(4, |z| z.count() >= 2).unwrap();
        assert_eq!(degree(&maj.to_poly().unwrap()), 4);
        assert_eq!(block_sensitivity(&or(4)).unwrap(), 4);
        let half = TruthTable::new(1, vec![Rational::new(1, 2), Rational::one()]).unwrap();
        assert_eq!(sensitivity(&half), Err(Error::NotBoolean));
    }

    /// Definitional: monotone blocks are a special case of blocks.
    #[test]
    fn mbs_below_block_sensitivity() {
        for bits in 0..256u64 {
            let t = TruthTable::from_bits(3, bits);
            let p = t.to_poly().unwrap();
            let bs = block_sensitivity(&t).unwrap();
            assert!(sensitivity(&t).unwrap() <= bs);
            for z in all_inputs(3) {
                assert!(local_measures(&p, &z).mbs() <= bs);
            }
        }
    }

    #[test]
    fn collapse_examples() {
        let or3 = or(3).to_poly().unwrap();
        let z = BitVec::empty(3);
        let singles = SetSystem::new(3, (0..3).map(|i| BitVec::from_indices(3, [i])).collect()).unwrap();
        assert_eq!(block_collapse(&or3, &z, &singles).unwrap(), or3);
        let pairs = SetSystem::new(3, vec![BitVec::from_indices(3, [0, 1]), BitVec::from_indices(3, [2])]).unwrap();
        assert_eq!(block_collapse(&or3, &z, &pairs).unwrap(), or(2).to_poly().unwrap());
        let and3 = and(3).to_poly().unwrap();
        let blocks = SetSystem::new(3, vec![BitVec::from_indices(3, [0]), BitVec::from_indices(3, [1])]).unwrap();
        assert_eq!(block_collapse(&and3, &BitVec::from_indices(3, [2]), &blocks).unwrap(), and(2).to_poly().unwrap());
        let overlap = SetSystem::new(3, vec![BitVec::from_indices(3, [0, 1]), BitVec::from_indices(3, [1])]).unwrap();
        assert!(block_collapse(&or3, &z, &overlap).is_err());
    }

    /// Collapsing an MBS packing gives a function sensitive to every
    /// variable at 0, with no more monomials than f.
    #[test]
    fn collapsed_packing_is_fully_sensitive() {
        for bits in (0..1u64 << 16).step_by(13) {
            let t = TruthTable::from_bits(4, bits);
            let p = t.to_poly().unwrap();
            for z in all_inputs(4) {
                let r = local_measures(&p, &z);
                let w = &r.witnesses().packing;
                let blocks = SetSystem::new(4, w.blocks.clone()).unwrap();
                let g = block_collapse(&p, &z, &blocks).unwrap();
                assert!(g.spar() <= p.spar());
                let k = blocks.len();
                let g0 = g.evaluate(&BitVec::empty(k));
                assert!((0..k).all(|i| g.evaluate(&BitVec::from_indices(k, [i])) != g0));
                for x in all_inputs(k) {
                    let mut y = z.clone();
                    for i in x.iter() {
                        y.union_with(&blocks.sets()[i]);
                    }
                    assert_eq!(g.evaluate(&x), p.evaluate(&y));
                }
                assert!(sensitive_family(&p, &z).blocks.len() >= k);
            }
        }
    }
}
