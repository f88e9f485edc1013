use serde::{Deserialize, Serialize};

use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::optkern::{minimal_indices, SetSystem};
use crate::poly::{MultilinearPoly, TruthTable};
use crate::rational::Rational;

/// Evaluates a function given either as a polynomial or as a table.
#[derive(Clone, Copy)]
pub(crate) enum Oracle<'a> {
    Poly(&'a MultilinearPoly),
    Table(&'a TruthTable),
}

impl Oracle<'_> {
    pub(crate) fn value(&self, z: &BitVec) -> Rational {
        match self {
            Oracle::Poly(p) => p.evaluate(z),
            Oracle::Table(t) => t.value(z).clone(),
        }
    }
}

/// The minimal blocks `w` (disjoint from `base`) with `f(base ∨ w) ≠ f(base)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitiveFamily {
    pub base: BitVec,
    pub blocks: SetSystem,
}

/// Minimal flipping blocks at `z`, read off as the inclusion-minimal
/// monomials of `f` restricted to the ones of `z`.
pub fn sensitive_family(f: &MultilinearPoly, z: &BitVec) -> SensitiveFamily {
    family_with(f, z, Oracle::Poly(f)).expect("minimal monomials always flip")
}

/// As [`sensitive_family`], checking flips against a precomputed table.
pub fn sensitive_family_with_table(f: &MultilinearPoly, table: &TruthTable, z: &BitVec) -> SensitiveFamily {
    family_with(f, z, Oracle::Table(table)).expect("minimal monomials always flip")
}

pub(crate) fn family_with(f: &MultilinearPoly, z: &BitVec, oracle: Oracle<'_>) -> Result<SensitiveFamily> {
    let blocks = minimal_blocks(&f.restrict_ones(z));
    let base_value = oracle.value(z);
    for w in &blocks {
        if oracle.value(&z.union(w)) == base_value {
            return Err(Error::Internal(format!("minimal monomial {w} does not flip f at {z}")));
        }
    }
    let blocks = SetSystem::new(f.n(), blocks).expect("monomial supports are distinct and nonempty");
    Ok(SensitiveFamily { base: z.clone(), blocks })
}

/// Inclusion-minimal nonconstant monomials of `g`.
pub fn minimal_blocks(g: &MultilinearPoly) -> Vec<BitVec> {
    let mon = g.mon();
    minimal_indices(&mon).into_iter().map(|k| mon[k].clone()).collect()
}

/// Minimal elements of `W(f, z)` by scanning every `w ⊆ [n] \ z`.
/// Reference implementation for small `n`.
pub fn sensitive_family_by_scan(t: &TruthTable, z: &BitVec) -> SensitiveFamily {
    let n = t.n();
    let base_value = t.value(z);
    let free = z.complement();
    let flips: Vec<BitVec> = crate::bitvec::all_inputs(n)
        .filter(|w| !w.is_empty() && w.is_subset(&free) && t.value(&z.union(w)) != base_value)
        .collect();
    let blocks = minimal_indices(&flips).into_iter().map(|k| flips[k].clone()).collect();
    SensitiveFamily { base: z.clone(), blocks: SetSystem::new(n, blocks).expect("distinct nonempty") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::all_inputs;
    use std::collections::BTreeSet;

    fn as_set(f: &SensitiveFamily) -> BTreeSet<BitVec> {
        f.blocks.sets().iter().cloned().collect()
    }

    #[test]
    fn matches_scan_for_all_three_variable_functions() {
        for bits in 0..256u64 {
            let t = TruthTable::from_bits(3, bits);
            let p = t.to_poly().unwrap();
            for z in all_inputs(3) {
                assert_eq!(as_set(&sensitive_family(&p, &z)), as_set(&sensitive_family_by_scan(&t, &z)), "f={bits:#x} z={z}");
            }
        }
    }

    #[test]
    fn matches_scan_for_all_four_variable_functions_at_zero() {
        let z = BitVec::empty(4);
        for bits in 0..1u64 << 16 {
            let t = TruthTable::from_bits(4, bits);
            let p = t.to_poly().unwrap();
            assert_eq!(as_set(&sensitive_family_with_table(&p, &t, &z)), as_set(&sensitive_family_by_scan(&t, &z)));
        }
    }

    #[test]
    fn named_examples() {
        let or3 = TruthTable::from_bits(3, 0xfe).to_poly().unwrap();
        let fam = sensitive_family(&or3, &BitVec::empty(3));
        assert_eq!(fam.blocks.sets(), &[BitVec::from_indices(3, [0]), BitVec::from_indices(3, [1]), BitVec::from_indices(3, [2])]);
        let and3 = TruthTable::from_bits(3, 0x80).to_poly().unwrap();
        assert_eq!(sensitive_family(&and3, &BitVec::empty(3)).blocks.sets(), &[BitVec::full(3)]);
        // majority on 4 (weight >= 2) at {1}: any one more coordinate flips
        let maj = TruthTable::from_predicate(4, |z| z.count() >= 2).unwrap();
        let fam = sensitive_family(&maj.to_poly().unwrap(), &BitVec::from_indices(4, [0]));
        assert_eq!(as_set(&fam), as_set(&sensitive_family_by_scan(&maj, &BitVec::from_indices(4, [0]))));
        assert_eq!(fam.blocks.len(), 3);
        assert!(fam.blocks.sets().iter().all(|w| w.count() == 1));
        let constant = MultilinearPoly::constant(3, Rational::one());
        assert!(sensitive_family(&constant, &BitVec::empty(3)).blocks.is_empty());
    }
}
