//! Subset (zeta / Möbius) transforms between tables and coefficients.

use std::collections::BTreeMap;

use super::{MultilinearPoly, TruthTable};
use crate::bitvec::BitVec;
use crate::capacity;
use crate::error::Result;
use crate::rational::Rational;

/// Coefficients from evaluations: `α_T = Σ_{S⊆T} (-1)^{|T|-|S|} f(S)`,
/// computed in place with `n·2^n` subtractions.
pub fn mobius_invert(t: &TruthTable) -> Result<MultilinearPoly> {
    let n = t.n();
    capacity::check_table("mobius inversion", n)?;
    let mut a = t.values().to_vec();
    for i in 0..n {
        let bit = 1usize << i;
        for j in 0..a.len() {
            if j & bit != 0 {
                let lower = a[j ^ bit].clone();
                a[j] -= lower;
            }
        }
    }
    let terms: BTreeMap<BitVec, Rational> = a
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (BitVec::from_index(n, j as u64), c))
        .collect();
    Ok(MultilinearPoly { n, terms })
}

/// Evaluations from coefficients: `f(T) = Σ_{S⊆T} α_S`.
pub fn zeta_transform(p: &MultilinearPoly) -> Result<TruthTable> {
    let n = p.n();
    capacity::check_table("truth table", n)?;
    let mut a = vec![Rational::zero(); 1usize << n];
    for (s, c) in p.terms() {
        a[s.to_index() as usize] = c.clone();
    }
    for i in 0..n {
        let bit = 1usize << i;
        for j in 0..a.len() {
            if j & bit != 0 {
                let lower = a[j ^ bit].clone();
                a[j] += lower;
            }
        }
    }
    TruthTable::new(n, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::all_inputs;
    use crate::error::Error;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Direct double sum over all pairs `S ⊆ T`.
    fn naive(t: &TruthTable) -> Vec<Rational> {
        let n = t.n();
        (0..1u64 << n)
            .map(|tt| {
                all_inputs(n)
                    .filter(|s| s.to_index() & !tt == 0)
                    .map(|s| {
                        let sign = if (tt.count_ones() - s.count() as u32) % 2 == 0 { 1 } else { -1 };
                        t.value(&s) * Rational::from_integer(sign)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn agrees_with_naive_sum() {
        for n in 0..=3 {
            for bits in 0..1u64 << (1 << n) {
                let t = TruthTable::from_bits(n, bits);
                let p = mobius_invert(&t).unwrap();
                let expect = naive(&t);
                for z in all_inputs(n) {
                    assert_eq!(p.coefficient(&z), expect[z.to_index() as usize]);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let t = TruthTable::new(4, (0..16).map(|_| Rational::new(rng.gen_range(-9..10), rng.gen_range(1..5))).collect()).unwrap();
            let p = mobius_invert(&t).unwrap();
            let expect = naive(&t);
            for z in all_inputs(4) {
                assert_eq!(p.coefficient(&z), expect[z.to_index() as usize]);
            }
        }
    }

    #[test]
    fn round_trip_all_boolean_up_to_three() {
        for n in 0..=3 {
            for bits in 0..1u64 << (1 << n) {
                let t = TruthTable::from_bits(n, bits);
                let p = mobius_invert(&t).unwrap();
                for z in all_inputs(n) {
                    assert_eq!(&p.evaluate(&z), t.value(&z));
                }
                assert!(p.terms().all(|(_, c)| c.is_integer()));
                assert_eq!(zeta_transform(&p).unwrap(), t);
            }
        }
    }

    #[test]
    fn round_trip_random_rational_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let t = TruthTable::new(8, (0..256).map(|_| Rational::new(rng.gen_range(-50..50), rng.gen_range(1..12))).collect()).unwrap();
            let p = mobius_invert(&t).unwrap();
            for z in all_inputs(8) {
                assert_eq!(&p.evaluate(&z), t.value(&z));
            }
        }
    }

    #[test]
    fn small_named_functions() {
        assert!(mobius_invert(&TruthTable::from_bits(2, 0)).unwrap().is_zero());
        let and3 = mobius_invert(&TruthTable::from_bits(3, 0x80)).unwrap();
        assert_eq!(and3.spar(), 1);
        assert_eq!(and3.coefficient(&BitVec::full(3)), Rational::one());
        let or2 = mobius_invert(&TruthTable::from_bits(2, 0b1110)).unwrap();
        assert_eq!(or2.coefficient(&BitVec::full(2)), Rational::from_integer(-1));
    }

    #[test]
    fn capacity_guard() {
        let p = MultilinearPoly::variable(30, 0);
        assert!(matches!(zeta_transform(&p), Err(Error::Capacity { .. })));
    }
}
