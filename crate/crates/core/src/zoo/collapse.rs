use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::MultilinearPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeCollapse {
    /// `p ∘ f`, with `p(a) = 1` and `p(b) = 0` on the rest of the range.
    pub g: MultilinearPoly,
    pub range: Vec<Rational>,
    /// `binom(r + s - 1, s - 1)` for `r = spar(f)` and `s = |range|`:
    /// products of at most `s - 1` monomials of `f`, counted as multisets.
    pub sparsity_bound: BigInt,
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Composes `f` with the Lagrange indicator of `a` over the range of `f`.
pub fn range_collapse(f: &MultilinearPoly, a: &Rational) -> Result<RangeCollapse> {
    let range = f.to_truth_table()?.range();
    if !range.contains(a) {
        return Err(Error::InvalidInput(format!("{a} is not a value of f")));
    }
    let n = f.n();
    let mut g = MultilinearPoly::constant(n, Rational::one());
    for b in range.iter().filter(|&b| b != a) {
        // (f - b) / (a - b)
        let factor = (f - &MultilinearPoly::constant(n, b.clone())).scale(&(a - b).recip());
        g = &g * &factor;
    }
    if !g.is_boolean()? {
        return Err(Error::Internal("collapsed function is not boolean".into()));
    }
    let sparsity_bound = binomial(f.spar() + range.len() - 1, range.len() - 1);
    if BigInt::from(g.spar()) > sparsity_bound {
        return Err(Error::Internal(format!("collapsed sparsity {} exceeds {sparsity_bound}", g.spar())));
    }
    Ok(RangeCollapse { g, range, sparsity_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::{all_inputs, BitVec};
    use crate::measures::local_measures;
    use crate::poly::TruthTable;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sum(n: usize) -> MultilinearPoly {
        (0..n).fold(MultilinearPoly::zero(n), |acc, i| &acc + &MultilinearPoly::variable(n, i))
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(4, 4), BigInt::from(1));
    }

    #[test]
    fn boolean_identity() {
        let f = TruthTable::from_bits(3, 0b1001_0110).to_poly().unwrap();
        assert_eq!(range_collapse(&f, &q(1)).unwrap().g, f);
    }

    #[test]
    fn sum_of_two() {
        let f = sum(2);
        let top = range_collapse(&f, &q(2)).unwrap();
        assert_eq!(top.g, MultilinearPoly::monomial(BitVec::full(2), q(1)));
        let mid = range_collapse(&f, &q(1)).unwrap();
        let xor = &(&MultilinearPoly::variable(2, 0) + &MultilinearPoly::variable(2, 1))
            - &MultilinearPoly::monomial(BitVec::full(2), q(2));
        assert_eq!(mid.g, xor);
        assert!(range_collapse(&f, &q(3)).is_err());
    }

    #[test]
    fn single_variable_needs_the_binomial_bound() {
        // spar(f) = 1 and |range| = 2, yet g = 1 - x1 has two terms
        let f = MultilinearPoly::variable(1, 0);
        let c = range_collapse(&f, &q(0)).unwrap();
        assert_eq!(c.g.spar(), 2);
        assert_eq!(c.sparsity_bound, BigInt::from(2));
    }

    #[test]
    fn flipping_blocks_are_preserved() {
        let f = sum(4);
        for a in 0..=4 {
            let g = range_collapse(&f, &q(a)).unwrap().g;
            for z in all_inputs(4).filter(|z| z.count() as i64 == a) {
                assert_eq!(local_measures(&g, &z).mbs(), local_measures(&f, &z).mbs());
            }
        }
    }

    proptest! {
        #[test]
        fn collapse_of_small_range_functions(n in 1usize..=6, seed in any::<u64>(), s in 2i64..=4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let table = TruthTable::from_fn(n, |_| Rational::from_integer(rng.gen_range(0..s))).unwrap();
            let f = table.to_poly().unwrap();
            for a in table.range() {
                let c = range_collapse(&f, &a).unwrap();
                for z in all_inputs(n) {
                    prop_assert_eq!(c.g.evaluate(&z).is_one(), table.value(&z) == &a);
                }
                prop_assert!(BigInt::from(c.g.spar()) <= c.sparsity_bound);
            }
        }
    }
}
