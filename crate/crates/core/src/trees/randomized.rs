//! A randomized AND-decision tree for `f(x) = [|x| >= n-1]`.
//!
//! Each trial draws a uniform `S ⊆ [n]` and answers
//! `q_S(x) = ∧_{i∈S} x_i ∨ ∧_{i∉S} x_i`, which takes two AND queries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AndDecisionTree;
use crate::bitvec::BitVec;
use crate::capacity;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct RandomizedAndDt {
    n: usize,
    rng: ChaCha8Rng,
}

pub fn threshold_randomized_adt(n: usize, seed: u64) -> Result<RandomizedAndDt> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("threshold tree needs n >= 2, got {n}")));
    }
    Ok(RandomizedAndDt { n, rng: ChaCha8Rng::seed_from_u64(seed) })
}

impl RandomizedAndDt {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Draws `S` uniformly from all subsets of `[n]`.
    pub fn sample_query(&mut self) -> BitVec {
        let n = self.n;
        BitVec::from_indices(n, (0..n).filter(|_| self.rng.gen_bool(0.5)).collect::<Vec<_>>())
    }

    pub fn query_value(s: &BitVec, x: &BitVec) -> bool {
        s.is_subset(x) || s.complement().is_subset(x)
    }

    /// The depth-2 AND tree that computes `q_S`.
    pub fn tree_for(s: &BitVec) -> AndDecisionTree {
        let one = || AndDecisionTree::leaf(Rational::one());
        AndDecisionTree::node(
            s.clone(),
            AndDecisionTree::node(s.complement(), AndDecisionTree::leaf(Rational::zero()), one()),
            one(),
        )
    }

    /// One trial.
    pub fn evaluate(&mut self, x: &BitVec) -> bool {
        let s = self.sample_query();
        Self::query_value(&s, x)
    }

    /// Conjunction of `trials` independent trials. Errors are one-sided, so
    /// this drives the error on `|x| <= n-2` down to at most `2^-trials`.
    pub fn evaluate_repeated(&mut self, x: &BitVec, trials: usize) -> bool {
        (0..trials).all(|_| self.evaluate(x))
    }
}

fn threshold(n: usize, x: &BitVec) -> bool {
    x.count() + 1 >= n
}

/// `Pr_S[q_S(x) ≠ f(x)]`, by enumerating all `2^n` subsets `S`.
pub fn threshold_error_at(n: usize, x: &BitVec) -> Result<Rational> {
    capacity::check_enumeration("threshold error", n)?;
    if x.n() != n {
        return Err(Error::InvalidInput(format!("input has {} variables, expected {n}", x.n())));
    }
    let want = threshold(n, x);
    let wrong = (0u64..1 << n)
        .filter(|&s| RandomizedAndDt::query_value(&BitVec::from_index(n, s), x) != want)
        .count();
    Ok(Rational::from_bigints((wrong as u64).into(), (1u64 << n).into()))
}

/// Worst-case error over all inputs. The error depends only on `|x|` since
/// `S` is uniform, so one input per weight is enumerated.
pub fn threshold_error(n: usize) -> Result<Rational> {
    capacity::check_enumeration("threshold error", n)?;
    let mut worst = Rational::zero();
    for w in 0..=n {
        worst = worst.max(threshold_error_at(n, &BitVec::from_indices(n, 0..w))?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::all_inputs;

    #[test]
    fn errors_by_weight() {
        let n = 4;
        for x in all_inputs(n) {
            let err = threshold_error_at(n, &x).unwrap();
            let zeros = n - x.count();
            if zeros <= 1 {
                assert!(err.is_zero());
            } else {
                // q_S(x) = 1 exactly when all zeros of x land on one side
                let expected = Rational::new(2, 1 << zeros);
                assert_eq!(err, expected);
                assert!(err <= Rational::new(1, 2));
            }
        }
        assert_eq!(threshold_error(n).unwrap(), Rational::new(1, 2));
    }

    #[test]
    fn trees_match_queries() {
        let n = 3;
        for s in all_inputs(n) {
            let t = RandomizedAndDt::tree_for(&s);
            assert_eq!(t.depth(), 2);
            for x in all_inputs(n) {
                assert_eq!(t.evaluate(&x).is_one(), RandomizedAndDt::query_value(&s, &x));
            }
        }
    }

    #[test]
    fn sampling_is_seeded_and_one_sided() {
        let mut a = threshold_randomized_adt(6, 9).unwrap();
        let mut b = threshold_randomized_adt(6, 9).unwrap();
        for _ in 0..20 {
            assert_eq!(a.sample_query(), b.sample_query());
        }
        let high = BitVec::from_indices(6, 1..6);
        assert!((0..50).all(|_| a.evaluate(&high)));
        let low = BitVec::from_indices(6, 2..6);
        assert!(!a.evaluate_repeated(&low, 40));
        assert!(threshold_randomized_adt(1, 0).is_err());
    }
}
