//! Closed-form upper bounds relating the measures, sparsity and tree depths.

use num_bigint::BigInt;

use crate::rational::Rational;

/// `ln x`, taken as 0 for `x <= 1`.
pub fn ln_or_zero(x: usize) -> f64 {
    if x <= 1 {
        0.0
    } else {
        (x as f64).ln()
    }
}

/// `⌈log2(n + 1)⌉`: the number of AND queries that binary-search `n + 1`
/// options.
pub fn search_depth(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// `⌈2·fhsc·ln spar⌉ + 1`, an upper bound on the 0-depth of the greedy tree.
pub fn zero_depth_bound(fhsc: &Rational, spar: usize) -> usize {
    (2.0 * fhsc.to_f64() * ln_or_zero(spar)).ceil() as usize + 1
}

/// `⌊fhsc·ln m⌋ + 1`, an upper bound on the greedy hitting set of `m` sets
/// whose fractional covering number is `fhsc`.
pub fn greedy_bound(fhsc: &Rational, m: usize) -> usize {
    (fhsc.to_f64() * ln_or_zero(m)).floor() as usize + 1
}

/// `zero_depth·⌈log2(n+1)⌉`.
pub fn adt_depth_bound(zero_depth: usize, n: usize) -> usize {
    zero_depth * search_depth(n)
}

pub fn pow3(d: usize) -> Rational {
    Rational::from_bigints(BigInt::from(3).pow(d as u32), BigInt::from(1))
}

pub fn pow2(d: usize) -> Rational {
    Rational::from_bigints(BigInt::from(1) << d, BigInt::from(1))
}
