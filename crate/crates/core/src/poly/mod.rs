//! Truth tables and sparse multilinear polynomials over ℚ.
//!
//! A truth table over `n` variables stores `f(z)` at index `j`, where
//! `z_{i+1}` is bit `i` of `j`. The same encoding is used for communication
//! matrix rows and for [`BitVec::from_index`].

pub(crate) mod format;
mod mobius;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::bitvec::BitVec;
use crate::capacity;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub use format::{format_poly, format_table, parse_function, FunctionFile};
pub use mobius::{mobius_invert, zeta_transform};

/// Dense evaluation vector of length `2^n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruthTable {
    n: usize,
    values: Vec<Rational>,
}

impl TruthTable {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self> {
        capacity::check_table("truth table", n)?;
        if values.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "truth table for n = {n} needs {} entries, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(TruthTable { n, values })
    }

    pub fn from_fn<F: FnMut(&BitVec) -> Rational>(n: usize, mut f: F) -> Result<Self> {
        capacity::check_table("truth table", n)?;
        let values = (0..1u64 << n).map(|j| f(&BitVec::from_index(n, j))).collect();
        Ok(TruthTable { n, values })
    }

    /// Boolean table from a predicate on the input.
    pub fn from_predicate<F: FnMut(&BitVec) -> bool>(n: usize, mut f: F) -> Result<Self> {
        Self::from_fn(n, |z| if f(z) { Rational::one() } else { Rational::zero() })
    }

    /// Boolean table whose entry `j` is bit `j` of `bits`. Requires `n <= 6`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(n <= 6, "from_bits needs n <= 6");
        let values = (0..1usize << n)
            .map(|j| Rational::from_integer((bits >> j & 1) as i64))
            .collect();
        TruthTable { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, index: usize) -> &Rational {
        &self.values[index]
    }

    pub fn value(&self, z: &BitVec) -> &Rational {
        &self.values[z.to_index() as usize]
    }

    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    /// `Some(bits)` when the table is boolean.
    pub fn to_bools(&self) -> Option<Vec<bool>> {
        self.values
            .iter()
            .map(|v| {
                if v.is_zero() {
                    Some(false)
                } else if v.is_one() {
                    Some(true)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Distinct values, ascending.
    pub fn range(&self) -> Vec<Rational> {
        let mut r = self.values.clone();
        r.sort();
        r.dedup();
        r
    }

    pub fn to_poly(&self) -> Result<MultilinearPoly> {
        mobius_invert(self)
    }
}

/// `f(x) = Σ_S α_S Π_{i∈S} x_i` with only nonzero `α_S` stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    n: usize,
    terms: BTreeMap<BitVec, Rational>,
}

impl MultilinearPoly {
    pub fn zero(n: usize) -> Self {
        MultilinearPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(BitVec::empty(n), c)
    }

    pub fn monomial(support: BitVec, c: Rational) -> Self {
        let n = support.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(support, c);
        }
        MultilinearPoly { n, terms }
    }

    pub fn variable(n: usize, i: usize) -> Self {
        Self::monomial(BitVec::from_indices(n, [i]), Rational::one())
    }

    /// Sums coefficients of repeated supports and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (BitVec, Rational)>>(n: usize, terms: I) -> Result<Self> {
        let mut map: BTreeMap<BitVec, Rational> = BTreeMap::new();
        for (s, c) in terms {
            if s.n() != n {
                return Err(Error::InvalidInput(format!("monomial {s} is over {} variables, expected {n}", s.n())));
            }
            *map.entry(s).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultilinearPoly { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Terms in truth-table index order of their supports.
    pub fn terms(&self) -> impl Iterator<Item = (&BitVec, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, support: &BitVec) -> Rational {
        self.terms.get(support).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&BitVec::empty(self.n))
    }

    /// Number of nonzero coefficients, constant term included.
    pub fn spar(&self) -> usize {
        self.terms.len()
    }

    /// Supports of the nonconstant monomials.
    pub fn mon(&self) -> Vec<BitVec> {
        self.terms.keys().filter(|s| !s.is_empty()).cloned().collect()
    }

    /// `|mon|`: number of nonconstant monomials.
    pub fn mon_count(&self) -> usize {
        self.terms.len() - usize::from(self.terms.contains_key(&BitVec::empty(self.n)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.mon_count() == 0
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(BitVec::count).max().unwrap_or(0)
    }

    pub fn l1_norm(&self) -> Rational {
        self.terms.values().map(Rational::abs).sum()
    }

    /// `Σ_{S⊆z} α_S`.
    pub fn evaluate(&self, z: &BitVec) -> Rational {
        self.terms
            .iter()
            .filter(|(s, _)| s.is_subset(z))
            .map(|(_, c)| c)
            .sum()
    }

    /// Evaluates at the input with truth-table index `j`. Requires `n <= 64`.
    pub fn evaluate_index(&self, j: u64) -> Rational {
        self.terms
            .iter()
            .filter(|(s, _)| s.low_word() & !j == 0)
            .map(|(_, c)| c)
            .sum()
    }

    /// `f_z`: variables in `z` fixed to 1. The result keeps `n` but no
    /// monomial mentions a variable of `z`.
    pub fn restrict_ones(&self, z: &BitVec) -> MultilinearPoly {
        if z.is_empty() {
            return self.clone();
        }
        let mut map: BTreeMap<BitVec, Rational> = BTreeMap::new();
        for (s, c) in &self.terms {
            *map.entry(s.difference(z)).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        MultilinearPoly { n: self.n, terms: map }
    }

    /// Fixes `x_i = 0`, deleting every monomial that contains `i`.
    pub fn restrict_zero(&self, i: usize) -> MultilinearPoly {
        assert!(i < self.n, "variable {i} out of range for n = {}", self.n);
        let terms = self.terms.iter().filter(|(s, _)| !s.contains(i)).map(|(s, c)| (s.clone(), c.clone())).collect();
        MultilinearPoly { n: self.n, terms }
    }

    /// Fixes every variable of `zeros` to 0.
    pub fn restrict_zeros(&self, zeros: &BitVec) -> MultilinearPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(s, _)| s.is_disjoint(zeros))
            .map(|(s, c)| (s.clone(), c.clone()))
            .collect();
        MultilinearPoly { n: self.n, terms }
    }

    pub fn scale(&self, c: &Rational) -> MultilinearPoly {
        if c.is_zero() {
            return MultilinearPoly::zero(self.n);
        }
        let terms = self.terms.iter().map(|(s, a)| (s.clone(), a * c)).collect();
        MultilinearPoly { n: self.n, terms }
    }

    pub fn to_truth_table(&self) -> Result<TruthTable> {
        zeta_transform(self)
    }

    /// True when the polynomial takes only values 0 and 1 on `{0,1}^n`.
    pub fn is_boolean(&self) -> Result<bool> {
        Ok(self.to_truth_table()?.is_boolean())
    }

    fn check_same_n(&self, other: &MultilinearPoly) {
        assert_eq!(self.n, other.n, "polynomials over different variable counts");
    }
}

impl Add for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn add(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        self.check_same_n(rhs);
        let mut terms = self.terms.clone();
        for (s, c) in &rhs.terms {
            *terms.entry(s.clone()).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        MultilinearPoly { n: self.n, terms }
    }
}

impl Sub for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn sub(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn neg(self) -> MultilinearPoly {
        let terms = self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect();
        MultilinearPoly { n: self.n, terms }
    }
}

/// Product reduced by `x_i^2 = x_i`.
impl Mul for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn mul(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        self.check_same_n(rhs);
        let mut terms: BTreeMap<BitVec, Rational> = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                *terms.entry(s.union(t)).or_default() += a * b;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultilinearPoly { n: self.n, terms }
    }
}

/// `2 + x1x3 - 1/2 x2` style, 1-based.
impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let vars: Vec<String> = s.iter().map(|i| format!("x{}", i + 1)).collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join(""))?;
            } else {
                write!(f, "{mag}{}", vars.join(""))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] {}", self.n, self)
    }
}
