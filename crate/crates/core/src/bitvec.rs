//! Subsets of `[n]`, identified with inputs in `{0,1}^n`.
//!
//! Variables are 0-based in the API. Text formats (`{1,2,3}`) are 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 2]>;

/// An input `z ∈ {0,1}^n`, viewed as the set `{i : z_i = 1}`.
///
/// Bits at positions `>= n` are never set. Binary operations require both
/// operands to have the same `n`.
#[derive(Clone)]
pub struct BitVec {
    n: usize,
    words: Words,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl BitVec {
    pub fn empty(n: usize) -> Self {
        BitVec { n, words: smallvec![0; word_count(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut v = BitVec::empty(n);
        for (w, word) in v.words.iter_mut().enumerate() {
            let lo = w * 64;
            let bits = n.saturating_sub(lo).min(64);
            *word = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        }
        v
    }

    /// Builds a set from 0-based indices. Panics on an index `>= n`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut v = BitVec::empty(n);
        for i in indices {
            v.insert(i);
        }
        v
    }

    pub fn try_from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Result<Self> {
        let mut v = BitVec::empty(n);
        for i in indices {
            if i >= n {
                return Err(Error::InvalidInput(format!("index {} outside [{}]", i + 1, n)));
            }
            v.insert(i);
        }
        Ok(v)
    }

    /// The input whose truth-table index is `index` (bit `i` of the index
    /// is `z_{i+1}`). Requires `n <= 64`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(n <= 64, "from_index needs n <= 64");
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        assert!(index & !mask == 0, "index {index} has bits beyond n = {n}");
        BitVec { n, words: smallvec![index] }
    }

    /// Inverse of [`BitVec::from_index`].
    pub fn to_index(&self) -> u64 {
        assert!(self.n <= 64, "to_index needs n <= 64");
        self.words[0]
    }

    /// The low word, for callers that know `n <= 64`.
    #[inline]
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "index {i} out of range for n = {}", self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.n {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn with(&self, i: usize) -> Self {
        let mut v = self.clone();
        v.insert(i);
        v
    }

    pub fn without(&self, i: usize) -> Self {
        let mut v = self.clone();
        v.remove(i);
        v
    }

    /// Number of ones.
    #[inline]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones { words: &self.words, word: 0, current: self.words[0] }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    #[inline]
    fn check_n(&self, other: &BitVec) {
        debug_assert_eq!(self.n, other.n, "mixing inputs over different n");
    }

    pub fn union(&self, other: &BitVec) -> BitVec {
        self.check_n(other);
        BitVec { n: self.n, words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect() }
    }

    pub fn intersection(&self, other: &BitVec) -> BitVec {
        self.check_n(other);
        BitVec { n: self.n, words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn difference(&self, other: &BitVec) -> BitVec {
        self.check_n(other);
        BitVec { n: self.n, words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect() }
    }

    pub fn complement(&self) -> BitVec {
        BitVec::full(self.n).difference(self)
    }

    pub fn union_with(&mut self, other: &BitVec) {
        self.check_n(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitVec) {
        self.check_n(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitVec) {
        self.check_n(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    #[inline]
    pub fn is_subset(&self, other: &BitVec) -> bool {
        self.check_n(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Subset and not equal.
    pub fn is_proper_subset(&self, other: &BitVec) -> bool {
        self.is_subset(other) && self != other
    }

    #[inline]
    pub fn is_disjoint(&self, other: &BitVec) -> bool {
        self.check_n(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &BitVec) -> bool {
        !self.is_disjoint(other)
    }

    /// Re-embeds into a ground set of size `n` (which must hold every set
    /// bit).
    pub fn resized(&self, n: usize) -> BitVec {
        BitVec::from_indices(n, self.iter())
    }

    /// `"0110"`: character `i` is `z_{i+1}`.
    pub fn to_bit_string(&self) -> String {
        (0..self.n).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Result<BitVec> {
        let mut v = BitVec::empty(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => v.insert(i),
                '0' => {}
                _ => return Err(Error::InvalidInput(format!("not a bit string: {s:?}"))),
            }
        }
        Ok(v)
    }

    /// Parses `{1,2,3}` (1-based) over a ground set of size `n`.
    pub fn parse_set(n: usize, s: &str) -> Result<BitVec> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::InvalidInput(format!("expected {{i,j,...}}, got {s:?}")))?;
        let mut v = BitVec::empty(n);
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad index {tok:?}")))?;
            if i == 0 || i > n {
                return Err(Error::InvalidInput(format!("index {i} outside 1..={n}")));
            }
            v.insert(i - 1);
        }
        Ok(v)
    }
}

/// Iterator over the set positions, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

impl PartialEq for BitVec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}

impl Eq for BitVec {}

impl Hash for BitVec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.words.hash(state);
    }
}

/// Ordered by `n`, then by truth-table index (numeric value of the
/// little-endian bit pattern).
impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `{1,3}` (1-based).
impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self, self.n)
    }
}

impl Serialize for BitVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bit_string())
    }
}

impl<'de> Deserialize<'de> for BitVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        BitVec::from_bit_string(&s).map_err(serde::de::Error::custom)
    }
}

/// All subsets of `[n]` in truth-table index order. Requires `n < 64`.
pub fn all_inputs(n: usize) -> impl Iterator<Item = BitVec> {
    assert!(n < 64);
    (0..1u64 << n).map(move |j| BitVec::from_index(n, j))
}
