use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::poly::format::parse_header;

/// A family of distinct nonempty subsets of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSetSystem", into = "RawSetSystem")]
pub struct SetSystem {
    n: usize,
    sets: Vec<BitVec>,
}

#[derive(Serialize, Deserialize)]
struct RawSetSystem {
    n: usize,
    sets: Vec<BitVec>,
}

impl TryFrom<RawSetSystem> for SetSystem {
    type Error = Error;

    fn try_from(raw: RawSetSystem) -> Result<Self> {
        SetSystem::new(raw.n, raw.sets)
    }
}

impl From<SetSystem> for RawSetSystem {
    fn from(s: SetSystem) -> Self {
        RawSetSystem { n: s.n, sets: s.sets }
    }
}

impl SetSystem {
    pub fn new(n: usize, sets: Vec<BitVec>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(sets.len());
        for s in &sets {
            if s.n() != n {
                return Err(Error::InvalidInput(format!("set {s} is over {} elements, expected {n}", s.n())));
            }
            if s.is_empty() {
                return Err(Error::InvalidInput("set systems may not contain the empty set".into()));
            }
            if !seen.insert(s) {
                return Err(Error::InvalidInput(format!("set {s} appears twice")));
            }
        }
        Ok(SetSystem { n, sets })
    }

    /// Like [`SetSystem::new`] but drops duplicates instead of rejecting
    /// them. Empty sets are still an error.
    pub fn dedup(n: usize, sets: Vec<BitVec>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(sets.len());
        let sets: Vec<BitVec> = sets.into_iter().filter(|s| seen.insert(s.clone())).collect();
        Self::new(n, sets)
    }

    pub fn empty(n: usize) -> Self {
        SetSystem { n, sets: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[BitVec] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Union of all sets.
    pub fn ground(&self) -> BitVec {
        let mut u = BitVec::empty(self.n);
        for s in &self.sets {
            u.union_with(s);
        }
        u
    }

    /// Number of sets containing `i`.
    pub fn degree(&self, i: usize) -> usize {
        self.sets.iter().filter(|s| s.contains(i)).count()
    }

    /// True when `h` meets every set.
    pub fn is_hit_by(&self, h: &BitVec) -> bool {
        self.sets.iter().all(|s| s.intersects(h))
    }

    /// True when the sets at `indices` are distinct members and pairwise
    /// disjoint.
    pub fn is_packing(&self, indices: &[usize]) -> bool {
        let mut used = BitVec::empty(self.n);
        let mut seen = std::collections::HashSet::new();
        for &k in indices {
            let Some(s) = self.sets.get(k) else { return false };
            if !seen.insert(k) || s.intersects(&used) {
                return false;
            }
            used.union_with(s);
        }
        true
    }

    /// Each set with the elements of `t` removed; sets that become empty or
    /// coincide are dropped.
    pub fn without_elements(&self, t: &BitVec) -> SetSystem {
        let sets = self.sets.iter().map(|s| s.difference(t)).filter(|s| !s.is_empty()).collect();
        SetSystem::dedup(self.n, sets).expect("empty sets already removed")
    }

    /// Inclusion-minimal members, in their original order.
    pub fn minimal_sets(&self) -> Vec<usize> {
        minimal_indices(&self.sets)
    }

    /// Parses the set-system file format: `n=<int>` then one `{i,j,...}`
    /// per line, `#` comments.
    pub fn parse(text: &str) -> Result<SetSystem> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty set-system file"))?;
        let n = parse_header(line, header)?;
        let mut sets = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (line, text) in lines {
            let s = BitVec::parse_set(n, text).map_err(|e| Error::parse(line, e.to_string()))?;
            if s.is_empty() {
                return Err(Error::parse(line, "empty set"));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::parse(line, format!("set {s} listed twice")));
            }
            sets.push(s);
        }
        SetSystem::new(n, sets)
    }

    pub fn format(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for s in &self.sets {
            writeln!(out, "{s}").unwrap();
        }
        out
    }
}

/// Indices of inclusion-minimal sets among `sets` (duplicates keep the
/// first occurrence).
pub fn minimal_indices(sets: &[BitVec]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&k| (sets[k].count(), k));
    let mut kept: Vec<usize> = Vec::new();
    for k in order {
        if !kept.iter().any(|&j| sets[j].is_subset(&sets[k])) {
            kept.push(k);
        }
    }
    kept.sort_unstable();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> BitVec {
        BitVec::from_indices(n, v.iter().map(|i| i - 1))
    }

    #[test]
    fn validation() {
        assert!(SetSystem::new(3, vec![set(3, &[1]), set(3, &[1])]).is_err());
        assert!(SetSystem::new(3, vec![BitVec::empty(3)]).is_err());
        assert!(SetSystem::new(3, vec![set(4, &[1])]).is_err());
        assert_eq!(SetSystem::dedup(3, vec![set(3, &[1]), set(3, &[1])]).unwrap().len(), 1);
    }

    #[test]
    fn file_round_trip() {
        let s = SetSystem::parse("# nested\nn=3\n{1}\n{1,2}\n{1, 2, 3}\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(SetSystem::parse(&s.format()).unwrap(), s);
        assert!(matches!(SetSystem::parse("n=3\n{1}\n{}\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(SetSystem::parse("n=3\n{4}\n"), Err(Error::Parse { line: 2, .. })));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<SetSystem>(&json).unwrap(), s);
    }

    #[test]
    fn helpers() {
        let s = SetSystem::new(4, vec![set(4, &[1, 2]), set(4, &[2]), set(4, &[3, 4]), set(4, &[2, 3])]).unwrap();
        assert_eq!(s.minimal_sets(), vec![1, 2]);
        assert_eq!(s.degree(1), 3);
        assert!(s.is_hit_by(&set(4, &[2, 3])));
        assert!(!s.is_hit_by(&set(4, &[1, 4])));
        assert!(s.is_packing(&[1, 2]));
        assert!(!s.is_packing(&[0, 1]));
        assert!(!s.is_packing(&[1, 1]));
        assert_eq!(s.without_elements(&set(4, &[2])).len(), 3);
    }
}
