//! Covering and packing LPs over a [`SetSystem`], and their exact integral
//! versions by branch and bound.

use super::setsystem::{minimal_indices, SetSystem};
use super::simplex::{LinearProgram, LpResult, RowSense, Sense};
use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Branch-and-bound nodes with more candidates than this use an LP bound.
const LP_BOUND_THRESHOLD: usize = 10;

/// `min Σ b_i` s.t. every set has weight at least 1, `b >= 0`.
///
/// Primal variable `i` is the weight of element `i`; dual `k` is the weight
/// of set `k`.
pub fn fractional_cover(s: &SetSystem) -> LpResult {
    let n = s.n();
    let mut lp = LinearProgram::new(Sense::Minimize, vec![Rational::one(); n]);
    for set in s.sets() {
        let coeffs = (0..n).map(|i| Rational::from_integer(set.contains(i) as i64)).collect();
        lp.constrain(coeffs, RowSense::Ge, Rational::one());
    }
    lp.solve().expect("cover LPs are feasible and bounded")
}

/// `max Σ a_w` s.t. every element carries weight at most 1, `a >= 0`.
///
/// Primal variable `k` is the weight of set `k`; dual `i` is the weight of
/// element `i` (one row per element of `[n]`).
pub fn fractional_pack(s: &SetSystem) -> LpResult {
    let n = s.n();
    let mut lp = LinearProgram::new(Sense::Maximize, vec![Rational::one(); s.len()]);
    for i in 0..n {
        let coeffs = s.sets().iter().map(|w| Rational::from_integer(w.contains(i) as i64)).collect();
        lp.constrain(coeffs, RowSense::Le, Rational::one());
    }
    lp.solve().expect("packing LPs are feasible and bounded")
}

/// A maximum family of pairwise disjoint sets, as indices into `s`.
pub fn integral_pack(s: &SetSystem) -> Vec<usize> {
    let sets = s.sets();
    // shrinking a set never hurts a packing
    let cands = minimal_indices(sets);
    let mut search = PackSearch { sets, best: greedy_packing(sets, &cands) };
    search.run(&mut Vec::new(), cands);
    let mut best = search.best;
    best.sort_unstable();
    assert!(s.is_packing(&best), "packing search returned overlapping sets");
    best
}

fn greedy_packing(sets: &[BitVec], cands: &[usize]) -> Vec<usize> {
    let mut order = cands.to_vec();
    order.sort_by_key(|&k| (sets[k].count(), k));
    let mut used = BitVec::empty(sets.first().map_or(0, BitVec::n));
    let mut out = Vec::new();
    for k in order {
        if sets[k].is_disjoint(&used) {
            used.union_with(&sets[k]);
            out.push(k);
        }
    }
    out
}

struct PackSearch<'a> {
    sets: &'a [BitVec],
    best: Vec<usize>,
}

impl PackSearch<'_> {
    fn upper_bound(&self, cands: &[usize]) -> usize {
        let n = self.sets[0].n();
        let mut union = BitVec::empty(n);
        let mut smallest = usize::MAX;
        for &k in cands {
            union.union_with(&self.sets[k]);
            smallest = smallest.min(self.sets[k].count());
        }
        let cheap = cands.len().min(union.count() / smallest.max(1));
        if cheap > 1 && cands.len() > LP_BOUND_THRESHOLD {
            let sub = SetSystem::new(n, cands.iter().map(|&k| self.sets[k].clone()).collect())
                .expect("candidates are distinct nonempty sets");
            let lp = fractional_pack(&sub).value().floor();
            cheap.min(usize::try_from(lp).unwrap_or(usize::MAX))
        } else {
            cheap
        }
    }

    fn run(&mut self, chosen: &mut Vec<usize>, cands: Vec<usize>) {
        if cands.is_empty() {
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + cands.len() <= self.best.len() || chosen.len() + self.upper_bound(&cands) <= self.best.len() {
            return;
        }
        let n = self.sets[0].n();
        let (e, degree) = (0..n)
            .map(|i| (i, cands.iter().filter(|&&k| self.sets[k].contains(i)).count()))
            .max_by_key(|&(i, d)| (d, std::cmp::Reverse(i)))
            .expect("n > 0 when candidates exist");
        if degree <= 1 {
            // pairwise disjoint already
            if chosen.len() + cands.len() > self.best.len() {
                self.best = chosen.iter().chain(&cands).copied().collect();
            }
            return;
        }
        let (with_e, without_e): (Vec<usize>, Vec<usize>) = cands.iter().partition(|&&k| self.sets[k].contains(e));
        for &k in &with_e {
            let rest = cands.iter().copied().filter(|&j| self.sets[j].is_disjoint(&self.sets[k])).collect();
            chosen.push(k);
            self.run(chosen, rest);
            chosen.pop();
        }
        self.run(chosen, without_e);
    }
}

/// A minimum hitting set. Elements outside every set are never used.
pub fn integral_cover(s: &SetSystem) -> BitVec {
    let n = s.n();
    let sets: Vec<BitVec> = minimal_indices(s.sets()).into_iter().map(|k| s.sets()[k].clone()).collect();
    let best = super::greedy::greedy_cover(s).hitting_set;
    let mut search = CoverSearch { n, best };
    search.run(BitVec::empty(n), sets);
    assert!(s.is_hit_by(&search.best), "cover search returned a non-hitting set");
    search.best
}

struct CoverSearch {
    n: usize,
    best: BitVec,
}

impl CoverSearch {
    fn lower_bound(&self, remaining: &[BitVec]) -> usize {
        let packing = greedy_packing(remaining, &(0..remaining.len()).collect::<Vec<_>>()).len();
        if remaining.len() > LP_BOUND_THRESHOLD {
            let sub = SetSystem::dedup(self.n, remaining.to_vec()).expect("remaining sets are nonempty");
            let lp = fractional_cover(&sub).value().ceil();
            packing.max(usize::try_from(lp).unwrap_or(0))
        } else {
            packing
        }
    }

    fn run(&mut self, chosen: BitVec, remaining: Vec<BitVec>) {
        if remaining.is_empty() {
            if chosen.count() < self.best.count() {
                self.best = chosen;
            }
            return;
        }
        if chosen.count() + 1 >= self.best.count() {
            return;
        }
        if chosen.count() + self.lower_bound(&remaining) >= self.best.count() {
            return;
        }
        let pivot = remaining
            .iter()
            .min_by_key(|s| s.count())
            .expect("remaining is nonempty")
            .clone();
        let mut forbidden = BitVec::empty(self.n);
        for e in pivot.iter() {
            let mut next = Vec::with_capacity(remaining.len());
            let mut dead = false;
            for s in remaining.iter().filter(|s| !s.contains(e)) {
                let t = s.difference(&forbidden);
                if t.is_empty() {
                    dead = true;
                    break;
                }
                next.push(t);
            }
            if !dead {
                self.run(chosen.with(e), next);
            }
            forbidden.insert(e);
        }
    }
}

/// Size of a maximum packing.
pub fn packing_number(s: &SetSystem) -> usize {
    integral_pack(s).len()
}

/// Size of a minimum hitting set.
pub fn covering_number(s: &SetSystem) -> usize {
    integral_cover(s).count()
}

/// Rejects a claimed packing unless it is valid.
pub fn verify_packing(s: &SetSystem, indices: &[usize]) -> Result<()> {
    if s.is_packing(indices) {
        Ok(())
    } else {
        Err(Error::Internal(format!("indices {indices:?} do not form a packing")))
    }
}

/// Rejects a claimed hitting set unless it meets every set.
pub fn verify_hitting_set(s: &SetSystem, h: &BitVec) -> Result<()> {
    match s.sets().iter().find(|w| w.is_disjoint(h)) {
        None => Ok(()),
        Some(w) => Err(Error::Internal(format!("{h} misses {w}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optkern::exhaustive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
        SetSystem::new(n, sets.iter().map(|s| BitVec::from_indices(n, s.iter().map(|i| i - 1))).collect()).unwrap()
    }

    fn fano() -> SetSystem {
        sys(7, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6], &[2, 5, 7], &[3, 4, 7], &[3, 5, 6]])
    }

    fn two_subsets(n: usize) -> SetSystem {
        let mut sets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                sets.push(BitVec::from_indices(n, [i, j]));
            }
        }
        SetSystem::new(n, sets).unwrap()
    }

    #[test]
    fn fano_values() {
        let s = fano();
        assert_eq!(fractional_cover(&s).value(), &Rational::new(7, 3));
        let pack = fractional_pack(&s);
        assert_eq!(pack.value(), &Rational::new(7, 3));
        assert_eq!(integral_pack(&s).len(), 1);
        assert_eq!(integral_cover(&s).count(), 3);
    }

    #[test]
    fn majority_values() {
        let s = two_subsets(4);
        assert_eq!(fractional_cover(&s).value(), &Rational::from_integer(2));
        assert_eq!(fractional_pack(&s).value(), &Rational::from_integer(2));
        assert_eq!(integral_pack(&s).len(), 2);
        assert_eq!(integral_cover(&s).count(), 3);
    }

    #[test]
    fn trivial_systems() {
        let singles = sys(4, &[&[1], &[2], &[3], &[4]]);
        assert_eq!(fractional_pack(&singles).value(), &Rational::from_integer(4));
        assert_eq!(integral_pack(&singles).len(), 4);
        let one = sys(3, &[&[1, 2, 3]]);
        assert_eq!(fractional_cover(&one).value(), &Rational::one());
        assert_eq!(integral_cover(&one).count(), 1);
        let empty = SetSystem::empty(3);
        assert!(fractional_cover(&empty).value().is_zero());
        assert!(fractional_pack(&empty).value().is_zero());
        assert!(integral_pack(&empty).is_empty());
        assert!(integral_cover(&empty).is_empty());
    }

    #[test]
    fn and_or_pairs() {
        // clauses (x_j ∨ y_j) give minimal monomials {x_1 or y_1} × {x_2 or y_2}
        let s = sys(4, &[&[1, 2], &[1, 4], &[3, 2], &[3, 4]]);
        assert_eq!(integral_pack(&s).len(), 2);
    }

    /// Optimal cover weights can be clipped at 1 without loss.
    #[test]
    fn clipping_cover_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let s = random_system(&mut rng, 6, 8);
            let res = fractional_cover(&s);
            let clipped: Vec<Rational> = res.primal().iter().map(|b| b.clone().min(Rational::one())).collect();
            assert!(s.sets().iter().all(|w| w.iter().map(|i| &clipped[i]).sum::<Rational>() >= Rational::one()));
            assert_eq!(clipped.iter().sum::<Rational>(), *res.value());
        }
    }

    pub(crate) fn random_system(rng: &mut impl Rng, n: usize, r: usize) -> SetSystem {
        let sets = (0..r)
            .map(|_| {
                let mut v = BitVec::empty(n);
                while v.is_empty() {
                    v = BitVec::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.35)));
                }
                v
            })
            .collect();
        SetSystem::dedup(n, sets).unwrap()
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..300 {
            let n = 3 + round % 8;
            let s = random_system(&mut rng, n, 1 + round % 16);
            let pack = integral_pack(&s);
            let cover = integral_cover(&s);
            assert_eq!(pack.len(), exhaustive::max_packing(&s).len(), "{s:?}");
            assert_eq!(cover.count(), exhaustive::min_hitting_set(&s).count(), "{s:?}");
            let frac = fractional_cover(&s);
            assert_eq!(frac.value(), fractional_pack(&s).value());
            assert!(Rational::from(pack.len()) <= *frac.value());
            assert!(*frac.value() <= Rational::from(cover.count()));
        }
    }
}
