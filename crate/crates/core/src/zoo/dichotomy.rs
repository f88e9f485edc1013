use serde::{Deserialize, Serialize};

use crate::bitvec::BitVec;
use crate::bounds;
use crate::error::{Error, Result};
use crate::measures::global_measures;
use crate::optkern::{fractional_cover, greedy_cover, GreedyCover, SetSystem};
use crate::poly::MultilinearPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Dichotomy {
    /// `MBS < m`: the greedy hitting set and its trace.
    HittingSet {
        mbs: usize,
        cover: GreedyCover,
        /// `⌊τ*·ln r⌋ + 1` for the fractional covering number `τ*` of the
        /// system.
        greedy_bound: usize,
    },
    /// `MBS >= m`: `{S_i \ T}` holds the pairwise disjoint `sets`, where
    /// `indices[j]` names an `S_i` with `S_i \ T = sets[j]`.
    Disjoint { mbs: usize, t: BitVec, sets: Vec<BitVec>, indices: Vec<usize> },
}

/// `Σ_i ∏_{j∈S_i} x_j`. All coefficients are positive, so restrictions
/// merge monomials without cancelling them.
pub fn system_polynomial(s: &SetSystem) -> MultilinearPoly {
    MultilinearPoly::from_terms(s.n(), s.sets().iter().map(|w| (w.clone(), Rational::one())))
        .expect("sets of a system are distinct")
}

/// Either a small hitting set of `s` or a set `T` after whose removal `s`
/// holds `m` pairwise disjoint sets, decided by the global MBS of
/// [`system_polynomial`].
pub fn dichotomy(s: &SetSystem, m: usize) -> Result<Dichotomy> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let f = system_polynomial(s);
    let report = global_measures(&f)?;
    let mbs = report.mbs();
    let out = if mbs < m {
        let tau = fractional_cover(s).value().clone();
        Dichotomy::HittingSet { mbs, cover: greedy_cover(s), greedy_bound: bounds::greedy_bound(&tau, s.len()) }
    } else {
        let w = &report.witnesses().packing;
        let t = w.point.clone();
        let mut indices = Vec::new();
        for b in &w.blocks {
            let i = s.sets().iter().position(|set| &set.difference(&t) == b).ok_or_else(|| {
                Error::Internal(format!("block {b} is not a set of the system minus {t}"))
            })?;
            indices.push(i);
        }
        Dichotomy::Disjoint { mbs, t, sets: w.blocks.clone(), indices }
    };
    verify_dichotomy(s, m, &out)?;
    Ok(out)
}

/// Re-checks whichever branch was returned.
pub fn verify_dichotomy(s: &SetSystem, m: usize, d: &Dichotomy) -> Result<()> {
    match d {
        Dichotomy::HittingSet { cover, greedy_bound, .. } => {
            if !s.is_hit_by(&cover.hitting_set) {
                return Err(Error::Internal("hitting set misses a set".into()));
            }
            if cover.hitting_set.count() > *greedy_bound {
                return Err(Error::Internal(format!(
                    "greedy hitting set of size {} exceeds {greedy_bound}",
                    cover.hitting_set.count()
                )));
            }
        }
        Dichotomy::Disjoint { t, sets, indices, .. } => {
            if sets.len() < m || sets.len() != indices.len() {
                return Err(Error::Internal(format!("{} disjoint sets, expected at least {m}", sets.len())));
            }
            for (k, (b, &i)) in sets.iter().zip(indices).enumerate() {
                if b.is_empty() || s.sets().get(i).map(|set| set.difference(t)) != Some(b.clone()) {
                    return Err(Error::Internal(format!("set {b} does not match system set {i} minus {t}")));
                }
                if sets[..k].iter().any(|c| c.intersects(b)) {
                    return Err(Error::Internal(format!("set {b} meets an earlier set")));
                }
            }
        }
    }
    Ok(())
}
