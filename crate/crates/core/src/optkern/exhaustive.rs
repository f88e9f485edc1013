//! Brute-force reference solvers, used to cross-check the fast ones.
//! Exponential in the instance size; intended for tiny inputs.

use super::setsystem::SetSystem;
use super::simplex::{LinearProgram, RowSense, Sense};
use crate::bitvec::BitVec;
use crate::rational::Rational;

/// Maximum packing by trying every subfamily. Panics for more than 24 sets.
pub fn max_packing(s: &SetSystem) -> Vec<usize> {
    let r = s.len();
    assert!(r <= 24, "exhaustive packing limited to 24 sets");
    let mut best = Vec::new();
    for mask in 0u32..1 << r {
        if mask.count_ones() as usize <= best.len() {
            continue;
        }
        let idx: Vec<usize> = (0..r).filter(|k| mask >> k & 1 == 1).collect();
        if s.is_packing(&idx) {
            best = idx;
        }
    }
    best
}

/// Minimum hitting set by trying subsets of `[n]` in order of size.
/// Panics for `n > 24`.
pub fn min_hitting_set(s: &SetSystem) -> BitVec {
    let n = s.n();
    assert!(n <= 24, "exhaustive hitting set limited to n <= 24");
    let mut best: Option<u64> = None;
    for mask in 0u64..1 << n {
        if best.is_some_and(|b| mask.count_ones() >= b.count_ones()) {
            continue;
        }
        if s.is_hit_by(&BitVec::from_index(n, mask)) {
            best = Some(mask);
        }
    }
    BitVec::from_index(n, best.expect("[n] hits every nonempty set"))
}

/// Optimum of a bounded, feasible LP by enumerating every basic solution.
/// Returns `None` if no vertex is feasible.
pub fn lp_vertex_optimum(lp: &LinearProgram) -> Option<Rational> {
    let nv = lp.objective.len();
    // candidate tight constraints: each row as an equality, then x_j = 0
    let mut planes: Vec<(Vec<Rational>, Rational)> =
        lp.constraints.iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
    for j in 0..nv {
        let mut e = vec![Rational::zero(); nv];
        e[j] = Rational::one();
        planes.push((e, Rational::zero()));
    }
    let total = planes.len();
    assert!(total <= 30, "vertex enumeration limited to 30 planes");
    let mut best: Option<Rational> = None;
    for mask in 0u32..1 << total {
        if mask.count_ones() as usize != nv {
            continue;
        }
        let chosen: Vec<&(Vec<Rational>, Rational)> = (0..total).filter(|k| mask >> k & 1 == 1).map(|k| &planes[k]).collect();
        let Some(x) = solve_square(chosen.iter().map(|p| p.0.clone()).collect(), chosen.iter().map(|p| p.1.clone()).collect()) else {
            continue;
        };
        if x.iter().any(Rational::is_negative) {
            continue;
        }
        let feasible = lp.constraints.iter().all(|c| {
            let lhs: Rational = c.coeffs.iter().zip(&x).map(|(a, v)| a * v).sum();
            match c.sense {
                RowSense::Le => lhs <= c.rhs,
                RowSense::Ge => lhs >= c.rhs,
                RowSense::Eq => lhs == c.rhs,
            }
        });
        if !feasible {
            continue;
        }
        let value: Rational = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        best = Some(match (best, lp.sense) {
            (None, _) => value,
            (Some(b), Sense::Maximize) => b.max(value),
            (Some(b), Sense::Minimize) => b.min(value),
        });
    }
    best
}

/// Unique solution of a square system, or `None` if singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let d = &f * &a[col][j];
                    a[r][j] -= d;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some(b)
}
