use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitvec::BitVec;
use crate::capacity;
use crate::error::{Error, Result};
use crate::poly::{MultilinearPoly, TruthTable};
use crate::rational::Rational;
use crate::trees::DecisionTree;

/// A named example function and its size parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// OR over the lines of the projective plane of prime order `m`.
    ProjectivePlane { m: usize },
    /// `[|z| >= n/2]`.
    Majority { n: usize },
    /// `∧_j (x_j ∨ y_j)` with `x_j` at index `j` and `y_j` at `clauses + j`.
    AndOr { clauses: usize },
    /// `2^k` variables `x_S`, at index = bitmask of `S`, then `k` variables `y_i`.
    RedundantIndexing { k: usize },
    /// `[|z| >= n-1]`.
    Threshold { n: usize },
    /// `z_{i+1}` for the first zero `z_i`, and 1 when that zero is last or absent.
    FirstZeroGap { n: usize },
    Or { n: usize },
    And { n: usize },
}

impl FamilySpec {
    pub const NAMES: [&'static str; 8] =
        ["projective_plane", "majority", "and_or", "redundant_indexing", "threshold", "first_zero_gap", "or", "and"];

    pub fn new(name: &str, param: usize) -> Result<Self> {
        let spec = match name {
            "projective_plane" => FamilySpec::ProjectivePlane { m: param },
            "majority" => FamilySpec::Majority { n: param },
            "and_or" => FamilySpec::AndOr { clauses: param },
            "redundant_indexing" => FamilySpec::RedundantIndexing { k: param },
            "threshold" => FamilySpec::Threshold { n: param },
            "first_zero_gap" => FamilySpec::FirstZeroGap { n: param },
            "or" => FamilySpec::Or { n: param },
            "and" => FamilySpec::And { n: param },
            _ => return Err(Error::InvalidInput(format!("unknown family {name:?}; expected one of {}", Self::NAMES.join(", ")))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::ProjectivePlane { .. } => "projective_plane",
            FamilySpec::Majority { .. } => "majority",
            FamilySpec::AndOr { .. } => "and_or",
            FamilySpec::RedundantIndexing { .. } => "redundant_indexing",
            FamilySpec::Threshold { .. } => "threshold",
            FamilySpec::FirstZeroGap { .. } => "first_zero_gap",
            FamilySpec::Or { .. } => "or",
            FamilySpec::And { .. } => "and",
        }
    }

    pub fn param(&self) -> usize {
        match *self {
            FamilySpec::ProjectivePlane { m } => m,
            FamilySpec::AndOr { clauses } => clauses,
            FamilySpec::RedundantIndexing { k } => k,
            FamilySpec::Majority { n }
            | FamilySpec::Threshold { n }
            | FamilySpec::FirstZeroGap { n }
            | FamilySpec::Or { n }
            | FamilySpec::And { n } => n,
        }
    }

    /// Number of variables of the generated function.
    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::ProjectivePlane { m } => m * m + m + 1,
            FamilySpec::AndOr { clauses } => 2 * clauses,
            FamilySpec::RedundantIndexing { k } => (1usize << k) + k,
            _ => self.param(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        match *self {
            FamilySpec::ProjectivePlane { m } if !is_prime(m) => bad(format!("projective planes need a prime order, got {m}")),
            FamilySpec::RedundantIndexing { k } if !(1..=6).contains(&k) => {
                bad(format!("redundant indexing takes 1 <= k <= 6, got {k}"))
            }
            FamilySpec::FirstZeroGap { n } if n < 2 => bad(format!("first_zero_gap needs n >= 2, got {n}")),
            FamilySpec::Threshold { n } if n < 2 => bad(format!("threshold needs n >= 2, got {n}")),
            FamilySpec::AndOr { clauses: 0 } => bad("and_or needs at least one clause".into()),
            FamilySpec::Majority { n: 0 } | FamilySpec::Or { n: 0 } | FamilySpec::And { n: 0 } => {
                bad(format!("{} needs n >= 1", self.name()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.param())
    }
}

fn is_prime(m: usize) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// Points of the projective plane over `F_m`: nonzero vectors of `F_m^3`
/// whose first nonzero coordinate is 1, in lexicographic order.
fn projective_points(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Lines of the projective plane of prime order `m`, as sets of point
/// indices. Line `u` holds the points orthogonal to `u`.
pub fn projective_lines(m: usize) -> Result<Vec<BitVec>> {
    FamilySpec::ProjectivePlane { m }.validate()?;
    let pts = projective_points(m);
    let n = pts.len();
    Ok(pts
        .iter()
        .map(|u| BitVec::from_indices(n, (0..n).filter(|&i| pts[i].iter().zip(u).map(|(a, b)| a * b).sum::<usize>() % m == 0)))
        .collect())
}

/// `f(x) = [x_{i+1} = 1]` where `x_i` is the first zero of `x`, or 1 when
/// that zero is the last coordinate or there is none.
fn first_zero_gap(n: usize, z: &BitVec) -> bool {
    match (0..n).find(|&i| !z.contains(i)) {
        None => true,
        Some(i) if i + 1 == n => true,
        Some(i) => z.contains(i + 1),
    }
}

/// Tree that reads `x_1, x_2, …` until the first zero `x_i` and then
/// answers `x_{i+1}`: every path crosses at most two 0-edges.
pub fn first_zero_gap_tree(n: usize) -> DecisionTree {
    fn from(i: usize, n: usize) -> DecisionTree {
        let leaf = |b: bool| DecisionTree::leaf(if b { Rational::one() } else { Rational::zero() });
        if i == n {
            return leaf(true);
        }
        let zero = if i + 1 == n { leaf(true) } else { DecisionTree::node(i + 1, leaf(false), leaf(true)) };
        DecisionTree::node(i, zero, from(i + 1, n))
    }
    from(0, n)
}

fn predicate(spec: &FamilySpec, z: &BitVec) -> bool {
    let w = z.count();
    match *spec {
        FamilySpec::Majority { n } => 2 * w >= n,
        FamilySpec::Threshold { n } => w + 1 >= n,
        FamilySpec::FirstZeroGap { n } => first_zero_gap(n, z),
        FamilySpec::Or { .. } => w > 0,
        FamilySpec::And { n } => w == n,
        FamilySpec::AndOr { clauses } => (0..clauses).all(|j| z.contains(j) || z.contains(clauses + j)),
        FamilySpec::RedundantIndexing { k } => {
            let y = |i: usize| z.contains((1 << k) + i);
            (0..k).any(|i| {
                !y(i) && (0..k).all(|j| j == i || y(j)) && (0..1usize << k).filter(|s| s >> i & 1 == 1).all(|s| z.contains(s))
            })
        }
        FamilySpec::ProjectivePlane { .. } => unreachable!("generated from its lines"),
    }
}

/// Truth table of the family member, for `n` within the table limit.
pub fn generate_table(spec: &FamilySpec) -> Result<TruthTable> {
    spec.validate()?;
    let n = spec.n();
    capacity::check_table("family truth table", n)?;
    if let FamilySpec::ProjectivePlane { m } = *spec {
        let lines = projective_lines(m)?;
        return TruthTable::from_predicate(n, |z| lines.iter().any(|l| l.is_subset(z)));
    }
    TruthTable::from_predicate(n, |z| predicate(spec, z))
}

/// Multilinear polynomial of the family member. `and_or` and
/// `redundant_indexing` are expanded in closed form; everything else goes
/// through the truth table.
pub fn generate(spec: &FamilySpec) -> Result<MultilinearPoly> {
    spec.validate()?;
    match *spec {
        FamilySpec::AndOr { clauses } => Ok(and_or_closed_form(clauses)),
        FamilySpec::RedundantIndexing { k } => Ok(redundant_indexing_closed_form(k)),
        _ => generate_table(spec)?.to_poly(),
    }
}

/// `∏_j (x_j + y_j - x_j y_j)`.
pub fn and_or_closed_form(clauses: usize) -> MultilinearPoly {
    let n = 2 * clauses;
    (0..clauses).fold(MultilinearPoly::constant(n, Rational::one()), |acc, j| {
        let x = MultilinearPoly::variable(n, j);
        let y = MultilinearPoly::variable(n, clauses + j);
        let clause = &(&x + &y) - &(&x * &y);
        &acc * &clause
    })
}

/// `Σ_i ∏_{S∋i} x_S · (1 - y_i) · ∏_{j≠i} y_j`, which has `2k` terms.
pub fn redundant_indexing_closed_form(k: usize) -> MultilinearPoly {
    let n = (1usize << k) + k;
    let mut terms = Vec::new();
    for i in 0..k {
        let xs = (0..1usize << k).filter(|s| s >> i & 1 == 1);
        let base = BitVec::from_indices(n, xs.chain((0..k).filter(|&j| j != i).map(|j| (1 << k) + j)));
        terms.push((base.with((1 << k) + i), Rational::from_integer(-1)));
        terms.push((base, Rational::one()));
    }
    MultilinearPoly::from_terms(n, terms).expect("terms are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::all_inputs;

    #[test]
    fn primes() {
        let ps: Vec<usize> = (0..30).filter(|&m| is_prime(m)).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn projective_plane_incidences() {
        for m in [2, 3, 5] {
            let lines = projective_lines(m).unwrap();
            let n = m * m + m + 1;
            assert_eq!(lines.len(), n);
            for (a, l) in lines.iter().enumerate() {
                assert_eq!(l.count(), m + 1);
                for l2 in &lines[a + 1..] {
                    assert_eq!(l.intersection(l2).count(), 1);
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let through = lines.iter().filter(|l| l.contains(i) && l.contains(j)).count();
                    assert_eq!(through, 1);
                }
            }
        }
        assert!(projective_lines(4).is_err());
    }

    #[test]
    fn fano_polynomial() {
        let f = generate(&FamilySpec::new("projective_plane", 2).unwrap()).unwrap();
        assert_eq!(f.n(), 7);
        let minimal = crate::measures::minimal_blocks(&f);
        assert_eq!(minimal.len(), 7);
        assert!(minimal.iter().all(|s| s.count() == 3));
    }

    #[test]
    fn closed_forms_match_tables() {
        for clauses in 1..=4 {
            let spec = FamilySpec::AndOr { clauses };
            assert_eq!(and_or_closed_form(clauses), generate_table(&spec).unwrap().to_poly().unwrap());
        }
        for k in 1..=3 {
            let spec = FamilySpec::RedundantIndexing { k };
            let f = redundant_indexing_closed_form(k);
            assert_eq!(f, generate_table(&spec).unwrap().to_poly().unwrap());
            assert_eq!(f.spar(), 2 * k);
        }
    }

    #[test]
    fn threshold_sparsity() {
        for n in 2..=8 {
            assert_eq!(generate(&FamilySpec::Threshold { n }).unwrap().spar(), n + 1);
        }
    }

    #[test]
    fn majority_values() {
        let f = generate(&FamilySpec::Majority { n: 4 }).unwrap();
        assert_eq!(f.evaluate(&BitVec::from_indices(4, [0, 1])), Rational::one());
        assert_eq!(f.evaluate(&BitVec::from_indices(4, [0])), Rational::zero());
    }

    #[test]
    fn first_zero_gap_tree_computes_it() {
        for n in 2..=9 {
            let f = generate(&FamilySpec::FirstZeroGap { n }).unwrap();
            let t = first_zero_gap_tree(n);
            assert!(t.is_valid(n));
            assert!(t.computes(&f).unwrap());
            assert!(t.zero_depth() <= 2);
            for z in all_inputs(n) {
                assert_eq!(t.evaluate(&z).is_one(), first_zero_gap(n, &z));
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for name in FamilySpec::NAMES {
            let param = if name == "projective_plane" { 2 } else { 3 };
            let spec = FamilySpec::new(name, param).unwrap();
            assert_eq!(spec.name(), name);
            assert_eq!(spec.to_string(), format!("{name} {param}"));
        }
        assert!(FamilySpec::new("parity", 3).is_err());
        assert!(FamilySpec::new("first_zero_gap", 1).is_err());
    }
}
