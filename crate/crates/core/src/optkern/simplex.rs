//! Exact two-phase primal simplex over ℚ with Bland's rule.
//!
//! Every optimum is returned together with a dual solution, and both are
//! checked against the original program before the result is handed out.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowSense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: RowSense,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, sense: RowSense, rhs: Rational) -> Self {
        Constraint { coeffs, sense, rhs }
    }
}

/// Optimize `objective · x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

/// A certified optimum.
///
/// Dual signs follow the usual convention for the program's sense: for a
/// maximization, `y_i >= 0` on `<=` rows and `y_i <= 0` on `>=` rows, and
/// `Aᵀy >= c`; for a minimization everything is mirrored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpResult {
    value: Rational,
    primal: Vec<Rational>,
    dual: Vec<Rational>,
}

impl LpResult {
    /// Checks primal feasibility, dual feasibility and equality of the two
    /// objective values.
    pub fn certify(lp: &LinearProgram, primal: Vec<Rational>, dual: Vec<Rational>) -> Result<LpResult> {
        lp.validate()?;
        let fail = |msg: String| Err(Error::Internal(format!("LP certificate: {msg}")));
        let nvars = lp.objective.len();
        if primal.len() != nvars || dual.len() != lp.constraints.len() {
            return fail("wrong dimensions".into());
        }
        if primal.iter().any(Rational::is_negative) {
            return fail("negative primal variable".into());
        }
        for (i, row) in lp.constraints.iter().enumerate() {
            let lhs: Rational = row.coeffs.iter().zip(&primal).map(|(a, x)| a * x).sum();
            let ok = match row.sense {
                RowSense::Le => lhs <= row.rhs,
                RowSense::Ge => lhs >= row.rhs,
                RowSense::Eq => lhs == row.rhs,
            };
            if !ok {
                return fail(format!("row {i} violated"));
            }
            let y = &dual[i];
            let sign_ok = match (lp.sense, row.sense) {
                (_, RowSense::Eq) => true,
                (Sense::Maximize, RowSense::Le) | (Sense::Minimize, RowSense::Ge) => !y.is_negative(),
                (Sense::Maximize, RowSense::Ge) | (Sense::Minimize, RowSense::Le) => !y.is_positive(),
            };
            if !sign_ok {
                return fail(format!("dual {i} has the wrong sign"));
            }
        }
        for j in 0..nvars {
            let aty: Rational = lp.constraints.iter().zip(&dual).map(|(row, y)| &row.coeffs[j] * y).sum();
            let ok = match lp.sense {
                Sense::Maximize => aty >= lp.objective[j],
                Sense::Minimize => aty <= lp.objective[j],
            };
            if !ok {
                return fail(format!("dual constraint {j} violated"));
            }
        }
        let value: Rational = lp.objective.iter().zip(&primal).map(|(c, x)| c * x).sum();
        let dual_value: Rational = lp.constraints.iter().zip(&dual).map(|(row, y)| &row.rhs * y).sum();
        if value != dual_value {
            return fail(format!("primal value {value} differs from dual value {dual_value}"));
        }
        Ok(LpResult { value, primal, dual })
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn primal(&self) -> &[Rational] {
        &self.primal
    }

    pub fn dual(&self) -> &[Rational] {
        &self.dual
    }
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        LinearProgram { sense, objective, constraints: Vec::new() }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, sense: RowSense, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint::new(coeffs, sense, rhs));
        self
    }

    fn validate(&self) -> Result<()> {
        let nvars = self.objective.len();
        for (i, row) in self.constraints.iter().enumerate() {
            if row.coeffs.len() != nvars {
                return Err(Error::InvalidInput(format!(
                    "constraint {i} has {} coefficients, objective has {nvars}",
                    row.coeffs.len()
                )));
            }
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpResult> {
        self.validate()?;
        let (primal, dual) = Solver::new(self).run()?;
        LpResult::certify(self, primal, dual)
    }
}

struct Solver {
    m: usize,
    nvars: usize,
    /// Columns: original variables, then one slack/surplus per inequality,
    /// then one artificial per `>=`/`=` row.
    width: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Column that held `e_i` initially; tracks `B⁻¹ e_i`.
    identity_col: Vec<usize>,
    artificial_start: usize,
    flipped: Vec<bool>,
    /// Phase-2 costs (maximization form).
    cost: Vec<Rational>,
    minimize: bool,
}

impl Solver {
    fn new(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let nvars = lp.objective.len();
        let mut senses = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for row in &lp.constraints {
            let flip = row.rhs.is_negative();
            flipped.push(flip);
            senses.push(match (row.sense, flip) {
                (s, false) => s,
                (RowSense::Le, true) => RowSense::Ge,
                (RowSense::Ge, true) => RowSense::Le,
                (RowSense::Eq, true) => RowSense::Eq,
            });
        }
        let n_slack = senses.iter().filter(|s| **s != RowSense::Eq).count();
        let n_art = senses.iter().filter(|s| **s != RowSense::Le).count();
        let artificial_start = nvars + n_slack;
        let width = artificial_start + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut identity_col = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (nvars, artificial_start);
        for (i, row) in lp.constraints.iter().enumerate() {
            let mut r = vec![Rational::zero(); width];
            for (j, a) in row.coeffs.iter().enumerate() {
                r[j] = if flipped[i] { -a } else { a.clone() };
            }
            match senses[i] {
                RowSense::Le => {
                    r[next_slack] = Rational::one();
                    basis.push(next_slack);
                    identity_col.push(next_slack);
                    next_slack += 1;
                }
                RowSense::Ge => {
                    r[next_slack] = Rational::from_integer(-1);
                    next_slack += 1;
                    r[next_art] = Rational::one();
                    basis.push(next_art);
                    identity_col.push(next_art);
                    next_art += 1;
                }
                RowSense::Eq => {
                    r[next_art] = Rational::one();
                    basis.push(next_art);
                    identity_col.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(r);
            rhs.push(if flipped[i] { -&row.rhs } else { row.rhs.clone() });
        }
        let minimize = lp.sense == Sense::Minimize;
        let mut cost = vec![Rational::zero(); width];
        for (j, c) in lp.objective.iter().enumerate() {
            cost[j] = if minimize { -c } else { c.clone() };
        }
        Solver { m, nvars, width, rows, rhs, basis, identity_col, artificial_start, flipped, cost, minimize }
    }

    /// Reduced costs `c_j - c_B B⁻¹ A_j` for the given cost vector.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut red = cost.to_vec();
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    red[j] -= cb * a;
                }
            }
        }
        red
    }

    fn pivot(&mut self, pr: usize, pc: usize, red: &mut [Rational]) {
        let inv = self.rows[pr][pc].recip();
        if !inv.is_one() {
            for a in self.rows[pr].iter_mut() {
                if !a.is_zero() {
                    *a *= &inv;
                }
            }
            self.rhs[pr] *= &inv;
        }
        let prow = self.rows[pr].clone();
        let prhs = self.rhs[pr].clone();
        let nz: Vec<usize> = (0..self.width).filter(|&j| !prow[j].is_zero()).collect();
        for r in 0..self.m {
            if r == pr {
                continue;
            }
            let factor = self.rows[r][pc].clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &nz {
                let delta = &factor * &prow[j];
                self.rows[r][j] -= delta;
            }
            self.rhs[r] -= &factor * &prhs;
        }
        let factor = red[pc].clone();
        if !factor.is_zero() {
            for &j in &nz {
                red[j] -= &factor * &prow[j];
            }
        }
        self.basis[pr] = pc;
    }

    /// Maximizes with Bland's rule over columns `< allowed`. Returns
    /// `Err(Unbounded)` if some improving column has no positive entry.
    fn optimize(&mut self, red: &mut [Rational], allowed: usize) -> Result<()> {
        // Bland's rule terminates; the cap only turns a bug into an error
        let cap = 1usize << 24;
        for _ in 0..cap {
            let Some(pc) = (0..allowed).find(|&j| red[j].is_positive()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.m {
                let a = &self.rows[r][pc];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((pr, _)) = best else {
                return Err(Error::Unbounded);
            };
            self.pivot(pr, pc, red);
        }
        Err(Error::Internal("simplex iteration cap reached".into()))
    }

    fn run(mut self) -> Result<(Vec<Rational>, Vec<Rational>)> {
        if self.artificial_start < self.width {
            let mut phase1 = vec![Rational::zero(); self.width];
            for c in phase1.iter_mut().skip(self.artificial_start) {
                *c = Rational::from_integer(-1);
            }
            let mut red = self.reduced_costs(&phase1);
            self.optimize(&mut red, self.width)?;
            let infeasibility: Rational = (0..self.m)
                .filter(|&r| self.basis[r] >= self.artificial_start)
                .map(|r| &self.rhs[r])
                .sum();
            if infeasibility.is_positive() {
                return Err(Error::Infeasible);
            }
            // drive zero-level artificials out where possible; rows where it
            // is impossible are redundant and stay inert
            for r in 0..self.m {
                if self.basis[r] >= self.artificial_start {
                    if let Some(pc) = (0..self.artificial_start).find(|&j| !self.rows[r][j].is_zero()) {
                        self.pivot(r, pc, &mut red);
                    }
                }
            }
        }
        let cost = self.cost.clone();
        let mut red = self.reduced_costs(&cost);
        self.optimize(&mut red, self.artificial_start)?;

        let mut primal = vec![Rational::zero(); self.nvars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.nvars {
                primal[b] = self.rhs[r].clone();
            }
        }
        let mut dual = Vec::with_capacity(self.m);
        for i in 0..self.m {
            let col = self.identity_col[i];
            let mut y: Rational = (0..self.m)
                .filter(|&r| !self.rows[r][col].is_zero())
                .map(|r| &self.cost[self.basis[r]] * &self.rows[r][col])
                .sum();
            if self.flipped[i] {
                y = -y;
            }
            if self.minimize {
                y = -y;
            }
            dual.push(y);
        }
        Ok((primal, dual))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn single_bound() {
        let mut lp = LinearProgram::new(Sense::Maximize, qs(&[1]));
        lp.constrain(qs(&[1]), RowSense::Le, q(3));
        let res = lp.solve().unwrap();
        assert_eq!(res.value(), &q(3));
        assert_eq!(res.dual(), &qs(&[1])[..]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(Sense::Maximize, qs(&[1]));
        lp.constrain(qs(&[1]), RowSense::Le, q(-1));
        assert_eq!(lp.solve(), Err(Error::Infeasible));
        let mut lp = LinearProgram::new(Sense::Maximize, qs(&[1, 1]));
        lp.constrain(qs(&[1, -1]), RowSense::Le, q(2));
        assert_eq!(lp.solve(), Err(Error::Unbounded));
    }

    #[test]
    fn mixed_senses_and_equalities() {
        // min 2x + 3y, x + y >= 4, x - y = 1, y <= 10
        let mut lp = LinearProgram::new(Sense::Minimize, qs(&[2, 3]));
        lp.constrain(qs(&[1, 1]), RowSense::Ge, q(4))
            .constrain(qs(&[1, -1]), RowSense::Eq, q(1))
            .constrain(qs(&[0, 1]), RowSense::Le, q(10));
        let res = lp.solve().unwrap();
        assert_eq!(res.value(), &Rational::new(19, 2));
        assert_eq!(res.primal(), &[Rational::new(5, 2), Rational::new(3, 2)]);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(Sense::Maximize, qs(&[1, 1]));
        lp.constrain(qs(&[1, 1]), RowSense::Eq, q(2))
            .constrain(qs(&[2, 2]), RowSense::Eq, q(4))
            .constrain(qs(&[1, 0]), RowSense::Le, q(1));
        assert_eq!(lp.solve().unwrap().value(), &q(2));
    }

    #[test]
    fn negative_rhs_rows() {
        // max -x s.t. -x <= -2  (x >= 2)
        let mut lp = LinearProgram::new(Sense::Maximize, qs(&[-1]));
        lp.constrain(qs(&[-1]), RowSense::Le, q(-2));
        assert_eq!(lp.solve().unwrap().value(), &q(-2));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook largest-coefficient rule
        let f = |a, b| Rational::new(a, b);
        let mut lp = LinearProgram::new(Sense::Maximize, vec![f(3, 4), q(-150), f(1, 50), q(-6)]);
        lp.constrain(vec![f(1, 4), q(-60), f(-1, 25), q(9)], RowSense::Le, q(0))
            .constrain(vec![f(1, 2), q(-90), f(-1, 50), q(3)], RowSense::Le, q(0))
            .constrain(qs(&[0, 0, 1, 0]), RowSense::Le, q(1));
        assert_eq!(lp.solve().unwrap().value(), &f(1, 20));
    }

    #[test]
    fn certificate_rejects_bad_duals() {
        let mut lp = LinearProgram::new(Sense::Maximize, qs(&[1]));
        lp.constrain(qs(&[1]), RowSense::Le, q(3));
        assert!(LpResult::certify(&lp, qs(&[3]), qs(&[2])).is_err());
        assert!(LpResult::certify(&lp, qs(&[2]), qs(&[1])).is_err());
        assert!(LpResult::certify(&lp, qs(&[4]), qs(&[1])).is_err());
    }

    fn arb_lp() -> impl Strategy<Value = LinearProgram> {
        (1usize..5, 1usize..6).prop_flat_map(|(nv, m)| {
            (
                prop::bool::ANY,
                prop::collection::vec(-3i64..4, nv),
                prop::collection::vec((prop::collection::vec(-3i64..4, nv), 0u8..3, -4i64..6), m),
            )
                .prop_map(move |(max, obj, rows)| {
                    let mut lp = LinearProgram::new(if max { Sense::Maximize } else { Sense::Minimize }, qs(&obj));
                    for (coeffs, s, b) in rows {
                        let sense = [RowSense::Le, RowSense::Ge, RowSense::Eq][s as usize];
                        lp.constrain(qs(&coeffs), sense, q(b));
                    }
                    lp
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        /// Solving never trips the certificate check, and agrees with the
        /// dual program solved on its own.
        #[test]
        fn random_programs_certify(lp in arb_lp()) {
            match lp.solve() {
                Ok(res) => {
                    let (dual_lp, _) = dual_program(&lp);
                    let d = dual_lp.solve().unwrap();
                    prop_assert_eq!(d.value(), res.value());
                }
                Err(Error::Infeasible) | Err(Error::Unbounded) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    /// Dual with free variables split into two nonnegative halves.
    fn dual_program(lp: &LinearProgram) -> (LinearProgram, ()) {
        let m = lp.constraints.len();
        let nv = lp.objective.len();
        let max = lp.sense == Sense::Maximize;
        let mut obj = Vec::new();
        let mut cols: Vec<(usize, i64)> = Vec::new();
        for (i, row) in lp.constraints.iter().enumerate() {
            let signs: &[i64] = match (max, row.sense) {
                (_, RowSense::Eq) => &[1, -1],
                (true, RowSense::Le) | (false, RowSense::Ge) => &[1],
                _ => &[-1],
            };
            for &s in signs {
                cols.push((i, s));
                obj.push(&row.rhs * q(s));
            }
        }
        let mut d = LinearProgram::new(if max { Sense::Minimize } else { Sense::Maximize }, obj);
        for j in 0..nv {
            let coeffs = cols.iter().map(|&(i, s)| &lp.constraints[i].coeffs[j] * q(s)).collect();
            d.constrain(coeffs, if max { RowSense::Ge } else { RowSense::Le }, lp.objective[j].clone());
        }
        let _ = m;
        (d, ())
    }
}
