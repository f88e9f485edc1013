//! The communication matrix of `f(x ∧ y)`, its rank, protocols simulated
//! from AND trees, and unique-disjointness embeddings.

mod pipeline;
mod protocol;
mod rank;
mod udisj;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::capacity;
use crate::error::Result;
use crate::poly::{MultilinearPoly, TruthTable};
use crate::rational::Rational;

pub use pipeline::{lifting_report, logrank_pipeline, BoundCheck, PipelineReport, Ratio, REPORT_RANK_LIMIT};
pub use protocol::{simulate_protocol, CompiledAdt, ProtocolTranscript, Round};
pub use rank::bareiss_rank;
pub use udisj::{udisj, udisj_embedding, UdisjEmbedding};

/// Largest `n` whose `2^n × 2^n` matrix is materialized by default.
pub const MATRIX_LIMIT: usize = 10;

/// `M[x][y] = f(x ∧ y)`, rows and columns in truth-table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommMatrix {
    table: TruthTable,
}

impl CommMatrix {
    pub fn new(f: &MultilinearPoly) -> Result<Self> {
        capacity::check_or_override("communication matrix", f.n(), MATRIX_LIMIT)?;
        Ok(CommMatrix { table: f.to_truth_table()? })
    }

    pub fn from_table(table: TruthTable) -> Result<Self> {
        capacity::check_or_override("communication matrix", table.n(), MATRIX_LIMIT)?;
        Ok(CommMatrix { table })
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    /// Number of rows (and columns).
    pub fn size(&self) -> usize {
        1 << self.n()
    }

    pub fn entry(&self, x: usize, y: usize) -> &Rational {
        self.table.get(x & y)
    }

    pub fn row(&self, x: usize) -> Vec<Rational> {
        (0..self.size()).map(|y| self.entry(x, y).clone()).collect()
    }

    /// Entries scaled by the common denominator.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        let lcm = self.table.values().iter().fold(BigInt::from(1), |acc, v| acc.lcm(&v.denom()));
        let scaled: Vec<BigInt> = self.table.values().iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        (0..self.size()).map(|x| (0..self.size()).map(|y| scaled[x & y].clone()).collect()).collect()
    }

    /// Rank over ℚ, exactly.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.integer_rows())
    }
}

/// `rank(M)` for `M[x][y] = f(x ∧ y)`.
pub fn comm_rank(f: &MultilinearPoly) -> Result<usize> {
    Ok(CommMatrix::new(f)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvec::{all_inputs, BitVec};

    /// Rank by plain Gaussian elimination over rationals.
    fn naive_rank(mut rows: Vec<Vec<Rational>>) -> usize {
        let width = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..width {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                let factor = &row[col] / &pivot[col];
                for j in col..width {
                    row[j] = &row[j] - &(&factor * &pivot[j]);
                }
            }
            rank += 1;
        }
        rank
    }

    fn poly(n: usize, pred: impl FnMut(&BitVec) -> bool) -> MultilinearPoly {
        TruthTable::from_predicate(n, pred).unwrap().to_poly().unwrap()
    }

    #[test]
    fn or_two() {
        let f = poly(2, |z| !z.is_empty());
        let m = CommMatrix::new(&f).unwrap();
        let rows: Vec<Vec<Rational>> = (0..4).map(|x| m.row(x)).collect();
        assert_eq!(naive_rank(rows), 3);
        assert_eq!(comm_rank(&f).unwrap(), 3);
        assert_eq!(f.spar(), 3);
    }

    #[test]
    fn constant_and_and() {
        assert_eq!(comm_rank(&MultilinearPoly::constant(3, Rational::one())).unwrap(), 1);
        assert_eq!(comm_rank(&MultilinearPoly::zero(3)).unwrap(), 0);
        for n in 1..=5 {
            assert_eq!(comm_rank(&poly(n, |z| z.count() == n)).unwrap(), 1);
        }
    }

    #[test]
    fn rank_matches_naive_and_sparsity_for_all_n3() {
        for bits in 0..256u64 {
            let f = TruthTable::from_bits(3, bits).to_poly().unwrap();
            let m = CommMatrix::new(&f).unwrap();
            let r = m.rank();
            assert_eq!(r, naive_rank((0..8).map(|x| m.row(x)).collect()));
            assert_eq!(r, f.spar());
        }
    }

    #[test]
    fn non_boolean_entries() {
        // f = x1/2 + 3 x1x2
        let f = MultilinearPoly::from_terms(
            2,
            [(BitVec::from_indices(2, [0]), Rational::new(1, 2)), (BitVec::full(2), Rational::from_integer(3))],
        )
        .unwrap();
        assert_eq!(comm_rank(&f).unwrap(), 2);
        let m = CommMatrix::new(&f).unwrap();
        for x in all_inputs(2) {
            for y in all_inputs(2) {
                assert_eq!(m.entry(x.to_index() as usize, y.to_index() as usize), &f.evaluate(&x.intersection(&y)));
            }
        }
    }

    #[test]
    fn capacity_guard() {
        if std::env::var(capacity::ENV_VAR).is_err() {
            assert!(CommMatrix::new(&MultilinearPoly::zero(11)).is_err());
        }
    }
}
