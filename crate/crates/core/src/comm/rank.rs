use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over ℚ of an integer matrix by Bareiss fraction-free elimination.
///
/// After step `k` every live entry is a `(k+1) × (k+1)` minor of the input,
/// so each division by the previous pivot is exact.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    rows.sort();
    rows.dedup();
    let Some(width) = rows.first().map(Vec::len) else { return 0 };
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..width {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = top[rank][col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
