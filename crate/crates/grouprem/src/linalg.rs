//! Exact integer linear algebra over the rationals.
//!
//! Everything here is fraction-free (Bareiss) elimination on `i128` working
//! copies: intermediate entries are minors of the input, so ranks and
//! determinants come out exact, with overflow reported instead of silently
//! wrapped. Inputs at the scale of this crate (entries of cycle vectors,
//! dimensions below a few dozen) stay far from the `i128` range.

use crate::error::{Error, Result};

fn overflow() -> Error {
    Error::SizeLimit("exact integer elimination overflow".into())
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(overflow)
}

/// One fraction-free elimination step on `rows` below pivot row `r`, pivot
/// column `c`, dividing by the previous pivot `prev` (exact by Sylvester's
/// identity).
fn eliminate_below(rows: &mut [Vec<i128>], r: usize, c: usize, prev: i128) -> Result<()> {
    let pivot = rows[r][c];
    for i in (r + 1)..rows.len() {
        if rows[i].iter().all(|&x| x == 0) {
            continue;
        }
        let factor = rows[i][c];
        for j in 0..rows[i].len() {
            let num = mul(rows[i][j], pivot)?
                .checked_sub(mul(factor, rows[r][j])?)
                .ok_or_else(overflow)?;
            debug_assert_eq!(num % prev, 0);
            rows[i][j] = num / prev;
        }
    }
    Ok(())
}

fn to_working(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

/// Rank over the rationals.
pub(crate) fn rank(rows: &[Vec<i64>]) -> Result<usize> {
    Ok(pivot_columns(rows)?.len())
}

/// Column indices of the lexicographically first maximal independent column
/// set, found by fraction-free elimination with ascending column scan.
pub(crate) fn pivot_columns(rows: &[Vec<i64>]) -> Result<Vec<usize>> {
    let mut m = to_working(rows);
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        eliminate_below(&mut m, r, c, prev)?;
        prev = m[r][c];
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// First row (zero-based) that is a rational combination of the rows before
/// it, or `None` when all rows are independent.
pub(crate) fn first_dependent_row(rows: &[Vec<i64>]) -> Result<Option<usize>> {
    for r in 0..rows.len() {
        if rank(&rows[..=r])? < r + 1 {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Exact determinant of a square integer matrix by Bareiss elimination.
pub(crate) fn determinant(rows: &[Vec<i64>]) -> Result<i128> {
    let n = rows.len();
    if n == 0 {
        return Ok(1);
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut m = to_working(rows);
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| m[i][c] != 0) else {
            return Ok(0);
        };
        if pr != c {
            m.swap(c, pr);
            sign = -sign;
        }
        eliminate_below(&mut m, c, c, prev)?;
        prev = m[c][c];
    }
    Ok(sign * m[n - 1][n - 1])
}
