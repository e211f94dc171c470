//! Fraction-free rank: sparse elimination with Markowitz pivoting and a dense
//! Bareiss fallback once the active block fills in.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseIntMatrix;
use crate::error::{Error, Result};

/// Active-block density above which elimination switches to dense Bareiss.
const DENSE_SWITCH: f64 = 0.35;

type Row = Vec<(usize, BigInt)>;

pub fn rank(m: &SparseIntMatrix) -> Result<usize> {
    rank_with_limit(m, crate::Limits::default().max_matrix_entries)
}

/// Rank over the rationals. Fails with `ResourceLimit` if fill-in pushes the
/// number of stored entries past `max_entries`.
pub fn rank_with_limit(m: &SparseIntMatrix, max_entries: usize) -> Result<usize> {
    let mut active: Vec<Row> = m.rows().iter().filter(|r| !r.is_empty()).cloned().collect();
    check_size(active.iter().map(Vec::len).sum(), max_entries)?;
    let mut rank = 0;
    while !active.is_empty() {
        let mut col_count = vec![0usize; m.num_cols()];
        let mut nnz = 0;
        for row in &active {
            nnz += row.len();
            for (c, _) in row {
                col_count[*c] += 1;
            }
        }
        let live_cols = col_count.iter().filter(|&&c| c > 0).count();
        let density = nnz as f64 / (active.len() * live_cols) as f64;
        if density > DENSE_SWITCH && active.len() > 8 {
            return Ok(rank + dense_rank(&active, &col_count, max_entries)?);
        }

        let (pr, pc) = markowitz_pivot(&active, &col_count);
        let pivot_row = active.swap_remove(pr);
        let pv = pivot_row[pivot_row.binary_search_by_key(&pc, |e| e.0).expect("pivot present")].1.clone();
        rank += 1;
        for row in active.iter_mut() {
            if let Ok(p) = row.binary_search_by_key(&pc, |e| e.0) {
                let f = row[p].1.clone();
                *row = combine(&pv, row, &f, &pivot_row);
                remove_content(row);
            }
        }
        active.retain(|r| !r.is_empty());
        check_size(active.iter().map(Vec::len).sum(), max_entries)?;
    }
    Ok(rank)
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::ResourceLimit { what: "matrix entries", value: n, limit });
    }
    Ok(())
}

/// Entry minimizing `(row_len - 1) * (col_count - 1)`, ties broken by the
/// smaller absolute value, then by position.
fn markowitz_pivot(active: &[Row], col_count: &[usize]) -> (usize, usize) {
    let mut best: Option<(usize, u64, usize, usize)> = None;
    for (r, row) in active.iter().enumerate() {
        let rl = row.len() - 1;
        for (c, v) in row {
            let cost = rl * (col_count[*c] - 1);
            let bits = v.bits();
            let cand = (cost, bits, r, *c);
            if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                best = Some(cand);
            }
        }
    }
    let b = best.expect("nonempty active block");
    (b.2, b.3)
}

/// `a * x - b * y` for sparse rows.
pub(crate) fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divides a row by the gcd of its entries.
pub(crate) fn remove_content(row: &mut Row) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

fn dense_rank(active: &[Row], col_count: &[usize], max_entries: usize) -> Result<usize> {
    let cols: Vec<usize> = (0..col_count.len()).filter(|&c| col_count[c] > 0).collect();
    let mut pos = vec![usize::MAX; col_count.len()];
    for (i, &c) in cols.iter().enumerate() {
        pos[c] = i;
    }
    check_size(active.len() * cols.len(), max_entries)?;
    let mut a: Vec<Vec<BigInt>> = active
        .iter()
        .map(|row| {
            let mut d = vec![BigInt::zero(); cols.len()];
            for (c, v) in row {
                d[pos[*c]] = v.clone();
            }
            d
        })
        .collect();
    Ok(bareiss_rank(&mut a))
}

/// Rank by Bareiss elimination in echelon form; every division is exact.
pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..n {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Exact determinant of a square integer matrix (Bareiss over `BigInt`).
pub fn dense_det_big(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        assert_eq!(a[k].len(), n, "determinant of a non-square matrix");
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a small integer matrix.
pub fn dense_det(m: &[Vec<i64>]) -> i64 {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let d = dense_det_big(&big);
    i64::try_from(d.abs()).map(|v| if d.is_negative() { -v } else { v }).expect("determinant overflows i64")
}
