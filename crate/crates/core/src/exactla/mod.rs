//! Exact linear algebra over arbitrary-precision integers and rationals.
//!
//! Everything here is integer or rational arithmetic; there is no floating
//! point in this module.

mod modular;
mod rank;
mod solve;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use modular::{deterministic_primes, is_prime_u64, modular_rank, rank_mod_p};
pub use rank::{dense_det, dense_det_big, rank, rank_with_limit};
pub use solve::{row_annihilator, solve_combination, Echelon};

/// Sparse integer matrix stored by rows. Rows keep strictly increasing column
/// indices and no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    num_cols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

/// Sorts entries, merges duplicates and drops zeros.
pub(crate) fn normalize_row(mut entries: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    entries.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl SparseIntMatrix {
    pub fn new(num_cols: usize) -> Self {
        SparseIntMatrix { num_cols, rows: Vec::new() }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(num_cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = SparseIntMatrix::new(num_cols);
        for r in rows {
            assert_eq!(r.len(), num_cols, "ragged dense input");
            m.push_row(r.iter().cloned().enumerate().map(|(c, v)| (c, v.into())).collect());
        }
        m
    }

    /// Appends a row given as (column, value) pairs in any order.
    pub fn push_row(&mut self, entries: Vec<(usize, BigInt)>) {
        let row = normalize_row(entries);
        assert!(row.iter().all(|(c, _)| *c < self.num_cols), "column out of range");
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn rows(&self) -> &[Vec<(usize, BigInt)>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(p) => self.rows[i][p].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.num_cols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                cols[*j].push((i, v.clone()));
            }
        }
        SparseIntMatrix { num_cols: self.rows.len(), rows: cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![BigInt::zero(); self.num_cols];
                for (c, v) in row {
                    d[*c] = v.clone();
                }
                d
            })
            .collect()
    }

    /// Largest absolute entry, zero for an empty matrix.
    pub fn max_abs(&self) -> BigInt {
        self.rows.iter().flatten().map(|(_, v)| v.abs()).max().unwrap_or_default()
    }

    /// MatrixMarket coordinate format, 1-based indices.
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::from("%%MatrixMarket matrix coordinate integer general\n");
        let _ = writeln!(s, "{} {} {}", self.num_rows(), self.num_cols, self.nnz());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                let _ = writeln!(s, "{} {} {}", i + 1, j + 1, v);
            }
        }
        s
    }

    /// Reads the coordinate format written by [`Self::to_matrix_market`].
    pub fn from_matrix_market(text: &str) -> crate::Result<Self> {
        let bad = |line: usize, msg: &str| crate::Error::Parse { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.starts_with('%') && !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| bad(1, "missing size line"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(hl + 1, "bad size line")))
            .collect::<crate::Result<_>>()?;
        let [nr, nc, _] = dims[..] else { return Err(bad(hl + 1, "size line needs three fields")) };
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); nr];
        for (ln, line) in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad(ln + 1, "entry needs three fields"));
            }
            let i: usize = t[0].parse().map_err(|_| bad(ln + 1, "bad row index"))?;
            let j: usize = t[1].parse().map_err(|_| bad(ln + 1, "bad column index"))?;
            let v: BigInt = t[2].parse().map_err(|_| bad(ln + 1, "bad value"))?;
            if i == 0 || i > nr || j == 0 || j > nc {
                return Err(bad(ln + 1, "index out of range"));
            }
            rows[i - 1].push((j - 1, v));
        }
        let mut m = SparseIntMatrix::new(nc);
        for r in rows {
            m.push_row(r);
        }
        Ok(m)
    }
}
