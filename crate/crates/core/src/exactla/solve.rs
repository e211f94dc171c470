//! Reduced echelon form with row provenance: nullspaces and explicit row
//! combinations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rank::{combine, remove_content};
use super::SparseIntMatrix;
use crate::error::{Error, Result};

type Row = Vec<(usize, BigInt)>;
type Combo = BTreeMap<usize, BigRational>;

/// Integer reduced echelon form built row by row. Each stored row is the
/// rational combination `combos[i]` of input rows, and each pivot column is
/// zero in every other stored row.
#[derive(Debug, Clone)]
pub struct Echelon {
    num_cols: usize,
    num_input_rows: usize,
    rows: Vec<Row>,
    combos: Vec<Combo>,
    /// Pivot column of each stored row.
    pivots: Vec<usize>,
}

fn scale_combo(c: &mut Combo, s: &BigRational) {
    for v in c.values_mut() {
        *v *= s;
    }
}

/// `a * x - b * y` on combinations.
fn combine_combo(a: &BigInt, x: &Combo, b: &BigInt, y: &Combo) -> Combo {
    let a = BigRational::from_integer(a.clone());
    let b = BigRational::from_integer(b.clone());
    let mut out: Combo = x.iter().map(|(k, v)| (*k, v * &a)).collect();
    for (k, v) in y {
        let e = out.entry(*k).or_insert_with(BigRational::zero);
        *e -= v * &b;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn entry(row: &[(usize, BigInt)], c: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|p| &row[p].1)
}

impl Echelon {
    pub fn new(m: &SparseIntMatrix) -> Self {
        let mut e = Echelon {
            num_cols: m.num_cols(),
            num_input_rows: m.num_rows(),
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: Vec::new(),
        };
        for (i, row) in m.rows().iter().enumerate() {
            e.insert(row.clone(), Combo::from([(i, BigRational::one())]));
        }
        e
    }

    /// Reduces `row` against the stored rows; returns the remainder and its
    /// combination.
    fn reduce(&self, mut row: Row, mut combo: Combo) -> (Row, Combo) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if let Some(f) = entry(&row, p).cloned() {
                let pv = entry(&self.rows[i], p).expect("pivot entry").clone();
                row = combine(&pv, &row, &f, &self.rows[i]);
                combo = combine_combo(&pv, &combo, &f, &self.combos[i]);
                divide_content(&mut row, &mut combo);
            }
        }
        (row, combo)
    }

    fn insert(&mut self, row: Row, combo: Combo) {
        let (row, combo) = self.reduce(row, combo);
        let Some(&(p, ref pv)) = row.first() else { return };
        let pv = pv.clone();
        for i in 0..self.rows.len() {
            if let Some(f) = entry(&self.rows[i], p).cloned() {
                self.rows[i] = combine(&pv, &self.rows[i], &f, &row);
                self.combos[i] = combine_combo(&pv, &self.combos[i], &f, &combo);
                let (mut r, mut c) = (std::mem::take(&mut self.rows[i]), std::mem::take(&mut self.combos[i]));
                divide_content(&mut r, &mut c);
                self.rows[i] = r;
                self.combos[i] = c;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        self.combos.insert(at, combo);
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients `c` (one per input row) with `sum c_i * row_i = target`.
    pub fn solve(&self, target: &[(usize, BigInt)]) -> Result<Vec<BigRational>> {
        let marker = self.num_input_rows;
        let (rest, combo) = self.reduce(
            super::normalize_row(target.to_vec()),
            Combo::from([(marker, BigRational::one())]),
        );
        if !rest.is_empty() {
            return Err(Error::NoSolution);
        }
        // 0 = k * target - sum_j d_j * row_j  =>  target = sum_j (d_j / k) * row_j
        let k = combo.get(&marker).cloned().expect("marker survives");
        let mut out = vec![BigRational::zero(); self.num_input_rows];
        for (i, v) in combo {
            if i != marker {
                out[i] = -v / &k;
            }
        }
        Ok(out)
    }

    /// Basis of the functionals `f` on columns with `row . f = 0` for every
    /// input row.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut is_pivot = vec![false; self.num_cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.num_cols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut f = vec![BigRational::zero(); self.num_cols];
                f[j] = BigRational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Some(v) = entry(row, j) {
                        let pv = entry(row, p).expect("pivot entry");
                        f[p] = -BigRational::new(v.clone(), pv.clone());
                    }
                }
                f
            })
            .collect()
    }
}

fn divide_content(row: &mut Row, combo: &mut Combo) {
    let before = row.first().map(|e| e.1.clone());
    remove_content(row);
    if let (Some(b), Some(a)) = (before, row.first()) {
        if b != a.1 {
            scale_combo(combo, &BigRational::new(a.1.clone(), b));
        }
    }
}

/// Functionals on the column space that vanish on every row of `m`.
pub fn row_annihilator(m: &SparseIntMatrix) -> Vec<Vec<BigRational>> {
    Echelon::new(m).nullspace()
}

/// Rational coefficients `c` with `sum c_i * row_i = target`, or `NoSolution`.
pub fn solve_combination(m: &SparseIntMatrix, target: &[(usize, BigInt)]) -> Result<Vec<BigRational>> {
    let coeffs = Echelon::new(m).solve(target)?;
    debug_assert!(replays(m, &coeffs, target));
    Ok(coeffs)
}

/// Exact check that the combination reproduces the target.
pub(crate) fn replays(m: &SparseIntMatrix, coeffs: &[BigRational], target: &[(usize, BigInt)]) -> bool {
    let mut acc = vec![BigRational::zero(); m.num_cols()];
    for (row, c) in m.rows().iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (j, v) in row {
            acc[*j] += c * BigRational::from_integer(v.clone());
        }
    }
    let mut want = vec![BigRational::zero(); m.num_cols()];
    for (j, v) in target {
        want[*j] += BigRational::from_integer(v.clone());
    }
    acc == want
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn solve_examples() {
        let m = SparseIntMatrix::from_dense(2, &[vec![1, 1]]);
        assert_eq!(solve_combination(&m, &[(0, 2.into()), (1, 2.into())]).unwrap(), vec![r(2)]);
        let m = SparseIntMatrix::from_dense(2, &[vec![1, 0]]);
        assert_eq!(solve_combination(&m, &[(1, 1.into())]), Err(Error::NoSolution));
        let empty = SparseIntMatrix::new(3);
        assert_eq!(solve_combination(&empty, &[(1, 1.into())]), Err(Error::NoSolution));
        let ns = row_annihilator(&empty);
        assert!(ns.iter().any(|f| !f[1].is_zero()));
    }

    #[test]
    fn solve_needs_fractions() {
        let m = SparseIntMatrix::from_dense(3, &[vec![2, 0, 4], vec![0, 3, 3], vec![2, 3, 7]]);
        let t = vec![(0, 1.into()), (1, 1.into()), (2, 3.into())];
        let c = solve_combination(&m, &t).unwrap();
        assert!(replays(&m, &c, &t));
    }

    #[test]
    fn nullspace_annihilates_rows() {
        let m = SparseIntMatrix::from_dense(4, &[vec![1, 2, 0, 3], vec![2, 4, 1, 0], vec![3, 6, 1, 3]]);
        let e = Echelon::new(&m);
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for f in &ns {
            for row in m.rows() {
                let s: BigRational = row.iter().map(|(j, v)| &f[*j] * BigRational::from_integer(v.clone())).sum();
                assert!(s.is_zero());
            }
        }
    }
}
