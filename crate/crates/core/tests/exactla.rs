mod common;

use ak_core::exactla::{
    deterministic_primes, is_prime_u64, modular_rank, rank, rank_with_limit, row_annihilator, solve_combination,
    SparseIntMatrix,
};
use ak_core::{Error, Parallelism};
use common::rng;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

/// A sparse random matrix; with `dependent` the last rows are combinations of earlier ones.
fn random_matrix<R: Rng>(r: &mut R, rows: usize, cols: usize, density: f64, dependent: usize) -> SparseIntMatrix {
    let mut dense: Vec<Vec<i64>> = (0..rows - dependent)
        .map(|_| (0..cols).map(|_| if r.gen_bool(density) { r.gen_range(-9..=9) } else { 0 }).collect())
        .collect();
    for _ in 0..dependent {
        let (a, b) = (r.gen_range(0..dense.len()), r.gen_range(0..dense.len()));
        let (x, y) = (r.gen_range(-3..=3), r.gen_range(-3..=3));
        let row = (0..cols).map(|j| x * dense[a][j] + y * dense[b][j]).collect();
        dense.push(row);
    }
    SparseIntMatrix::from_dense(cols, &dense)
}

fn dot(row: &[(usize, BigInt)], f: &[BigRational]) -> BigRational {
    row.iter().map(|(c, v)| BigRational::from_integer(v.clone()) * &f[*c]).sum()
}

#[test]
fn fifty_random_matrices_agree_with_modular_rank() {
    let mut r = rng(21);
    for i in 0..50 {
        let m = random_matrix(&mut r, 40, 60, 0.1, i % 8);
        let exact = rank(&m).unwrap();
        let primes = deterministic_primes(&m, 3);
        assert_eq!(primes.len(), 3);
        assert!(primes.iter().all(|&p| is_prime_u64(p) && p >> 61 == 1));
        assert_eq!(modular_rank(&m, &primes, Parallelism::Sequential), exact, "matrix {i}");
        assert_eq!(modular_rank(&m, &primes, Parallelism::Parallel), exact);
        assert_eq!(rank(&m.transpose()).unwrap(), exact);
        let kernel = row_annihilator(&m);
        assert_eq!(kernel.len() + exact, m.num_cols());
        for f in &kernel {
            for row in m.rows() {
                assert!(dot(row, f).is_zero());
            }
        }
    }
}

#[test]
fn dense_fallback_path() {
    // dense enough to trigger fraction-free Bareiss after a few pivots
    let mut r = rng(23);
    for _ in 0..10 {
        let m = random_matrix(&mut r, 30, 30, 0.9, 5);
        assert_eq!(rank(&m).unwrap(), 25);
        assert_eq!(rank(&m.transpose()).unwrap(), 25);
        assert_eq!(rank(&m).unwrap(), modular_rank(&m, &deterministic_primes(&m, 3), Parallelism::Sequential));
    }
}

#[test]
fn entry_ceiling_is_enforced() {
    let m = random_matrix(&mut rng(1), 20, 20, 0.8, 0);
    assert!(matches!(rank_with_limit(&m, 10), Err(Error::ResourceLimit { .. })));
}

#[test]
fn matrix_market_round_trip() {
    let mut r = rng(25);
    let mut m = random_matrix(&mut r, 12, 9, 0.4, 2);
    m.push_row(vec![(0, "123456789012345678901234567890".parse().unwrap())]);
    let back = SparseIntMatrix::from_matrix_market(&m.to_matrix_market()).unwrap();
    assert_eq!(back, m);
}

#[test]
fn combinations_replay() {
    let mut r = rng(27);
    for _ in 0..20 {
        let m = random_matrix(&mut r, 15, 20, 0.3, 0);
        let coeffs: Vec<i64> = (0..m.num_rows()).map(|_| r.gen_range(-4..=4)).collect();
        let mut target = vec![BigInt::zero(); m.num_cols()];
        for (row, c) in m.rows().iter().zip(&coeffs) {
            for (j, v) in row {
                target[*j] += v * c;
            }
        }
        let sparse: Vec<(usize, BigInt)> = target.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        let found = solve_combination(&m, &sparse).unwrap();
        let mut acc = vec![BigRational::zero(); m.num_cols()];
        for (row, c) in m.rows().iter().zip(&found) {
            for (j, v) in row {
                acc[*j] += BigRational::from_integer(v.clone()) * c;
            }
        }
        assert!(acc.iter().zip(&target).all(|(a, t)| *a == BigRational::from_integer(t.clone())));
    }
    let m = SparseIntMatrix::from_dense(3, &[vec![1, 0, 0]]);
    assert!(matches!(solve_combination(&m, &[(1, BigInt::from(1))]), Err(Error::NoSolution)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rank_is_stable_under_row_operations(seed in any::<u64>(), rows in 1usize..12, cols in 1usize..12) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, rows, cols, 0.5, 0);
        let base = rank(&m).unwrap();
        let dense = m.to_dense();
        let mut shuffled = dense.clone();
        shuffled.reverse();
        let a = r.gen_range(0..rows);
        let b = r.gen_range(0..rows);
        if a != b {
            let add: Vec<BigInt> = shuffled[b].iter().map(|v| v * 3).collect();
            for (x, y) in shuffled[a].iter_mut().zip(add) {
                *x += y;
            }
        }
        prop_assert_eq!(rank(&SparseIntMatrix::from_dense(cols, &shuffled)).unwrap(), base);
        prop_assert!(base <= rows.min(cols));
    }
}
