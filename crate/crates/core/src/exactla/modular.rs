//! Ranks modulo word-size primes, used as an independent cross-check of the
//! rational rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use sha2::{Digest, Sha256};

use super::SparseIntMatrix;
use crate::par::{self, Parallelism};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes in `[2^61, 2^62)` derived from a SHA-256 digest of
/// the matrix, so repeated runs on the same matrix use the same primes.
pub fn deterministic_primes(m: &SparseIntMatrix, count: usize) -> Vec<u64> {
    let mut h = Sha256::new();
    h.update(m.num_rows().to_le_bytes());
    h.update(m.num_cols().to_le_bytes());
    for row in m.rows() {
        for (c, v) in row {
            h.update(c.to_le_bytes());
            h.update(v.to_signed_bytes_le());
        }
        h.update(b";");
    }
    let mut seed: [u8; 32] = h.finalize().into();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let word = u64::from_le_bytes(seed[..8].try_into().expect("8 bytes"));
        let mut cand = (word & ((1 << 61) - 1)) | (1 << 61) | 1;
        while !is_prime_u64(cand) || out.contains(&cand) {
            cand += 2;
            if cand >= 1 << 62 {
                cand = (1 << 61) + 1;
            }
        }
        out.push(cand);
        seed = Sha256::digest(seed).into();
    }
    out
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Rank of the matrix reduced modulo the prime `p`.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    let mut active: Vec<Vec<(usize, u64)>> = m
        .rows()
        .iter()
        .map(|row| row.iter().map(|(c, v)| (*c, reduce(v, p))).filter(|e| e.1 != 0).collect())
        .filter(|r: &Vec<(usize, u64)>| !r.is_empty())
        .collect();
    let mut rank = 0;
    while !active.is_empty() {
        // shortest row, its leading entry
        let pr = (0..active.len()).min_by_key(|&i| (active[i].len(), i)).expect("nonempty");
        let pivot = active.swap_remove(pr);
        let (pc, pv) = pivot[0];
        let inv = pow_mod(pv, p - 2, p);
        rank += 1;
        for row in active.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&pc, |e| e.0) {
                let f = mul_mod(row[k].1, inv, p);
                *row = axpy_mod(row, f, &pivot, p);
            }
        }
        active.retain(|r| !r.is_empty());
    }
    rank
}

/// `x - f * y (mod p)` for sparse rows.
fn axpy_mod(x: &[(usize, u64)], f: u64, y: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let neg = |v: u64| if v == 0 { 0 } else { p - v };
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i]);
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, neg(mul_mod(f, y[j].1, p))));
            j += 1;
        } else {
            let v = (x[i].1 + neg(mul_mod(f, y[j].1, p))) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Maximum over `primes` of the rank modulo each prime. Each value is a lower
/// bound for the rational rank.
pub fn modular_rank(m: &SparseIntMatrix, primes: &[u64], parallelism: Parallelism) -> usize {
    assert!(primes.iter().all(|&p| is_prime_u64(p)), "modular_rank needs primes");
    par::map(parallelism, primes, |&p| rank_mod_p(m, p)).into_iter().max().unwrap_or(0)
}
