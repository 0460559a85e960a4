//! Exact matrix rank: sparse Gaussian elimination over prime fields with
//! Markowitz-style pivot selection, and fraction-free rational elimination as
//! the escalation path.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sparse::SparseIntMatrix;

/// Largest matrix side accepted by [`rank_rational`].
pub const RATIONAL_RANK_MAX_DIM: usize = 600;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Two distinct primes just below `2^31`, chosen reproducibly from `seed`.
pub fn choose_primes(seed: u64) -> [u64; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = (1u64 << 31) - (1 << 24);
    let hi = 1u64 << 31;
    let mut pick = |avoid: u64| loop {
        let candidate = rng.gen_range(lo..hi) | 1;
        if candidate != avoid && is_prime(candidate) {
            return candidate;
        }
    };
    let p = pick(0);
    let q = pick(p);
    [p, q]
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

type SparseRow = Vec<(u32, u32)>;

/// Rank of `m` over `GF(p)`, `p < 2^31` prime.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    assert!(p < (1 << 31) && is_prime(p), "modulus must be a prime below 2^31");
    let n_rows = m.n_rows();
    let n_cols = m.n_cols();
    if m.is_zero() {
        return 0;
    }
    let to_field = |v: i64| v.rem_euclid(p as i64) as u32;

    let mut rows: Vec<SparseRow> = vec![Vec::new(); n_rows];
    for &(r, c, v) in m.entries() {
        let x = to_field(v);
        if x != 0 {
            rows[r].push((c as u32, x));
        }
    }
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n_cols];
    let mut col_count = vec![0u32; n_cols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
            col_count[c as usize] += 1;
        }
    }
    let mut row_alive = vec![true; n_rows];
    let mut col_done = vec![false; n_cols];

    // Bucket queue over column counts, validated lazily on pop.
    let max_count = col_count.iter().copied().max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_count + 2];
    for (c, &k) in col_count.iter().enumerate() {
        if k > 0 {
            buckets[k as usize].push(c as u32);
        }
    }
    let mut singleton_rows: Vec<u32> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.len() == 1)
        .map(|(i, _)| i as u32)
        .collect();

    let find = |row: &SparseRow, c: u32| row.binary_search_by_key(&c, |e| e.0).ok();
    let mut rank = 0usize;
    let mut lowest = 1usize;

    loop {
        // Row singletons pivot without fill; otherwise take the sparsest
        // column and its shortest row.
        let mut pivot: Option<(u32, u32)> = None;
        while let Some(r) = singleton_rows.pop() {
            let ru = r as usize;
            if row_alive[ru] && rows[ru].len() == 1 && !col_done[rows[ru][0].0 as usize] {
                pivot = Some((r, rows[ru][0].0));
                break;
            }
        }
        if pivot.is_none() {
            let mut chosen = None;
            while lowest < buckets.len() {
                match buckets[lowest].pop() {
                    None => lowest += 1,
                    Some(c) => {
                        let cu = c as usize;
                        if !col_done[cu] && col_count[cu] as usize == lowest {
                            chosen = Some(c);
                            break;
                        }
                    }
                }
            }
            let Some(c) = chosen else { break };
            let cu = c as usize;
            let mut best: Option<(usize, u32)> = None;
            col_rows[cu].retain(|&r| {
                let ru = r as usize;
                row_alive[ru] && find(&rows[ru], c).is_some()
            });
            col_rows[cu].sort_unstable();
            col_rows[cu].dedup();
            for &r in &col_rows[cu] {
                let len = rows[r as usize].len();
                if best.is_none_or(|(l, _)| len < l) {
                    best = Some((len, r));
                }
            }
            let (_, r) = best.expect("column count positive but no live row");
            pivot = Some((r, c));
        }
        let (pr, pc) = pivot.unwrap();
        let pru = pr as usize;
        let pcu = pc as usize;
        rank += 1;
        row_alive[pru] = false;
        col_done[pcu] = true;
        let pivot_row = std::mem::take(&mut rows[pru]);
        let pivot_val = pivot_row[find(&pivot_row, pc).unwrap()].1 as u64;
        let pivot_inv = inv_mod(pivot_val, p);

        let targets: Vec<u32> = std::mem::take(&mut col_rows[pcu])
            .into_iter()
            .filter(|&r| r != pr && row_alive[r as usize])
            .collect();
        let mut touched: Vec<u32> = Vec::new();
        for r in targets {
            let ru = r as usize;
            let Some(k) = find(&rows[ru], pc) else { continue };
            let factor = rows[ru][k].1 as u64 * pivot_inv % p;
            let neg = (p - factor) % p;
            let old = std::mem::take(&mut rows[ru]);
            let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pivot_row.len() {
                let take_old = j == pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
                let take_piv = i == old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
                if take_old {
                    merged.push(old[i]);
                    i += 1;
                } else if take_piv {
                    let (c, v) = pivot_row[j];
                    let x = (neg * v as u64 % p) as u32;
                    merged.push((c, x));
                    // fill-in
                    col_count[c as usize] += 1;
                    col_rows[c as usize].push(r);
                    touched.push(c);
                    j += 1;
                } else {
                    let (c, a) = old[i];
                    let b = pivot_row[j].1;
                    let x = ((a as u64 + neg * b as u64) % p) as u32;
                    if x != 0 {
                        merged.push((c, x));
                    } else {
                        col_count[c as usize] -= 1;
                        touched.push(c);
                    }
                    i += 1;
                    j += 1;
                }
            }
            if merged.len() == 1 {
                singleton_rows.push(r);
            }
            rows[ru] = merged;
        }
        for &(c, _) in &pivot_row {
            col_count[c as usize] -= 1;
            touched.push(c);
        }
        touched.sort_unstable();
        touched.dedup();
        for c in touched {
            let cu = c as usize;
            if col_done[cu] {
                continue;
            }
            let k = col_count[cu] as usize;
            if k == 0 {
                col_done[cu] = true;
                continue;
            }
            if k >= buckets.len() {
                buckets.resize(k + 1, Vec::new());
            }
            buckets[k].push(c);
            lowest = lowest.min(k);
        }
    }
    rank
}

/// Exact rank over the rationals by fraction-free (Bareiss) elimination on a
/// dense copy. Intended for escalation on modest sizes only.
pub fn rank_rational(m: &SparseIntMatrix) -> Result<usize> {
    let (n_rows, n_cols) = (m.n_rows(), m.n_cols());
    if n_rows.min(n_cols) > RATIONAL_RANK_MAX_DIM {
        return Err(Error::capacity(
            "rational elimination size",
            n_rows.min(n_cols),
            RATIONAL_RANK_MAX_DIM,
        ));
    }
    let mut a = vec![vec![BigInt::zero(); n_cols]; n_rows];
    for &(r, c, v) in m.entries() {
        a[r][c] = BigInt::from(v);
    }
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(piv) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..n_rows {
            for c in col + 1..n_cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].abs();
        rank += 1;
    }
    Ok(rank)
}

/// Rank agreed on by two prime fields, or the rational rank when they differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckedRank {
    pub rank: usize,
    pub by_prime: [usize; 2],
    pub escalated: bool,
}

pub fn checked_rank(m: &SparseIntMatrix, primes: [u64; 2]) -> Result<CheckedRank> {
    let (a, b) = rayon::join(|| rank_mod_p(m, primes[0]), || rank_mod_p(m, primes[1]));
    if a == b {
        return Ok(CheckedRank {
            rank: a,
            by_prime: [a, b],
            escalated: false,
        });
    }
    let exact = rank_rational(m)?;
    if exact < a.max(b) {
        return Err(Error::Internal(format!(
            "rational rank {exact} below modular ranks {a}/{b}"
        )));
    }
    Ok(CheckedRank {
        rank: exact,
        by_prime: [a, b],
        escalated: true,
    })
}
