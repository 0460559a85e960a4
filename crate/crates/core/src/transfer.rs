//! Witten index of square-lattice tori from a signed row-transfer matrix.
//!
//! A torus with period lattice spanned by `(m,0)` and `(k,n)` is a stack of
//! `n` rows, each a cycle of `m` sites; leaving the top row re-enters the
//! bottom row shifted by `k`. With `T[s,s'] = (-1)^|s'|` on vertically
//! compatible rows, the index is `tr(S_k T^n)`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::lattice::TorusSpec;

/// Independent sets of the row cycle `C_m` (path when `periodic` is false),
/// sorted. `C_1` has only the empty row: its site is self-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowBasis {
    width: usize,
    states: Vec<u64>,
}

impl RowBasis {
    pub fn new(width: usize, periodic: bool) -> Self {
        assert!(width <= 40, "row width {width} too large for the transfer method");
        let full: u64 = if width == 64 { u64::MAX } else { (1 << width) - 1 };
        let rot = |s: u64| {
            if width == 0 {
                s
            } else {
                ((s << 1) | (s >> (width - 1))) & full
            }
        };
        let mut states = Vec::new();
        // grow independent sets of the path site by site
        let mut frontier: Vec<u64> = vec![0];
        for i in 0..width {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for &s in &frontier {
                next.push(s);
                if i == 0 || s & (1 << (i - 1)) == 0 {
                    next.push(s | (1 << i));
                }
            }
            frontier = next;
        }
        for s in frontier {
            if !periodic || width == 0 || s & rot(s) == 0 {
                states.push(s);
            }
        }
        states.sort_unstable();
        RowBasis { width, states }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    fn index_of(&self, s: u64) -> usize {
        self.states.binary_search(&s).expect("state outside the row basis")
    }

    /// Cyclic rotation of a row by `k` sites toward higher indices.
    pub fn rotate(&self, s: u64, k: i64) -> u64 {
        let m = self.width as i64;
        if m == 0 {
            return s;
        }
        let k = k.rem_euclid(m) as u32;
        if k == 0 {
            return s;
        }
        let full: u64 = (1 << m) - 1;
        ((s << k) | (s >> (m as u32 - k))) & full
    }
}

/// Sparse signed transfer matrix: row `s` lists the compatible `s'`.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    basis: RowBasis,
    /// `(index of s', sign)` per basis state `s`.
    adjacency: Vec<Vec<(usize, i8)>>,
}

impl TransferMatrix {
    pub fn new(basis: RowBasis) -> Self {
        let adjacency = basis
            .states
            .iter()
            .map(|&s| {
                basis
                    .states
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| s & t == 0)
                    .map(|(j, &t)| (j, if t.count_ones() % 2 == 0 { 1 } else { -1 }))
                    .collect()
            })
            .collect();
        TransferMatrix { basis, adjacency }
    }

    pub fn basis(&self) -> &RowBasis {
        &self.basis
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.adjacency[i]
            .iter()
            .find(|e| e.0 == j)
            .map_or(0, |e| e.1 as i64)
    }

    /// `x <- x T`, i.e. `x'[s'] = sum_s x[s] T[s,s']`.
    fn step<N: Num>(&self, x: &[N]) -> Option<Vec<N>> {
        let mut out = vec![N::zero(); x.len()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &(j, sign) in &self.adjacency[i] {
                out[j] = out[j].add_signed(xi, sign)?;
            }
        }
        Some(out)
    }

    /// `tr(S_k T^n)` with `S_k` mapping row state `s` to its rotation by `k`.
    fn trace<N: Num>(&self, n: usize, k: i64) -> Option<N> {
        let dim = self.basis.len();
        let columns: Vec<Option<N>> = (0..dim)
            .into_par_iter()
            .map(|start| {
                let mut x = vec![N::zero(); dim];
                x[start] = N::one();
                for _ in 0..n {
                    x = self.step(&x)?;
                }
                // row `start` re-enters the bottom as its rotation
                let back = self.basis.index_of(self.basis.rotate(self.basis.states[start], k));
                Some(x[back].clone())
            })
            .collect();
        let mut acc = N::zero();
        for c in columns {
            acc = acc.add_signed(&c?, 1)?;
        }
        Some(acc)
    }
}

/// Arithmetic the trace needs: checked `i128` first, `BigInt` on overflow.
trait Num: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_signed(&self, other: &Self, sign: i8) -> Option<Self>;
}

impl Num for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_signed(&self, other: &Self, sign: i8) -> Option<Self> {
        if sign >= 0 {
            self.checked_add(*other)
        } else {
            self.checked_sub(*other)
        }
    }
}

impl Num for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_signed(&self, other: &Self, sign: i8) -> Option<Self> {
        Some(if sign >= 0 { self + other } else { self - other })
    }
}

/// Index of the `(m,0) x (k,n)` torus.
pub fn witten_transfer_twisted_big(m: usize, n: usize, k: i64) -> BigInt {
    assert!(m >= 1 && n >= 1, "torus dimensions must be positive");
    let t = TransferMatrix::new(RowBasis::new(m, true));
    match t.trace::<i128>(n, k) {
        Some(v) => BigInt::from(v),
        None => t.trace::<BigInt>(n, k).expect("bigint trace cannot overflow"),
    }
}

/// Index of the `(m,0) x (k,n)` torus. Panics if it does not fit in `i64`.
pub fn witten_transfer_twisted(m: usize, n: usize, k: i64) -> i64 {
    i64::try_from(witten_transfer_twisted_big(m, n, k)).expect("Witten index exceeds i64")
}

pub fn witten_transfer_rect(m: usize, n: usize) -> i64 {
    witten_transfer_twisted(m, n, 0)
}

/// Index of an arbitrary square-lattice torus via its Hermite basis.
pub fn witten_transfer_torus(spec: &TorusSpec) -> i64 {
    let h = spec.hermite();
    witten_transfer_twisted(h.a as usize, h.c as usize, h.b)
}

/// `m_max x n_max` table of rectangular-torus indices, rows indexed by `m`.
pub fn witten_table(m_max: usize, n_max: usize) -> Vec<Vec<i64>> {
    (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let t = TransferMatrix::new(RowBasis::new(m, true));
            (1..=n_max)
                .map(|n| {
                    let big = match t.trace::<i128>(n, 0) {
                        Some(v) => BigInt::from(v),
                        None => t.trace::<BigInt>(n, 0).unwrap(),
                    };
                    i64::try_from(big).expect("Witten index exceeds i64")
                })
                .collect()
        })
        .collect()
}
