//! Exact integer sparse matrices in coordinate form.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    n_rows: usize,
    n_cols: usize,
    /// Row-major sorted, no duplicate positions, no explicit zeros.
    entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseIntMatrix {
            n_rows,
            n_cols,
            entries: Vec::new(),
        }
    }

    /// Builds from unordered triplets, summing repeated positions and
    /// dropping zeros.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < n_rows && c < n_cols, "entry ({r},{c}) outside {n_rows}x{n_cols}");
            *acc.entry((r, c)).or_insert(0) += v;
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseIntMatrix {
            n_rows,
            n_cols,
            entries,
        }
    }

    /// Builds from triplets already sorted row-major with unique positions.
    pub(crate) fn from_sorted_unique(
        n_rows: usize,
        n_cols: usize,
        entries: Vec<(usize, usize, i64)>,
    ) -> Self {
        debug_assert!(entries.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        debug_assert!(entries.iter().all(|e| e.2 != 0));
        SparseIntMatrix {
            n_rows,
            n_cols,
            entries,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(row, col)))
            .map(|k| self.entries[k].2)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|e| (e.0, e.1));
        SparseIntMatrix::from_sorted_unique(self.n_cols, self.n_rows, entries)
    }

    /// Row slices: `rows()[r]` lists `(col, value)` for row `r`.
    pub fn rows(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.n_rows];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.n_cols, other.n_rows, "dimension mismatch in product");
        let rhs = other.rows();
        let mut entries = Vec::new();
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        let mut start = 0;
        while start < self.entries.len() {
            let r = self.entries[start].0;
            let mut end = start;
            while end < self.entries.len() && self.entries[end].0 == r {
                let (_, k, a) = self.entries[end];
                for &(c, b) in &rhs[k] {
                    *acc.entry(c).or_insert(0) += a * b;
                }
                end += 1;
            }
            entries.extend(
                std::mem::take(&mut acc)
                    .into_iter()
                    .filter(|&(_, v)| v != 0)
                    .map(|(c, v)| (r, c, v)),
            );
            start = end;
        }
        SparseIntMatrix::from_sorted_unique(self.n_rows, other.n_cols, entries)
    }

    pub fn add(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        SparseIntMatrix::from_triplets(
            self.n_rows,
            self.n_cols,
            self.entries.iter().chain(other.entries.iter()).copied(),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.n_rows == self.n_cols && *self == self.transpose()
    }

    /// `y = A x` in floating point.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for &(r, c, v) in &self.entries {
            y[r] += v as f64 * x[c];
        }
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.n_rows, self.n_cols);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v as f64;
        }
        m
    }

    /// Coordinate triplet text: a `rows cols nnz` header followed by one
    /// `row col value` line per entry, zero-based.
    pub fn write_triplets<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{} {} {}", self.n_rows, self.n_cols, self.entries.len())?;
        for &(r, c, v) in &self.entries {
            writeln!(out, "{r} {c} {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseIntMatrix::from_triplets(2, 2, [(0, 1, 2), (0, 1, -2), (1, 0, 3), (1, 0, 1)]);
        assert_eq!(m.entries(), &[(1, 0, 4)]);
        assert_eq!(m.get(1, 0), 4);
        assert_eq!(m.get(0, 1), 0);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_triplets(2, 3, [(0, 0, 1), (0, 2, -1), (1, 1, 2)]);
        let ata = a.transpose().mul(&a);
        assert!(ata.is_symmetric());
        assert_eq!(ata.get(0, 0), 1);
        assert_eq!(ata.get(0, 2), -1);
        assert_eq!(ata.get(2, 2), 1);
        assert_eq!(ata.get(1, 1), 4);
        let aat = a.mul(&a.transpose());
        assert_eq!(aat.entries(), &[(0, 0, 2), (1, 1, 4)]);
    }

    #[test]
    fn triplet_text() {
        let a = SparseIntMatrix::from_triplets(2, 2, [(1, 0, -1)]);
        let mut buf = Vec::new();
        a.write_triplets(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "2 2 1\n1 0 -1\n");
    }
}
