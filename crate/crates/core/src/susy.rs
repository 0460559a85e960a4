//! The supercharge `Q` as exact integer blocks between adjacent fermion
//! sectors, and the Hamiltonian `H = Q Q^T + Q^T Q` derived from it.
//!
//! Sign convention: creating a fermion at site `i` on configuration `c`
//! contributes `(-1)^(number of occupied sites of c below i)`, with sites in
//! the lattice's canonical order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{neighbor_masks, Config, GradedSpace};
use crate::lattice::LatticeGraph;
use crate::sparse::SparseIntMatrix;

/// Fermionic sign of creating (or annihilating) at `site` on `c`.
pub fn creation_sign(c: Config, site: usize) -> i64 {
    let below = c & ((1u128 << site) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone)]
pub struct SuperchargeBlocks {
    /// `blocks[f]` maps sector `f` (columns) into sector `f + 1` (rows).
    blocks: Vec<SparseIntMatrix>,
    dims: Vec<usize>,
}

impl SuperchargeBlocks {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn f_max(&self) -> usize {
        self.dims.len() - 1
    }

    /// `Q_f : V_f -> V_{f+1}`; `None` past the top of the grading.
    pub fn block(&self, f: usize) -> Option<&SparseIntMatrix> {
        self.blocks.get(f)
    }

    pub fn blocks(&self) -> &[SparseIntMatrix] {
        &self.blocks
    }

    /// Checks `Q_{f+1} Q_f = 0` for every `f`, returning the first failing `f`.
    pub fn nilpotency_violation(&self) -> Option<usize> {
        self.blocks
            .windows(2)
            .enumerate()
            .find(|(_, w)| !w[1].mul(&w[0]).is_zero())
            .map(|(f, _)| f)
    }
}

pub fn build_supercharge(g: &LatticeGraph, space: &GradedSpace) -> Result<SuperchargeBlocks> {
    if g.n_sites() != space.n_sites() {
        return Err(Error::InvalidArgument(
            "graded space was not enumerated from this lattice".into(),
        ));
    }
    let masks = neighbor_masks(g)?;
    let n = g.n_sites();
    let sectors = space.sectors();
    let blocks = (0..sectors.len().saturating_sub(1))
        .into_par_iter()
        .map(|f| {
            let (src, dst) = (&sectors[f], &sectors[f + 1]);
            let mut entries = Vec::with_capacity(src.dim() * 2);
            for (col, &c) in src.basis().iter().enumerate() {
                for i in 0..n {
                    let bit = 1u128 << i;
                    if c & bit == 0 && masks[i] & c == 0 {
                        let row = dst
                            .index_of(c | bit)
                            .expect("independent extension missing from its sector");
                        entries.push((row, col, creation_sign(c, i)));
                    }
                }
            }
            entries.sort_unstable_by_key(|e| (e.0, e.1));
            SparseIntMatrix::from_sorted_unique(dst.dim(), src.dim(), entries)
        })
        .collect();
    Ok(SuperchargeBlocks {
        blocks,
        dims: space.dims(),
    })
}

/// `H_f = Q_{f-1} Q_{f-1}^T + Q_f^T Q_f`, absent blocks treated as zero.
pub fn build_hamiltonian_block(qb: &SuperchargeBlocks, f: usize) -> Result<SparseIntMatrix> {
    if f > qb.f_max() {
        return Err(Error::SectorOutOfRange { f, f_max: qb.f_max() });
    }
    let dim = qb.dims[f];
    let mut h = SparseIntMatrix::zeros(dim, dim);
    if f > 0 {
        let q = &qb.blocks[f - 1];
        h = h.add(&q.mul(&q.transpose()));
    }
    if let Some(q) = qb.blocks.get(f) {
        h = h.add(&q.transpose().mul(q));
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub f: usize,
    pub row: usize,
    pub col: usize,
    pub from_supercharge: i64,
    pub expanded: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandedFormReport {
    pub sectors_checked: usize,
    pub entries_compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ExpandedFormReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Hamiltonian block assembled directly as nearest-neighbor hopping plus the
/// count of sites whose whole neighborhood is empty.
pub fn expanded_hamiltonian_block(
    g: &LatticeGraph,
    space: &GradedSpace,
    f: usize,
) -> Result<SparseIntMatrix> {
    let masks = neighbor_masks(g)?;
    let sector = space
        .sector(f)
        .ok_or(Error::SectorOutOfRange { f, f_max: space.f_max() })?;
    let n = g.n_sites();
    let mut triplets = Vec::new();
    for (col, &c) in sector.basis().iter().enumerate() {
        let free = (0..n).filter(|&i| masks[i] & c == 0).count() as i64;
        triplets.push((col, col, free));
        // d_i^dag d_j for every ordered edge (i, j) with j occupied
        for j in 0..n {
            if c & (1 << j) == 0 {
                continue;
            }
            let without = c & !(1u128 << j);
            for &i in g.neighbors(j) {
                if masks[i] & without != 0 {
                    continue;
                }
                let target = without | (1 << i);
                let row = sector
                    .index_of(target)
                    .expect("hop target missing from its sector");
                let value = creation_sign(without, j) * creation_sign(without, i);
                triplets.push((row, col, value));
            }
        }
    }
    Ok(SparseIntMatrix::from_triplets(sector.dim(), sector.dim(), triplets))
}

pub fn expanded_form_check(
    g: &LatticeGraph,
    space: &GradedSpace,
    qb: &SuperchargeBlocks,
) -> Result<ExpandedFormReport> {
    let mut report = ExpandedFormReport {
        sectors_checked: 0,
        entries_compared: 0,
        mismatches: Vec::new(),
    };
    for f in 0..=qb.f_max() {
        let from_q = build_hamiltonian_block(qb, f)?;
        let expanded = expanded_hamiltonian_block(g, space, f)?;
        report.sectors_checked += 1;
        let mut a = from_q.entries().iter().peekable();
        let mut b = expanded.entries().iter().peekable();
        loop {
            let (pos, x, y) = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(&&(r, c, v)), None) => {
                    a.next();
                    ((r, c), v, 0)
                }
                (None, Some(&&(r, c, v))) => {
                    b.next();
                    ((r, c), 0, v)
                }
                (Some(&&(ra, ca, va)), Some(&&(rb, cb, vb))) => {
                    if (ra, ca) == (rb, cb) {
                        a.next();
                        b.next();
                        ((ra, ca), va, vb)
                    } else if (ra, ca) < (rb, cb) {
                        a.next();
                        ((ra, ca), va, 0)
                    } else {
                        b.next();
                        ((rb, cb), 0, vb)
                    }
                }
            };
            report.entries_compared += 1;
            if x != y {
                report.mismatches.push(Mismatch {
                    f,
                    row: pos.0,
                    col: pos.1,
                    from_supercharge: x,
                    expanded: y,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::enumerate_sectors;
    use crate::lattice::{build_chain, build_octagon_square, build_square_torus, BoundarySpec, TorusSpec};

    fn blocks(g: &LatticeGraph) -> (GradedSpace, SuperchargeBlocks) {
        let space = enumerate_sectors(g).unwrap();
        let qb = build_supercharge(g, &space).unwrap();
        (space, qb)
    }

    #[test]
    fn single_site() {
        let g = LatticeGraph::from_edges(1, &[]).unwrap();
        let (_, qb) = blocks(&g);
        assert_eq!(qb.block(0).unwrap().entries(), &[(0, 0, 1)]);
        assert_eq!(build_hamiltonian_block(&qb, 0).unwrap().entries(), &[(0, 0, 1)]);
        assert_eq!(build_hamiltonian_block(&qb, 1).unwrap().entries(), &[(0, 0, 1)]);
        assert!(matches!(
            build_hamiltonian_block(&qb, 2),
            Err(Error::SectorOutOfRange { .. })
        ));
    }

    #[test]
    fn empty_graph_vacuum_at_zero() {
        let g = LatticeGraph::from_edges(0, &[]).unwrap();
        let (_, qb) = blocks(&g);
        assert!(qb.blocks().is_empty());
        let h = build_hamiltonian_block(&qb, 0).unwrap();
        assert_eq!((h.n_rows(), h.nnz()), (1, 0));
    }

    #[test]
    fn two_free_sites_signs() {
        let g = LatticeGraph::from_edges(2, &[]).unwrap();
        let (space, qb) = blocks(&g);
        let q1 = qb.block(1).unwrap();
        let s1 = space.sector(1).unwrap();
        let col_0 = s1.index_of(0b01).unwrap();
        let col_1 = s1.index_of(0b10).unwrap();
        // {0} -> {0,1}: creation at 1 passes occupied 0
        assert_eq!(q1.get(0, col_0), -1);
        // {1} -> {0,1}: creation at 0 passes nothing
        assert_eq!(q1.get(0, col_1), 1);
        assert!(qb.nilpotency_violation().is_none());
    }

    #[test]
    fn cycle_four_blocks() {
        let g = build_chain(4, true).unwrap();
        let (space, qb) = blocks(&g);
        let h0 = build_hamiltonian_block(&qb, 0).unwrap();
        assert_eq!(h0.entries(), &[(0, 0, 4)]);
        // pairs {0,2} and {1,3}: each site's neighborhood is the occupied pair
        // or contains it, so only the two occupied sites are free
        let h2 = build_hamiltonian_block(&qb, 2).unwrap();
        assert_eq!(h2.entries(), &[(0, 0, 2), (1, 1, 2)]);
        let report = expanded_form_check(&g, &space, &qb).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
    }

    #[test]
    fn nilpotent_and_expanded_form_on_lattices() {
        let graphs = vec![
            build_chain(7, true).unwrap(),
            build_chain(6, false).unwrap(),
            build_square_torus(TorusSpec::rect(3, 4).unwrap()),
            build_square_torus(TorusSpec::rect(2, 5).unwrap()),
            build_octagon_square(2, 2, BoundarySpec::Torus, &[]).unwrap(),
        ];
        for g in graphs {
            let (space, qb) = blocks(&g);
            assert!(qb.nilpotency_violation().is_none());
            let report = expanded_form_check(&g, &space, &qb).unwrap();
            assert!(report.passed());
            for f in 0..=qb.f_max() {
                let h = build_hamiltonian_block(&qb, f).unwrap();
                assert!(h.is_symmetric());
            }
        }
    }
}
