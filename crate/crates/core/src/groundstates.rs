//! Zero-energy ground states per fermion sector.
//!
//! Two independent routes: exact ranks of the supercharge blocks
//! (`h_f = dim V_f - rank Q_f - rank Q_{f-1}`) and numerical kernel
//! dimensions of the Hamiltonian blocks. Also the closed-form degeneracy
//! predictions for the octagon-square lattice and square-lattice cylinders.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{self, LanczosConfig, SymmetricOperator, DENSE_MAX_DIM};
use crate::error::{Error, Result};
use crate::lattice::{Axis, BoundarySpec, Family, LatticeGraph};
use crate::rank::{checked_rank, CheckedRank};
use crate::sparse::SparseIntMatrix;
use crate::hilbert::GradedSpace;
use crate::morse;
use crate::susy::{build_hamiltonian_block, build_supercharge, SuperchargeBlocks};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ExactRank,
    NumericKernel,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ExactRank => f.write_str("exact-rank"),
            Method::NumericKernel => f.write_str("numeric-kernel"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorCount {
    pub f: usize,
    pub dim: usize,
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateReport {
    pub per_sector: Vec<SectorCount>,
    pub n_b: usize,
    pub n_f: usize,
    pub total: usize,
    pub witten: i64,
    pub method: Method,
    /// Modular ranks of each `Q_f` under both primes (exact-rank only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ranks: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<[u64; 2]>,
    /// Largest "zero" eigenvalue over smallest nonzero one, all sectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    /// Sector dimensions of the complex whose ranks were taken, when it is
    /// smaller than the full space.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complex_dims: Vec<usize>,
}

impl GroundStateReport {
    fn from_counts(per_sector: Vec<SectorCount>, method: Method) -> Self {
        let n_b = per_sector.iter().filter(|s| s.f % 2 == 0).map(|s| s.h).sum();
        let n_f = per_sector.iter().filter(|s| s.f % 2 == 1).map(|s| s.h).sum();
        GroundStateReport {
            per_sector,
            n_b,
            n_f,
            total: n_b + n_f,
            witten: n_b as i64 - n_f as i64,
            method,
            ranks: Vec::new(),
            primes: None,
            gap_ratio: None,
            warnings: Vec::new(),
            complex_dims: Vec::new(),
        }
    }

    pub fn h(&self, f: usize) -> usize {
        self.per_sector.get(f).map_or(0, |s| s.h)
    }

    /// Fermion numbers carrying ground states.
    pub fn ground_sectors(&self) -> Vec<usize> {
        self.per_sector.iter().filter(|s| s.h > 0).map(|s| s.f).collect()
    }

    /// `sum (-1)^f dim V_f`.
    pub fn euler_characteristic(&self) -> i64 {
        self.per_sector
            .iter()
            .map(|s| if s.f % 2 == 0 { s.dim as i64 } else { -(s.dim as i64) })
            .sum()
    }

    /// Same per-sector counts, regardless of method and diagnostics.
    pub fn same_counts(&self, other: &GroundStateReport) -> bool {
        self.per_sector == other.per_sector
    }
}

pub fn cohomology_dims(qb: &SuperchargeBlocks, primes: [u64; 2]) -> Result<GroundStateReport> {
    let ranks: Vec<CheckedRank> = qb
        .blocks()
        .par_iter()
        .map(|q| checked_rank(q, primes))
        .collect::<Result<_>>()?;
    let rank = |f: usize| ranks.get(f).map_or(0, |r| r.rank);
    let mut per_sector = Vec::with_capacity(qb.dims().len());
    for (f, &dim) in qb.dims().iter().enumerate() {
        let used = rank(f) + if f > 0 { rank(f - 1) } else { 0 };
        if used > dim {
            return Err(Error::Internal(format!(
                "ranks {} + {} exceed sector {f} dimension {dim}",
                rank(f),
                if f > 0 { rank(f - 1) } else { 0 }
            )));
        }
        per_sector.push(SectorCount { f, dim, h: dim - used });
    }
    let mut report = GroundStateReport::from_counts(per_sector, Method::ExactRank);
    report.ranks = ranks.iter().map(|r| r.by_prime).collect();
    report.primes = Some(primes);
    if ranks.iter().any(|r| r.escalated) {
        report
            .warnings
            .push("modular ranks disagreed; resolved by rational elimination".into());
    }
    Ok(report)
}

/// Exact-rank counts computed on the Morse-reduced complex (see
/// [`crate::morse`]); sector dimensions in the report are those of `space`,
/// ranks and `complex_dims` those of the reduced complex.
pub fn exact_ground_states(g: &LatticeGraph, space: &GradedSpace, primes: [u64; 2]) -> Result<GroundStateReport> {
    let pivots = morse::choose_pivots(g);
    let reduced = morse::reduced_space(g, &pivots, space.sectors().len())?;
    let qb = build_supercharge(g, &reduced)?;
    let mut report = cohomology_dims(&qb, primes)?;
    report.complex_dims = qb.dims().to_vec();
    for (s, dim) in report.per_sector.iter_mut().zip(space.dims()) {
        s.dim = dim;
    }
    Ok(report)
}

/// `H_f` applied as `Q_{f-1} Q_{f-1}^T + Q_f^T Q_f` without forming it.
struct HamiltonianOperator<'a> {
    dim: usize,
    lower: Option<(&'a SparseIntMatrix, SparseIntMatrix)>,
    upper: Option<(&'a SparseIntMatrix, SparseIntMatrix)>,
}

impl<'a> HamiltonianOperator<'a> {
    fn new(qb: &'a SuperchargeBlocks, f: usize) -> Self {
        let lower = (f > 0)
            .then(|| qb.block(f - 1))
            .flatten()
            .map(|q| (q, q.transpose()));
        let upper = qb.block(f).map(|q| (q, q.transpose()));
        HamiltonianOperator {
            dim: qb.dims()[f],
            lower,
            upper,
        }
    }
}

impl SymmetricOperator for HamiltonianOperator<'_> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        let mut tmp = Vec::new();
        let mut out = vec![0.0; self.dim];
        if let Some((q, qt)) = &self.lower {
            tmp.resize(qt.n_rows(), 0.0);
            qt.matvec(x, &mut tmp);
            q.matvec(&tmp, &mut out);
            y.iter_mut().zip(&out).for_each(|(a, b)| *a += b);
        }
        if let Some((q, qt)) = &self.upper {
            tmp.clear();
            tmp.resize(q.n_rows(), 0.0);
            q.matvec(x, &mut tmp);
            qt.matvec(&tmp, &mut out);
            y.iter_mut().zip(&out).for_each(|(a, b)| *a += b);
        }
    }
}

/// Ratio above which the split between zero and nonzero levels is flagged.
pub const GAP_AMBIGUITY_RATIO: f64 = 1e-4;

struct SectorKernel {
    h: usize,
    largest_zero: Option<f64>,
    smallest_nonzero: Option<f64>,
}

fn sector_kernel(qb: &SuperchargeBlocks, f: usize, tol: f64, seed: u64) -> Result<SectorKernel> {
    let dim = qb.dims()[f];
    if dim <= DENSE_MAX_DIM {
        let vals = eigen::dense_eigenvalues(&build_hamiltonian_block(qb, f)?);
        let h = vals.iter().filter(|&&v| v < tol).count();
        return Ok(SectorKernel {
            h,
            largest_zero: vals[..h].last().copied(),
            smallest_nonzero: vals.get(h).copied(),
        });
    }
    let op = HamiltonianOperator::new(qb, f);
    let cfg = LanczosConfig {
        seed: seed ^ f as u64,
        ..LanczosConfig::default()
    };
    let est = eigen::kernel_dim_lanczos(&op, tol, &cfg);
    Ok(SectorKernel {
        h: est.dim,
        largest_zero: est.largest_zero,
        smallest_nonzero: est.smallest_nonzero,
    })
}

pub fn kernel_dims_numeric(qb: &SuperchargeBlocks, tol: f64, seed: u64) -> Result<GroundStateReport> {
    let kernels: Vec<SectorKernel> = (0..qb.dims().len())
        .into_par_iter()
        .map(|f| sector_kernel(qb, f, tol, seed))
        .collect::<Result<_>>()?;
    let per_sector = kernels
        .iter()
        .enumerate()
        .map(|(f, k)| SectorCount {
            f,
            dim: qb.dims()[f],
            h: k.h,
        })
        .collect();
    let mut report = GroundStateReport::from_counts(per_sector, Method::NumericKernel);
    let largest_zero = kernels
        .iter()
        .filter_map(|k| k.largest_zero)
        .fold(None, |acc: Option<f64>, z| Some(acc.map_or(z, |a| a.max(z))));
    let smallest_nonzero = kernels
        .iter()
        .filter_map(|k| k.smallest_nonzero)
        .fold(None, |acc: Option<f64>, z| Some(acc.map_or(z, |a| a.min(z))));
    if let (Some(z), Some(nz)) = (largest_zero, smallest_nonzero) {
        let ratio = z.abs().max(0.0) / nz;
        report.gap_ratio = Some(ratio);
        if ratio > GAP_AMBIGUITY_RATIO {
            report.warnings.push(format!(
                "gap ambiguity: largest zero level {z:.3e} vs smallest nonzero {nz:.3e}"
            ));
        }
    } else {
        report.gap_ratio = Some(0.0);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictedCount {
    Exact(u64),
    ZeroOrOne,
}

impl PredictedCount {
    pub fn matches(&self, total: usize) -> bool {
        match self {
            PredictedCount::Exact(v) => *v == total as u64,
            PredictedCount::ZeroOrOne => total <= 1,
        }
    }
}

impl fmt::Display for PredictedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictedCount::Exact(v) => write!(f, "{v}"),
            PredictedCount::ZeroOrOne => f.write_str("0 or 1"),
        }
    }
}

/// Octagon-square lattice degeneracy: 1 on the plane, `2^l` on the cylinder
/// periodic along `m`, `2^m + 2^l - 1` on the torus.
pub fn predicted_octagon_count(m: usize, l: usize, boundary: BoundarySpec) -> PredictedCount {
    let pow = |k: usize| 1u64.checked_shl(k as u32).unwrap_or(u64::MAX);
    match boundary {
        BoundarySpec::Torus => PredictedCount::Exact(pow(m) + pow(l) - 1),
        BoundarySpec::Cylinder {
            open_axis: Axis::Second,
        } => PredictedCount::Exact(pow(l)),
        BoundarySpec::Cylinder {
            open_axis: Axis::First,
        } => PredictedCount::Exact(pow(m)),
        BoundarySpec::Open => PredictedCount::Exact(1),
    }
}

/// Square-lattice cylinder periodic along `(m,-m)` with open width `n`:
/// `4^(q+1)` when `m = 3p` and `n` is `3q+2` or `3q+3`, otherwise 0 or 1.
pub fn predicted_square_cylinder_count(m: usize, n: usize) -> PredictedCount {
    if m % 3 == 0 && n >= 2 && (n % 3 == 2 || n % 3 == 0) {
        let q = if n % 3 == 2 { (n - 2) / 3 } else { (n - 3) / 3 };
        PredictedCount::Exact(4u64.pow(q as u32 + 1))
    } else {
        PredictedCount::ZeroOrOne
    }
}

/// Prediction for the lattice's family, when one is known.
pub fn predicted_count(g: &LatticeGraph) -> Option<PredictedCount> {
    match g.family() {
        Family::OctagonSquare {
            m, l, boundary, defects,
        } if defects.is_empty() => Some(predicted_octagon_count(*m, *l, *boundary)),
        Family::SquareDiagonal {
            m,
            n,
            boundary: BoundarySpec::Cylinder { open_axis: Axis::Second },
        } => Some(predicted_square_cylinder_count(*m, *n)),
        Family::SquareDiagonal {
            m,
            n,
            boundary: BoundarySpec::Cylinder { open_axis: Axis::First },
        } => Some(predicted_square_cylinder_count(*n, *m)),
        Family::SquareDiagonal {
            boundary: BoundarySpec::Open,
            ..
        } => Some(PredictedCount::ZeroOrOne),
        _ => None,
    }
}

/// True iff every sector holding ground states sits at quarter filling.
pub fn quarter_filling_check(report: &GroundStateReport, g: &LatticeGraph) -> bool {
    let n = g.n_sites();
    report
        .per_sector
        .iter()
        .filter(|s| s.h > 0)
        .all(|s| 4 * s.f == n)
}

/// True iff every ground-state sector obeys `n/5 <= f <= n/4`.
pub fn filling_window_check(report: &GroundStateReport, n_sites: usize) -> bool {
    report
        .per_sector
        .iter()
        .filter(|s| s.h > 0)
        .all(|s| 5 * s.f >= n_sites && 4 * s.f <= n_sites)
}
