//! Low-lying spectra of the Hamiltonian blocks and the supersymmetric
//! pairing of nonzero levels across adjacent fermion sectors.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{self, LanczosConfig, DENSE_MAX_DIM};
use crate::error::Result;
use crate::susy::{build_hamiltonian_block, SuperchargeBlocks};

/// Eigenvalues below this are treated as zero modes.
pub const SPECTRUM_ZERO_TOL: f64 = 1e-9;

/// Relative tolerance for matching a level with its superpartner.
pub const PAIRING_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorSpectrum {
    pub f: usize,
    pub dim: usize,
    /// Lowest eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// True when `eigenvalues` is the whole spectrum of the block.
    pub complete: bool,
}

impl SectorSpectrum {
    pub fn zero_modes(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&e| e.abs() < tol).count()
    }

    /// Smallest eigenvalue above `tol`, if one was computed.
    pub fn gap(&self, tol: f64) -> Option<f64> {
        self.eigenvalues.iter().copied().find(|&e| e >= tol)
    }
}

/// Lowest `k` eigenvalues of every `H_f` (`None` asks for all of them, which
/// is only possible for sectors the dense solver accepts).
pub fn sector_spectra(qb: &SuperchargeBlocks, k: Option<usize>, cfg: &LanczosConfig) -> Result<Vec<SectorSpectrum>> {
    (0..qb.dims().len())
        .into_par_iter()
        .map(|f| {
            let h = build_hamiltonian_block(qb, f)?;
            let dim = h.n_rows();
            let want = k.unwrap_or(dim).min(dim);
            if dim <= DENSE_MAX_DIM {
                let mut vals = eigen::dense_eigenvalues(&h);
                vals.truncate(want);
                Ok(SectorSpectrum {
                    f,
                    dim,
                    complete: want == dim,
                    eigenvalues: vals,
                })
            } else {
                if k.is_none() {
                    return Err(crate::Error::capacity(
                        "sector dimension for a full spectrum",
                        dim as u64,
                        DENSE_MAX_DIM as u64,
                    ));
                }
                let vals = eigen::lowest_eigenvalues(&h, want, cfg);
                Ok(SectorSpectrum {
                    f,
                    dim,
                    complete: vals.len() == dim,
                    eigenvalues: vals,
                })
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Doublet {
    /// Lower fermion number of the pair; the partner lives in `f + 1`.
    pub f: usize,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    pub doublets: Vec<Doublet>,
    /// Nonzero levels without a partner, as `(f, value)`.
    pub unpaired: Vec<(usize, f64)>,
    pub min_eigenvalue: Option<f64>,
    pub zero_modes: Vec<usize>,
}

impl PairingReport {
    pub fn passed(&self) -> bool {
        self.unpaired.is_empty() && self.min_eigenvalue.map_or(true, |m| m >= -1e-12)
    }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

/// Matches every nonzero level of sector `f` either with a level of `f - 1`
/// (already consumed) or with one of `f + 1`. Needs complete spectra.
pub fn susy_pairing(spectra: &[SectorSpectrum], zero_tol: f64, rel_tol: f64) -> PairingReport {
    let mut doublets = Vec::new();
    let mut unpaired = Vec::new();
    let min_eigenvalue = spectra
        .iter()
        .flat_map(|s| s.eigenvalues.iter().copied())
        .min_by(|a, b| a.total_cmp(b));
    let zero_modes = spectra.iter().map(|s| s.zero_modes(zero_tol)).collect();

    let nonzero = |s: &SectorSpectrum| -> Vec<f64> {
        s.eigenvalues.iter().copied().filter(|e| e.abs() >= zero_tol).collect()
    };
    // levels of sector f still waiting for a partner above
    let mut pending: Vec<f64> = spectra.first().map(nonzero).unwrap_or_default();
    for f in 0..spectra.len() {
        let mut above: Vec<Option<f64>> = spectra.get(f + 1).map(nonzero).unwrap_or_default().into_iter().map(Some).collect();
        let mut j = 0;
        for &v in &pending {
            // both lists ascending: skip partners that are already too small
            while j < above.len() && above[j].map_or(true, |a| a < v && !close(a, v, rel_tol)) {
                j += 1;
            }
            match above.get(j).copied().flatten() {
                Some(a) if close(a, v, rel_tol) => {
                    doublets.push(Doublet { f, lower: v, upper: a });
                    above[j] = None;
                    j += 1;
                }
                _ => unpaired.push((f, v)),
            }
        }
        // skipped entries of `above` that were passed over stay available
        pending = above.into_iter().flatten().collect();
    }
    PairingReport {
        doublets,
        unpaired,
        min_eigenvalue,
        zero_modes,
    }
}
