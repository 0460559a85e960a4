//! Floating-point spectra of Hamiltonian blocks: dense symmetric solves for
//! small sectors, Lanczos with full reorthogonalization and explicit
//! deflation for large ones.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sparse::SparseIntMatrix;

/// Largest sector handled by the dense solver.
pub const DENSE_MAX_DIM: usize = 2000;

/// Default numerical zero threshold.
pub const ZERO_TOL: f64 = 1e-10;

/// A real symmetric operator applied as a black box.
pub trait SymmetricOperator: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

impl SymmetricOperator for SparseIntMatrix {
    fn dim(&self) -> usize {
        self.n_rows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matvec(x, y);
    }
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn dense_eigenvalues(h: &SparseIntMatrix) -> Vec<f64> {
    if h.n_rows() == 0 {
        return Vec::new();
    }
    let eig = SymmetricEigen::new(h.to_dense());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    // twice is enough for numerical orthogonality
    for _ in 0..2 {
        for b in basis {
            let c = dot(v, b);
            axpy(-c, b, v);
        }
    }
}

#[derive(Debug, Clone)]
pub struct LanczosConfig {
    pub krylov_dim: usize,
    pub max_restarts: usize,
    pub residual_tol: f64,
    pub seed: u64,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        LanczosConfig {
            krylov_dim: 120,
            max_restarts: 60,
            residual_tol: 1e-9,
            seed: 0x5eed,
        }
    }
}

/// Lowest eigenpair of `op` restricted to the orthogonal complement of
/// `deflated`. Restarted Lanczos with full reorthogonalization.
pub fn lowest_eigenpair(
    op: &dyn SymmetricOperator,
    deflated: &[Vec<f64>],
    cfg: &LanczosConfig,
    rng: &mut ChaCha8Rng,
) -> Option<(f64, Vec<f64>, f64)> {
    let n = op.dim();
    if deflated.len() >= n {
        return None;
    }
    let mut start: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    project_out(&mut start, deflated);
    if normalize(&mut start) == 0.0 {
        return None;
    }
    let k_max = cfg.krylov_dim.min(n - deflated.len());
    let mut best = None;
    for _ in 0..cfg.max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![0.0; n];
        for j in 0..k_max {
            op.apply(&basis[j], &mut w);
            project_out(&mut w, deflated);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            project_out(&mut w, &basis);
            project_out(&mut w, deflated);
            let b = normalize(&mut w);
            if j + 1 == k_max || b < 1e-12 {
                break;
            }
            beta.push(b);
            basis.push(w.clone());
        }
        let k = alpha.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (idx, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let y: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
        let mut ritz = vec![0.0; n];
        for (i, b) in basis.iter().enumerate() {
            axpy(y[i], b, &mut ritz);
        }
        project_out(&mut ritz, deflated);
        normalize(&mut ritz);
        op.apply(&ritz, &mut w);
        project_out(&mut w, deflated);
        let rq = dot(&w, &ritz);
        axpy(-rq, &ritz, &mut w);
        let residual = dot(&w, &w).sqrt();
        best = Some((rq, ritz.clone(), residual));
        if residual < cfg.residual_tol || k < k_max {
            break;
        }
        start = ritz;
    }
    best
}

/// The `k` lowest eigenvalues by repeated lowest-pair extraction with
/// deflation, ascending.
pub fn lowest_eigenvalues(op: &dyn SymmetricOperator, k: usize, cfg: &LanczosConfig) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut vals = Vec::new();
    while vals.len() < k {
        match lowest_eigenpair(op, &found, cfg, &mut rng) {
            Some((lambda, v, _)) => {
                vals.push(lambda);
                found.push(v);
            }
            None => break,
        }
    }
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Kernel dimension estimate from an iterative solver.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelEstimate {
    pub dim: usize,
    /// Largest eigenvalue counted as zero, if any.
    pub largest_zero: Option<f64>,
    /// Smallest eigenvalue above the threshold, if one was seen.
    pub smallest_nonzero: Option<f64>,
}

/// Counts eigenvalues below `tol` by deflating converged null vectors until
/// the lowest remaining Ritz value clears the threshold.
pub fn kernel_dim_lanczos(op: &dyn SymmetricOperator, tol: f64, cfg: &LanczosConfig) -> KernelEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut largest_zero: Option<f64> = None;
    loop {
        match lowest_eigenpair(op, &found, cfg, &mut rng) {
            Some((lambda, v, _)) if lambda < tol => {
                largest_zero = Some(largest_zero.map_or(lambda, |z: f64| z.max(lambda)));
                found.push(v);
            }
            Some((lambda, _, _)) => {
                return KernelEstimate {
                    dim: found.len(),
                    largest_zero,
                    smallest_nonzero: Some(lambda),
                }
            }
            None => {
                return KernelEstimate {
                    dim: found.len(),
                    largest_zero,
                    smallest_nonzero: None,
                }
            }
        }
    }
}
