//! Spectra of real symmetric operators: dense decomposition up to a size
//! threshold, Lanczos ground state above it.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sparse::RealOperator;

pub const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
pub struct EigenOptions {
    pub want_vectors: bool,
    /// Largest dimension handled by the dense solver.
    pub dense_threshold: usize,
    pub lanczos_tol: f64,
    pub lanczos_max_iter: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            want_vectors: false,
            dense_threshold: 2000,
            lanczos_tol: 1e-12,
            lanczos_max_iter: 500,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumResult {
    /// Ascending. Only the ground state when the iterative path was taken.
    pub eigenvalues: Vec<f64>,
    /// Column `i` belongs to `eigenvalues[i]`.
    #[serde(skip)]
    pub eigenvectors: Option<DMatrix<f64>>,
    pub dense: bool,
}

impl SpectrumResult {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }
}

fn check_symmetric(h: &RealOperator) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let (deviation, row, col) = h.hermiticity_defect();
    if deviation > HERMITICITY_TOL {
        return Err(Error::NonHermitian { row, col, deviation });
    }
    Ok(())
}

pub fn eigensolve(h: &RealOperator, opts: &EigenOptions) -> Result<SpectrumResult> {
    check_symmetric(h)?;
    if h.rows() <= opts.dense_threshold {
        Ok(dense_eigensolve(h, opts.want_vectors))
    } else {
        let (e0, v0) = lanczos_ground_state(h, opts.lanczos_tol, opts.lanczos_max_iter)?;
        Ok(SpectrumResult {
            eigenvalues: vec![e0],
            eigenvectors: opts
                .want_vectors
                .then(|| DMatrix::from_column_slice(v0.len(), 1, &v0)),
            dense: false,
        })
    }
}

fn dense_eigensolve(h: &RealOperator, want_vectors: bool) -> SpectrumResult {
    let dim = h.rows();
    let eig = SymmetricEigen::new(h.to_dense());
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = want_vectors.then(|| {
        let mut m = DMatrix::zeros(dim, dim);
        for (new, &old) in order.iter().enumerate() {
            m.set_column(new, &eig.eigenvectors.column(old));
        }
        m
    });
    SpectrumResult {
        eigenvalues,
        eigenvectors,
        dense: true,
    }
}

/// Lowest eigenpair by Lanczos with full reorthogonalization. The start vector
/// comes from a fixed seed, so results are reproducible.
pub fn lanczos_ground_state(h: &RealOperator, tol: f64, max_iter: usize) -> Result<(f64, Vec<f64>)> {
    let dim = h.rows();
    if dim == 0 {
        return Err(Error::Internal("empty operator".into()));
    }
    if dim == 1 {
        return Ok((h.get(0, 0), vec![1.0]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a9c_2b3d);
    let mut q = DVector::from_fn(dim, |_, _| rng.gen::<f64>() - 0.5);
    q.normalize_mut();

    let mut basis: Vec<DVector<f64>> = vec![q];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let scale = h.max_abs().max(1.0);
    let mut last_residual = f64::INFINITY;
    let steps = max_iter.min(dim);

    for k in 0..steps {
        let qk = &basis[k];
        let mut w = DVector::from_vec(h.apply(qk.as_slice()));
        let alpha = qk.dot(&w);
        alphas.push(alpha);
        // two passes of Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for v in &basis {
                let c = v.dot(&w);
                w.axpy(-c, v, 1.0);
            }
        }
        let beta = w.norm();

        let (theta, y) = tridiagonal_lowest(&alphas, &betas);
        let residual = beta * y[k].abs();
        last_residual = residual;
        // an exhausted Krylov space (beta ~ 0) is an invariant subspace
        if residual <= tol * scale || beta <= 1e3 * f64::EPSILON * scale {
            let mut x = DVector::zeros(dim);
            for (v, &c) in basis.iter().zip(y.iter()) {
                x.axpy(c, v, 1.0);
            }
            x.normalize_mut();
            return Ok((theta, x.data.as_vec().clone()));
        }
        if k + 1 == steps {
            break;
        }
        betas.push(beta);
        basis.push(w / beta);
    }
    Err(Error::NoConvergence {
        iterations: steps,
        residual: last_residual,
    })
}

/// Lowest eigenpair of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal.
fn tridiagonal_lowest(diag: &[f64], off: &[f64]) -> (f64, DVector<f64>) {
    let m = diag.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let imin = eig.eigenvalues.imin();
    (eig.eigenvalues[imin], eig.eigenvectors.column(imin).into_owned())
}
