//! Small dense linear algebra on top of `nalgebra`.
//!
//! Symmetric eigenproblems use cyclic Jacobi rotations; the matrices here are
//! at most about 10×10, where Jacobi is accurate and simple.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm (relative to the full norm) at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V diag(λ) Vᵀ` of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub eigenvalues: DVector<f64>,
    /// Columns are eigenvectors.
    pub eigenvectors: DMatrix<f64>,
}

impl SymmetricEigen {
    /// Rebuilds `V f(Λ) Vᵀ`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let v = &self.eigenvectors;
        let d = DMatrix::from_diagonal(&self.eigenvalues.map(f));
        v * d * v.transpose()
    }
}

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver. The input must be square; only its symmetric
/// part is used.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> Result<SymmetricEigen> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Parameter(format!("eigenproblem needs a square matrix, got {}x{}", n, a.ncols())));
    }
    let mut a = (a + a.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.norm().max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_TOLERANCE * scale {
            return Ok(SymmetricEigen { eigenvalues: a.diagonal(), eigenvectors: v });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if off_diagonal_norm(&a) <= JACOBI_TOLERANCE * scale {
        Ok(SymmetricEigen { eigenvalues: a.diagonal(), eigenvectors: v })
    } else {
        Err(Error::Singular("Jacobi iteration did not converge".into()))
    }
}

/// `A^{1/2}` and `A^{-1/2}` of a symmetric positive-definite matrix.
pub fn spd_sqrt_and_inv_sqrt(a: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let eig = jacobi_eigen(a)?;
    let min = eig.eigenvalues.min();
    if !(min > 0.0) {
        return Err(Error::Singular(format!("matrix is not positive definite (smallest eigenvalue {min:e})")));
    }
    Ok((eig.map(f64::sqrt), eig.map(|l| 1.0 / l.sqrt())))
}

/// Lower Cholesky factor, or an error if `a` is not positive definite.
pub fn cholesky_lower(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    a.clone()
        .cholesky()
        .map(|c| c.l())
        .ok_or_else(|| Error::Singular("matrix is not positive definite".into()))
}

/// `ln |A|` of a positive-definite matrix.
pub fn ln_det_spd(a: &DMatrix<f64>) -> Result<f64> {
    let l = cholesky_lower(a)?;
    Ok(2.0 * l.diagonal().iter().map(|d| d.ln()).sum::<f64>())
}

pub fn inverse(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    a.clone().try_inverse().ok_or_else(|| Error::Singular("matrix is not invertible".into()))
}
