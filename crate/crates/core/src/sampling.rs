//! Random matrices: Bartlett Wishart draws with fractional degrees of
//! freedom, matrix-variate Beta type I, and matrix normal noise.
//!
//! All streams are ChaCha8 so that a `(seed, stream)` pair reproduces the same
//! draws on every platform.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg;

/// How many times a draw with a non positive-definite intermediate is
/// repeated before giving up.
pub const MAX_RETRIES: usize = 16;

/// Deterministic RNG for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Bartlett sampler for `W_m(ν, I)` with real `ν > m − 1`.
#[derive(Clone, Debug)]
pub struct WishartSampler {
    m: usize,
    diagonal: Vec<ChiSquared<f64>>,
}

impl WishartSampler {
    pub fn new(m: usize, dof: f64) -> Result<Self> {
        if !(dof > m as f64 - 1.0) {
            return Err(Error::Parameter(format!("Wishart degrees of freedom {dof} must exceed m - 1 = {}", m - 1)));
        }
        let diagonal = (0..m)
            .map(|i| ChiSquared::new(dof - i as f64).map_err(|e| Error::Parameter(e.to_string())))
            .collect::<Result<_>>()?;
        Ok(Self { m, diagonal })
    }

    /// Lower-triangular Bartlett factor `A` with `W = A Aᵀ`.
    pub fn factor<R: Rng + ?Sized>(&self, rng: &mut R) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.m, self.m);
        for i in 0..self.m {
            a[(i, i)] = self.diagonal[i].sample(rng).sqrt();
            for j in 0..i {
                a[(i, j)] = rng.sample(StandardNormal);
            }
        }
        a
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DMatrix<f64> {
        let a = self.factor(rng);
        &a * a.transpose()
    }
}

/// Matrix Beta type I with density proportional to
/// `|Y|^{α − (m+1)/2} |I − Y|^{β − (m+1)/2}` on `0 < Y < I`.
///
/// Drawn as `S^{-1/2} W₁ S^{-1/2}` with `W₁ ~ W_m(2α, I)`, `W₂ ~ W_m(2β, I)`
/// and `S = W₁ + W₂`.
#[derive(Clone, Debug)]
pub struct MatrixBetaSampler {
    first: WishartSampler,
    second: WishartSampler,
}

impl MatrixBetaSampler {
    pub fn new(m: usize, alpha: f64, beta: f64) -> Result<Self> {
        let half = 0.5 * (m as f64 - 1.0);
        if !(alpha > half && beta > half) {
            return Err(Error::Domain(format!("matrix Beta({alpha}, {beta}) needs both parameters > {half}")));
        }
        Ok(Self { first: WishartSampler::new(m, 2.0 * alpha)?, second: WishartSampler::new(m, 2.0 * beta)? })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<DMatrix<f64>> {
        for _ in 0..MAX_RETRIES {
            let w1 = self.first.sample(rng);
            let w2 = self.second.sample(rng);
            let total = &w1 + &w2;
            if let Ok((_, inv_sqrt)) = linalg::spd_sqrt_and_inv_sqrt(&total) {
                return Ok(&inv_sqrt * w1 * &inv_sqrt);
            }
        }
        Err(Error::Sampler(format!("no positive-definite W1 + W2 in {MAX_RETRIES} attempts")))
    }
}

/// `rows × cols` matrix of independent standard normals.
pub fn standard_normal_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wishart_mean_is_dof_times_identity() {
        let mut rng = stream_rng(3, 0);
        let sampler = WishartSampler::new(3, 4.5).unwrap();
        let n = 20_000;
        let mut acc = DMatrix::<f64>::zeros(3, 3);
        for _ in 0..n {
            acc += sampler.sample(&mut rng);
        }
        acc /= n as f64;
        // Var(W_ii) = 2ν, so the mean has SE sqrt(9/20000) ≈ 0.021
        for i in 0..3 {
            assert!((acc[(i, i)] - 4.5).abs() < 0.1, "{acc}");
            for j in 0..i {
                assert!(acc[(i, j)].abs() < 0.1);
            }
        }
    }

    #[test]
    fn matrix_beta_mean() {
        // E[Y] = α/(α+β) I for the matrix Beta type I
        let (alpha, beta) = (1.3, 2.1);
        let sampler = MatrixBetaSampler::new(2, alpha, beta).unwrap();
        let mut rng = stream_rng(5, 1);
        let n = 20_000;
        let mut acc = DMatrix::<f64>::zeros(2, 2);
        for _ in 0..n {
            let y = sampler.sample(&mut rng).unwrap();
            let eig = linalg::jacobi_eigen(&y).unwrap();
            assert!(eig.eigenvalues.iter().all(|&l| l > 0.0 && l < 1.0));
            acc += y;
        }
        acc /= n as f64;
        let expected = alpha / (alpha + beta);
        assert!((acc[(0, 0)] - expected).abs() < 0.01);
        assert!((acc[(1, 1)] - expected).abs() < 0.01);
        assert!(acc[(0, 1)].abs() < 0.01);
    }

    #[test]
    fn parameter_checks() {
        assert!(WishartSampler::new(3, 1.9).is_err());
        assert!(MatrixBetaSampler::new(2, 0.5, 1.0).is_err());
        assert!(MatrixBetaSampler::new(1, 0.2, 0.3).is_ok());
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<f64> = (0..4).map(|_| stream_rng(9, 2).gen()).collect();
        let b: Vec<f64> = (0..4).map(|_| stream_rng(9, 2).gen()).collect();
        assert_eq!(a, b);
        let x: f64 = stream_rng(9, 2).gen();
        let y: f64 = stream_rng(9, 3).gen();
        assert_ne!(x, y);
    }
}
