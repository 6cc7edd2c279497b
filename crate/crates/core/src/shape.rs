//! Affine configurations of landmark data and the Pearson VII configuration
//! density in its infinite-series and terminating (polynomial) forms.
//!
//! A figure of `N` landmarks in `K` dimensions is Helmertized to an
//! `(N−1)×K` matrix `Y`, and its configuration is `U = [I_K; Y₂Y₁⁻¹]`. For a
//! location `μ` and scale `Σ` the density of `U` is
//!
//! ```text
//! A · ₁P₁((b)_t d^{−b−t} : a; c; X)
//!   = A · (d − tr X)^{−b} ₁P₁((b)_t (d − tr X)^{−t} : c − a; c; −X)
//! ```
//!
//! with `a = (N−1)/2`, `c = K/2`, `b = s − K(N−1)/2`,
//! `d = 1 + tr(μ'Σ⁻¹μ)/R` and `X = (1/R) U'Σ⁻¹μμ'Σ⁻¹U (U'Σ⁻¹U)⁻¹`. The second
//! form is a polynomial of degree `K(N−K−1)/2` when `N − K − 1` is even.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::{termination_bound, SeriesResult, TruncationPolicy};
use crate::kummer::{pearson_lhs, pearson_rhs, PearsonSeriesParams};
use crate::linalg;
use crate::partition::mv_gamma_ln;
use crate::zonal::SpectralInput;

/// Eigenvalues of `X` this far below zero (relative to its scale) are
/// rounding noise and clamped.
const EIGEN_CLAMP: f64 = 1e-12;

/// `N` landmarks (rows) in `K` dimensions (columns), with `N − K − 1 ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LandmarkSet {
    coords: DMatrix<f64>,
}

impl LandmarkSet {
    pub fn new(coords: DMatrix<f64>) -> Result<Self> {
        let (n, k) = coords.shape();
        if k == 0 || n < k + 2 {
            return Err(Error::Parameter(format!("need N - K - 1 >= 1, got N = {n}, K = {k}")));
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("landmark coordinates must be finite".into()));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &DMatrix<f64> {
        &self.coords
    }

    pub fn landmarks(&self) -> usize {
        self.coords.nrows()
    }

    pub fn dimension(&self) -> usize {
        self.coords.ncols()
    }
}

/// The `(N−1)×N` Helmert sub-matrix: row `j` (1-based) is
/// `(−h_j, …, −h_j, j·h_j, 0, …, 0)` with `h_j = (j(j+1))^{−1/2}` and `j`
/// leading entries equal to `−h_j`.
pub fn helmert_matrix(n: usize) -> DMatrix<f64> {
    assert!(n >= 2, "Helmert matrix needs at least two landmarks");
    DMatrix::from_fn(n - 1, n, |row, col| {
        let j = (row + 1) as f64;
        let h = 1.0 / (j * (j + 1.0)).sqrt();
        match col.cmp(&(row + 1)) {
            std::cmp::Ordering::Less => -h,
            std::cmp::Ordering::Equal => j * h,
            std::cmp::Ordering::Greater => 0.0,
        }
    })
}

/// Removes location: `H L` with the Helmert sub-matrix `H`.
pub fn helmert_reduce(landmarks: &LandmarkSet) -> DMatrix<f64> {
    helmert_matrix(landmarks.landmarks()) * landmarks.coords()
}

/// Affine-invariant coordinates `U = [I_K; Y₂ Y₁⁻¹]`.
pub fn configuration_coords(y: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (rows, k) = y.shape();
    if rows <= k {
        return Err(Error::Parameter(format!("configuration needs more than {k} rows, got {rows}")));
    }
    let top = y.rows(0, k).into_owned();
    let inv = top
        .clone()
        .try_inverse()
        .filter(|m| m.iter().all(|v| v.is_finite()))
        .ok_or_else(|| Error::Singular("leading K x K block of the configuration is singular".into()))?;
    // reject numerically singular blocks as well
    if (&top * &inv - DMatrix::identity(k, k)).norm() > 1e-8 {
        return Err(Error::Singular("leading K x K block of the configuration is ill-conditioned".into()));
    }
    let mut u = DMatrix::zeros(rows, k);
    u.rows_mut(0, k).copy_from(&DMatrix::identity(k, k));
    u.rows_mut(k, rows - k).copy_from(&(y.rows(k, rows - k) * inv));
    Ok(u)
}

/// Location/scale model `(N, K, μ, Σ, s, R)` of the Helmertized figures.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigurationModel {
    pub landmarks: usize,
    pub dimension: usize,
    /// `(N−1)×K`.
    pub mu: DMatrix<f64>,
    /// `(N−1)×(N−1)` symmetric positive definite.
    pub sigma: DMatrix<f64>,
    pub s: f64,
    pub r: f64,
}

impl ConfigurationModel {
    pub fn new(mu: DMatrix<f64>, sigma: DMatrix<f64>, s: f64, r: f64) -> Result<Self> {
        let (rows, k) = mu.shape();
        let n = rows + 1;
        if k == 0 || n < k + 2 {
            return Err(Error::Parameter(format!("need N - K - 1 >= 1, got N = {n}, K = {k}")));
        }
        if sigma.shape() != (rows, rows) {
            return Err(Error::Parameter(format!("Sigma must be {rows}x{rows}, got {:?}", sigma.shape())));
        }
        if (&sigma - sigma.transpose()).norm() > 1e-12 * sigma.norm() {
            return Err(Error::Parameter("Sigma must be symmetric".into()));
        }
        linalg::cholesky_lower(&sigma)?;
        let floor = (k * rows) as f64 / 2.0;
        if !(s > floor) {
            return Err(Error::Parameter(format!("need s > K(N-1)/2 = {floor}, got {s}")));
        }
        if !(r > 0.0) {
            return Err(Error::Parameter(format!("need R > 0, got {r}")));
        }
        Ok(Self { landmarks: n, dimension: k, mu, sigma, s, r })
    }

    /// Same model with `Σ = I`.
    pub fn isotropic(mu: DMatrix<f64>, s: f64, r: f64) -> Result<Self> {
        let rows = mu.nrows();
        Self::new(mu, DMatrix::identity(rows, rows), s, r)
    }

    pub fn with_mu(&self, mu: DMatrix<f64>) -> Result<Self> {
        Self::new(mu, self.sigma.clone(), self.s, self.r)
    }

    /// `b = s − K(N−1)/2`.
    pub fn b(&self) -> f64 {
        self.s - (self.dimension * (self.landmarks - 1)) as f64 / 2.0
    }
}

/// Everything the density needs for one configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigParams {
    pub landmarks: usize,
    pub dimension: usize,
    /// `ln A` of the normalizing constant.
    pub ln_a: f64,
    pub a: f64,
    pub c: f64,
    pub b: f64,
    pub d: f64,
    /// Latent roots of `X`.
    pub x: SpectralInput,
}

impl ConfigParams {
    pub fn series_params(&self) -> PearsonSeriesParams {
        PearsonSeriesParams { a: self.a, c: self.c, b: self.b, d: self.d }
    }
}

/// The parts of [`model_params`] that depend on `U` and `Σ` but not on `μ`,
/// so likelihoods over many `μ` reuse them.
#[derive(Clone, Debug)]
pub struct PreparedConfiguration {
    landmarks: usize,
    dimension: usize,
    /// `Σ⁻¹U`, `(N−1)×K`.
    sigma_inv_u: DMatrix<f64>,
    /// `(U'Σ⁻¹U)^{−1/2}`.
    q_inv_sqrt: DMatrix<f64>,
    ln_a: f64,
}

impl PreparedConfiguration {
    pub fn new(sigma: &DMatrix<f64>, u: &DMatrix<f64>) -> Result<Self> {
        let (rows, k) = u.shape();
        if sigma.shape() != (rows, rows) {
            return Err(Error::Parameter(format!("Sigma is {:?} but U has {rows} rows", sigma.shape())));
        }
        let n = rows + 1;
        let chol = sigma.clone().cholesky().ok_or_else(|| Error::Singular("Sigma is not positive definite".into()))?;
        let sigma_inv_u = chol.solve(u);
        let q = u.transpose() * &sigma_inv_u;
        let ln_det_q = linalg::ln_det_spd(&q).map_err(|_| Error::Singular("U is rank deficient".into()))?;
        let (_, q_inv_sqrt) = linalg::spd_sqrt_and_inv_sqrt(&q)?;
        let ln_det_sigma = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>();

        let q_dim = (n - k - 1) as f64;
        let ln_a = mv_gamma_ln(k, (n - 1) as f64 / 2.0)?.log_magnitude
            - (k as f64 * q_dim / 2.0) * std::f64::consts::PI.ln()
            - (k as f64 / 2.0) * ln_det_sigma
            - ((n - 1) as f64 / 2.0) * ln_det_q
            - mv_gamma_ln(k, k as f64 / 2.0)?.log_magnitude;
        Ok(Self { landmarks: n, dimension: k, sigma_inv_u, q_inv_sqrt, ln_a })
    }

    pub fn ln_a(&self) -> f64 {
        self.ln_a
    }

    /// Assembles `(A, a, c, b, d, X)` for a model sharing this `Σ`.
    ///
    /// `mu_quad` is `tr(μ'Σ⁻¹μ)`.
    pub fn params(&self, mu: &DMatrix<f64>, mu_quad: f64, s: f64, r: f64) -> Result<ConfigParams> {
        let (n, k) = (self.landmarks, self.dimension);
        if mu.shape() != (n - 1, k) {
            return Err(Error::Parameter(format!("mu must be {}x{k}, got {:?}", n - 1, mu.shape())));
        }
        // U'Σ⁻¹μ, then the symmetric form Q^{−1/2} P Q^{−1/2} similar to X
        let cross = self.sigma_inv_u.transpose() * mu;
        let half = &self.q_inv_sqrt * cross;
        let x_sym = (&half * half.transpose()) / r;
        let eig = linalg::jacobi_eigen(&x_sym)?;
        let scale = eig.eigenvalues.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let mut roots = Vec::with_capacity(k);
        for &l in eig.eigenvalues.iter() {
            if l < -EIGEN_CLAMP * scale.max(1.0) {
                return Err(Error::Domain(format!("X has a negative latent root {l:e}")));
            }
            roots.push(l.max(0.0));
        }
        let x = SpectralInput::new(roots)?;
        let d = 1.0 + mu_quad / r;
        let b = s - (k * (n - 1)) as f64 / 2.0;
        Ok(ConfigParams {
            landmarks: n,
            dimension: k,
            ln_a: self.ln_a,
            a: (n - 1) as f64 / 2.0,
            c: k as f64 / 2.0,
            b,
            d,
            x,
        })
    }
}

/// `tr(μ'Σ⁻¹μ)`.
pub fn mu_quadratic_form(sigma: &DMatrix<f64>, mu: &DMatrix<f64>) -> Result<f64> {
    let chol = sigma.clone().cholesky().ok_or_else(|| Error::Singular("Sigma is not positive definite".into()))?;
    Ok((mu.transpose() * chol.solve(mu)).trace())
}

/// Density parameters for configuration `U` under `model`.
pub fn model_params(model: &ConfigurationModel, u: &DMatrix<f64>) -> Result<ConfigParams> {
    if u.shape() != (model.landmarks - 1, model.dimension) {
        return Err(Error::Parameter(format!(
            "U must be {}x{}, got {:?}",
            model.landmarks - 1,
            model.dimension,
            u.shape()
        )));
    }
    let prepared = PreparedConfiguration::new(&model.sigma, u)?;
    let quad = mu_quadratic_form(&model.sigma, &model.mu)?;
    prepared.params(&model.mu, quad, model.s, model.r)
}

/// `K(N−K−1)/2` when `N − K − 1` is even (the density terminates), nothing
/// when it is odd.
pub fn polynomial_degree(landmarks: usize, dimension: usize) -> Option<u32> {
    if landmarks < dimension + 2 {
        return None;
    }
    let gap = landmarks - dimension - 1;
    gap.is_multiple_of(2).then(|| (dimension * gap / 2) as u32)
}

/// Which of the two equal forms of the density to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityForm {
    Series,
    Polynomial,
}

/// `A ₁P₁((b)_t d^{−b−t} : a; c; X)`, summed under `policy`.
pub fn density_series(params: &ConfigParams, policy: &TruncationPolicy) -> Result<SeriesResult> {
    let series = pearson_lhs(&params.series_params(), &params.x, policy)?;
    Ok(series.scaled(params.ln_a.exp()))
}

/// `A (d − tr X)^{−b} ₁P₁((b)_t (d − tr X)^{−t} : c − a; c; −X)`, summed exactly.
pub fn density_polynomial(params: &ConfigParams) -> Result<SeriesResult> {
    let (n, k) = (params.landmarks, params.dimension);
    let degree = polynomial_degree(n, k).ok_or(Error::Parity { n, k })?;
    debug_assert_eq!(termination_bound(params.c - params.a, k), Some(degree));
    let series = pearson_rhs(&params.series_params(), &params.x, &TruncationPolicy::with_max_degree(degree))?;
    debug_assert!(series.terminated_exactly);
    Ok(series.scaled(params.ln_a.exp()))
}

/// Log density in either form, with `ln A` added on the log scale so that
/// very small constants do not underflow. The series form must converge
/// under `policy`; a truncated value is an error, not a result.
pub fn log_density(params: &ConfigParams, form: DensityForm, policy: &TruncationPolicy) -> Result<f64> {
    let sp = params.series_params();
    let series = match form {
        DensityForm::Series => {
            let series = pearson_lhs(&sp, &params.x, policy)?;
            if !series.converged {
                return Err(Error::NotConverged { degree: series.degree_used, tail: series.tail_estimate });
            }
            series
        }
        DensityForm::Polynomial => {
            let (n, k) = (params.landmarks, params.dimension);
            let degree = polynomial_degree(n, k).ok_or(Error::Parity { n, k })?;
            pearson_rhs(&sp, &params.x, &TruncationPolicy::with_max_degree(degree))?
        }
    };
    if !(series.value > 0.0) {
        return Err(Error::Domain(format!("density evaluated to a non-positive value {:e}", series.value)));
    }
    Ok(params.ln_a + series.value.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> DMatrix<f64> {
        DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn helmert_rows_are_orthonormal_contrasts() {
        for n in 2..8 {
            let h = helmert_matrix(n);
            assert!((&h * h.transpose() - DMatrix::identity(n - 1, n - 1)).norm() < 1e-14);
            assert!((&h * DMatrix::from_element(n, 1, 1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn helmert_examples() {
        let two = DMatrix::from_row_slice(2, 1, &[0.0, 2f64.sqrt()]);
        let y = helmert_matrix(2) * &two;
        assert!((y[(0, 0)] - 1.0).abs() < 1e-15);

        let same = LandmarkSet::new(DMatrix::from_fn(5, 2, |_, j| j as f64 + 0.5)).unwrap();
        assert!(helmert_reduce(&same).norm() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let base = random_matrix(6, 2, &mut rng);
        let shift = DMatrix::from_fn(6, 2, |_, j| [3.0, -7.0][j]);
        let a = helmert_reduce(&LandmarkSet::new(base.clone()).unwrap());
        let b = helmert_reduce(&LandmarkSet::new(base + shift).unwrap());
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn landmark_set_requires_enough_rows() {
        assert!(LandmarkSet::new(DMatrix::zeros(3, 2)).is_err());
        assert!(LandmarkSet::new(DMatrix::zeros(4, 2)).is_ok());
    }

    #[test]
    fn configuration_examples() {
        let e = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.5, 3.0]);
        let mut y = DMatrix::zeros(4, 2);
        y.rows_mut(0, 2).copy_from(&e);
        let u = configuration_coords(&y).unwrap();
        let mut expected = DMatrix::zeros(4, 2);
        expected.rows_mut(0, 2).copy_from(&DMatrix::identity(2, 2));
        assert!((u - expected).norm() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let y = random_matrix(5, 2, &mut rng);
        let e = random_matrix(2, 2, &mut rng) + DMatrix::identity(2, 2) * 2.0;
        let u1 = configuration_coords(&y).unwrap();
        let u2 = configuration_coords(&(&y * e)).unwrap();
        assert!((u1 - u2).norm() < 1e-10);

        let mut singular = random_matrix(5, 2, &mut rng);
        singular[(1, 0)] = 2.0 * singular[(0, 0)];
        singular[(1, 1)] = 2.0 * singular[(0, 1)];
        assert!(matches!(configuration_coords(&singular), Err(Error::Singular(_))));
    }

    #[test]
    fn model_validation() {
        let mu = DMatrix::zeros(4, 2);
        assert!(ConfigurationModel::isotropic(mu.clone(), 4.0, 1.0).is_err());
        assert!(ConfigurationModel::isotropic(mu.clone(), 4.5, 0.0).is_err());
        assert!(ConfigurationModel::new(mu.clone(), -DMatrix::identity(4, 4), 5.0, 1.0).is_err());
        assert!(ConfigurationModel::new(mu.clone(), DMatrix::identity(3, 3), 5.0, 1.0).is_err());
        let model = ConfigurationModel::isotropic(mu, 5.5, 3.0).unwrap();
        assert_eq!((model.landmarks, model.dimension), (5, 2));
        assert_eq!(model.b(), 1.5);
    }

    fn random_config(n: usize, k: usize, rng: &mut impl Rng) -> DMatrix<f64> {
        configuration_coords(&random_matrix(n - 1, k, rng)).unwrap()
    }

    #[test]
    fn central_model_collapses() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_config(5, 2, &mut rng);
        let model = ConfigurationModel::isotropic(DMatrix::zeros(4, 2), 6.0, 2.0).unwrap();
        let params = model_params(&model, &u).unwrap();
        assert_eq!((params.a, params.c, params.d), (2.0, 1.0, 1.0));
        assert!(params.x.is_zero());
        let a = params.ln_a.exp();
        let series = density_series(&params, &TruncationPolicy::default()).unwrap();
        let poly = density_polynomial(&params).unwrap();
        assert_eq!(series.value, a);
        assert_eq!(poly.value, a);
    }

    #[test]
    fn trace_bounds_hold_for_random_means() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = random_config(5, 2, &mut rng);
        for _ in 0..1000 {
            let mu = random_matrix(4, 2, &mut rng) * 2.0;
            let model = ConfigurationModel::isotropic(mu.clone(), 5.0, 1.0).unwrap();
            let params = model_params(&model, &u).unwrap();
            let tr = params.x.trace();
            assert!(tr <= mu.norm_squared() * (1.0 + 1e-12));
            assert!(params.d - tr >= 1.0 - 1e-12);
            assert_eq!((params.a, params.c), (2.0, 1.0));
        }
    }

    #[test]
    fn latent_roots_match_direct_product() {
        // eigenvalues of the non-symmetric X = (1/R) U'Σ⁻¹μμ'Σ⁻¹U (U'Σ⁻¹U)⁻¹
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_config(6, 3, &mut rng);
        let mu = random_matrix(5, 3, &mut rng);
        let a = random_matrix(5, 5, &mut rng);
        let sigma = &a * a.transpose() + DMatrix::identity(5, 5);
        let model = ConfigurationModel::new(mu.clone(), sigma.clone(), 9.0, 2.0).unwrap();
        let params = model_params(&model, &u).unwrap();
        let si = sigma.clone().try_inverse().unwrap();
        let p = u.transpose() * &si * &mu * mu.transpose() * &si * &u / 2.0;
        let q = u.transpose() * &si * &u;
        let x = p * q.try_inverse().unwrap();
        let mut direct: Vec<f64> = x.complex_eigenvalues().iter().map(|z| z.re).collect();
        let mut ours = params.x.eigenvalues().to_vec();
        direct.sort_by(f64::total_cmp);
        ours.sort_by(f64::total_cmp);
        for (d, o) in direct.iter().zip(&ours) {
            assert!((d - o).abs() < 1e-9 * (1.0 + d.abs()), "{direct:?} vs {ours:?}");
        }
    }

    #[test]
    fn polynomial_degrees() {
        assert_eq!(polynomial_degree(5, 2), Some(2));
        assert_eq!(polynomial_degree(8, 3), Some(6));
        assert_eq!(polynomial_degree(6, 2), None);
        assert_eq!(polynomial_degree(7, 2), Some(4));
        assert_eq!(polynomial_degree(4, 1), Some(1));
        assert_eq!(polynomial_degree(6, 3), Some(3));
        assert_eq!(polynomial_degree(3, 2), None);
    }

    #[test]
    fn forms_agree_and_parity_is_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let u = random_config(5, 2, &mut rng);
        let mu = random_matrix(4, 2, &mut rng);
        let model = ConfigurationModel::isotropic(mu, 6.0, 1.0).unwrap();
        let params = model_params(&model, &u).unwrap();
        let series = density_series(&params, &TruncationPolicy::with_max_degree(22)).unwrap();
        let poly = density_polynomial(&params).unwrap();
        assert!(poly.terminated_exactly && poly.degree_used == 2);
        assert!((series.value - poly.value).abs() <= 1e-6 * poly.value);
        assert!(series.value > 0.0);

        let u6 = random_config(6, 2, &mut rng);
        let model6 = ConfigurationModel::isotropic(random_matrix(5, 2, &mut rng), 7.0, 1.0).unwrap();
        let params6 = model_params(&model6, &u6).unwrap();
        assert!(matches!(density_polynomial(&params6), Err(Error::Parity { n: 6, k: 2 })));
        assert!(density_series(&params6, &TruncationPolicy::default()).unwrap().value > 0.0);
        assert!(log_density(&params6, DensityForm::Polynomial, &TruncationPolicy::default()).is_err());
    }

    #[test]
    fn log_density_matches_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_config(7, 2, &mut rng);
        let model = ConfigurationModel::isotropic(random_matrix(6, 2, &mut rng), 8.0, 2.0).unwrap();
        let params = model_params(&model, &u).unwrap();
        let policy = TruncationPolicy::default();
        let direct = density_polynomial(&params).unwrap().value.ln();
        let logged = log_density(&params, DensityForm::Polynomial, &policy).unwrap();
        assert!((direct - logged).abs() < 1e-12);
        let series = log_density(&params, DensityForm::Series, &policy).unwrap();
        assert!((series - logged).abs() < 1e-6);
    }

    #[test]
    fn isotropic_gaussian_limit_is_a_matrix_t_density_on_u() {
        // μ = 0, Σ = I, N = 4, K = 1: A = Γ(3/2)/(π^{1/2} Γ(1/2)) (1 + u'u)^{-3/2}
        // with u ∈ ℝ², which integrates to one in polar coordinates.
        let u = DMatrix::from_row_slice(3, 1, &[1.0, 0.4, -0.7]);
        let model = ConfigurationModel::isotropic(DMatrix::zeros(3, 1), 3.0, 1.0).unwrap();
        let params = model_params(&model, &u).unwrap();
        let r2: f64 = 0.4f64 * 0.4 + 0.7 * 0.7;
        let expected = (1.0 / (2.0 * std::f64::consts::PI)) * (1.0 + r2).powf(-1.5);
        assert!((params.ln_a.exp() - expected).abs() < 1e-14);
    }
}
