//! Simulation from the matrix-variate Pearson VII law, exact likelihoods of
//! configuration data, and maximum-likelihood fitting of the location `μ`.

use nalgebra::DMatrix;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::TruncationPolicy;
use crate::linalg;
use crate::optimize::{maximize, NelderMeadOptions};
use crate::sampling::{standard_normal_matrix, stream_rng};
use crate::shape::{
    configuration_coords, helmert_matrix, helmert_reduce, log_density, polynomial_degree, ConfigurationModel,
    DensityForm, LandmarkSet, PreparedConfiguration,
};

/// Draws `count` matrices from the `p×n` Pearson VII law with density
/// proportional to `(1 + tr[(X−M)'Σ⁻¹(X−M)Φ⁻¹]/R)^{−s}`.
///
/// Uses the scale mixture `X = M + L_Σ Z L_Φ' / √(2W/R)` with
/// `W ~ Gamma(s − np/2, 1)` and standard normal `Z`.
pub fn sample_pearson_vii(
    location: &DMatrix<f64>,
    sigma: &DMatrix<f64>,
    phi: &DMatrix<f64>,
    s: f64,
    r: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<DMatrix<f64>>> {
    let (p, n) = location.shape();
    if sigma.shape() != (p, p) || phi.shape() != (n, n) {
        return Err(Error::Parameter("scale matrices do not match the location shape".into()));
    }
    let half = (n * p) as f64 / 2.0;
    if !(s > half) {
        return Err(Error::Parameter(format!("need s > np/2 = {half}, got {s}")));
    }
    if !(r > 0.0) {
        return Err(Error::Parameter(format!("need R > 0, got {r}")));
    }
    let left = linalg::cholesky_lower(sigma)?;
    let right = linalg::cholesky_lower(phi)?.transpose();
    let mixing = Gamma::new(s - half, 1.0).map_err(|e| Error::Parameter(e.to_string()))?;
    let mut rng = stream_rng(seed, 0);
    Ok((0..count)
        .map(|_| {
            let w: f64 = mixing.sample(&mut rng);
            let z = standard_normal_matrix(p, n, &mut rng);
            location + &left * z * &right / (2.0 * w / r).sqrt()
        })
        .collect())
}

/// Simulates landmark figures whose Helmertized form follows `model`.
pub fn simulate_figures(model: &ConfigurationModel, count: usize, seed: u64) -> Result<Vec<LandmarkSet>> {
    let k = model.dimension;
    let ys = sample_pearson_vii(&model.mu, &model.sigma, &DMatrix::identity(k, k), model.s, model.r, count, seed)?;
    let lift = helmert_matrix(model.landmarks).transpose();
    ys.into_iter().map(|y| LandmarkSet::new(&lift * y)).collect()
}

/// Configurations of a sample of figures, all `(N−1)×K` with identity top block.
#[derive(Clone, Debug)]
pub struct Dataset {
    landmarks: usize,
    dimension: usize,
    configurations: Vec<DMatrix<f64>>,
}

impl Dataset {
    pub fn from_landmarks(figures: &[LandmarkSet]) -> Result<Self> {
        let configurations =
            figures.iter().map(|f| configuration_coords(&helmert_reduce(f))).collect::<Result<Vec<_>>>()?;
        let (n, k) = figures.first().map_or((0, 0), |f| (f.landmarks(), f.dimension()));
        Self::build(n, k, configurations)
    }

    pub fn from_configurations(landmarks: usize, dimension: usize, configurations: Vec<DMatrix<f64>>) -> Result<Self> {
        Self::build(landmarks, dimension, configurations)
    }

    fn build(n: usize, k: usize, configurations: Vec<DMatrix<f64>>) -> Result<Self> {
        for u in &configurations {
            if u.shape() != (n - 1, k) {
                return Err(Error::Parameter(format!("configuration of shape {:?}, expected {}x{k}", u.shape(), n - 1)));
            }
            if (u.rows(0, k) - DMatrix::<f64>::identity(k, k)).norm() > 1e-12 {
                return Err(Error::Parameter("configuration is not in canonical form (top block must be I)".into()));
            }
        }
        Ok(Self { landmarks: n, dimension: k, configurations })
    }

    pub fn len(&self) -> usize {
        self.configurations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configurations.is_empty()
    }

    pub fn landmarks(&self) -> usize {
        self.landmarks
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn configurations(&self) -> &[DMatrix<f64>] {
        &self.configurations
    }

    /// Element-wise mean configuration.
    pub fn mean_configuration(&self) -> DMatrix<f64> {
        let mut acc = DMatrix::zeros(self.landmarks.saturating_sub(1), self.dimension);
        for u in &self.configurations {
            acc += u;
        }
        acc / self.configurations.len().max(1) as f64
    }
}

/// A dataset with the `μ`-independent parts of every density precomputed
/// for a fixed `Σ`.
#[derive(Clone, Debug)]
pub struct PreparedDataset {
    landmarks: usize,
    dimension: usize,
    sigma: DMatrix<f64>,
    observations: Vec<PreparedConfiguration>,
}

impl PreparedDataset {
    pub fn new(data: &Dataset, sigma: &DMatrix<f64>) -> Result<Self> {
        let observations =
            data.configurations.iter().map(|u| PreparedConfiguration::new(sigma, u)).collect::<Result<Vec<_>>>()?;
        Ok(Self { landmarks: data.landmarks, dimension: data.dimension, sigma: sigma.clone(), observations })
    }

    /// Log-likelihood of `μ`. Observations are evaluated in parallel and
    /// summed in dataset order.
    pub fn loglik(&self, mu: &DMatrix<f64>, s: f64, r: f64, form: DensityForm, policy: &TruncationPolicy) -> Result<f64> {
        if form == DensityForm::Polynomial && polynomial_degree(self.landmarks, self.dimension).is_none() {
            return Err(Error::Parity { n: self.landmarks, k: self.dimension });
        }
        if self.observations.is_empty() {
            return Ok(0.0);
        }
        let quad = crate::shape::mu_quadratic_form(&self.sigma, mu)?;
        let terms: Vec<f64> = self
            .observations
            .par_iter()
            .map(|obs| log_density(&obs.params(mu, quad, s, r)?, form, policy))
            .collect::<Result<_>>()?;
        Ok(terms.iter().sum())
    }
}

/// Sum of log densities of every observation under `model`.
pub fn loglik(data: &Dataset, model: &ConfigurationModel, form: DensityForm, policy: &TruncationPolicy) -> Result<f64> {
    if !data.is_empty() && (data.landmarks, data.dimension) != (model.landmarks, model.dimension) {
        return Err(Error::Parameter(format!(
            "dataset is N={}, K={} but the model is N={}, K={}",
            data.landmarks, data.dimension, model.landmarks, model.dimension
        )));
    }
    PreparedDataset::new(data, &model.sigma)?.loglik(&model.mu, model.s, model.r, form, policy)
}

#[derive(Clone, Debug, Serialize)]
pub struct FitResult {
    /// Row-major `(N−1)×K` estimate.
    #[serde(serialize_with = "serialize_matrix")]
    pub mu_hat: DMatrix<f64>,
    pub loglik: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// `(evaluations so far, best log-likelihood so far)`.
    pub optimizer_trace: Vec<(usize, f64)>,
}

pub(crate) fn serialize_matrix<S: serde::Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for r in 0..m.nrows() {
        let row: Vec<f64> = m.row(r).iter().copied().collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

/// Maximizes the polynomial-form likelihood over `μ` with Nelder–Mead,
/// restarting from the incumbent until a restart no longer improves it.
/// `budget` counts likelihood evaluations.
pub fn fit_mu(
    data: &Dataset,
    sigma: &DMatrix<f64>,
    s: f64,
    r: f64,
    init: &DMatrix<f64>,
    budget: usize,
) -> Result<FitResult> {
    let (n, k) = (data.landmarks, data.dimension);
    if polynomial_degree(n, k).is_none() {
        return Err(Error::Parity { n, k });
    }
    if budget == 0 {
        return Err(Error::Parameter("budget must be at least 1".into()));
    }
    if init.shape() != (n - 1, k) {
        return Err(Error::Parameter(format!("init must be {}x{k}, got {:?}", n - 1, init.shape())));
    }
    // validates s and R
    ConfigurationModel::new(init.clone(), sigma.clone(), s, r)?;
    let prepared = PreparedDataset::new(data, sigma)?;
    let policy = TruncationPolicy::default();
    let mut objective = |x: &[f64]| {
        let mu = DMatrix::from_row_slice(n - 1, k, x);
        prepared.loglik(&mu, s, r, DensityForm::Polynomial, &policy).unwrap_or(f64::NEG_INFINITY)
    };

    let mut best_x: Vec<f64> = init.transpose().iter().copied().collect();
    let mut best = f64::NEG_INFINITY;
    let mut used = 0usize;
    let mut iterations = 0usize;
    let mut trace: Vec<(usize, f64)> = Vec::new();
    let mut converged = false;

    while used < budget {
        let opts = NelderMeadOptions { max_evals: budget - used, ..Default::default() };
        let run = maximize(&mut objective, &best_x, &opts);
        for &(evals, value) in &run.trace {
            let running = trace.last().map_or(value, |&(_, b): &(usize, f64)| b.max(value));
            trace.push((used + evals, running));
        }
        used += run.evals;
        iterations += run.iterations;
        let improvement = run.value - best;
        if run.value > best {
            best = run.value;
            best_x = run.x;
        }
        if run.converged && improvement.abs() <= 1e-9 * (1.0 + best.abs()).max(1.0) || !run.converged {
            converged = run.converged;
            break;
        }
    }

    Ok(FitResult {
        mu_hat: DMatrix::from_row_slice(n - 1, k, &best_x),
        loglik: best,
        iterations,
        evaluations: used,
        converged,
        optimizer_trace: trace,
    })
}

/// A starting point for [`fit_mu`]: the mean configuration, rescaled by the
/// factor on a log grid with the highest likelihood.
pub fn initial_mu_guess(data: &Dataset, sigma: &DMatrix<f64>, s: f64, r: f64) -> Result<DMatrix<f64>> {
    let (n, k) = (data.landmarks, data.dimension);
    let form = if polynomial_degree(n, k).is_some() { DensityForm::Polynomial } else { DensityForm::Series };
    let prepared = PreparedDataset::new(data, sigma)?;
    let direction = data.mean_configuration();
    let policy = TruncationPolicy::default();
    let mut best = (f64::NEG_INFINITY, direction.clone());
    for step in 0..=24 {
        let scale = 2f64.powf(-3.0 + step as f64 * 0.25);
        let mu = &direction * scale;
        if let Ok(value) = prepared.loglik(&mu, s, r, form, &policy) {
            if value > best.0 {
                best = (value, mu);
            }
        }
    }
    Ok(best.1)
}
