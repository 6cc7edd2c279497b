//! Zonal-polynomial series of matrix argument, the Kummer-Pearson VII
//! relation, and polynomial Pearson VII configuration densities for affine
//! shape analysis.
//!
//! Layers, bottom up:
//!
//! - [`partition`]: partitions, rising factorials, multivariate gamma.
//! - [`zonal`]: zonal polynomial tables and evaluation.
//! - [`hypergeom`]: the `₁F₁` and `₁P₁` series engine with truncation control.
//! - [`kummer`]: both sides of the Kummer relations and the Monte Carlo
//!   check of the Euler-type integral.
//! - [`shape`]: landmarks, configuration coordinates, densities.
//! - [`inference`]: sampling, likelihoods and location fitting.

pub mod error;
pub mod hypergeom;
pub mod inference;
pub mod kummer;
pub mod landmarks;
pub mod linalg;
pub mod optimize;
pub mod partition;
pub mod sampling;
pub mod shape;
pub mod zonal;

pub use error::{Error, Result};
pub use partition::{enumerate_partitions, gen_pochhammer, mv_gamma_ln, pochhammer, Partition, SignedLogValue};
pub use zonal::{build_zonal_table, zonal_eval, SpectralInput, ZonalTable};
pub use hypergeom::{hyp_1f1, one_p_one, termination_bound, CoefficientFunction, RisingPowerWeight, SeriesResult, TruncationPolicy, UnitWeight};
pub use kummer::{
    integral_representation_mc, kummer_classic_check, pearson_lhs, pearson_relation_check, pearson_rhs, McEstimate,
    PearsonSeriesParams, VerificationReport,
};
pub use shape::{
    configuration_coords, density_polynomial, density_series, helmert_matrix, helmert_reduce, log_density, model_params,
    polynomial_degree, ConfigParams, ConfigurationModel, DensityForm, LandmarkSet,
};
pub use landmarks::{parse_landmark_csv, read_landmark_file, write_landmark_csv};
pub use inference::{fit_mu, initial_mu_guess, loglik, sample_pearson_vii, simulate_figures, Dataset, FitResult};
