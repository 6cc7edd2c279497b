//! Both sides of the matrix Kummer relations, plus a Monte Carlo evaluation
//! of the Euler-type integral behind the Pearson VII variant.
//!
//! Classical:
//!
//! ```text
//! ₁F₁(a; c; X) = etr(X) ₁F₁(c − a; c; −X)
//! ```
//!
//! Pearson VII:
//!
//! ```text
//! ₁P₁((b)_t d^{−b−t} : a; c; X)
//!     = (d − tr X)^{−b} ₁P₁((b)_t (d − tr X)^{−t} : c − a; c; −X)
//!     = E[(d − tr(XY))^{−b}],   Y ~ matrix Beta(a, c − a)
//! ```
//!
//! Everything is checked on the real domain `X ⪰ 0`, `d > tr X`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::{hyp_1f1, one_p_one, termination_bound, RisingPowerWeight, SeriesResult, TruncationPolicy};
use crate::sampling::{stream_rng, MatrixBetaSampler};
use crate::zonal::{self, SpectralInput};

/// Samples per Monte Carlo chunk. Chunk `i` draws from stream `i` of the
/// seed, so estimates are reproducible for any thread count.
pub const MC_CHUNK: usize = 1 << 16;

/// Parameters `(a, c, b, d)` of the Pearson VII series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PearsonSeriesParams {
    pub a: f64,
    pub c: f64,
    pub b: f64,
    pub d: f64,
}

impl PearsonSeriesParams {
    /// Checks `a, c > (m−1)/2`, `X ⪰ 0` and `d > tr X`.
    pub fn check(&self, x: &SpectralInput) -> Result<()> {
        let half = 0.5 * (x.dim() as f64 - 1.0);
        let finite = [self.a, self.c, self.b, self.d].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Parameter(format!("non-finite parameter in {self:?}")));
        }
        if !(self.a > half && self.c > half) {
            return Err(Error::Domain(format!("need a > {half} and c > {half}, got a = {}, c = {}", self.a, self.c)));
        }
        if x.eigenvalues().iter().any(|&l| l < 0.0) {
            return Err(Error::Domain(format!("X must be positive semi-definite, eigenvalues {:?}", x.eigenvalues())));
        }
        if !(self.d > x.trace()) {
            return Err(Error::Domain(format!("need d > tr X, got d = {}, tr X = {}", self.d, x.trace())));
        }
        Ok(())
    }

    /// A policy that sums the left side well past any termination degree of
    /// the right side: `max_degree ≥ m·|c − a| + 20`.
    pub fn verification_policy(&self, m: usize) -> TruncationPolicy {
        let bound = termination_bound(self.c - self.a, m).unwrap_or(0);
        let max_degree = (bound + 20).max(zonal::DEFAULT_DEGREE_CEILING).min(zonal::degree_ceiling());
        TruncationPolicy::with_max_degree(max_degree)
    }
}

/// Two independently evaluated sides of an identity.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub lhs_diagnostics: SeriesResult,
    pub rhs_diagnostics: SeriesResult,
}

impl VerificationReport {
    fn new(lhs_diagnostics: SeriesResult, rhs_diagnostics: SeriesResult) -> Self {
        let (lhs, rhs) = (lhs_diagnostics.value, rhs_diagnostics.value);
        let abs_diff = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs());
        let rel_diff = if scale > 0.0 { abs_diff / scale } else { abs_diff };
        Self { lhs, rhs, abs_diff, rel_diff, lhs_diagnostics, rhs_diagnostics }
    }

    /// Sum of both sides' tail estimates, relative to the larger side.
    pub fn relative_tail(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs());
        let tails = self.lhs_diagnostics.tail_estimate + self.rhs_diagnostics.tail_estimate;
        if scale > 0.0 { tails / scale } else { tails }
    }
}

/// Compares `₁F₁(a; c; X)` with `etr(X) ₁F₁(c − a; c; −X)`.
pub fn kummer_classic_check(a: f64, c: f64, x: &SpectralInput, policy: &TruncationPolicy) -> Result<VerificationReport> {
    let lhs = hyp_1f1(a, c, x, policy)?;
    let rhs = hyp_1f1(c - a, c, &x.negated(), policy)?.scaled(x.trace().exp());
    Ok(VerificationReport::new(lhs, rhs))
}

/// `₁P₁((b)_t d^{−b−t} : a; c; X)`.
pub fn pearson_lhs(p: &PearsonSeriesParams, x: &SpectralInput, policy: &TruncationPolicy) -> Result<SeriesResult> {
    p.check(x)?;
    // d^{−b} is factored out so that both sides share the same prefactor arithmetic
    let weight = RisingPowerWeight { b: p.b, base: p.d, shift: 0.0 };
    Ok(one_p_one(&weight, p.a, p.c, x, policy)?.scaled(p.d.powf(-p.b)))
}

/// `(d − tr X)^{−b} ₁P₁((b)_t (d − tr X)^{−t} : c − a; c; −X)`; a polynomial
/// whenever `c − a` is a negative integer.
pub fn pearson_rhs(p: &PearsonSeriesParams, x: &SpectralInput, policy: &TruncationPolicy) -> Result<SeriesResult> {
    p.check(x)?;
    let gap = p.d - x.trace();
    let weight = RisingPowerWeight { b: p.b, base: gap, shift: 0.0 };
    let series = one_p_one(&weight, p.c - p.a, p.c, &x.negated(), policy)?;
    Ok(series.scaled(gap.powf(-p.b)))
}

pub fn pearson_relation_check(
    p: &PearsonSeriesParams,
    x: &SpectralInput,
    policy: &TruncationPolicy,
) -> Result<VerificationReport> {
    let lhs = pearson_lhs(p, x, policy)?;
    let rhs = pearson_rhs(p, x, policy)?;
    Ok(VerificationReport::new(lhs, rhs))
}

/// A sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default)]
struct Welford {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, v: f64) {
        self.n += 1;
        let delta = v - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (v - self.mean);
    }

    fn merge(self, other: Welford) -> Welford {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        Welford { n, mean, m2 }
    }
}

/// Monte Carlo value of
/// `Γ_m(c)/(Γ_m(a)Γ_m(c−a)) ∫_{0<Y<I} (d − tr(XY))^{−b} |Y|^{a−(m+1)/2} |I−Y|^{c−a−(m+1)/2} dY`,
/// computed as the mean of `(d − tr(XY))^{−b}` under the matrix Beta law,
/// whose normalizing constant is exactly the gamma ratio.
///
/// Requires `a, c − a > (m−1)/2`, `X ⪰ 0` and `d > tr X`. `X` is taken
/// diagonal, which loses nothing because the Beta law is orthogonally
/// invariant.
pub fn integral_representation_mc(
    p: &PearsonSeriesParams,
    x: &SpectralInput,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    p.check(x)?;
    if n_samples == 0 {
        return Err(Error::Parameter("n_samples must be positive".into()));
    }
    let m = x.dim();
    let sampler = MatrixBetaSampler::new(m, p.a, p.c - p.a)?;
    let eig = x.eigenvalues();
    let chunks = n_samples.div_ceil(MC_CHUNK);

    let partials: Vec<Welford> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = stream_rng(seed, chunk as u64);
            let count = MC_CHUNK.min(n_samples - chunk * MC_CHUNK);
            let mut acc = Welford::default();
            for _ in 0..count {
                let y = sampler.sample(&mut rng)?;
                let trace: f64 = eig.iter().enumerate().map(|(i, &l)| l * y[(i, i)]).sum();
                acc.push((p.d - trace).powf(-p.b));
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let total = partials.into_iter().fold(Welford::default(), Welford::merge);
    let variance = if total.n > 1 { total.m2 / (total.n - 1) as f64 } else { 0.0 };
    Ok(McEstimate {
        mean: total.mean,
        std_error: (variance / total.n as f64).sqrt(),
        n_samples: total.n,
        seed,
    })
}

/// Monte Carlo estimate next to the series it should reproduce.
#[derive(Clone, Debug, Serialize)]
pub struct IntegralReport {
    pub estimate: McEstimate,
    pub series: SeriesResult,
    pub abs_diff: f64,
    pub rel_diff: f64,
    /// `|difference| / standard error`; zero when both agree exactly.
    pub z_score: f64,
}

impl IntegralReport {
    /// Agreement within `k` standard errors (exact agreement always passes).
    pub fn within(&self, k: f64) -> bool {
        self.abs_diff == 0.0 || self.z_score <= k
    }
}

pub fn integral_check(
    p: &PearsonSeriesParams,
    x: &SpectralInput,
    n_samples: usize,
    seed: u64,
    policy: &TruncationPolicy,
) -> Result<IntegralReport> {
    let estimate = integral_representation_mc(p, x, n_samples, seed)?;
    let series = pearson_lhs(p, x, policy)?;
    let abs_diff = (estimate.mean - series.value).abs();
    let scale = estimate.mean.abs().max(series.value.abs());
    let rel_diff = if scale > 0.0 { abs_diff / scale } else { 0.0 };
    let z_score = if abs_diff == 0.0 {
        0.0
    } else if estimate.std_error > 0.0 {
        abs_diff / estimate.std_error
    } else {
        f64::INFINITY
    };
    Ok(IntegralReport { estimate, series, abs_diff, rel_diff, z_score })
}
