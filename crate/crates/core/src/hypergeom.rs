//! The series engine for `₁F₁(a; c; X)` and the generalized confluent series
//!
//! ```text
//! ₁P₁(f : a; c; X) = Σ_t f(t)/t! Σ_{τ ⊢ t} (a)_τ / (c)_τ · C_τ(X)
//! ```
//!
//! where the weight `f` may depend on `t` and on scalar summaries of `X` but
//! never on the partition `τ`. Terms are accumulated one degree at a time and
//! the degree contribution is what the truncation policy inspects.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{gen_pochhammer, is_non_positive_integer, ln_factorial, pochhammer, SignedLogValue};
use crate::zonal::{self, SpectralInput};

/// The partition-independent weight `t ↦ f(t)` of a `₁P₁` series.
pub trait CoefficientFunction: Sync {
    fn weight(&self, t: u32) -> SignedLogValue;
}

impl<F> CoefficientFunction for F
where
    F: Fn(u32) -> SignedLogValue + Sync,
{
    fn weight(&self, t: u32) -> SignedLogValue {
        self(t)
    }
}

/// `f ≡ 1`, which turns `₁P₁` into `₁F₁`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitWeight;

impl CoefficientFunction for UnitWeight {
    fn weight(&self, _t: u32) -> SignedLogValue {
        SignedLogValue::ONE
    }
}

/// `f(t) = (b)_t · base^{−(shift + t)}` with `base > 0`.
///
/// `shift = b` gives the Pearson VII weight `(b)_t d^{−b−t}`; `shift = 0`
/// gives `(b)_t e^{−t}` as used after the Kummer-type transformation.
#[derive(Clone, Copy, Debug)]
pub struct RisingPowerWeight {
    pub b: f64,
    pub base: f64,
    pub shift: f64,
}

impl CoefficientFunction for RisingPowerWeight {
    fn weight(&self, t: u32) -> SignedLogValue {
        let power = SignedLogValue::from_log(-(self.shift + t as f64) * self.base.ln(), 1);
        pochhammer(self.b, t) * power
    }
}

/// When to stop summing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TruncationPolicy {
    /// Highest total degree ever summed.
    pub max_degree: u32,
    /// A degree contribution is "small" below `rel_tolerance · |partial sum|`.
    pub rel_tolerance: f64,
    /// Stop after this many small contributions in a row. Also the length of
    /// the growth streak that is reported as divergence.
    pub consecutive_small_terms: u32,
    /// Stop exactly at the structural termination degree when the numerator
    /// parameter is a non-positive integer.
    pub detect_termination: bool,
    /// Growth of degree contributions is only treated as divergence past
    /// this degree.
    pub divergence_horizon: u32,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            max_degree: zonal::DEFAULT_DEGREE_CEILING,
            rel_tolerance: 1e-15,
            consecutive_small_terms: 3,
            detect_termination: true,
            divergence_horizon: 30,
        }
    }
}

impl TruncationPolicy {
    pub fn with_max_degree(max_degree: u32) -> Self {
        Self { max_degree, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tolerance > 0.0) {
            return Err(Error::Parameter(format!("rel_tolerance must be > 0, got {}", self.rel_tolerance)));
        }
        if self.consecutive_small_terms == 0 {
            return Err(Error::Parameter("consecutive_small_terms must be >= 1".into()));
        }
        Ok(())
    }
}

/// A partial or exactly terminated sum with its diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: f64,
    /// Highest degree included in `value`.
    pub degree_used: u32,
    /// Every higher degree is structurally zero.
    pub terminated_exactly: bool,
    /// The convergence test was met before `max_degree`.
    pub converged: bool,
    /// Contribution of degree `degree_used`.
    pub last_degree_contribution: f64,
    /// Geometric extrapolation of the omitted tail; zero when terminated.
    pub tail_estimate: f64,
    /// Number of non-zero `(t, τ)` terms summed.
    pub term_count: usize,
    /// Contribution of each degree `0..=degree_used`.
    pub degree_contributions: Vec<f64>,
}

impl SeriesResult {
    /// Multiplies value and diagnostics by a constant prefactor.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.last_degree_contribution *= factor;
        self.tail_estimate *= factor.abs();
        self.degree_contributions.iter_mut().for_each(|c| *c *= factor);
        self
    }
}

/// The highest total degree with a non-vanishing `(α)_τ` for `τ` of at most
/// `m` parts, when that set is finite.
///
/// For `α = −n` the first factor `(α)_{t₁}` vanishes once `t₁ > n`, so the
/// degree is at most `m·n` and `τ = (n, …, n)` attains it.
pub fn termination_bound(alpha: f64, m: usize) -> Option<u32> {
    if is_non_positive_integer(alpha) {
        Some((-alpha) as u32 * m as u32)
    } else {
        None
    }
}

/// `₁F₁(a; c; X)`.
pub fn hyp_1f1(a: f64, c: f64, x: &SpectralInput, policy: &TruncationPolicy) -> Result<SeriesResult> {
    one_p_one(&UnitWeight, a, c, x, policy)
}

/// `₁P₁(f : a; c; X)` summed under `policy`.
pub fn one_p_one(
    f: &dyn CoefficientFunction,
    a: f64,
    c: f64,
    x: &SpectralInput,
    policy: &TruncationPolicy,
) -> Result<SeriesResult> {
    policy.validate()?;
    let m = x.dim();
    let bound = policy.detect_termination.then(|| termination_bound(a, m)).flatten();
    let exact = matches!(bound, Some(b) if b <= policy.max_degree);
    let limit = match bound {
        Some(b) if exact => b,
        _ => policy.max_degree,
    };

    let mut sum = 0.0;
    let mut contributions: Vec<f64> = Vec::with_capacity(limit as usize + 1);
    let mut term_count = 0usize;
    let mut small_streak = 0u32;
    let mut growth_streak = 0u32;
    let mut converged = false;

    for t in 0..=limit {
        let contribution = degree_contribution(f, a, c, x, t, &mut term_count)?;
        if !contribution.is_finite() {
            return Err(Error::Divergence { degree: t, contribution });
        }
        sum += contribution;
        let previous = contributions.last().copied();
        contributions.push(contribution);

        if exact {
            continue;
        }
        if contribution.abs() <= policy.rel_tolerance * sum.abs() {
            small_streak += 1;
            if small_streak >= policy.consecutive_small_terms {
                converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
        match previous {
            Some(prev) if t > policy.divergence_horizon && contribution.abs() > prev.abs() && prev != 0.0 => {
                growth_streak += 1;
                if growth_streak >= policy.consecutive_small_terms {
                    return Err(Error::Divergence { degree: t, contribution });
                }
            }
            _ => growth_streak = 0,
        }
    }

    let degree_used = contributions.len() as u32 - 1;
    let last = *contributions.last().unwrap();
    let tail_estimate = if exact { 0.0 } else { tail_estimate(&contributions) };
    Ok(SeriesResult {
        value: sum,
        degree_used,
        terminated_exactly: exact,
        converged: converged || exact,
        last_degree_contribution: last,
        tail_estimate,
        term_count,
        degree_contributions: contributions,
    })
}

fn degree_contribution(
    f: &dyn CoefficientFunction,
    a: f64,
    c: f64,
    x: &SpectralInput,
    t: u32,
    term_count: &mut usize,
) -> Result<f64> {
    let weight = f.weight(t);
    if weight.is_zero() {
        return Ok(0.0);
    }
    if t == 0 {
        *term_count += 1;
        return Ok(weight.to_f64());
    }
    if x.is_zero() {
        return Ok(0.0);
    }
    let table = zonal::table(t, x.dim())?;
    let zonals = table.evaluate_all(x.eigenvalues());
    let scale = weight / SignedLogValue::from_log(ln_factorial(t), 1);
    let mut total = 0.0;
    for (tau, zonal_value) in table.partitions().iter().zip(zonals) {
        let numerator = gen_pochhammer(a, tau);
        if numerator.is_zero() {
            continue;
        }
        let denominator = gen_pochhammer(c, tau);
        if denominator.is_zero() {
            return Err(Error::Parameter(format!(
                "(c)_τ vanishes for c = {c}, τ = {tau} while (a)_τ does not (a = {a})"
            )));
        }
        let coefficient = scale * numerator / denominator;
        total += coefficient.to_f64() * zonal_value;
        *term_count += 1;
    }
    Ok(total)
}

fn tail_estimate(contributions: &[f64]) -> f64 {
    let n = contributions.len();
    if n < 2 {
        return contributions.last().map_or(0.0, |c| c.abs());
    }
    let last = contributions[n - 1].abs();
    let prev = contributions[n - 2].abs();
    if last == 0.0 {
        return 0.0;
    }
    if prev == 0.0 {
        return last;
    }
    let ratio = last / prev;
    if ratio < 1.0 {
        last * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    }
}
