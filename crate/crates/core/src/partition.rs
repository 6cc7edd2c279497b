//! Integer partitions, rising factorials and the multivariate gamma function.
//!
//! Everything that multiplies many factors together works in signed log
//! space ([`SignedLogValue`]) so that degree-60 series terms and half-integer
//! parameters stay representable. Zeros are detected structurally: a rising
//! factorial is zero exactly when one of its factors is an integer hit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-increasing tuple of positive integers.
///
/// The empty partition (weight 0) is the index of the constant term of
/// every series.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
    weight: u32,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing sequences.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts arbitrary non-negative parts into a partition, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(parts: Vec<u32>) -> Self {
        let weight = parts.iter().sum();
        Self { parts, weight }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new(), weight: 0 }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts, written |τ|.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of (non-zero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Dominance order: `self ≥ other` when every prefix sum of `self` is at
    /// least the matching prefix sum of `other`. Only meaningful for equal
    /// weights.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.weight != other.weight {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// `Σ kᵢ (kᵢ − i)` with 1-based `i`, the eigenvalue of the zonal
    /// differential operator up to an affine change.
    pub fn rho(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &k)| k as i64 * (k as i64 - i as i64 - 1))
            .sum()
    }

    /// Conjugate (transposed Young diagram).
    pub fn conjugate(&self) -> Partition {
        let first = self.part(0) as usize;
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&k| k as usize >= j).count() as u32)
            .collect();
        Self::from_sorted(parts)
    }

    /// Multiplicities of each distinct part, in order of appearance.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        let mut prev = None;
        for &p in &self.parts {
            if Some(p) == prev {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
                prev = Some(p);
            }
        }
        out
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the parts. Enumeration lists partitions of a
/// fixed weight in *decreasing* order of this relation.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `t` with at most `max_len` parts, in reverse
/// lexicographic order. `t = 0` yields the single empty partition.
pub fn enumerate_partitions(t: u32, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(t, t, max_len, &mut current, &mut out);
    out
}

fn fill(remaining: u32, cap: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for first in (1..=remaining.min(cap)).rev() {
        // the remaining slots cannot absorb more than `first` each
        if (first as u64) * (slots as u64) < remaining as u64 {
            break;
        }
        current.push(first);
        fill(remaining - first, first, slots - 1, current, out);
        current.pop();
    }
}

/// A real number stored as `sign · exp(log_magnitude)`.
///
/// `sign == 0` is an exact zero and the magnitude is then ignored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignedLogValue {
    pub log_magnitude: f64,
    pub sign: i8,
}

impl SignedLogValue {
    pub const ZERO: Self = Self { log_magnitude: f64::NEG_INFINITY, sign: 0 };
    pub const ONE: Self = Self { log_magnitude: 0.0, sign: 1 };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self { log_magnitude: x.abs().ln(), sign: if x > 0.0 { 1 } else { -1 } }
        }
    }

    pub fn from_log(log_magnitude: f64, sign: i8) -> Self {
        if sign == 0 {
            Self::ZERO
        } else {
            Self { log_magnitude, sign: sign.signum() }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => s as f64 * self.log_magnitude.exp(),
        }
    }

    /// `self^e` for a positive base; the sign of a negative base is kept
    /// only for integer exponents.
    pub fn powf(self, e: f64) -> Self {
        if self.sign == 0 {
            return if e == 0.0 { Self::ONE } else { Self::ZERO };
        }
        let sign = if self.sign < 0 && e.fract() == 0.0 && (e as i64) % 2 != 0 { -1 } else { 1 };
        Self { log_magnitude: self.log_magnitude * e, sign }
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of an exact zero");
        Self { log_magnitude: -self.log_magnitude, sign: self.sign }
    }
}

impl Mul for SignedLogValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        Self { log_magnitude: self.log_magnitude + rhs.log_magnitude, sign: self.sign * rhs.sign }
    }
}

impl Div for SignedLogValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

/// True when `x` is an integer `≤ 0`, i.e. a pole of Γ.
pub fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Rising factorial `(b)_t = b (b+1) ⋯ (b+t−1)`, `(b)_0 = 1`.
pub fn pochhammer(b: f64, t: u32) -> SignedLogValue {
    if t == 0 {
        return SignedLogValue::ONE;
    }
    if is_non_positive_integer(b) && -b < t as f64 {
        return SignedLogValue::ZERO;
    }
    let mut log_magnitude = 0.0;
    let mut negative = false;
    for k in 0..t {
        let factor = b + k as f64;
        log_magnitude += factor.abs().ln();
        negative ^= factor < 0.0;
    }
    SignedLogValue { log_magnitude, sign: if negative { -1 } else { 1 } }
}

/// Generalized rising factorial `(β)_τ = Πᵢ (β − (i−1)/2)_{tᵢ}`.
pub fn gen_pochhammer(beta: f64, tau: &Partition) -> SignedLogValue {
    tau.parts()
        .iter()
        .enumerate()
        .fold(SignedLogValue::ONE, |acc, (i, &ti)| acc * pochhammer(beta - 0.5 * i as f64, ti))
}

/// `ln Γ_m(a)` with sign, where `Γ_m(a) = π^{m(m−1)/4} Πᵢ Γ(a − (i−1)/2)`.
pub fn mv_gamma_ln(m: usize, a: f64) -> Result<SignedLogValue> {
    assert!(m >= 1, "multivariate gamma needs m >= 1");
    let mut log_magnitude = (m * (m - 1)) as f64 / 4.0 * std::f64::consts::PI.ln();
    let mut sign = 1i8;
    for i in 0..m {
        let arg = a - 0.5 * i as f64;
        if is_non_positive_integer(arg) {
            return Err(Error::GammaPole { m, a, arg });
        }
        let (lg, s) = libm::lgamma_r(arg);
        log_magnitude += lg;
        sign *= s as i8;
    }
    Ok(SignedLogValue { log_magnitude, sign })
}

/// `ln t!`.
pub fn ln_factorial(t: u32) -> f64 {
    libm::lgamma(t as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_small_cases() {
        assert_eq!(enumerate_partitions(4, 2), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(enumerate_partitions(0, 3), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(8, 3).len(), 10);
        assert_eq!(enumerate_partitions(3, 5), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    // compositions of t into at most `len` positive parts, sorted and deduplicated
    fn brute_force(t: u32, len: usize) -> Vec<Vec<u32>> {
        fn compositions(t: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if t == 0 {
                let mut v = cur.clone();
                v.sort_unstable_by(|a, b| b.cmp(a));
                out.push(v);
                return;
            }
            if cur.len() == len {
                return;
            }
            for first in 1..=t {
                cur.push(first);
                compositions(t - first, len, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        compositions(t, len, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn matches_brute_force_counts() {
        for t in 0..=10 {
            for m in 1..=5 {
                let fast = enumerate_partitions(t, m);
                let slow = brute_force(t, m);
                assert_eq!(fast.len(), slow.len(), "t={t} m={m}");
                let mut listed: Vec<Vec<u32>> = fast.iter().map(|q| q.parts().to_vec()).collect();
                // strictly decreasing in lexicographic order
                assert!(listed.windows(2).all(|w| w[0] > w[1]));
                listed.sort();
                assert_eq!(listed, slow);
            }
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![0, 1, 3, 0, 2]), p(&[3, 2, 1]));
        assert_eq!(p(&[3, 1, 1]).weight(), 5);
        assert_eq!(p(&[3, 1, 1]).conjugate(), p(&[3, 1, 1]));
        assert_eq!(p(&[4, 2]).conjugate(), p(&[2, 2, 1, 1]));
        assert_eq!(p(&[3, 3, 1]).multiplicities(), vec![2, 1]);
    }

    #[test]
    fn dominance() {
        assert!(p(&[3, 1]).dominates(&p(&[2, 2])));
        assert!(!p(&[2, 2]).dominates(&p(&[3, 1])));
        assert!(!p(&[3, 1, 1, 1]).dominates(&p(&[2, 2, 2])));
        assert!(!p(&[2, 2, 2]).dominates(&p(&[3, 1, 1, 1])));
        assert!(p(&[2, 2]).dominates(&p(&[2, 2])));
    }

    #[test]
    fn pochhammer_examples() {
        assert!((pochhammer(3.0, 2).to_f64() - 12.0).abs() < 1e-12);
        for b in [-3.5, 0.0, 2.0, 1e6] {
            assert_eq!(pochhammer(b, 0), SignedLogValue::ONE);
        }
        assert!(pochhammer(-2.0, 3).is_zero());
        assert!(!pochhammer(-2.0, 2).is_zero());
        assert!((pochhammer(-2.0, 2).to_f64() - 2.0).abs() < 1e-12);
        assert!((pochhammer(-0.5, 3).to_f64() - (-0.5 * 0.5 * 1.5)).abs() < 1e-14);
    }

    #[test]
    fn gen_pochhammer_examples() {
        let beta = 1.7;
        assert!((gen_pochhammer(beta, &p(&[1])).to_f64() - beta).abs() < 1e-14);
        assert!(gen_pochhammer(-1.0, &p(&[2])).is_zero());
        assert!((gen_pochhammer(2.5, &p(&[2, 1])).to_f64() - 17.5).abs() < 1e-12);
        assert_eq!(gen_pochhammer(0.3, &Partition::empty()), SignedLogValue::ONE);
        // second factor hits zero: (-1/2 - 1/2)_2 = (-1)(0)
        assert!(gen_pochhammer(-0.5, &p(&[2, 2])).is_zero());
        assert!(!gen_pochhammer(-0.5, &p(&[2, 1])).is_zero());
    }

    #[test]
    fn mv_gamma_examples() {
        let v = mv_gamma_ln(1, 4.0).unwrap();
        assert!((v.log_magnitude - 6f64.ln()).abs() < 1e-13 && v.sign == 1);
        let v = mv_gamma_ln(2, 1.5).unwrap();
        assert!((v.log_magnitude - (std::f64::consts::PI / 2.0).ln()).abs() < 1e-13);
        assert!(matches!(mv_gamma_ln(2, 0.5), Err(Error::GammaPole { .. })));
        for a in [0.5, 1.0, 2.5, 7.0] {
            let v = mv_gamma_ln(1, a).unwrap();
            assert!((v.log_magnitude - libm::lgamma(a)).abs() <= 1e-12 * libm::lgamma(a).abs().max(1.0));
        }
        // Γ(-0.5) = -2√π
        let v = mv_gamma_ln(1, -0.5).unwrap();
        assert_eq!(v.sign, -1);
        assert!((v.to_f64() + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn signed_log_arithmetic() {
        let a = SignedLogValue::from_f64(-3.0);
        let b = SignedLogValue::from_f64(0.5);
        assert!(((a * b).to_f64() + 1.5).abs() < 1e-14);
        assert!(((a / b).to_f64() + 6.0).abs() < 1e-13);
        assert!((a * SignedLogValue::ZERO).is_zero());
        assert!((a.powf(3.0).to_f64() + 27.0).abs() < 1e-12);
        assert_eq!(SignedLogValue::ZERO.powf(0.0), SignedLogValue::ONE);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rising_factorial_recurrence(b in -20.0f64..20.0, t in 0u32..30) {
                let lhs = pochhammer(b, t + 1);
                let rhs = pochhammer(b, t) * SignedLogValue::from_f64(b + t as f64);
                prop_assert_eq!(lhs.sign, rhs.sign);
                if !lhs.is_zero() {
                    prop_assert!((lhs.log_magnitude - rhs.log_magnitude).abs()
                        <= 1e-12 * lhs.log_magnitude.abs().max(1.0));
                }
            }

            #[test]
            fn single_part_matches_scalar(beta in -10.0f64..10.0, t in 0u32..25) {
                let tau = if t == 0 { Partition::empty() } else { Partition::new(vec![t]).unwrap() };
                prop_assert_eq!(gen_pochhammer(beta, &tau), pochhammer(beta, t));
            }
        }
    }
}
