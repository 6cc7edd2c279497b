//! Zonal polynomials `C_τ(X)` evaluated from the eigenvalues of `X`.
//!
//! For each degree `t` we tabulate the coefficients of `C_κ` in the monomial
//! symmetric basis `M_λ`, restricted to partitions with at most `max_parts`
//! parts. Because `c_{κλ} = 0` unless `κ` dominates `λ`, and dominance never
//! lengthens a partition, the restricted table is exact for matrices of order
//! `max_parts` or less.
//!
//! The monic coefficients follow the eigenfunction recurrence
//!
//! ```text
//! c_{κλ} = Σ_{i<j} Σ_{s=1..λ_j} ((λ_i + s) − (λ_j − s)) c_{κμ} / (ρ_κ − ρ_λ),
//! μ = sort(λ_1, …, λ_i + s, …, λ_j − s, …),   ρ_κ = Σ k_i (k_i − i)
//! ```
//!
//! and each row is scaled by the leading coefficient
//! `2^t t! / Π_{boxes} (2·arm + leg + 2)`, which yields the normalization
//! `Σ_{κ ⊢ t} C_κ(X) = (tr X)^t`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, ln_factorial, Partition};

/// Default highest degree for which tables are built.
pub const DEFAULT_DEGREE_CEILING: u32 = 50;

static DEGREE_CEILING: AtomicU32 = AtomicU32::new(DEFAULT_DEGREE_CEILING);

/// Raises or lowers the degree ceiling for subsequently built tables.
pub fn set_degree_ceiling(ceiling: u32) {
    DEGREE_CEILING.store(ceiling, Ordering::Relaxed);
}

pub fn degree_ceiling() -> u32 {
    DEGREE_CEILING.load(Ordering::Relaxed)
}

/// The latent roots standing in for the matrix argument of a series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralInput {
    eigenvalues: Vec<f64>,
}

impl SpectralInput {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::Parameter("a spectral input needs at least one eigenvalue".into()));
        }
        if eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parameter(format!("non-finite eigenvalue in {eigenvalues:?}")));
        }
        Ok(Self { eigenvalues })
    }

    /// `m` zero eigenvalues.
    pub fn zeros(m: usize) -> Self {
        Self { eigenvalues: vec![0.0; m.max(1)] }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Matrix order `m`.
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn negated(&self) -> Self {
        Self { eigenvalues: self.eigenvalues.iter().map(|x| -x).collect() }
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self { eigenvalues: self.eigenvalues.iter().map(|x| alpha * x).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.eigenvalues.iter().all(|&x| x == 0.0)
    }
}

/// Coefficients of every `C_κ`, `κ ⊢ t`, in the monomial basis.
#[derive(Clone, Debug, Serialize)]
pub struct ZonalTable {
    degree: u32,
    max_parts: usize,
    /// Reverse lexicographic order.
    partitions: Vec<Partition>,
    /// `coefficients[k][l]` is the coefficient of `M_{partitions[l]}` in
    /// `C_{partitions[k]}`; zero for `l < k`.
    coefficients: Vec<Vec<f64>>,
    #[serde(skip)]
    index: HashMap<Partition, usize>,
}

impl ZonalTable {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn max_parts(&self) -> usize {
        self.max_parts
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, tau: &Partition) -> Option<usize> {
        self.index.get(tau).copied()
    }

    /// Coefficient of `M_λ` in `C_κ`.
    pub fn coefficient(&self, kappa: &Partition, lambda: &Partition) -> f64 {
        match (self.index_of(kappa), self.index_of(lambda)) {
            (Some(k), Some(l)) => self.coefficients[k][l],
            _ => 0.0,
        }
    }

    /// Deterministic JSON rendering, for regression artifacts.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Values `C_κ(x)` for every tabulated `κ`, in table order.
    pub fn evaluate_all(&self, x: &[f64]) -> Vec<f64> {
        let monomials: Vec<f64> = self.partitions.iter().map(|l| monomial_symmetric(l, x)).collect();
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, row)| (k..row.len()).map(|l| row[l] * monomials[l]).sum())
            .collect()
    }

    fn build(degree: u32, max_parts: usize) -> Self {
        let partitions = enumerate_partitions(degree, max_parts);
        let index: HashMap<Partition, usize> =
            partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = partitions.len();

        // raising moves λ → μ with their weights, shared by every κ
        let raises: Vec<Vec<(usize, f64)>> = partitions
            .iter()
            .map(|lambda| {
                let mut acc: HashMap<usize, f64> = HashMap::new();
                let parts = lambda.parts();
                for i in 0..parts.len() {
                    for j in (i + 1)..parts.len() {
                        for s in 1..=parts[j] {
                            let mut moved = parts.to_vec();
                            moved[i] += s;
                            moved[j] -= s;
                            let mu = Partition::from_unsorted(moved);
                            let w = (parts[i] + s) as f64 - (parts[j] - s) as f64;
                            *acc.entry(index[&mu]).or_insert(0.0) += w;
                        }
                    }
                }
                let mut list: Vec<(usize, f64)> = acc.into_iter().collect();
                list.sort_unstable_by_key(|&(i, _)| i);
                list
            })
            .collect();
        let rho: Vec<f64> = partitions.iter().map(|p| p.rho() as f64).collect();

        let mut coefficients = vec![vec![0.0; n]; n];
        for (k, kappa) in partitions.iter().enumerate() {
            let row = &mut coefficients[k];
            row[k] = 1.0;
            for l in (k + 1)..n {
                if !kappa.dominates(&partitions[l]) {
                    continue;
                }
                let sum: f64 = raises[l].iter().map(|&(mu, w)| w * row[mu]).sum();
                row[l] = sum / (rho[k] - rho[l]);
            }
            let lead = leading_coefficient(kappa);
            row.iter_mut().for_each(|c| *c *= lead);
        }

        Self { degree, max_parts, partitions, coefficients, index }
    }
}

/// Coefficient of `M_κ` in `C_κ`: `2^t t! / Π_{boxes} (2a + l + 2)` with
/// arm length `a` and leg length `l`.
pub fn leading_coefficient(kappa: &Partition) -> f64 {
    let conj = kappa.conjugate();
    let mut log_den = 0.0;
    for (i, &row) in kappa.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.part(j) as usize - i - 1;
            log_den += ((2 * arm + leg + 2) as f64).ln();
        }
    }
    let t = kappa.weight();
    (t as f64 * std::f64::consts::LN_2 + ln_factorial(t) - log_den).exp()
}

/// Monomial symmetric function `M_λ(x)`: the sum of `Π x_i^{α_i}` over the
/// distinct rearrangements `α` of `λ` padded with zeros to length `m`.
pub fn monomial_symmetric(lambda: &Partition, x: &[f64]) -> f64 {
    if lambda.len() > x.len() {
        return 0.0;
    }
    // distinct exponents with multiplicities, zero included as padding
    let mut values: Vec<(u32, usize)> = Vec::new();
    for &p in lambda.parts() {
        match values.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => values.push((p, 1)),
        }
    }
    let zeros = x.len() - lambda.len();
    if zeros > 0 {
        values.push((0, zeros));
    }
    fn walk(pos: usize, x: &[f64], values: &mut [(u32, usize)]) -> f64 {
        if pos == x.len() {
            return 1.0;
        }
        let mut total = 0.0;
        for v in 0..values.len() {
            if values[v].1 == 0 {
                continue;
            }
            values[v].1 -= 1;
            let factor = x[pos].powi(values[v].0 as i32);
            if factor != 0.0 {
                total += factor * walk(pos + 1, x, values);
            }
            values[v].1 += 1;
        }
        total
    }
    walk(0, x, &mut values)
}

type TableKey = (u32, usize);

fn cache() -> &'static RwLock<HashMap<TableKey, Arc<ZonalTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<TableKey, Arc<ZonalTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized table of degree `t` restricted to at most `max_parts` parts.
///
/// Concurrent builders of the same key may both compute it; the first one
/// stored wins and the other result is dropped.
pub fn table(t: u32, max_parts: usize) -> Result<Arc<ZonalTable>> {
    let ceiling = degree_ceiling();
    if t > ceiling {
        return Err(Error::DegreeCeiling { degree: t, ceiling });
    }
    let key = (t, max_parts.min(t as usize));
    if let Some(hit) = cache().read().expect("zonal cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let built = Arc::new(ZonalTable::build(key.0, key.1));
    let mut guard = cache().write().expect("zonal cache poisoned");
    Ok(guard.entry(key).or_insert(built).clone())
}

/// Complete table for every partition of `t`.
pub fn build_zonal_table(t: u32) -> Result<Arc<ZonalTable>> {
    table(t, t as usize)
}

/// `C_τ(X)` from the eigenvalues of `X`; zero when `τ` has more parts than `X`
/// has rows.
pub fn zonal_eval(tau: &Partition, x: &SpectralInput) -> Result<f64> {
    let m = x.dim();
    if tau.len() > m {
        return Ok(0.0);
    }
    let table = table(tau.weight(), m)?;
    let k = table.index_of(tau).expect("partition present in its own table");
    let row = &table.coefficients[k];
    Ok((k..row.len())
        .map(|l| row[l] * monomial_symmetric(&table.partitions[l], x.eigenvalues()))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn degree_one_and_two() {
        let t1 = build_zonal_table(1).unwrap();
        assert_eq!(t1.coefficient(&p(&[1]), &p(&[1])), 1.0);

        // C_(2) = M_2 + (2/3) M_11, C_(1,1) = (4/3) M_11
        let t2 = build_zonal_table(2).unwrap();
        assert!(close(t2.coefficient(&p(&[2]), &p(&[2])), 1.0, 1e-15));
        assert!(close(t2.coefficient(&p(&[2]), &p(&[1, 1])), 2.0 / 3.0, 1e-15));
        assert_eq!(t2.coefficient(&p(&[1, 1]), &p(&[2])), 0.0);
        assert!(close(t2.coefficient(&p(&[1, 1]), &p(&[1, 1])), 4.0 / 3.0, 1e-15));
    }

    #[test]
    fn degree_two_matches_power_sum_form() {
        // brute force: C_(2) = (p1² + 2 p2)/3, C_(1,1) = 2(p1² − p2)/3
        for x in [[0.3, 1.7], [2.0, -0.5], [1.0, 1.0]] {
            let s = SpectralInput::new(x.to_vec()).unwrap();
            let p1: f64 = x.iter().sum();
            let p2: f64 = x.iter().map(|v| v * v).sum();
            assert!(close(zonal_eval(&p(&[2]), &s).unwrap(), (p1 * p1 + 2.0 * p2) / 3.0, 1e-14));
            assert!(close(zonal_eval(&p(&[1, 1]), &s).unwrap(), 2.0 * (p1 * p1 - p2) / 3.0, 1e-14));
        }
    }

    #[test]
    fn evaluation_examples() {
        let s = SpectralInput::new(vec![2.0, 3.0]).unwrap();
        assert_eq!(zonal_eval(&p(&[1]), &s).unwrap(), 5.0);
        assert_eq!(zonal_eval(&p(&[1, 1, 1]), &s).unwrap(), 0.0);
        let ones = SpectralInput::new(vec![1.0, 1.0]).unwrap();
        assert!(close(zonal_eval(&p(&[2]), &ones).unwrap(), 8.0 / 3.0, 1e-15));
        assert_eq!(zonal_eval(&Partition::empty(), &s).unwrap(), 1.0);
    }

    // C_κ(I_m) = 2^{2k} k! (m/2)_κ Π_{i<j}(2k_i − 2k_j − i + j) / Π_i (2k_i + p − i)!
    fn identity_value(kappa: &Partition, m: usize) -> f64 {
        let k = kappa.weight();
        let parts = kappa.parts();
        let pl = parts.len();
        let mut log = 2.0 * k as f64 * std::f64::consts::LN_2 + ln_factorial(k);
        log += crate::partition::gen_pochhammer(m as f64 / 2.0, kappa).log_magnitude;
        for i in 0..pl {
            for j in (i + 1)..pl {
                log += ((2 * parts[i] as i64 - 2 * parts[j] as i64 - i as i64 + j as i64) as f64).ln();
            }
            log -= ln_factorial(2 * parts[i] + (pl - i - 1) as u32);
        }
        log.exp()
    }

    #[test]
    fn identity_values_match_closed_form() {
        for t in 1..=8 {
            for m in 1..=4 {
                let ones = SpectralInput::new(vec![1.0; m]).unwrap();
                for kappa in enumerate_partitions(t, m) {
                    let got = zonal_eval(&kappa, &ones).unwrap();
                    assert!(close(got, identity_value(&kappa, m), 1e-11), "{kappa} m={m}");
                }
            }
        }
    }

    #[test]
    fn normalization_at_identity() {
        for t in 0..=8u32 {
            for m in 1..=4usize {
                let table = table(t, m).unwrap();
                let ones = vec![1.0; m];
                let total: f64 = table.evaluate_all(&ones).iter().sum();
                assert!(close(total, (m as f64).powi(t as i32), 1e-12), "t={t} m={m}");
            }
        }
    }

    #[test]
    fn coefficients_non_negative() {
        for t in 0..=8 {
            let table = build_zonal_table(t).unwrap();
            for row in &table.coefficients {
                assert!(row.iter().all(|&c| c >= 0.0));
            }
        }
    }

    #[test]
    fn restricted_table_agrees_with_full_table() {
        let full = build_zonal_table(7).unwrap();
        let short = table(7, 3).unwrap();
        for kappa in short.partitions() {
            for lambda in short.partitions() {
                assert_eq!(full.coefficient(kappa, lambda), short.coefficient(kappa, lambda));
            }
        }
    }

    #[test]
    fn monomials() {
        let x = [2.0, 3.0, 5.0];
        assert_eq!(monomial_symmetric(&p(&[1]), &x), 10.0);
        assert_eq!(monomial_symmetric(&p(&[1, 1]), &x), 6.0 + 10.0 + 15.0);
        assert_eq!(monomial_symmetric(&p(&[2, 1]), &x), 4.0 * 3.0 + 4.0 * 5.0 + 9.0 * 2.0 + 9.0 * 5.0 + 25.0 * 2.0 + 25.0 * 3.0);
        assert_eq!(monomial_symmetric(&p(&[1, 1, 1, 1]), &x), 0.0);
        assert_eq!(monomial_symmetric(&Partition::empty(), &x), 1.0);
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(table(degree_ceiling() + 1, 2), Err(Error::DegreeCeiling { .. })));
    }

    #[test]
    fn json_dump_is_deterministic() {
        let a = build_zonal_table(3).unwrap().to_json();
        let b = ZonalTable::build(3, 3).to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"degree\": 3"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn spectrum() -> impl Strategy<Value = Vec<f64>> {
            prop::collection::vec(0.0f64..2.0, 1..=4)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn sum_over_partitions_is_trace_power(x in spectrum(), t in 0u32..=8) {
                let table = table(t, x.len()).unwrap();
                let total: f64 = table.evaluate_all(&x).iter().sum();
                let tr: f64 = x.iter().sum();
                prop_assert!((total - tr.powi(t as i32)).abs() <= 1e-10 * tr.powi(t as i32).max(1e-300));
            }

            #[test]
            fn homogeneous(x in spectrum(), t in 1u32..=6, alpha in prop::sample::select(vec![0.5, 2.0, 10.0])) {
                let s = SpectralInput::new(x.clone()).unwrap();
                let scaled = s.scaled(alpha);
                for kappa in enumerate_partitions(t, x.len()) {
                    let a = zonal_eval(&kappa, &scaled).unwrap();
                    let b = alpha.powi(t as i32) * zonal_eval(&kappa, &s).unwrap();
                    prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300));
                }
            }

            #[test]
            fn symmetric_in_eigenvalues(x in prop::collection::vec(-2.0f64..2.0, 2..=4), t in 1u32..=6) {
                let s = SpectralInput::new(x.clone()).unwrap();
                let mut rev = x.clone();
                rev.reverse();
                let r = SpectralInput::new(rev).unwrap();
                let scale: f64 = x.iter().map(|v| v.abs()).sum::<f64>().powi(t as i32);
                for kappa in enumerate_partitions(t, x.len()) {
                    let a = zonal_eval(&kappa, &s).unwrap();
                    let b = zonal_eval(&kappa, &r).unwrap();
                    prop_assert!((a - b).abs() <= 1e-13 * scale.max(1e-300));
                }
            }
        }
    }
}
