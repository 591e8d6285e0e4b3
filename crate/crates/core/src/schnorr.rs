//! Bounds on the blockwise reduction constants α_k and β_k.
//!
//! α_k bounds the squared ratio ‖b_1‖²/‖b_k*‖² over HKZ-reduced bases of
//! dimension k; β_k the k-th root of the squared half-volume ratio over
//! dimension 2k. Upper bounds come from chaining the primary Minkowski
//! inequalities; lower bounds from evaluating the worst-case profile.

use alloc::vec::Vec;

use crate::math::{self, CompensatedSum, EIGHT_PI_E};
use crate::psi::{PsiSpec, PsiTable};
use crate::{Error, Result};

/// Bounds for one block size k.
#[derive(Clone, Copy, Debug)]
pub struct SchnorrReport {
    pub k: usize,
    /// (f(1)/f(k))² on the k-dimensional worst-case profile; needs k ≥ 2.
    pub alpha_lower: Option<f64>,
    /// The telescoped Minkowski-chain bound k·∏_{m=1}^{k−1}(m+1)^{1/m}; needs k ≥ 2.
    pub alpha_upper: Option<f64>,
    /// (∏_{i≤k} f(i)² / ∏_{i>k} f(i)²)^{1/k} on the 2k-dimensional profile.
    pub beta_lower: f64,
    /// The classic reference bound k^{1+log k}.
    pub alpha_classic_upper: Option<f64>,
    /// The reference bound k^{2 log 2}/10.
    pub beta_upper_ref: f64,
}

/// Minkowski-chain upper bound on α_k for k ≥ 2:
/// exp(log k + Σ_{m=1}^{k−1} log(m+1)/m).
pub fn alpha_upper(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid("alpha bound needs block size at least 2"));
    }
    let mut acc = CompensatedSum::new();
    acc.add(math::ln(k as f64));
    for m in 1..k {
        acc.add(math::ln((m + 1) as f64) / m as f64);
    }
    Ok(math::exp(acc.value()))
}

fn alpha_upper_from_table(table: &PsiTable, k: usize) -> f64 {
    // With C = 1 the chain bound is exp(2·log f(k)); the table must carry
    // the identity psi.
    debug_assert_eq!(table.psi().log_coefficient(), 0.0);
    math::exp(2.0 * table.log_f(k))
}

/// Worst-case-profile bounds for one k (k ≥ 1; the alpha entries need k ≥ 2).
pub fn worst_case_constants(k: usize, psi: PsiSpec) -> Result<SchnorrReport> {
    if k < 1 {
        return Err(Error::invalid("block size must be at least 1"));
    }
    let table = PsiTable::new(psi, 2 * k);
    let mut sg = CompensatedSum::new();
    let mut sg_k = 0.0;
    for a in 1..=2 * k {
        sg.add(table.log_f(a));
        if a == k {
            sg_k = sg.value();
        }
    }
    let alpha_up = (k >= 2).then(|| alpha_upper(k).expect("k >= 2"));
    Ok(report_from_sums(k, &table, sg_k, sg.value(), alpha_up))
}

fn report_from_sums(
    k: usize,
    table: &PsiTable,
    sg_k: f64,
    sg_2k: f64,
    alpha_up: Option<f64>,
) -> SchnorrReport {
    let ln_k = math::ln(k as f64);
    let alpha_lower = (k >= 2).then(|| math::exp(2.0 * table.log_f(k)));
    let beta_lower = math::exp(2.0 / k as f64 * (sg_2k - 2.0 * sg_k));
    SchnorrReport {
        k,
        alpha_lower,
        alpha_upper: alpha_up,
        beta_lower,
        alpha_classic_upper: (k >= 2).then(|| math::exp((1.0 + ln_k) * ln_k)),
        beta_upper_ref: math::exp(2.0 * core::f64::consts::LN_2 * ln_k) / 10.0,
    }
}

/// Reports for every k in [1, k_max] with shared prefix tables (O(k_max) setup).
pub fn constants_sweep(k_max: usize, psi: PsiSpec) -> Result<Vec<SchnorrReport>> {
    if k_max < 1 {
        return Err(Error::invalid("sweep needs block size at least 1"));
    }
    let table = PsiTable::new(psi, 2 * k_max);
    let chain = PsiTable::new(PsiSpec::identity(), k_max.max(2));
    let mut sg = Vec::with_capacity(2 * k_max + 1);
    sg.push(0.0);
    let mut acc = CompensatedSum::new();
    for a in 1..=2 * k_max {
        acc.add(table.log_f(a));
        sg.push(acc.value());
    }
    Ok((1..=k_max)
        .map(|k| {
            let mut r = report_from_sums(k, &table, sg[k], sg[2 * k]);
            if k >= 2 {
                // One table-backed evaluation, O(1) per k.
                r.alpha_upper = Some(alpha_upper_from_table(&chain, k));
            }
            r
        })
        .collect())
}

/// Quality factor of a k-BKZ-reduced basis against the lattice minimum:
/// min(k^{(d−1)/(k−1)}, α_k^{(d−1)/(k−1)−1}) with α_k the chain bound.
pub fn hierarchy_quality(d: usize, k: usize) -> Result<f64> {
    if k < 2 || k > d {
        return Err(Error::invalid("need 2 <= k <= d"));
    }
    let e = (d - 1) as f64 / (k - 1) as f64;
    let log_first = e * math::ln(k as f64);
    let log_second = (e - 1.0) * math::ln(alpha_upper(k)?);
    Ok(math::exp(log_first.min(log_second)))
}

/// Gap between the first vector of the bad-BKZ profile and the Minkowski
/// bound √d·(∏ f)^{1/d}.
#[derive(Clone, Copy, Debug)]
pub struct BadBkzQuality {
    /// f(1)/(√d·(∏f)^{1/d}) = (1/√d)·((k−1)/(8πe))^{(d−1)/(2k)}.
    pub ratio: f64,
    /// The √d-scaled variant quoted elsewhere (differs by a factor of d).
    pub sqrt_d_scaled: f64,
}

/// Requires d > k ≥ 70 (so the profile ratio sits below 1).
pub fn bad_bkz_quality(d: usize, k: usize) -> Result<BadBkzQuality> {
    if k < 70 {
        return Err(Error::invalid("block size must be at least 70"));
    }
    if d <= k {
        return Err(Error::invalid("dimension must exceed the block size"));
    }
    let log_base = math::ln((k - 1) as f64 / EIGHT_PI_E);
    let exponent = (d - 1) as f64 / (2.0 * k as f64);
    let log_ratio = -0.5 * math::ln(d as f64) + exponent * log_base;
    let ratio = math::exp(log_ratio);
    Ok(BadBkzQuality {
        ratio,
        sqrt_d_scaled: math::exp(log_ratio + math::ln(d as f64)),
    })
}
