//! Randomized-construction existence conditions for HKZ and k-BKZ bases.
//!
//! The central quantity is, for each end index j,
//!
//!   S(j) = Σ_i (2πe/(j−i))^{(j−i)/2} (1 − (f(j)/f(i))²)_+^{(j−i)/2} ∏_{k=i..j} f(i)/f(k),
//!
//! with i ranging over [1, j−1] for the HKZ condition and over
//! [max(j−k+1, 1), j−1] for the k-BKZ one. max_j S(j) < 1 certifies that a
//! basis with the given Gram–Schmidt profile exists. Terms are evaluated as
//! exp(log term), the clamp is applied before exponentiation, and prefix
//! sums make each term O(1).

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{self, CompensatedSum, TWO_PI_E};
use crate::profile::Profile;
use crate::psi::{PsiSpec, PsiTable};
use crate::{Error, Result};

/// Per-index condition sums and the overall verdict.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    /// S(j) for j = 2..=d.
    pub per_index_sums: Vec<f64>,
    pub max_sum: f64,
    /// The j attaining `max_sum`.
    pub max_index: usize,
    /// max_sum < 1.
    pub satisfied: bool,
    /// Terms clamped to zero by (·)_+.
    pub zero_term_count: u64,
}

/// log of 1 − exp(u) for u < 0, branching as the ratio size dictates:
/// log1p on the small-ratio side, the expm1 complement near 1.
#[inline]
fn log_one_minus_exp(u: f64) -> f64 {
    debug_assert!(u < 0.0);
    let r2 = math::exp(u);
    if r2 < 0.5 {
        math::ln_1p(-r2)
    } else {
        math::ln(-math::expm1(u))
    }
}

fn condition_sums<F>(p: &Profile, lower_index: F) -> (Vec<f64>, u64)
where
    F: Fn(usize) -> usize,
{
    let d = p.dimension();
    let lf = p.log_norms();
    // Prefix sums of log norms: pre[j] = Σ_{k=1..j} lf[k-1].
    let mut pre = Vec::with_capacity(d + 1);
    pre.push(0.0);
    let mut acc = CompensatedSum::new();
    for &v in lf {
        acc.add(v);
        pre.push(acc.value());
    }
    let lnl: Vec<f64> = (0..d).map(|l| math::ln(l.max(1) as f64)).collect();
    let ln_2pie = math::ln(TWO_PI_E);

    let mut sums = Vec::with_capacity(d - 1);
    let mut zero_terms = 0u64;
    for j in 2..=d {
        let mut s = CompensatedSum::new();
        let lfj = lf[j - 1];
        for i in lower_index(j)..j {
            let lfi = lf[i - 1];
            if lfj >= lfi {
                zero_terms += 1;
                continue;
            }
            let l = (j - i) as f64;
            let log_t1 = 0.5 * l * log_one_minus_exp(2.0 * (lfj - lfi));
            let log_prod = (l + 1.0) * lfi - (pre[j] - pre[i - 1]);
            let log_term = 0.5 * l * (ln_2pie - lnl[j - i]) + log_t1 + log_prod;
            s.add(math::exp(log_term));
        }
        sums.push(s.value());
    }
    (sums, zero_terms)
}

fn report_from_sums(sums: Vec<f64>, zero_terms: u64) -> ConditionReport {
    let (mut max_sum, mut max_index) = (f64::NEG_INFINITY, 2);
    for (idx, &s) in sums.iter().enumerate() {
        if s > max_sum {
            max_sum = s;
            max_index = idx + 2;
        }
    }
    ConditionReport {
        satisfied: max_sum < 1.0,
        per_index_sums: sums,
        max_sum,
        max_index,
        zero_term_count: zero_terms,
    }
}

/// Existence condition for a fully HKZ-reduced basis with profile `p`.
pub fn hkz_existence_margin(p: &Profile) -> Result<ConditionReport> {
    bkz_existence_margin(p, p.dimension())
}

/// Existence condition for a k-BKZ-reduced basis: the inner sum is
/// truncated to i ≥ j−k+1. With k = d this is bit-for-bit the HKZ report.
pub fn bkz_existence_margin(p: &Profile, k: usize) -> Result<ConditionReport> {
    let d = p.dimension();
    if d < 2 {
        return Err(Error::invalid("existence condition needs dimension at least 2"));
    }
    if k < 2 || k > d {
        return Err(Error::invalid("block size out of range"));
    }
    let (sums, zeros) = condition_sums(p, |j| j.saturating_sub(k - 1).max(1));
    Ok(report_from_sums(sums, zeros))
}

/// Necessary condition from the Minkowski chain, with Hermite's constant
/// bounded by its dimension: Σ_i (4(j−i+1))^{−(j−i)/2}(1−(f(j)/f(i))²)_+^{(j−i)/2}∏ f(i)/f(k) < 1.
///
/// A violation flags a profile no HKZ-reduced basis can achieve.
pub fn necessary_condition_margin(p: &Profile) -> Result<ConditionReport> {
    let d = p.dimension();
    if d < 2 {
        return Err(Error::invalid("necessary condition needs dimension at least 2"));
    }
    let lf = p.log_norms();
    let mut pre = Vec::with_capacity(d + 1);
    pre.push(0.0);
    let mut acc = CompensatedSum::new();
    for &v in lf {
        acc.add(v);
        pre.push(acc.value());
    }
    let mut sums = Vec::with_capacity(d - 1);
    let mut zero_terms = 0u64;
    for j in 2..=d {
        let mut s = CompensatedSum::new();
        let lfj = lf[j - 1];
        for i in 1..j {
            let lfi = lf[i - 1];
            if lfj >= lfi {
                zero_terms += 1;
                continue;
            }
            let l = (j - i) as f64;
            let log_t1 = 0.5 * l * log_one_minus_exp(2.0 * (lfj - lfi));
            let log_prod = (l + 1.0) * lfi - (pre[j] - pre[i - 1]);
            let log_term = -0.5 * l * math::ln(4.0 * (l + 1.0)) + log_t1 + log_prod;
            s.add(math::exp(log_term));
        }
        sums.push(s.value());
    }
    Ok(report_from_sums(sums, zero_terms))
}

/// Probability bound for the last-vector drawing step: the chance that some
/// lattice vector with nonzero last coordinate undercuts ‖b_1‖ is at most
///
///   (2πe/(d−1))^{(d−1)/2} Σ_{x>0} (1 − (x f(d)/f(1))²)_+^{(d−1)/2} ∏_{i<d} f(1)/f(i).
///
/// The sum truncates at x = ⌊f(1)/f(d)⌋; the bound may exceed 1 (vacuous).
pub fn core_probability_bound(p: &Profile) -> Result<f64> {
    let d = p.dimension();
    if d < 2 {
        return Err(Error::invalid("probability bound needs dimension at least 2"));
    }
    let lf = p.log_norms();
    let lf1 = lf[0];
    let lfd = lf[d - 1];
    let mut base = CompensatedSum::new();
    base.add(0.5 * (d - 1) as f64 * (math::ln(TWO_PI_E) - math::ln((d - 1) as f64)));
    for &v in &lf[..d - 1] {
        base.add(lf1 - v);
    }
    let base = base.value();
    let log_ratio = lfd - lf1; // log(f(d)/f(1))
    let mut sum = CompensatedSum::new();
    let mut x = 1u64;
    loop {
        let u = 2.0 * (math::ln(x as f64) + log_ratio);
        if u >= 0.0 {
            break; // x f(d) ≥ f(1): this and all later terms clamp to zero
        }
        sum.add(math::exp(base + 0.5 * (d - 1) as f64 * log_one_minus_exp(u)));
        x += 1;
    }
    Ok(sum.value())
}

/// The per-term breakdown of the geometric-profile k-BKZ condition
/// Σ_{l=1}^{k−1} ((4πe/(lc))·sinh(−l log c))^{l/2}.
#[derive(Clone, Debug)]
pub struct GeometricConditionSum {
    pub sum: f64,
    pub terms: Vec<f64>,
    /// Whether every term is ≤ 1/4 (the sufficient per-term check).
    pub all_terms_at_most_quarter: bool,
}

/// Evaluate the geometric condition sum for block size k and ratio c ∈ (0,1).
pub fn geometric_condition_sum(k: usize, c: f64) -> Result<GeometricConditionSum> {
    if k < 2 {
        return Err(Error::invalid("block size must be at least 2"));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::invalid("geometric ratio must lie in (0, 1)"));
    }
    let lc = math::ln(c);
    let ln_4pie = math::ln(2.0 * TWO_PI_E);
    let mut sum = CompensatedSum::new();
    let mut terms = Vec::with_capacity(k - 1);
    let mut all_quarter = true;
    for l in 1..k {
        let y = -(l as f64) * lc;
        // sinh through expm1 keeps the digits when c is near 1.
        let log_base = ln_4pie - math::ln(l as f64) - lc + math::ln_sinh(y);
        if log_base > math::ln(0.25) {
            all_quarter = false;
        }
        let term = math::exp(0.5 * l as f64 * log_base);
        terms.push(term);
        sum.add(term);
    }
    Ok(GeometricConditionSum {
        sum: sum.value(),
        terms,
        all_terms_at_most_quarter: all_quarter,
    })
}

/// Result of the bisection for the smallest admissible geometric ratio.
#[derive(Clone, Copy, Debug)]
pub struct GeometricSearchResult {
    pub k: usize,
    pub c_star: f64,
    pub condition_at_c_star: f64,
    pub iterations: u32,
    pub bracket: (f64, f64),
}

const BISECTION_CAP: u32 = 200;

/// Bisect for the smallest c with condition sum < 1. The sum is strictly
/// decreasing in c on (0,1), so the bracket (0.5, 1−2⁻⁴⁰) always straddles
/// the root for k ≥ 2.
pub fn minimal_geometric_ratio(k: usize, tol: f64) -> Result<GeometricSearchResult> {
    if k < 2 {
        return Err(Error::invalid("block size must be at least 2"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let mut lo = 0.5;
    let mut hi = 1.0 - 2f64.powi(-40);
    if geometric_condition_sum(k, lo)?.sum < 1.0 || geometric_condition_sum(k, hi)?.sum >= 1.0 {
        return Err(Error::NoSignChange);
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        if geometric_condition_sum(k, mid)?.sum < 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(GeometricSearchResult {
        k,
        c_star: hi,
        condition_at_c_star: geometric_condition_sum(k, hi)?.sum,
        iterations,
        bracket: (lo, hi),
    })
}

/// max_j S(j) of the HKZ condition for every worst-case profile dimension
/// up to `d_max`, in one O(d_max²) pass.
///
/// Worst-case terms depend only on the depth pair (a, b) = (d−i+1, d−j+1),
/// so the dimension-d sums are partial column sums of a single triangular
/// array; entry d−2 of the result is max_j S(j) for dimension d, equal to
/// [`hkz_existence_margin`] on that profile up to summation order.
pub fn worst_case_hkz_sweep(d_max: usize, psi: PsiSpec) -> Result<Vec<f64>> {
    if d_max < 2 {
        return Err(Error::invalid("sweep needs dimension at least 2"));
    }
    let table = PsiTable::new(psi, d_max);
    let g: Vec<f64> = (0..=d_max).map(|a| if a == 0 { 0.0 } else { table.log_f(a) }).collect();
    let mut sg = Vec::with_capacity(d_max + 1); // sg[a] = Σ_{t=1..a} G(t)
    sg.push(0.0);
    let mut acc = CompensatedSum::new();
    for a in 1..=d_max {
        acc.add(g[a]);
        sg.push(acc.value());
    }
    let lnl: Vec<f64> = (0..d_max).map(|l| math::ln(l.max(1) as f64)).collect();
    let ln_2pie = math::ln(TWO_PI_E);

    let mut cols = vec![CompensatedSum::new(); d_max + 1]; // indexed by depth b
    let mut running_max = f64::NEG_INFINITY;
    let mut out = Vec::with_capacity(d_max - 1);
    for a in 2..=d_max {
        let ga = g[a];
        for b in 1..a {
            let gb = g[b];
            if gb >= ga {
                // clamped term contributes nothing
                continue;
            }
            let l = (a - b) as f64;
            let log_t1 = 0.5 * l * log_one_minus_exp(2.0 * (gb - ga));
            let log_prod = (l + 1.0) * ga - (sg[a] - sg[b - 1]);
            let term = math::exp(0.5 * l * (ln_2pie - lnl[a - b]) + log_t1 + log_prod);
            cols[b].add(term);
            let v = cols[b].value();
            if v > running_max {
                running_max = v;
            }
        }
        out.push(running_max.max(0.0));
    }
    Ok(out)
}
