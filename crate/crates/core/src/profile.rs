//! Gram–Schmidt norm profiles in the log domain.
//!
//! A profile stores log‖b_i*‖ for i = 1..d. Everything is computed and
//! combined in logs; linear-domain norms only appear at output boundaries.

use alloc::vec::Vec;

use crate::math::{self, EIGHT_PI_E};
use crate::psi::{PsiSpec, PsiTable};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    WorstHkz,
    DualHkz,
    Geometric,
    BadBkz,
    Custom,
}

impl ProfileKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProfileKind::WorstHkz => "worst_hkz",
            ProfileKind::DualHkz => "dual_hkz",
            ProfileKind::Geometric => "geometric",
            ProfileKind::BadBkz => "bad_bkz",
            ProfileKind::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "worst_hkz" => ProfileKind::WorstHkz,
            "dual_hkz" => ProfileKind::DualHkz,
            "geometric" => ProfileKind::Geometric,
            "bad_bkz" => ProfileKind::BadBkz,
            "custom" => ProfileKind::Custom,
            _ => return Err(Error::invalid("unknown profile kind")),
        })
    }
}

/// A dimension plus the log Gram–Schmidt norm sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    d: usize,
    log_norms: Vec<f64>,
    kind: ProfileKind,
    psi: Option<PsiSpec>,
}

impl Profile {
    /// Worst-case HKZ profile: log‖b_i*‖ = G(d−i+1) with
    /// G(a) = ½log a + ½Σ_{m=1}^{a−1}(log C + log(m+1))/m.
    pub fn worst_case(d: usize, psi: PsiSpec) -> Result<Profile> {
        let table = PsiTable::new(psi, d.max(1));
        Self::worst_case_from_table(&table, d)
    }

    /// Same as [`Profile::worst_case`] but reusing a prefix-sum table, so
    /// profiles of different dimensions agree bit-for-bit at equal depths.
    pub fn worst_case_from_table(table: &PsiTable, d: usize) -> Result<Profile> {
        if d == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if table.a_max() < d {
            return Err(Error::invalid("psi table shorter than requested dimension"));
        }
        let log_norms = (1..=d).map(|i| table.log_f(d - i + 1)).collect();
        Ok(Profile {
            d,
            log_norms,
            kind: ProfileKind::WorstHkz,
            psi: Some(table.psi()),
        })
    }

    /// Dual worst-case profile: pointwise reciprocal at equal depth.
    pub fn dual_worst_case(d: usize, psi: PsiSpec) -> Result<Profile> {
        let mut p = Self::worst_case(d, psi)?;
        for v in &mut p.log_norms {
            *v = -*v;
        }
        p.kind = ProfileKind::DualHkz;
        Ok(p)
    }

    /// Geometric profile ‖b_i*‖ = c^i for 0 < c ≤ 1.
    pub fn geometric(d: usize, c: f64) -> Result<Profile> {
        if d == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::invalid("geometric ratio must lie in (0, 1]"));
        }
        let lc = math::ln(c);
        let log_norms = (1..=d).map(|i| i as f64 * lc).collect();
        Ok(Profile {
            d,
            log_norms,
            kind: ProfileKind::Geometric,
            psi: None,
        })
    }

    /// Bad-BKZ profile ‖b_i*‖ = (8πe/(k−1))^{i/k}, i.e. geometric with
    /// c = (8πe/(k−1))^{1/k}. Returns the profile and the computed c.
    ///
    /// Requires d > k and 8πe/(k−1) < 1; the smallest admissible block
    /// size is k = 70 (8πe ≈ 68.318, so k = 69 gives a ratio above 1).
    pub fn bad_bkz(d: usize, k: usize) -> Result<(Profile, f64)> {
        if k < 2 {
            return Err(Error::invalid("block size must be at least 2"));
        }
        let ratio = EIGHT_PI_E / (k - 1) as f64;
        if ratio >= 1.0 {
            return Err(Error::RatioNotBelowOne { k, ratio });
        }
        if d <= k {
            return Err(Error::invalid("dimension must exceed the block size"));
        }
        let c = math::exp(math::ln(ratio) / k as f64);
        let mut p = Self::geometric(d, c)?;
        p.kind = ProfileKind::BadBkz;
        Ok((p, c))
    }

    /// Build from raw log norms, validating shape and finiteness.
    pub fn from_log_norms(
        d: usize,
        log_norms: Vec<f64>,
        kind: ProfileKind,
        psi: Option<PsiSpec>,
    ) -> Result<Profile> {
        if d == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if log_norms.len() != d {
            return Err(Error::invalid("log norm count does not match dimension"));
        }
        if log_norms.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("log norms must be finite"));
        }
        if kind == ProfileKind::WorstHkz && log_norms[d - 1] != 0.0 {
            return Err(Error::invalid("worst-case profile must end at log norm 0"));
        }
        Ok(Profile {
            d,
            log_norms,
            kind,
            psi,
        })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn log_norms(&self) -> &[f64] {
        &self.log_norms
    }

    /// log‖b_i*‖ with 1-based index.
    #[inline]
    pub fn log_norm(&self, i: usize) -> f64 {
        self.log_norms[i - 1]
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn psi(&self) -> Option<PsiSpec> {
        self.psi
    }

    /// Linear-domain norms (output boundary only).
    pub fn norms(&self) -> Vec<f64> {
        self.log_norms.iter().map(|&v| math::exp(v)).collect()
    }

    /// f(i)/f(k) = exp(log‖b_i*‖ − log‖b_k*‖) for 1 ≤ i ≤ k ≤ d.
    pub fn ratio(&self, i: usize, k: usize) -> Result<f64> {
        if i < 1 || k < i || k > self.d {
            return Err(Error::invalid("ratio indices out of range"));
        }
        Ok(math::exp(self.log_norms[i - 1] - self.log_norms[k - 1]))
    }

    /// Log-negation involution; swaps the worst-case and dual kinds.
    pub fn dual(&self) -> Profile {
        let kind = match self.kind {
            ProfileKind::WorstHkz => ProfileKind::DualHkz,
            ProfileKind::DualHkz => ProfileKind::WorstHkz,
            _ => ProfileKind::Custom,
        };
        Profile {
            d: self.d,
            log_norms: self.log_norms.iter().map(|&v| -v).collect(),
            kind,
            psi: self.psi,
        }
    }
}

/// G(a) − (log²a/4 + ((1 + log C)/2)·log a): the bounded remainder of the
/// large-depth expansion of the worst-case profile.
pub fn asymptotic_residual(a: usize, psi: PsiSpec) -> Result<f64> {
    let table = PsiTable::new(psi, a.max(1));
    asymptotic_residual_from_table(&table, a)
}

/// Table-reusing variant for residual sweeps.
pub fn asymptotic_residual_from_table(table: &PsiTable, a: usize) -> Result<f64> {
    if a == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    if table.a_max() < a {
        return Err(Error::invalid("psi table shorter than requested depth"));
    }
    let la = math::ln(a as f64);
    let main = 0.25 * la * la + 0.5 * (1.0 + table.psi().log_coefficient()) * la;
    Ok(table.log_f(a) - main)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// Independent oracle: term-by-term evaluation of the closed-form
    /// product √(d−i+1)·∏_{l=i+1}^d (C(d−l+2))^{1/(2(d−l+1))} in logs.
    fn closed_form_log_norm(d: usize, i: usize, log_c: f64) -> f64 {
        let mut acc = 0.5 * math::ln((d - i + 1) as f64);
        for l in (i + 1)..=d {
            acc += (log_c + math::ln((d - l + 2) as f64)) / (2.0 * (d - l + 1) as f64);
        }
        acc
    }

    #[test]
    fn rejects_zero_dimension() {
        assert!(Profile::worst_case(0, PsiSpec::e_minus_6()).is_err());
        assert!(Profile::geometric(0, 0.5).is_err());
    }

    #[test]
    fn one_dimensional_profile_is_unit() {
        let p = Profile::worst_case(1, PsiSpec::e_minus_6()).unwrap();
        assert_eq!(p.log_norms(), &[0.0]);
        assert_eq!(p.norms(), vec![1.0]);
    }

    #[test]
    fn worst_case_matches_closed_form_product() {
        for d in [2usize, 3, 7, 50, 311] {
            let p = Profile::worst_case(d, PsiSpec::e_minus_6()).unwrap();
            for i in 1..=d {
                let oracle = closed_form_log_norm(d, i, -6.0);
                let got = p.log_norm(i);
                assert!(
                    (got - oracle).abs() <= 1e-12 * oracle.abs().max(1.0),
                    "d={d} i={i}: {got} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn two_dimensional_norms() {
        let p = Profile::worst_case(2, PsiSpec::e_minus_6()).unwrap();
        let n = p.norms();
        assert!((n[0] - 2.0 * math::exp(-3.0)).abs() < 1e-15);
        assert_eq!(n[1], 1.0);
    }

    #[test]
    fn shift_invariance_to_the_last_bit() {
        let table = PsiTable::new(PsiSpec::e_minus_6(), 200);
        let p_small = Profile::worst_case_from_table(&table, 60).unwrap();
        let p_large = Profile::worst_case_from_table(&table, 200).unwrap();
        for a in 1..=60usize {
            let i_small = 60 - a + 1;
            let i_large = 200 - a + 1;
            assert_eq!(p_small.log_norm(i_small), p_large.log_norm(i_large));
        }
        // Independently built tables agree too: same accumulation order.
        let p_alone = Profile::worst_case(60, PsiSpec::e_minus_6()).unwrap();
        assert_eq!(p_alone.log_norms(), p_small.log_norms());
    }

    #[test]
    fn dual_is_pointwise_reciprocal() {
        let p = Profile::worst_case(9, PsiSpec::e_minus_6()).unwrap();
        let q = Profile::dual_worst_case(9, PsiSpec::e_minus_6()).unwrap();
        for i in 1..=9 {
            assert_eq!(q.log_norm(i), -p.log_norm(i));
        }
        // d = 2: first norm is 1/(2e⁻³).
        let q2 = Profile::dual_worst_case(2, PsiSpec::e_minus_6()).unwrap();
        assert!((q2.norms()[0] - 1.0 / (2.0 * math::exp(-3.0))).abs() < 1e-12);
        // Negation is an involution.
        assert_eq!(q.dual(), p);
    }

    #[test]
    fn geometric_examples() {
        let p = Profile::geometric(3, 0.5).unwrap();
        let n = p.norms();
        assert!((n[0] - 0.5).abs() < 1e-15);
        assert!((n[1] - 0.25).abs() < 1e-15);
        assert!((n[2] - 0.125).abs() < 1e-15);
        let flat = Profile::geometric(4, 1.0).unwrap();
        assert_eq!(flat.norms(), vec![1.0; 4]);
        let p2 = Profile::geometric(2, 0.972).unwrap();
        assert!((p2.norms()[1] - 0.944784).abs() < 1e-6);
        assert!(Profile::geometric(3, 0.0).is_err());
        assert!(Profile::geometric(3, 1.5).is_err());
    }

    #[test]
    fn bad_bkz_ratio_threshold() {
        match Profile::bad_bkz(200, 69) {
            Err(Error::RatioNotBelowOne { ratio, .. }) => {
                assert!((ratio - EIGHT_PI_E / 68.0).abs() < 1e-12);
                assert!(ratio > 1.0);
            }
            other => panic!("expected ratio error, got {other:?}"),
        }
        let (_, c70) = Profile::bad_bkz(200, 70).unwrap();
        assert!((c70 - math::exp(math::ln(EIGHT_PI_E / 69.0) / 70.0)).abs() < 1e-15);
        assert!((c70 - 0.999858).abs() < 1e-6);
        let (p, c100) = Profile::bad_bkz(300, 100).unwrap();
        assert!((c100 - 0.9962974).abs() < 1e-7);
        assert!((p.log_norm(5) - 5.0 * math::ln(c100)).abs() < 1e-15);
        assert!(Profile::bad_bkz(70, 70).is_err());
    }

    #[test]
    fn ratio_examples() {
        let p3 = Profile::worst_case(3, PsiSpec::e_minus_6()).unwrap();
        assert_eq!(p3.ratio(2, 2).unwrap(), 1.0);
        let expect = math::exp(
            closed_form_log_norm(3, 1, -6.0) - closed_form_log_norm(3, 2, -6.0),
        );
        assert!((p3.ratio(1, 2).unwrap() - expect).abs() < 1e-12);
        assert!((expect - 0.359654).abs() < 1e-5);
        let p2 = Profile::worst_case(2, PsiSpec::e_minus_6()).unwrap();
        assert!((p2.ratio(1, 2).unwrap() - 2.0 * math::exp(-3.0)).abs() < 1e-15);
        assert!(p3.ratio(2, 1).is_err());
        assert!(p3.ratio(1, 4).is_err());
        assert!(p3.ratio(0, 2).is_err());
    }

    #[test]
    fn residual_examples() {
        let psi = PsiSpec::e_minus_6();
        assert_eq!(asymptotic_residual(1, psi).unwrap(), 0.0);
        let r2 = asymptotic_residual(2, psi).unwrap();
        let ln2 = core::f64::consts::LN_2;
        let expect = (ln2 - 3.0) - (0.25 * ln2 * ln2 - 2.5 * ln2);
        assert!((r2 - expect).abs() < 1e-12);
        assert!((r2 - (-0.694098)).abs() < 1e-6);
        assert!(asymptotic_residual(0, psi).is_err());
    }

    #[test]
    fn worst_case_monotonicity_and_valley() {
        // Increasing in index (decreasing in depth) for depths up to 148,
        // with the minimum of G at depth 148.
        let table = PsiTable::new(PsiSpec::e_minus_6(), 400);
        for a in 2..=148 {
            assert!(table.log_f(a) < table.log_f(a - 1), "depth {a}");
        }
        let mut argmin = 1;
        for a in 1..=400 {
            if table.log_f(a) < table.log_f(argmin) {
                argmin = a;
            }
        }
        assert_eq!(argmin, 148);
        assert!((100..=200).contains(&argmin));
    }

    #[test]
    fn from_log_norms_validation() {
        assert!(Profile::from_log_norms(2, vec![0.0], ProfileKind::Custom, None).is_err());
        assert!(
            Profile::from_log_norms(2, vec![f64::NAN, 0.0], ProfileKind::Custom, None).is_err()
        );
        assert!(
            Profile::from_log_norms(2, vec![-1.0, 0.5], ProfileKind::WorstHkz, None).is_err()
        );
        assert!(Profile::from_log_norms(2, vec![-1.0, 0.0], ProfileKind::WorstHkz, None).is_ok());
    }
}
