//! The linear shape function ψ(x) = C·x and its prefix-sum cache.
//!
//! All downstream formulas consume log ψ, so the log of the coefficient is
//! the primary parameter; `from_log_coefficient(-6.0)` represents C = e⁻⁶
//! exactly.

use alloc::vec::Vec;

use crate::math::{self, CompensatedSum};
use crate::{Error, Result};

/// Parameters of ψ(x) = C·x. C = 1 encodes ψ(x) = x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiSpec {
    log_c: f64,
}

impl PsiSpec {
    /// From the linear coefficient C > 0.
    pub fn new(linear_coefficient: f64) -> Result<Self> {
        if !(linear_coefficient > 0.0) || !linear_coefficient.is_finite() {
            return Err(Error::invalid("psi linear coefficient must be positive and finite"));
        }
        Ok(Self {
            log_c: math::ln(linear_coefficient),
        })
    }

    /// From log C directly, avoiding an exp/ln round trip.
    pub fn from_log_coefficient(log_c: f64) -> Result<Self> {
        if !log_c.is_finite() {
            return Err(Error::invalid("log of psi coefficient must be finite"));
        }
        Ok(Self { log_c })
    }

    /// C = e⁻⁶, the coefficient of the worst-case construction.
    pub fn e_minus_6() -> Self {
        Self { log_c: -6.0 }
    }

    /// C = 1, i.e. ψ(x) = x.
    pub fn identity() -> Self {
        Self { log_c: 0.0 }
    }

    pub fn linear_coefficient(&self) -> f64 {
        math::exp(self.log_c)
    }

    pub fn log_coefficient(&self) -> f64 {
        self.log_c
    }

    /// log ψ(x) = log C + log x.
    #[inline]
    pub fn log_psi(&self, x: f64) -> f64 {
        self.log_c + math::ln(x)
    }
}

/// Prefix sums of log ψ(m+1)/m over depth m, cached per [`PsiSpec`].
///
/// Entry `r[m] = Σ_{l=1}^{m} log ψ(l+1)/l` is accumulated with compensated
/// summation in a fixed order, so a given (ψ, depth) pair yields the same
/// bits regardless of the table length it was read from. After the O(a_max)
/// build, `log_f(a)` is O(1).
#[derive(Clone, Debug)]
pub struct PsiTable {
    psi: PsiSpec,
    r: Vec<f64>,
}

impl PsiTable {
    pub fn new(psi: PsiSpec, a_max: usize) -> Self {
        let mut r = Vec::with_capacity(a_max.max(1));
        r.push(0.0);
        let mut acc = CompensatedSum::new();
        for m in 1..a_max {
            acc.add((psi.log_c + math::ln((m + 1) as f64)) / m as f64);
            r.push(acc.value());
        }
        Self { psi, r }
    }

    pub fn psi(&self) -> PsiSpec {
        self.psi
    }

    pub fn a_max(&self) -> usize {
        self.r.len()
    }

    /// log f at depth a, i.e. the log Gram–Schmidt norm at distance
    /// a = d−i+1 from the end of the basis: ½ log a + ½ Σ_{m<a} (log C + log(m+1))/m.
    #[inline]
    pub fn log_f(&self, a: usize) -> f64 {
        debug_assert!(a >= 1 && a <= self.r.len());
        0.5 * math::ln(a as f64) + 0.5 * self.r[a - 1]
    }

    /// Raw prefix value Σ_{l=1}^{m} log ψ(l+1)/l.
    #[inline]
    pub fn r_prefix(&self, m: usize) -> f64 {
        self.r[m]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_coefficients() {
        assert!(PsiSpec::new(0.0).is_err());
        assert!(PsiSpec::new(-1.0).is_err());
        assert!(PsiSpec::new(f64::NAN).is_err());
        assert!(PsiSpec::new(1.0).is_ok());
    }

    #[test]
    fn e_minus_6_log_is_exact() {
        assert_eq!(PsiSpec::e_minus_6().log_coefficient(), -6.0);
    }

    #[test]
    fn depth_one_is_unit_norm() {
        let t = PsiTable::new(PsiSpec::e_minus_6(), 10);
        assert_eq!(t.log_f(1), 0.0);
    }

    #[test]
    fn depth_two_closed_form() {
        // log f(2) = ½log 2 + ½(log C + log 2) = log 2 − 3 for C = e⁻⁶.
        let t = PsiTable::new(PsiSpec::e_minus_6(), 10);
        let expect = core::f64::consts::LN_2 - 3.0;
        assert!((t.log_f(2) - expect).abs() < 1e-15);
    }

    #[test]
    fn prefix_values_are_table_length_independent() {
        let short = PsiTable::new(PsiSpec::e_minus_6(), 50);
        let long = PsiTable::new(PsiSpec::e_minus_6(), 5000);
        for a in 1..=50 {
            assert_eq!(short.log_f(a), long.log_f(a), "depth {a}");
        }
    }
}
