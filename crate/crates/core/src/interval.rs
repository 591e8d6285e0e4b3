//! Outward-rounded interval arithmetic for the rigorous scan mode.
//!
//! Every arithmetic result is widened by one ulp on each side, which
//! covers the at-most-half-ulp error of correctly rounded IEEE-754
//! operations. Transcendental results are widened by [`TRANS_ULPS`] ulps,
//! covering the ~1 ulp worst case of the std/libm implementations. An
//! inequality `x ≤ 0` is certified when the interval's upper bound is
//! non-positive.

use crate::math;

/// Ulps of widening applied after ln/exp/ln_1p calls.
pub const TRANS_ULPS: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

#[inline]
fn down(x: f64, ulps: u32) -> f64 {
    let mut y = x;
    for _ in 0..ulps {
        y = y.next_down();
    }
    y
}

#[inline]
fn up(x: f64, ulps: u32) -> f64 {
    let mut y = x;
    for _ in 0..ulps {
        y = y.next_up();
    }
    y
}

impl Interval {
    /// Exact singleton. The caller asserts that `x` is the intended real.
    #[inline]
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    /// Exact for |n| < 2^53, which holds for every index in scope.
    #[inline]
    pub fn from_int(n: i64) -> Self {
        debug_assert!(n.unsigned_abs() < (1 << 53));
        Self::point(n as f64)
    }

    #[inline]
    pub fn add(self, o: Self) -> Self {
        Self {
            lo: down(self.lo + o.lo, 1),
            hi: up(self.hi + o.hi, 1),
        }
    }

    #[inline]
    pub fn sub(self, o: Self) -> Self {
        Self {
            lo: down(self.lo - o.hi, 1),
            hi: up(self.hi - o.lo, 1),
        }
    }

    #[inline]
    pub fn neg(self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let mut lo = c[0];
        let mut hi = c[0];
        for &v in &c[1..] {
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        Self {
            lo: down(lo, 1),
            hi: up(hi, 1),
        }
    }

    /// Division by a positive exact integer.
    #[inline]
    pub fn div_int(self, n: i64) -> Self {
        debug_assert!(n > 0);
        let d = n as f64;
        Self {
            lo: down(self.lo / d, 1),
            hi: up(self.hi / d, 1),
        }
    }

    /// Halving is exact in binary.
    #[inline]
    pub fn half(self) -> Self {
        Self {
            lo: 0.5 * self.lo,
            hi: 0.5 * self.hi,
        }
    }

    /// Natural log; requires a strictly positive lower bound.
    pub fn ln(self) -> Self {
        debug_assert!(self.lo > 0.0);
        Self {
            lo: down(math::ln(self.lo), TRANS_ULPS),
            hi: up(math::ln(self.hi), TRANS_ULPS),
        }
    }

    pub fn exp(self) -> Self {
        Self {
            lo: down(math::exp(self.lo), TRANS_ULPS).max(0.0),
            hi: up(math::exp(self.hi), TRANS_ULPS),
        }
    }

    /// ln(1 + x); requires lower bound > -1.
    pub fn ln_1p(self) -> Self {
        debug_assert!(self.lo > -1.0);
        Self {
            lo: down(math::ln_1p(self.lo), TRANS_ULPS),
            hi: up(math::ln_1p(self.hi), TRANS_ULPS),
        }
    }

    #[inline]
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn width(self) -> f64 {
        self.hi - self.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encloses_arithmetic() {
        let a = Interval::point(0.1);
        let b = Interval::point(0.2);
        let s = a.add(b);
        assert!(s.lo < 0.1 + 0.2 && 0.1 + 0.2 < s.hi || s.contains(0.1 + 0.2));
        let p = a.mul(b);
        assert!(p.contains(0.1 * 0.2));
        assert!(p.width() < 1e-16);
    }

    #[test]
    fn encloses_ln_of_integers() {
        for n in 2..500i64 {
            let iv = Interval::from_int(n).ln();
            let mid = math::ln(n as f64);
            assert!(iv.contains(mid));
            assert!(iv.width() < 1e-14);
        }
    }

    #[test]
    fn mixed_sign_mul() {
        let a = Interval { lo: -2.0, hi: 3.0 };
        let b = Interval { lo: -1.0, hi: 4.0 };
        let p = a.mul(b);
        assert!(p.contains(-8.0) && p.contains(12.0) && p.contains(0.0));
    }
}
