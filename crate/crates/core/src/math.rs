//! Scalar math shims and compensated accumulation.
//!
//! Every transcendental call in the crate routes through here so the
//! `no_std` fallback (libm) stays in one place. Both backends are
//! faithfully rounded; bit-identical results across backends are not
//! promised, only within one build.

/// 2πe, the constant of the existence-condition terms.
pub const TWO_PI_E: f64 = 2.0 * core::f64::consts::PI * core::f64::consts::E;

/// 8πe, the block-size threshold of the bad-BKZ construction.
pub const EIGHT_PI_E: f64 = 4.0 * TWO_PI_E;

macro_rules! shim {
    ($name:ident, $std:ident, $libm:ident) => {
        #[cfg(feature = "std")]
        #[inline(always)]
        pub fn $name(x: f64) -> f64 {
            f64::$std(x)
        }
        #[cfg(all(not(feature = "std"), feature = "libm"))]
        #[inline(always)]
        pub fn $name(x: f64) -> f64 {
            libm::$libm(x)
        }
    };
}

shim!(ln, ln, log);
shim!(exp, exp, exp);
shim!(expm1, exp_m1, expm1);
shim!(ln_1p, ln_1p, log1p);
shim!(sqrt, sqrt, sqrt);
shim!(floor, floor, floor);
shim!(ceil, ceil, ceil);

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("hkz-core needs either the `std` or the `libm` feature");

/// log(sinh(y)) for y > 0 without overflow or cancellation.
///
/// Small y: sinh via the symmetric expm1 difference. Large y: sinh(y) ~
/// e^y/2, with the e^{-2y} correction folded in through ln_1p.
pub fn ln_sinh(y: f64) -> f64 {
    debug_assert!(y > 0.0);
    if y < 30.0 {
        ln(0.5 * (expm1(y) - expm1(-y)))
    } else {
        y - core::f64::consts::LN_2 + ln_1p(-exp(-2.0 * y))
    }
}

/// Neumaier-compensated running sum.
///
/// `value()` returns the compensated total; accumulation order is fixed by
/// the caller, so results are deterministic for a given sequence.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
