//! Double-wide (double-double) arithmetic built on error-free transforms.
//!
//! A [`DoubleWide`] value is an unevaluated sum `hi + lo` of two `f64`s with
//! `|lo| <= ulp(hi)/2`, giving roughly 31 significant decimal digits. This is
//! the precision substrate used by all oracle-tier evaluations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Two-`f64` extended-precision value. Invariant: `hi + lo` is the represented
/// value and `|lo| <= ulp(hi)/2` after every normalizing operation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleWide {
    pub hi: f64,
    pub lo: f64,
}

/// `a + b` and the exact rounding error, assuming `|a| >= |b|`.
#[inline]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `a + b` and the exact rounding error, no magnitude assumption.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

/// `a * b` and the exact rounding error via fused multiply-add.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl DoubleWide {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Self { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact sum of two `f64`s as a DoubleWide.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (s, e) = two_sum(a, b);
        Self { hi: s, lo: e }
    }

    /// Exact product of two `f64`s as a DoubleWide.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Self { hi: p, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    /// Accurate reciprocal by one Newton step on the `f64` seed.
    #[inline]
    pub fn recip(self) -> Self {
        DoubleWide::ONE / self
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Nearest integer, computed on the leading component with a correction
    /// from the trailing one (exact for |n| < 2^52).
    pub fn round(self) -> f64 {
        let r = self.hi.round();
        if (self.hi - r).abs() == 0.5 {
            // hi sits exactly between integers: lo decides
            if self.lo > 0.0 {
                self.hi + 0.5
            } else if self.lo < 0.0 {
                self.hi - 0.5
            } else {
                r
            }
        } else {
            r
        }
    }

    pub fn floor(self) -> f64 {
        let f = self.hi.floor();
        if f == self.hi {
            // hi integral: lo sign decides
            if self.lo < 0.0 {
                f - 1.0
            } else {
                f
            }
        } else {
            f
        }
    }
}

impl Add for DoubleWide {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (s0, e1) = two_sum(self.hi, rhs.hi);
        let (s1, e2) = two_sum(self.lo, rhs.lo);
        let (s0, e1) = quick_two_sum(s0, e1 + s1);
        Self::new(s0, e1 + e2)
    }
}

impl Add<f64> for DoubleWide {
    type Output = Self;
    #[inline]
    fn add(self, rhs: f64) -> Self {
        let (s0, e1) = two_sum(self.hi, rhs);
        Self::new(s0, e1 + self.lo)
    }
}

impl Sub for DoubleWide {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sub<f64> for DoubleWide {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: f64) -> Self {
        self + (-rhs)
    }
}

impl Neg for DoubleWide {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleWide {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = self.hi.mul_add(rhs.lo, e);
        let e = self.lo.mul_add(rhs.hi, e);
        Self::new(p, e)
    }
}

impl Mul<f64> for DoubleWide {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        let (p, e) = two_prod(self.hi, rhs);
        let e = self.lo.mul_add(rhs, e);
        Self::new(p, e)
    }
}

impl Div for DoubleWide {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Self::new(s, e + q3)
    }
}

impl Div<f64> for DoubleWide {
    type Output = Self;
    #[inline]
    fn div(self, rhs: f64) -> Self {
        self / DoubleWide::from_f64(rhs)
    }
}

impl PartialOrd for DoubleWide {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl From<f64> for DoubleWide {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl From<i64> for DoubleWide {
    fn from(x: i64) -> Self {
        // i64 may exceed the 53-bit mantissa: split exactly
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        Self::new(hi, lo)
    }
}

impl fmt::Display for DoubleWide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// Two-component versions of the constants used across the crate; the
/// trailing component extends each value to the full 106-bit width.
pub mod consts {
    use super::DoubleWide;

    pub const PI: DoubleWide = DoubleWide {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };
    pub const TWO_PI: DoubleWide = DoubleWide {
        hi: std::f64::consts::TAU,
        lo: 2.4492935982947064e-16,
    };
    pub const FRAC_PI_2: DoubleWide = DoubleWide {
        hi: std::f64::consts::FRAC_PI_2,
        lo: 6.123233995736766e-17,
    };
    pub const FRAC_PI_4: DoubleWide = DoubleWide {
        hi: std::f64::consts::FRAC_PI_4,
        lo: 3.061616997868383e-17,
    };
    pub const LN_2: DoubleWide = DoubleWide {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    pub const LN_PI: DoubleWide = DoubleWide {
        hi: 1.1447298858494002,
        lo: 1.0265951162707826e-17,
    };
    pub const EULER_GAMMA: DoubleWide = DoubleWide {
        hi: 0.5772156649015329,
        lo: -4.942915152430645e-18,
    };
    pub const HALF_LN_TWO_PI: DoubleWide = DoubleWide {
        hi: 0.9189385332046728,
        lo: -3.8782941580672414e-17,
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_cancellation() {
        let a = DoubleWide::from_f64(1e16) + 1.0;
        let b = a - 1e16;
        assert_eq!(b.to_f64(), 1.0);
    }

    #[test]
    fn mul_matches_exact_small_case() {
        // (1 + 2^-60) * (1 - 2^-60) = 1 - 2^-120; the 2^-120 is below lo
        let eps = (2.0_f64).powi(-60);
        let a = DoubleWide::new(1.0, eps);
        let b = DoubleWide::new(1.0, -eps);
        let p = a * b;
        assert_eq!(p.hi, 1.0);
        assert!(p.lo.abs() < 1e-35);
    }

    #[test]
    fn div_recovers_factor() {
        let a = DoubleWide::new(3.141592653589793, 1.2246467991473532e-16);
        let b = DoubleWide::from_f64(7.0);
        let q = a * b / b - a;
        assert!(q.to_f64().abs() < 1e-31);
    }

    #[test]
    fn powi_small_integers() {
        let x = DoubleWide::from_f64(3.0);
        assert_eq!(x.powi(5).to_f64(), 243.0);
        assert!((x.powi(-2).to_f64() - 1.0 / 9.0).abs() < 1e-17);
    }

    #[test]
    fn round_uses_trailing_component() {
        let x = DoubleWide::new(2.5, 1e-20);
        assert_eq!(x.round(), 3.0);
        let y = DoubleWide::new(2.5, -1e-20);
        assert_eq!(y.round(), 2.0);
    }
}
