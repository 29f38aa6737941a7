//! Integer-coefficient polynomials in the pair (u, v) closed under
//! differentiation, where (u, v) = (csc, ctg) or (sec, tg).
//!
//! Closure comes from d(csc) = -csc*ctg, d(ctg) = -csc^2 and
//! d(sec) = sec*tg, d(tg) = sec^2; the two families differ only by the sign
//! of the derivation rule. Coefficients grow like tangent numbers, so they
//! are kept as exact big integers.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{ToPrimitive, Zero};

use crate::dd::DoubleWide;

type DD = DoubleWide;

/// Derivation sign: `Cosecant` for the (csc, ctg) pair, `Secant` for
/// (sec, tg).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    Cosecant,
    Secant,
}

/// Sum of c_{ij} u^i v^j with exact integer coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct UvPoly {
    pub pair: Pair,
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl UvPoly {
    fn new(pair: Pair) -> Self {
        Self {
            pair,
            terms: BTreeMap::new(),
        }
    }

    /// The base function u itself (csc or sec).
    pub fn base_u(pair: Pair) -> Self {
        let mut p = Self::new(pair);
        p.add_term(1, 0, BigInt::from(1));
        p
    }

    /// The base function v itself (ctg or tg).
    pub fn base_v(pair: Pair) -> Self {
        let mut p = Self::new(pair);
        p.add_term(0, 1, BigInt::from(1));
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// d/dalpha. For the cosecant pair: u' = -u v, v' = -u^2;
    /// for the secant pair: u' = +u v, v' = +u^2.
    pub fn derivative(&self) -> Self {
        let sign = match self.pair {
            Pair::Cosecant => -1,
            Pair::Secant => 1,
        };
        let mut out = Self::new(self.pair);
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i, j + 1, c * BigInt::from(sign * i as i64));
            }
            if j > 0 {
                out.add_term(i + 2, j - 1, c * BigInt::from(sign * j as i64));
            }
        }
        out
    }

    /// nth derivative of the base function u.
    pub fn nth_derivative_of_u(pair: Pair, n: u32) -> Self {
        let mut p = Self::base_u(pair);
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// nth derivative of the base function v.
    pub fn nth_derivative_of_v(pair: Pair, n: u32) -> Self {
        let mut p = Self::base_v(pair);
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval_dd(&self, u: DD, v: DD) -> DD {
        let mut acc = DD::ZERO;
        for (&(i, j), c) in &self.terms {
            acc = acc + bigint_to_dd(c) * u.powi(i as i32) * v.powi(j as i32);
        }
        acc
    }
}

pub fn bigint_to_dd(x: &BigInt) -> DD {
    let hi = x.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return DD::from_f64(hi);
    }
    let rest = x - BigInt::from(hi as i128);
    let lo = rest.to_f64().unwrap_or(0.0);
    DD::new(hi, lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    #[test]
    fn first_csc_derivatives() {
        // d csc = -csc*ctg
        let d1 = UvPoly::nth_derivative_of_u(Pair::Cosecant, 1);
        assert_eq!(d1.coefficient(1, 1), BigInt::from(-1));
        assert_eq!(d1.terms().count(), 1);
        // d^3 csc = -csc*ctg^3 - 5 csc^3*ctg
        let d3 = UvPoly::nth_derivative_of_u(Pair::Cosecant, 3);
        assert_eq!(d3.coefficient(1, 3), BigInt::from(-1));
        assert_eq!(d3.coefficient(3, 1), BigInt::from(-5));
        assert_eq!(d3.terms().count(), 2);
    }

    #[test]
    fn first_sec_derivatives() {
        let d3 = UvPoly::nth_derivative_of_u(Pair::Secant, 3);
        assert_eq!(d3.coefficient(1, 3), BigInt::from(1));
        assert_eq!(d3.coefficient(3, 1), BigInt::from(5));
    }

    #[test]
    fn ctg_derivative_chain() {
        // d ctg = -csc^2, d^2 ctg = 2 csc^2 ctg
        let d1 = UvPoly::nth_derivative_of_v(Pair::Cosecant, 1);
        assert_eq!(d1.coefficient(2, 0), BigInt::from(-1));
        let d2 = UvPoly::nth_derivative_of_v(Pair::Cosecant, 2);
        assert_eq!(d2.coefficient(2, 1), BigInt::from(2));
    }

    #[test]
    fn big_coefficients_survive_conversion() {
        // order 31 derivative has coefficients far beyond i64
        let d = UvPoly::nth_derivative_of_u(Pair::Cosecant, 31);
        let mut max = BigInt::zero();
        for (_, c) in d.terms() {
            if c.abs() > max {
                max = c.abs();
            }
        }
        assert!(max > BigInt::from(i64::MAX));
        let dd = bigint_to_dd(&max);
        let back = format!("{:.0}", dd.hi);
        assert_eq!(back.len(), max.to_string().len());
    }
}
