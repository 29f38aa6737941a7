//! Digamma, polygamma and log-gamma evaluators on the real axis.
//!
//! Positive arguments go through upward recurrence to a shift threshold and
//! then the Stirling-type asymptotic series with Bernoulli-number
//! coefficients; negative non-integer arguments are handled by reflection
//! only. Poles at non-positive integers are explicit errors, never NaN.

use std::sync::LazyLock;

use crate::dd::{consts, DoubleWide};
use crate::ddmath;
use crate::numerics::{bernoulli_table, factorial_dd, BernoulliTable};
use crate::trigpoly::{Pair, UvPoly};
use crate::Error;

type DD = DoubleWide;

static BERNOULLI: LazyLock<BernoulliTable> =
    LazyLock::new(|| bernoulli_table(120).expect("static table"));

/// B_{2r}/(2r) as DoubleWide, r = 1..=60.
static STIRLING_DD: LazyLock<Vec<DD>> = LazyLock::new(|| {
    (1..=60)
        .map(|r| BERNOULLI.wide(2 * r) / (2.0 * r as f64))
        .collect()
});

/// Request for a polygamma evaluation: order 0 is the digamma itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolygammaRequest {
    pub order: u32,
    pub argument: f64,
}

impl PolygammaRequest {
    pub fn validate(&self) -> Result<(), Error> {
        if self.order > 119 {
            return Err(Error::InvalidParameter(format!(
                "polygamma order {} exceeds 119",
                self.order
            )));
        }
        if !self.argument.is_finite() {
            return Err(Error::InvalidParameter("non-finite argument".into()));
        }
        check_pole_f64(self.argument)?;
        Ok(())
    }

    pub fn eval_native(&self) -> Result<f64, Error> {
        self.validate()?;
        if self.order == 0 {
            digamma(self.argument)
        } else {
            polygamma(self.order, self.argument)
        }
    }

    pub fn eval_wide(&self) -> Result<DD, Error> {
        self.validate()?;
        let x = DD::from_f64(self.argument);
        if self.order == 0 {
            digamma_wide(x)
        } else {
            polygamma_wide(self.order, x)
        }
    }
}

fn check_pole_f64(x: f64) -> Result<(), Error> {
    if x <= 0.0 && x == x.trunc() {
        return Err(Error::DigammaPole(x as i64));
    }
    Ok(())
}

fn check_pole_dd(x: DD) -> Result<(), Error> {
    if x.hi <= 0.5 {
        let r = x.round();
        if r <= 0.0 && (x - r).to_f64() == 0.0 {
            return Err(Error::DigammaPole(r as i64));
        }
    }
    Ok(())
}

/// Digamma in native f64 precision, relative error around 1e-15.
pub fn digamma(x: f64) -> Result<f64, Error> {
    check_pole_f64(x)?;
    if x < 0.0 {
        // psi(x) = psi(1-x) - pi*ctg(pi*x)
        let t = x - x.round();
        let ctg = (std::f64::consts::PI * t).cos() / (std::f64::consts::PI * t).sin();
        return Ok(digamma(1.0 - x)? - std::f64::consts::PI * ctg);
    }
    let mut shift = 0.0;
    let mut z = x;
    while z < 12.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    let z2 = 1.0 / (z * z);
    // B_{2r}/(2r) for r = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
        -3617.0 / 8160.0,
    ];
    let mut tail = 0.0;
    let mut p = z2;
    for c in C {
        tail += c * p;
        p *= z2;
    }
    Ok(shift + z.ln() - 0.5 / z - tail)
}

/// Digamma in double-wide precision, relative error around 1e-28 away from
/// the zeros of the function.
pub fn digamma_wide(x: DD) -> Result<DD, Error> {
    check_pole_dd(x)?;
    if x.hi < 0.0 {
        let t = x - x.round();
        let (s, c) = ddmath::sincos(consts::PI * t);
        return Ok(digamma_wide(DD::ONE - x)? - consts::PI * (c / s));
    }
    let mut shift = DD::ZERO;
    let mut z = x;
    while z.hi < 30.0 {
        shift = shift - z.recip();
        z = z + 1.0;
    }
    let inv2 = (z * z).recip();
    let mut tail = DD::ZERO;
    let mut p = inv2;
    for r in 0..24 {
        tail = tail + STIRLING_DD[r] * p;
        p = p * inv2;
    }
    Ok(shift + ddmath::ln(z) - (z * 2.0).recip() - tail)
}

/// Polygamma of order m >= 1, native precision (relative error ~1e-13).
pub fn polygamma(order: u32, x: f64) -> Result<f64, Error> {
    Ok(polygamma_wide(order, DD::from_f64(x))?.to_f64())
}

/// Polygamma of order m >= 1 in double-wide precision.
pub fn polygamma_wide(order: u32, x: DD) -> Result<DD, Error> {
    if order == 0 {
        return digamma_wide(x);
    }
    if order > 119 {
        return Err(Error::InvalidParameter(format!(
            "polygamma order {order} exceeds 119"
        )));
    }
    check_pole_dd(x)?;
    let m = order;
    if x.hi < 0.0 {
        // psi_m(1-x) + (-1)^{m+1} psi_m(x) = (-1)^m pi d^m/dx^m ctg(pi x)
        let poly = ctg_derivative_poly(m);
        let t = x - x.round();
        let (s, c) = ddmath::sincos(consts::PI * t);
        let ctg_m = poly.eval_dd(s.recip(), c / s) * consts::PI.powi(m as i32);
        let rhs = consts::PI * ctg_m;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        // psi_m(x) = (-1)^{m+1} [ (-1)^m rhs - psi_m(1-x) ]
        let val = (rhs * sign - polygamma_wide(m, DD::ONE - x)?) * (-sign);
        return Ok(val);
    }
    let mf = factorial_dd(m);
    let m1f = if m >= 1 { factorial_dd(m - 1) } else { DD::ONE };
    let threshold = 30.0 + m as f64;
    let mut shift = DD::ZERO;
    let mut z = x;
    // psi_m(z) = psi_m(z+1) + (-1)^{m+1} m! / z^{m+1}
    let rec_sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    while z.hi < threshold {
        shift = shift + mf * z.powi(-(m as i32) - 1) * rec_sign;
        z = z + 1.0;
    }
    // asymptotic series:
    // psi_m(z) ~ (-1)^{m-1} [ (m-1)!/z^m + m!/(2 z^{m+1})
    //            + sum_r B_{2r} (2r+m-1)!/((2r)! z^{2r+m}) ]
    let mut series = m1f * z.powi(-(m as i32)) + mf * z.powi(-(m as i32) - 1) * 0.5;
    let inv2 = (z * z).recip();
    let mut zp = z.powi(-(m as i32)) * inv2; // z^{-(m+2r)} at r=1
    let mut rising = mf * (m as f64 + 1.0); // (2r+m-1)! at r=1
    for r in 1..=24u32 {
        let coeff = BERNOULLI.wide(2 * r as usize) * rising / factorial_dd(2 * r);
        series = series + coeff * zp;
        zp = zp * inv2;
        rising = rising * ((2 * r + m) as f64) * ((2 * r + m + 1) as f64);
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    Ok(shift + series * sign)
}

/// d^m/dy^m ctg(y) as a polynomial in (csc y, ctg y).
fn ctg_derivative_poly(m: u32) -> UvPoly {
    UvPoly::nth_derivative_of_v(Pair::Cosecant, m)
}

/// Log-gamma for positive arguments, double-wide precision.
pub fn ln_gamma_wide(x: DD) -> Result<DD, Error> {
    if x.hi <= 0.0 {
        return Err(Error::Domain(format!(
            "ln_gamma_wide requires a positive argument, got {}",
            x.to_f64()
        )));
    }
    let mut shift = DD::ZERO;
    let mut z = x;
    while z.hi < 30.0 {
        shift = shift - ddmath::ln(z);
        z = z + 1.0;
    }
    // Stirling: (z-1/2) ln z - z + ln(2 pi)/2 + sum B_{2r}/((2r)(2r-1) z^{2r-1})
    let mut tail = DD::ZERO;
    let inv2 = (z * z).recip();
    let mut p = z.recip();
    for r in 1..=24u32 {
        let c = STIRLING_DD[(r - 1) as usize] / (2.0 * r as f64 - 1.0);
        tail = tail + c * p;
        p = p * inv2;
    }
    Ok(shift + (z - 0.5) * ddmath::ln(z) - z + consts::HALF_LN_TWO_PI + tail)
}

/// The alternating series sum_{k>=0} (-1)^k/(k+b) evaluated in closed form
/// as (psi((1+b)/2... ) expressed with two digammas.
pub fn alternating_digamma_sum(b: f64) -> Result<f64, Error> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!(
            "alternating digamma sum requires b > 0, got {b}"
        )));
    }
    Ok(alternating_digamma_sum_wide(DD::from_f64(b))?.to_f64())
}

/// Wide-precision variant of [`alternating_digamma_sum`].
pub fn alternating_digamma_sum_wide(b: DD) -> Result<DD, Error> {
    if !(b.hi > 0.0) {
        return Err(Error::Domain(format!(
            "alternating digamma sum requires b > 0, got {}",
            b.to_f64()
        )));
    }
    let half_b = b * 0.5;
    Ok((digamma_wide(half_b + 0.5)? - digamma_wide(half_b)?) * 0.5)
}
