//! Elementary transcendental functions on [`DoubleWide`] values.
//!
//! Accuracy target is a few units in the last place of the 106-bit format
//! (absolute errors around 1e-31 on unit-scale arguments). Trigonometric
//! argument reduction is done against a two-component 2*pi, so arguments of
//! magnitude up to ~1e7 still reduce with absolute error below ~1e-26.

use crate::dd::{consts, DoubleWide};

type DD = DoubleWide;

/// x mod 2*pi, result in [-pi, pi].
pub fn reduce_mod_two_pi(x: DD) -> DD {
    let k = (x / consts::TWO_PI).round();
    if k == 0.0 {
        return x;
    }
    x - consts::TWO_PI * k
}

/// x mod pi, result in [-pi/2, pi/2]; also returns the integer quotient parity.
pub fn reduce_mod_pi(x: DD) -> (DD, i64) {
    let k = (x / consts::PI).round();
    let r = x - consts::PI * k;
    (r, k as i64)
}

fn sin_taylor(t: DD) -> DD {
    // |t| <= pi/4
    let t2 = t * t;
    let mut term = t;
    let mut sum = t;
    let mut k = 1.0_f64;
    loop {
        term = -(term * t2) / ((k + 1.0) * (k + 2.0));
        sum = sum + term;
        k += 2.0;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    sum
}

fn cos_taylor(t: DD) -> DD {
    let t2 = t * t;
    let mut term = DD::ONE;
    let mut sum = DD::ONE;
    let mut k = 0.0_f64;
    loop {
        term = -(term * t2) / ((k + 1.0) * (k + 2.0));
        sum = sum + term;
        k += 2.0;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    sum
}

/// Simultaneous sine and cosine.
pub fn sincos(x: DD) -> (DD, DD) {
    let r = reduce_mod_two_pi(x);
    // reduce to |t| <= pi/4 with quadrant index
    let q = (r / consts::FRAC_PI_2).round();
    let t = r - consts::FRAC_PI_2 * q;
    let (s, c) = (sin_taylor(t), cos_taylor(t));
    match (q as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

pub fn sin(x: DD) -> DD {
    sincos(x).0
}

pub fn cos(x: DD) -> DD {
    sincos(x).1
}

pub fn tan(x: DD) -> DD {
    let (s, c) = sincos(x);
    s / c
}

/// Natural exponential.
pub fn exp(x: DD) -> DD {
    if x.hi > 709.0 {
        return DD::from_f64(f64::INFINITY);
    }
    if x.hi < -709.0 {
        return DD::ZERO;
    }
    let k = (x / consts::LN_2).round();
    let r = x - consts::LN_2 * k;
    // scale down so the Taylor series converges fast
    const SCALE: i32 = 4;
    let u = r / f64::powi(2.0, SCALE);
    let mut term = DD::ONE;
    let mut sum = DD::ONE;
    let mut i = 1.0_f64;
    loop {
        term = term * u / i;
        sum = sum + term;
        i += 1.0;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    for _ in 0..SCALE {
        sum = sum * sum;
    }
    sum * f64::powi(2.0, k as i32)
}

/// Natural logarithm by one Newton correction of the f64 seed.
pub fn ln(x: DD) -> DD {
    debug_assert!(x.hi > 0.0);
    let y0 = DD::from_f64(x.hi.ln());
    y0 + x * exp(-y0) - 1.0
}

pub fn sinh(x: DD) -> DD {
    if x.hi.abs() < 0.5 {
        // Taylor to avoid cancellation near zero
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 1.0_f64;
        loop {
            term = term * x2 / ((k + 1.0) * (k + 2.0));
            sum = sum + term;
            k += 2.0;
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        sum
    } else {
        let e = exp(x);
        (e - e.recip()) * 0.5
    }
}

pub fn cosh(x: DD) -> DD {
    let e = exp(x);
    (e + e.recip()) * 0.5
}

pub fn tanh(x: DD) -> DD {
    if x.hi.abs() > 20.0 {
        // 1 - 2/(e^{2x}+1) avoids overflow of the quotient
        let e = exp(x * 2.0);
        let t = DD::ONE - (DD::from_f64(2.0) / (e + 1.0));
        return if x.hi > 0.0 { t } else { -t }.abs() * x.hi.signum();
    }
    sinh(x) / cosh(x)
}
