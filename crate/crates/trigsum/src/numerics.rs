//! Exact and compensated arithmetic substrate: Bernoulli numbers as exact
//! rationals, harmonic numbers, error-free expansion summation, and the
//! even-argument zeta values used by the asymptotic machinery.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, ToPrimitive, Zero};

use crate::dd::{quick_two_sum, two_sum, DoubleWide};
use crate::dd::consts;
use crate::Error;

/// Exact rational number (arbitrary-precision numerator and denominator,
/// kept reduced with a positive denominator by the `num` crate).
pub type Rational = Ratio<BigInt>;

type DD = DoubleWide;

/// Table of Bernoulli numbers B_0..B_max_index as exact rationals, with
/// `f64` projections for the fast evaluation paths.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    max_index: usize,
    values: Vec<Rational>,
    floats: Vec<f64>,
}

impl BernoulliTable {
    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// Exact B_n.
    pub fn value(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    /// Nearest-even `f64` projection of B_n.
    pub fn float(&self, n: usize) -> f64 {
        self.floats[n]
    }

    /// Double-wide projection of B_n.
    pub fn wide(&self, n: usize) -> DD {
        rational_to_dd(&self.values[n])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Exact Bernoulli numbers B_0..B_max_index via the defining recurrence
/// sum_{k=0}^{n} C(n+1,k) B_k = 0.
pub fn bernoulli_table(max_index: usize) -> Result<BernoulliTable, Error> {
    if max_index == 0 || max_index % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "max_index must be even and positive, got {max_index}"
        )));
    }
    if max_index > 120 {
        return Err(Error::InvalidParameter(format!(
            "max_index capped at 120, got {max_index}"
        )));
    }
    let mut values: Vec<Rational> = Vec::with_capacity(max_index + 1);
    values.push(Rational::one());
    for n in 1..=max_index {
        if n > 1 && n % 2 == 1 {
            values.push(Rational::zero());
            continue;
        }
        // binomials C(n+1, k) built incrementally
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (k, b) in values.iter().enumerate().take(n) {
            if !b.is_zero() {
                acc += Rational::from(binom.clone()) * b;
            }
            // C(n+1, k+1) = C(n+1, k) * (n+1-k) / (k+1)
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        values.push(-acc / Rational::from(BigInt::from(n + 1)));
    }
    let floats = values.iter().map(rational_to_f64).collect();
    Ok(BernoulliTable {
        max_index,
        values,
        floats,
    })
}

/// Correctly rounded (to within one ulp) `f64` of an exact rational.
pub fn rational_to_f64(q: &Rational) -> f64 {
    rational_to_dd(q).to_f64()
}

/// Double-wide projection of an exact rational, accurate to the full width.
pub fn rational_to_dd(q: &Rational) -> DD {
    if q.is_zero() {
        return DD::ZERO;
    }
    let hi = ratio_approx_f64(q.numer(), q.denom());
    let r1 = q - Rational::from_float(hi).expect("finite");
    let lo = ratio_approx_f64(r1.numer(), r1.denom());
    let r2 = r1 - Rational::from_float(lo).expect("finite");
    let lo2 = ratio_approx_f64(r2.numer(), r2.denom());
    DD::new(hi, lo) + lo2
}

/// Faithful f64 approximation of num/den that cannot overflow on the
/// intermediate integer conversions.
fn ratio_approx_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift: i64 = 160 - (num.bits() as i64 - den.bits() as i64);
    let m = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let m = m.to_f64().unwrap_or(0.0);
    // apply 2^-shift in safe halves
    let h1 = (-shift / 2) as i32;
    let h2 = (-shift - (-shift / 2)) as i32;
    m * f64::powi(2.0, h1) * f64::powi(2.0, h2)
}

/// Streaming error-free accumulator: maintains the running sum as a
/// nonoverlapping expansion of `f64` components (Shewchuk-style), so the
/// held value is exact until extraction.
#[derive(Clone, Debug, Default)]
pub struct ExpansionSum {
    parts: Vec<f64>,
}

impl ExpansionSum {
    pub fn new() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn push(&mut self, x: f64) {
        if x == 0.0 {
            return;
        }
        let mut q = x;
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        for &p in &self.parts {
            let (s, e) = two_sum(q, p);
            if e != 0.0 {
                out.push(e);
            }
            q = s;
        }
        out.push(q);
        self.parts = out;
        if self.parts.len() > 48 {
            self.compress();
        }
    }

    pub fn push_dd(&mut self, x: DD) {
        self.push(x.lo);
        self.push(x.hi);
    }

    fn compress(&mut self) {
        if self.parts.len() < 2 {
            return;
        }
        let mut q = *self.parts.last().unwrap();
        let mut tmp: Vec<f64> = Vec::with_capacity(self.parts.len());
        for &p in self.parts[..self.parts.len() - 1].iter().rev() {
            let (s, e) = quick_two_sum(q, p);
            q = s;
            if e != 0.0 {
                tmp.push(e);
            }
        }
        tmp.reverse();
        tmp.push(q);
        // top-down pass: merge back up
        let mut out: Vec<f64> = Vec::with_capacity(tmp.len());
        let mut q = tmp[0];
        for &p in &tmp[1..] {
            let (s, e) = quick_two_sum(p, q);
            if e != 0.0 {
                out.push(e);
            }
            q = s;
        }
        out.push(q);
        self.parts = out;
    }

    /// Round the exact held value to a DoubleWide.
    pub fn value(&self) -> DD {
        let mut c = self.clone();
        c.compress();
        match c.parts.len() {
            0 => DD::ZERO,
            1 => DD::from_f64(c.parts[0]),
            n => {
                // components are nonoverlapping and increasing in magnitude;
                // everything below the top two fits inside lo's rounding slack
                let hi = c.parts[n - 1];
                let mut lo = 0.0;
                for &p in &c.parts[..n - 1] {
                    lo += p;
                }
                DD::new(hi, lo)
            }
        }
    }
}

/// Exact-sum-then-round compensated summation. The result is the exact sum
/// of the inputs rounded to DoubleWide, independent of input order.
pub fn compensated_sum(terms: &[f64]) -> Result<DD, Error> {
    if let Some(bad) = terms.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "non-finite term {bad} in compensated_sum"
        )));
    }
    let mut sorted = terms.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut acc = ExpansionSum::new();
    for t in sorted {
        acc.push(t);
    }
    Ok(acc.value())
}

/// nth harmonic number H_n = sum_{k=1..n} 1/k in compensated arithmetic.
pub fn harmonic(n: u64) -> Result<DD, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("harmonic(0) undefined".into()));
    }
    let mut acc = ExpansionSum::new();
    for k in 1..=n {
        acc.push_dd(DD::ONE / DD::from_f64(k as f64));
    }
    Ok(acc.value())
}

/// Factorial as DoubleWide (exact for small k, fully accurate through k=120).
pub fn factorial_dd(k: u32) -> DD {
    let mut acc = DD::ONE;
    for i in 2..=k {
        acc = acc * (i as f64);
    }
    acc
}

/// Sum of the alternating series sum_{k=k0}^inf (-1)^k f(k) by repeated
/// averaging of partial sums (Euler transformation). Returns the value, a
/// remainder estimate, and the number of terms consumed.
///
/// `f` must be eventually smooth and decreasing in magnitude; the raw series
/// may converge as slowly as O(1/k).
pub fn alternating_series_dd(
    f: impl Fn(u64) -> DD,
    k0: u64,
    max_terms: u64,
    target_tol: f64,
) -> Result<(DD, f64, u64), Error> {
    // leading terms summed as-is to let f settle into monotone decay
    let lead = 24u64.min(max_terms / 2);
    let mut head = DD::ZERO;
    for k in k0..k0 + lead {
        let t = f(k);
        head = if k % 2 == 0 { head + t } else { head - t };
    }
    let mut m = 32u64;
    let mut prev: Option<DD> = None;
    let mut used;
    loop {
        if lead + m > max_terms {
            return Err(Error::NonConvergence(format!(
                "alternating series: {} terms insufficient for tol {target_tol:e}",
                max_terms
            )));
        }
        // partial sums s_j of the tail, j = 0..=m
        let mut s = Vec::with_capacity(m as usize + 1);
        let mut acc = head;
        for j in 0..=m {
            let k = k0 + lead + j;
            let t = f(k);
            acc = if k % 2 == 0 { acc + t } else { acc - t };
            s.push(acc);
        }
        used = lead + m + 1;
        // triangular averaging
        for width in (1..=m as usize).rev() {
            for j in 0..width {
                s[j] = (s[j] + s[j + 1]) * 0.5;
            }
        }
        let estimate = s[0];
        if let Some(p) = prev {
            let diff = (estimate - p).to_f64().abs();
            if diff <= target_tol {
                return Ok((estimate, diff.max(1e-31 * estimate.to_f64().abs()), used));
            }
        }
        let _ = used;
        prev = Some(estimate);
        m *= 2;
    }
}

/// Plain term-by-term alternating summation, stopping when a term falls
/// below the tolerance (the remainder of an alternating series with
/// decreasing terms is bounded by the first omitted term).
pub fn alternating_series_direct_dd(
    f: impl Fn(u64) -> DD,
    k0: u64,
    max_terms: u64,
    target_tol: f64,
) -> Result<(DD, f64, u64), Error> {
    let mut acc = DD::ZERO;
    for k in k0..k0 + max_terms {
        let t = f(k);
        acc = if k % 2 == 0 { acc + t } else { acc - t };
        if t.to_f64().abs() <= target_tol {
            return Ok((acc, t.to_f64().abs(), k - k0 + 1));
        }
    }
    Err(Error::NonConvergence(format!(
        "direct alternating summation: {max_terms} terms insufficient for tol {target_tol:e}"
    )))
}

/// zeta(2r) from the closed form zeta(2r) = (-1)^{r+1} (2 pi)^{2r} B_{2r} / (2 (2r)!).
pub fn zeta_even(r: u32, table: &BernoulliTable) -> Result<DD, Error> {
    if r == 0 {
        return Err(Error::InvalidParameter("zeta_even requires r >= 1".into()));
    }
    let idx = 2 * r as usize;
    if idx > table.max_index() {
        return Err(Error::InvalidParameter(format!(
            "Bernoulli table holds B_0..B_{}, need B_{}",
            table.max_index(),
            idx
        )));
    }
    let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
    let pow = consts::TWO_PI.powi(idx as i32);
    let b = table.wide(idx);
    Ok(pow * b * sign / (factorial_dd(idx as u32) * 2.0))
}
