//! Executable corpus of classical finite trigonometric identities: Euler's
//! product, the cotangent summation theorems, squared-function theorems,
//! alternating cosecant/secant sums, the Eisenstein and secant-cosine sums,
//! rational-function sums from logarithmic derivatives of Euler products,
//! the digamma-Hartley identity, and the discrete Hartley transform pair.
//!
//! Every identity evaluates both sides in double-wide precision and reports
//! the absolute residual.

use crate::dd::{consts, DoubleWide};
use crate::ddmath;
use crate::gammafun::digamma_wide;
use crate::numerics::ExpansionSum;
use crate::Error;

type DD = DoubleWide;

/// One identity of the corpus, named by what it sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// prod (amp^2 - 2 amp x cos((phi+2 pi l)/n) + x^2) = amp^2n - 2 amp^n x^n cos phi + x^2n
    EulerProduct,
    /// sum_{l=0}^{n-1} ctg(phi + pi l/n) = n ctg(n phi)
    CotangentSum,
    /// sum ctg^2(phi + pi l/n) = n^2 csc^2(n phi) - n
    CotangentSquareSum,
    /// sum_{l=1}^{n-1} tg^2(pi l/n) = n(n-1), odd n
    TangentSquareConstant,
    /// sum_{l=1}^{n-1} ctg(pi l/n) sin(2 pi l k/n) = n - 2k
    EisensteinCotSin,
    /// sum_{l=0}^{n-1} sec(pi l/2n) cos((2k+1) l pi/2n) = (-1)^k (n - 2 floor((k+1)/2))
    SecCosParity,
    /// sum_{l=0}^{n-1} (-1)^l csc(phi + pi l/n) = n csc(n phi), odd n
    AlternatingCsc,
    /// sum_{l=0}^{n-1} (-1)^l sec(phi + pi l/n) = (-1)^{(n-1)/2} n sec(n phi), odd n
    AlternatingSec,
    /// sum_{l=0}^{n-1} tg(phi + pi l/n) = n tg(n phi) odd / -n ctg(n phi) even
    TangentFullStep,
    /// sum_{l=0}^{n-1} csc(phi + 2 pi l/n) = n csc(n phi) odd / 0 even
    CosecantDoubleStep,
    /// sum_{l=0}^{n-1} sec(phi + 2 pi l/n) = (-1)^{(n-1)/2} n sec(n phi) odd / 0 even
    SecantDoubleStep,
    /// sum_{l=0}^{n-1} csc^2(phi + pi l/n) = n^2 csc^2(n phi)
    CosecantSquareSum,
    /// sum sec^2 = n^2 sec^2(n phi) odd / n^2 csc^2(n phi) even
    SecantSquareSum,
    /// sum tg^2 = n^2 sec^2 - n odd / n^2 csc^2 - n even
    TangentSquareSum,
    /// sum_{l=0}^{n-1} 1/(1 + 2x cos(2 pi l/n) + x^2), parity branches
    RationalCosFullCircle,
    /// sum_{l=1}^{n-1} 1/(1 + 2x cos(pi l/n) + x^2)
    RationalCosHalfPlus,
    /// sum_{l=1}^{n-1} 1/(1 - 2x cos(pi l/n) + x^2)
    RationalCosHalfMinus,
    /// sum_{l=0}^{n-1} 1/(1 - 2x cos(pi(l+1/2)/n) + x^2)
    RationalCosOddGrid,
    /// sum_{l=1}^{n} 1/(1 + 2x cos(pi l/(n+1/2)) + x^2)
    RationalCosHalfIntegerPlus,
    /// sum_{l=1}^{n} 1/(1 - 2x cos(pi l/(n+1/2)) + x^2)
    RationalCosHalfIntegerMinus,
    /// sum_{l=0}^{n-1} 1/(x + ctg(phi + pi l/n)), closed form via (ix+-1)^n
    CotangentShiftRational,
    /// sum_{l=0}^{n-1} 1/(x^2 - 1 + csc^2(phi + pi l/n))
    CosecantSquareRational,
}

pub const ALL_IDENTITIES: [IdentityId; 22] = [
    IdentityId::EulerProduct,
    IdentityId::CotangentSum,
    IdentityId::CotangentSquareSum,
    IdentityId::TangentSquareConstant,
    IdentityId::EisensteinCotSin,
    IdentityId::SecCosParity,
    IdentityId::AlternatingCsc,
    IdentityId::AlternatingSec,
    IdentityId::TangentFullStep,
    IdentityId::CosecantDoubleStep,
    IdentityId::SecantDoubleStep,
    IdentityId::CosecantSquareSum,
    IdentityId::SecantSquareSum,
    IdentityId::TangentSquareSum,
    IdentityId::RationalCosFullCircle,
    IdentityId::RationalCosHalfPlus,
    IdentityId::RationalCosHalfMinus,
    IdentityId::RationalCosOddGrid,
    IdentityId::RationalCosHalfIntegerPlus,
    IdentityId::RationalCosHalfIntegerMinus,
    IdentityId::CotangentShiftRational,
    IdentityId::CosecantSquareRational,
];

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::EulerProduct => "euler-product",
            IdentityId::CotangentSum => "cotangent-sum",
            IdentityId::CotangentSquareSum => "cotangent-square-sum",
            IdentityId::TangentSquareConstant => "tangent-square-constant",
            IdentityId::EisensteinCotSin => "eisenstein-cot-sin",
            IdentityId::SecCosParity => "sec-cos-parity",
            IdentityId::AlternatingCsc => "alternating-csc",
            IdentityId::AlternatingSec => "alternating-sec",
            IdentityId::TangentFullStep => "tangent-full-step",
            IdentityId::CosecantDoubleStep => "cosecant-double-step",
            IdentityId::SecantDoubleStep => "secant-double-step",
            IdentityId::CosecantSquareSum => "cosecant-square-sum",
            IdentityId::SecantSquareSum => "secant-square-sum",
            IdentityId::TangentSquareSum => "tangent-square-sum",
            IdentityId::RationalCosFullCircle => "rational-cos-full-circle",
            IdentityId::RationalCosHalfPlus => "rational-cos-half-plus",
            IdentityId::RationalCosHalfMinus => "rational-cos-half-minus",
            IdentityId::RationalCosOddGrid => "rational-cos-odd-grid",
            IdentityId::RationalCosHalfIntegerPlus => "rational-cos-half-integer-plus",
            IdentityId::RationalCosHalfIntegerMinus => "rational-cos-half-integer-minus",
            IdentityId::CotangentShiftRational => "cotangent-shift-rational",
            IdentityId::CosecantSquareRational => "cosecant-square-rational",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        ALL_IDENTITIES.iter().copied().find(|id| id.name() == s)
    }

    /// Default residual tolerance; the rational sums are cancellation-prone
    /// near x = 1 and get the looser budget.
    pub fn default_tol(self) -> f64 {
        match self {
            IdentityId::RationalCosFullCircle
            | IdentityId::RationalCosHalfPlus
            | IdentityId::RationalCosHalfMinus
            | IdentityId::RationalCosOddGrid
            | IdentityId::RationalCosHalfIntegerPlus
            | IdentityId::RationalCosHalfIntegerMinus
            | IdentityId::CotangentShiftRational
            | IdentityId::CosecantSquareRational => 1e-14,
            _ => 1e-20,
        }
    }
}

/// Parameters of an identity case; each identity reads the fields it needs.
#[derive(Clone, Copy, Debug)]
pub struct IdentityParams {
    pub n: u64,
    pub k: u64,
    pub phi: f64,
    pub x: f64,
    pub amp: f64,
}

impl Default for IdentityParams {
    fn default() -> Self {
        Self {
            n: 5,
            k: 1,
            phi: 0.3,
            x: 0.5,
            amp: 0.8,
        }
    }
}

/// A runnable case: identity, parameters, and its residual budget.
#[derive(Clone, Copy, Debug)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub params: IdentityParams,
    pub residual_tol: f64,
}

impl IdentityCase {
    pub fn new(id: IdentityId, params: IdentityParams) -> Self {
        Self {
            id,
            params,
            residual_tol: id.default_tol(),
        }
    }

    pub fn run(&self) -> Result<f64, Error> {
        run_identity(self.id, &self.params)
    }
}

fn require(cond: bool, clause: &str) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(clause.to_string()))
    }
}

fn sincos(x: DD) -> (DD, DD) {
    ddmath::sincos(x)
}

fn csc(x: DD) -> DD {
    ddmath::sin(x).recip()
}

fn sec(x: DD) -> DD {
    ddmath::cos(x).recip()
}

fn ctg(x: DD) -> DD {
    let (s, c) = sincos(x);
    c / s
}

fn tg(x: DD) -> DD {
    let (s, c) = sincos(x);
    s / c
}

/// Minimal complex double-wide arithmetic for the closed forms built from
/// (i x +- 1)^n.
#[derive(Clone, Copy, Debug)]
struct CDD {
    re: DD,
    im: DD,
}

impl CDD {
    fn new(re: DD, im: DD) -> Self {
        Self { re, im }
    }

    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::new(DD::ONE, DD::ZERO);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn div(self, o: Self) -> Self {
        let d = o.re * o.re + o.im * o.im;
        Self::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}

/// Residual |LHS - RHS| of one identity at the given parameters, evaluated
/// in double-wide precision.
pub fn run_identity(id: IdentityId, p: &IdentityParams) -> Result<f64, Error> {
    let n = p.n;
    require(n >= 1, "n >= 1 required")?;
    let nf = n as f64;
    let phi = DD::from_f64(p.phi);
    let x = DD::from_f64(p.x);
    let step_full = consts::PI / DD::from_f64(nf);
    let r = match id {
        IdentityId::EulerProduct => {
            let amp = DD::from_f64(p.amp);
            let mut lhs = DD::ONE;
            for l in 0..n {
                let arg = (phi + consts::TWO_PI * (l as f64)) / DD::from_f64(nf);
                lhs = lhs * (amp * amp - amp * x * 2.0 * ddmath::cos(arg) + x * x);
            }
            let rhs = amp.powi(2 * n as i32)
                - amp.powi(n as i32) * x.powi(n as i32) * 2.0 * ddmath::cos(phi)
                + x.powi(2 * n as i32);
            lhs - rhs
        }
        IdentityId::CotangentSum => {
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                acc.push_dd(ctg(phi + step_full * (l as f64)));
            }
            acc.value() - ctg(phi * nf) * nf
        }
        IdentityId::CotangentSquareSum => {
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let c = ctg(phi + step_full * (l as f64));
                acc.push_dd(c * c);
            }
            let cs = csc(phi * nf);
            acc.value() - (cs * cs * (nf * nf) - nf)
        }
        IdentityId::TangentSquareConstant => {
            require(n % 2 == 1 && n >= 3, "n = 3, 5, 7, ... required")?;
            let mut acc = ExpansionSum::new();
            for l in 1..n {
                let t = tg(step_full * (l as f64));
                acc.push_dd(t * t);
            }
            acc.value() - DD::from_f64(nf * (nf - 1.0))
        }
        IdentityId::EisensteinCotSin => {
            require(p.k >= 1 && p.k < n, "k = 1, ..., n-1 required")?;
            let mut acc = ExpansionSum::new();
            for l in 1..n {
                let c = ctg(step_full * (l as f64));
                let s = ddmath::sin(consts::TWO_PI * DD::from_f64((l * p.k) as f64) / DD::from_f64(nf));
                acc.push_dd(c * s);
            }
            acc.value() - DD::from_f64(nf - 2.0 * p.k as f64)
        }
        IdentityId::SecCosParity => {
            require(p.k < 2 * n, "k = 0, 1, ..., 2n-1 required")?;
            let half_step = consts::PI / DD::from_f64(2.0 * nf);
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let s = sec(half_step * (l as f64));
                let c = ddmath::cos(half_step * ((2 * p.k + 1) as f64) * (l as f64));
                acc.push_dd(s * c);
            }
            let sign = if p.k % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = sign * (nf - 2.0 * ((p.k + 1) / 2) as f64);
            acc.value() - DD::from_f64(rhs)
        }
        IdentityId::AlternatingCsc => {
            require(n % 2 == 1, "n = 1, 3, 5, ... required")?;
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let v = csc(phi + step_full * (l as f64));
                acc.push_dd(if l % 2 == 0 { v } else { -v });
            }
            acc.value() - csc(phi * nf) * nf
        }
        IdentityId::AlternatingSec => {
            require(n % 2 == 1, "n = 1, 3, 5, ... required")?;
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let v = sec(phi + step_full * (l as f64));
                acc.push_dd(if l % 2 == 0 { v } else { -v });
            }
            // the sum is n csc(n phi + n pi/2), i.e. (-1)^{(n-1)/2} n sec(n phi)
            let sign = if ((n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            acc.value() - sec(phi * nf) * (nf * sign)
        }
        IdentityId::TangentFullStep => {
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                acc.push_dd(tg(phi + step_full * (l as f64)));
            }
            let rhs = if n % 2 == 1 {
                tg(phi * nf) * nf
            } else {
                -ctg(phi * nf) * nf
            };
            acc.value() - rhs
        }
        IdentityId::CosecantDoubleStep => {
            let step = consts::TWO_PI / DD::from_f64(nf);
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                acc.push_dd(csc(phi + step * (l as f64)));
            }
            let rhs = if n % 2 == 1 {
                csc(phi * nf) * nf
            } else {
                DD::ZERO
            };
            acc.value() - rhs
        }
        IdentityId::SecantDoubleStep => {
            let step = consts::TWO_PI / DD::from_f64(nf);
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                acc.push_dd(sec(phi + step * (l as f64)));
            }
            // shifting the cosecant form by pi/2 lands on csc(n phi + n pi/2)
            let sign = if ((n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = if n % 2 == 1 {
                sec(phi * nf) * (nf * sign)
            } else {
                DD::ZERO
            };
            acc.value() - rhs
        }
        IdentityId::CosecantSquareSum => {
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let v = csc(phi + step_full * (l as f64));
                acc.push_dd(v * v);
            }
            let cs = csc(phi * nf);
            acc.value() - cs * cs * (nf * nf)
        }
        IdentityId::SecantSquareSum => {
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let v = sec(phi + step_full * (l as f64));
                acc.push_dd(v * v);
            }
            let base = if n % 2 == 1 {
                sec(phi * nf)
            } else {
                csc(phi * nf)
            };
            acc.value() - base * base * (nf * nf)
        }
        IdentityId::TangentSquareSum => {
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let v = tg(phi + step_full * (l as f64));
                acc.push_dd(v * v);
            }
            let base = if n % 2 == 1 {
                sec(phi * nf)
            } else {
                csc(phi * nf)
            };
            acc.value() - (base * base * (nf * nf) - nf)
        }
        IdentityId::RationalCosFullCircle => {
            require(p.x != 1.0, "x != 1 required")?;
            let step = consts::TWO_PI / DD::from_f64(nf);
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let den = DD::ONE + x * 2.0 * ddmath::cos(step * (l as f64)) + x * x;
                acc.push_dd(den.recip());
            }
            let xn = x.powi(n as i32);
            let x2m1 = x * x - 1.0;
            let rhs = if n % 2 == 1 {
                (xn - 1.0) * nf / (x2m1 * (xn + 1.0))
            } else {
                (xn + 1.0) * nf / (x2m1 * (xn - 1.0))
            };
            acc.value() - rhs
        }
        IdentityId::RationalCosHalfPlus | IdentityId::RationalCosHalfMinus => {
            require(p.x != 1.0, "x != 1 required")?;
            let sign = if id == IdentityId::RationalCosHalfPlus {
                1.0
            } else {
                -1.0
            };
            let mut acc = ExpansionSum::new();
            for l in 1..n {
                let den =
                    DD::ONE + x * (2.0 * sign) * ddmath::cos(step_full * (l as f64)) + x * x;
                acc.push_dd(den.recip());
            }
            let x2n = x.powi(2 * n as i32);
            let x2m1 = x * x - 1.0;
            let rhs = (x2n + 1.0) * nf / (x2m1 * (x2n - 1.0)) - (x * x + 1.0) / (x2m1 * x2m1);
            acc.value() - rhs
        }
        IdentityId::RationalCosOddGrid => {
            require(p.x != 1.0, "x != 1 required")?;
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let arg = consts::PI * (DD::from_f64(l as f64) + 0.5) / DD::from_f64(nf);
                let den = DD::ONE - x * 2.0 * ddmath::cos(arg) + x * x;
                acc.push_dd(den.recip());
            }
            let x2n = x.powi(2 * n as i32);
            let rhs = (x2n - 1.0) * nf / ((x * x - 1.0) * (x2n + 1.0));
            acc.value() - rhs
        }
        IdentityId::RationalCosHalfIntegerPlus | IdentityId::RationalCosHalfIntegerMinus => {
            require(p.x != 1.0, "x != 1 required")?;
            let plus = id == IdentityId::RationalCosHalfIntegerPlus;
            let sign = if plus { 1.0 } else { -1.0 };
            let step = consts::PI / (DD::from_f64(nf) + 0.5);
            let mut acc = ExpansionSum::new();
            for l in 1..=n {
                let den = DD::ONE + x * (2.0 * sign) * ddmath::cos(step * (l as f64)) + x * x;
                acc.push_dd(den.recip());
            }
            let xo = x.powi(2 * n as i32 + 1);
            let x2m1 = x * x - 1.0;
            // n(x^{2n+1} -+ 1) + x^{2n+1} over (x^2-1)(x^{2n+1} +- 1),
            // minus x/((x^2-1)(x +- 1))
            let rhs = ((xo - sign) * nf + xo) / (x2m1 * (xo + sign))
                - x / (x2m1 * (x + sign));
            acc.value() - rhs
        }
        IdentityId::CotangentShiftRational => {
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let den = x + ctg(phi + step_full * (l as f64));
                acc.push_dd(den.recip());
            }
            let cn = ctg(phi * nf);
            let ip = CDD::new(DD::ONE, x); // 1 + i x
            let im = CDD::new(-DD::ONE, x); // -1 + i x = i x - 1
            let num = CDD::new(-cn, DD::ONE)
                .mul(ip.powi(n as u32 - 1))
                .mul(CDD::new(DD::ONE, DD::ZERO));
            let num = CDD::new(num.re, num.im);
            let num2 = CDD::new(cn, DD::ONE).mul(im.powi(n as u32 - 1));
            let num_total = CDD::new(num.re + num2.re, num.im + num2.im);
            let den1 = CDD::new(DD::ONE, cn).mul(ip.powi(n as u32));
            let den2 = CDD::new(DD::ONE, -cn).mul(im.powi(n as u32));
            let den_total = CDD::new(den1.re + den2.re, den1.im + den2.im);
            let q = num_total.div(den_total);
            // the imaginary part cancels identically
            acc.value() - q.re * nf
        }
        IdentityId::CosecantSquareRational => {
            let mut acc = ExpansionSum::new();
            for l in 0..n {
                let cs = csc(phi + step_full * (l as f64));
                let den = x * x - 1.0 + cs * cs;
                acc.push_dd(den.recip());
            }
            let sn = ddmath::sin(phi * nf);
            let sin2 = sn * sn;
            let xp1 = x + 1.0;
            let xm1 = x - 1.0;
            let x2m1 = x * x - 1.0;
            let num = xp1.powi(2 * n as i32 - 1) - x * 2.0 * x2m1.powi(n as i32 - 1)
                + xm1.powi(2 * n as i32 - 1)
                + x * 4.0 * x2m1.powi(n as i32 - 1) * sin2;
            let den = x * (xp1.powi(n as i32) - xm1.powi(n as i32)).powi(2)
                + x * 4.0 * x2m1.powi(n as i32) * sin2;
            acc.value() - num * nf / den
        }
    };
    Ok(r.to_f64().abs())
}

/// The discrete Hartley transform with the symmetric 1/sqrt(n) convention,
/// indices running 1..=n.
pub fn dht(signal: &[f64]) -> Vec<f64> {
    let n = signal.len();
    let nf = n as f64;
    let scale = 1.0 / nf.sqrt();
    (1..=n)
        .map(|nu| {
            let mut acc = ExpansionSum::new();
            for (idx, &h) in signal.iter().enumerate() {
                let l = idx + 1;
                let arg = consts::TWO_PI * DD::from_f64((l * nu) as f64) / DD::from_f64(nf);
                let (s, c) = sincos(arg);
                acc.push_dd((s + c) * h);
            }
            acc.value().to_f64() * scale
        })
        .collect()
}

/// Round-trip max-norm error of DHT^-1[DHT[h]] against h.
pub fn run_dht_roundtrip(n: usize, signal: &[f64]) -> Result<f64, Error> {
    if signal.len() != n {
        return Err(Error::InvalidParameter(format!(
            "signal length {} does not match n = {n}",
            signal.len()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n >= 1 required".into()));
    }
    let back = dht(&dht(signal));
    Ok(signal
        .iter()
        .zip(back.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Residual of the digamma-Hartley identity
/// sum_{l=1}^{n} psi(l/n) cas(2 pi l nu/n) against its closed form.
pub fn run_digamma_hartley(n: u64, nu: u64) -> Result<f64, Error> {
    if n == 0 || nu == 0 || nu > n {
        return Err(Error::Domain(format!(
            "1 <= nu <= n required, got nu = {nu}, n = {n}"
        )));
    }
    let nf = n as f64;
    let mut acc = ExpansionSum::new();
    for l in 1..=n {
        let psi = digamma_wide(DD::from_f64(l as f64) / DD::from_f64(nf))?;
        let arg = consts::TWO_PI * DD::from_f64((l * nu) as f64) / DD::from_f64(nf);
        let (s, c) = sincos(arg);
        acc.push_dd(psi * (s + c));
    }
    let rhs = if nu == n {
        -(ddmath::ln(DD::from_f64(nf)) + consts::EULER_GAMMA) * nf
    } else {
        let sin_term = ddmath::sin(consts::PI * DD::from_f64(nu as f64) / DD::from_f64(nf));
        (consts::LN_2 - consts::FRAC_PI_2) * nf + ddmath::ln(sin_term) * nf
            + consts::PI * (nu as f64)
    };
    Ok((acc.value() - rhs).to_f64().abs())
}

/// Residual of the partial logarithmic derivative of Euler's product:
/// sum_{l=0}^{n-1} (x - 1/x)/(1 - 2x cos(2 pi l/n) + x^2) = n(x^n+1)/(x(x^n-1)).
pub fn log_derivative_spotcheck(n: u64, x: f64) -> Result<f64, Error> {
    if !(x > 0.0) || x == 1.0 {
        return Err(Error::Domain(format!("x > 0 and x != 1 required, got {x}")));
    }
    if n == 0 {
        return Err(Error::Domain("n >= 1 required".into()));
    }
    let nf = n as f64;
    let xd = DD::from_f64(x);
    let diff = xd - xd.recip();
    let mut acc = ExpansionSum::new();
    for l in 0..n {
        let arg = consts::TWO_PI * DD::from_f64(l as f64) / DD::from_f64(nf);
        let den = DD::ONE - xd * 2.0 * ddmath::cos(arg) + xd * xd;
        acc.push_dd(diff / den);
    }
    let xn = xd.powi(n as i32);
    let rhs = (xn + 1.0) * nf / (xd * (xn - 1.0));
    Ok((acc.value() - rhs).to_f64().abs())
}

/// Draw in-domain parameters for an identity. Pole lattices are avoided by
/// construction, and x stays away from the cancellation point x = 1.
pub fn sample_params(id: IdentityId, rng: &mut impl FnMut() -> f64) -> IdentityParams {
    let mut u = || rng();
    let pick_n = |u: f64, lo: u64, hi: u64| lo + ((hi - lo) as f64 * u) as u64;
    let mut p = IdentityParams::default();
    match id {
        IdentityId::EulerProduct => {
            p.n = pick_n(u(), 1, 12);
            p.phi = 6.0 * u() - 3.0;
            p.x = 0.3 + 0.8 * u();
            p.amp = 0.3 + 0.8 * u();
        }
        IdentityId::TangentSquareConstant => {
            p.n = 2 * pick_n(u(), 1, 10) + 1;
        }
        IdentityId::EisensteinCotSin => {
            p.n = pick_n(u(), 2, 40);
            p.k = 1 + ((p.n - 1) as f64 * u()) as u64;
            if p.k >= p.n {
                p.k = p.n - 1;
            }
        }
        IdentityId::SecCosParity => {
            p.n = pick_n(u(), 1, 24);
            p.k = (2.0 * p.n as f64 * u()) as u64;
            if p.k >= 2 * p.n {
                p.k = 2 * p.n - 1;
            }
        }
        IdentityId::AlternatingCsc | IdentityId::AlternatingSec => {
            p.n = 2 * pick_n(u(), 0, 10) + 1;
            p.phi = 0.05 + 0.9 * u();
        }
        IdentityId::CotangentSum
        | IdentityId::CotangentSquareSum
        | IdentityId::TangentFullStep
        | IdentityId::CosecantDoubleStep
        | IdentityId::SecantDoubleStep
        | IdentityId::CosecantSquareSum
        | IdentityId::SecantSquareSum
        | IdentityId::TangentSquareSum
        | IdentityId::CotangentShiftRational
        | IdentityId::CosecantSquareRational => {
            p.n = pick_n(u(), 2, 16);
            // an irrational-looking phase well off every lattice used above
            p.phi = (0.07 + 0.8 * u()) / p.n as f64 + 0.013;
            p.x = 0.25 + 0.5 * u();
        }
        IdentityId::RationalCosFullCircle
        | IdentityId::RationalCosHalfPlus
        | IdentityId::RationalCosHalfMinus
        | IdentityId::RationalCosOddGrid
        | IdentityId::RationalCosHalfIntegerPlus
        | IdentityId::RationalCosHalfIntegerMinus => {
            p.n = pick_n(u(), 1, 12).max(2);
            p.x = if u() < 0.5 {
                0.2 + 0.55 * u()
            } else {
                1.25 + 0.75 * u()
            };
        }
    }
    p
}
