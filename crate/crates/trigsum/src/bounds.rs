//! Rigorous two-sided bounds for the cosecant and secant sums, derived from
//! the enveloping property of the asymptotic tails, together with the
//! classical one-sided bounds from the literature for comparison tables.
//!
//! Bound endpoints are carried in double-wide precision: the tightest gaps
//! (below 1e-11 at n = 50) sit near the native epsilon of the centering
//! quantities.

use crate::dd::{consts, DoubleWide};
use crate::ddmath;
use crate::numerics::harmonic;
use crate::sums::direct_sum_wide;
use crate::sums::Family;
use crate::Error;

type DD = DoubleWide;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundFlavor {
    HarmonicCentered,
    LogCentered,
    GeneralStrip,
    UnitAPhi1,
    SecantStrip,
    SecantUnitAPhi1,
    CochranePeral,
    AlzerKoumandos,
    Pomerance,
    TongEtAl,
}

/// A two-sided (or half-infinite) enclosure of a sum value. `constants`
/// records the named coefficients that built the pair.
#[derive(Clone, Debug)]
pub struct BoundPair {
    pub lower: DD,
    pub upper: DD,
    pub flavor: BoundFlavor,
    pub valid: bool,
    pub constants: Vec<(&'static str, f64)>,
}

impl BoundPair {
    pub fn contains(&self, value: DD) -> bool {
        self.valid && value > self.lower && value < self.upper
    }

    pub fn width(&self) -> f64 {
        (self.upper - self.lower).to_f64()
    }
}

/// A ≡ pi/36 - 1/(6 pi) and B ≡ 7 pi^3/21600 - 1/(60 pi) of the
/// harmonic-centered bounds.
fn harmonic_bound_constants() -> (DD, DD) {
    let a = consts::PI / 36.0 - (consts::PI * 6.0).recip();
    let b = consts::PI.powi(3) * 7.0 / 21_600.0 - (consts::PI * 60.0).recip();
    (a, b)
}

/// C ≡ pi/36 and D ≡ 7 pi^3/21600 of the log-centered bounds.
fn log_bound_constants() -> (DD, DD) {
    (consts::PI / 36.0, consts::PI.powi(3) * 7.0 / 21_600.0)
}

/// Two-sided bounds on S_n centered on the harmonic-number or logarithmic
/// closed form.
pub fn bounds_sn(n: u64, flavor: BoundFlavor) -> Result<BoundPair, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("n >= 2 required, got {n}")));
    }
    let nf = DD::from_f64(n as f64);
    match flavor {
        BoundFlavor::HarmonicCentered => {
            let (a, b) = harmonic_bound_constants();
            let center = nf * 2.0 / consts::PI * (harmonic(n)? - (consts::LN_PI - consts::LN_2))
                - consts::PI.recip();
            let lower = center - a / nf;
            let upper = lower + b / nf.powi(3);
            Ok(BoundPair {
                lower,
                upper,
                flavor,
                valid: true,
                constants: vec![("A", a.to_f64()), ("B", b.to_f64())],
            })
        }
        BoundFlavor::LogCentered => {
            let (c, d) = log_bound_constants();
            let center =
                nf * 2.0 / consts::PI * (ddmath::ln(nf * 2.0 / consts::PI) + consts::EULER_GAMMA);
            let lower = center - c / nf;
            let upper = lower + d / nf.powi(3);
            Ok(BoundPair {
                lower,
                upper,
                flavor,
                valid: true,
                constants: vec![("C", c.to_f64()), ("D", d.to_f64())],
            })
        }
        _ => Err(Error::InvalidParameter(
            "bounds_sn supports the harmonic and log flavors".into(),
        )),
    }
}

fn csc_ctg(x: DD) -> (DD, DD) {
    let (s, c) = ddmath::sincos(x);
    (s.recip(), c / s)
}

/// Enveloping pair around a centering value: the true value lies strictly
/// between the consecutive tail partial sums tau1 and tau1 + tau2.
fn envelope(center: DD, tau1: DD, tau2: DD) -> (DD, DD) {
    let s1 = center + tau1;
    let s2 = center + tau1 + tau2;
    if s1 < s2 {
        (s1, s2)
    } else {
        (s2, s1)
    }
}

/// Bounds for S_n(phi,a) on the strip 0 < phi < pi, 1-phi/pi < a < 2-phi/pi.
pub fn bounds_sn_phi_a(n: u64, phi: f64, a: f64) -> Result<BoundPair, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("n >= 2 required, got {n}")));
    }
    let u = phi / std::f64::consts::PI;
    if !(phi > 0.0 && phi < std::f64::consts::PI && a > 1.0 - u && a < 2.0 - u) {
        return Err(Error::Domain(format!(
            "bounds strip requires 0 < phi < pi and 1 - phi/pi < a < 2 - phi/pi; \
             got phi = {phi}, a = {a}"
        )));
    }
    let nf = DD::from_f64(n as f64);
    let ad = DD::from_f64(a);
    let phid = DD::from_f64(phi);
    let shifted = phid + consts::PI * ad;
    let (csc1, ctg1) = csc_ctg(phid);
    let (csc2, ctg2) = csc_ctg(shifted);
    // A = (a pi/12){csc phi ctg phi - csc(phi+a pi) ctg(phi+a pi)}
    let a_const = consts::PI * ad / 12.0 * (csc1 * ctg1 - csc2 * ctg2);
    // B = (a^3 pi^3/720){csc ctg^3 + 5 csc^3 ctg - [same at phi + a pi]}
    let b_const = (consts::PI * ad).powi(3) / 720.0
        * (csc1 * ctg1.powi(3) + csc1.powi(3) * ctg1 * 5.0
            - csc2 * ctg2.powi(3)
            - csc2.powi(3) * ctg2 * 5.0);
    let (ctg_n, _) = {
        let (t, _) = ddmath::reduce_mod_pi(nf * (consts::PI - phid) / ad);
        let (s, c) = ddmath::sincos(t);
        (c / s, t)
    };
    let center = nf / ad * ctg_n
        + nf / (ad * consts::PI)
            * ddmath::ln(
                ddmath::tan(consts::PI - consts::PI * ad * 0.5 - phid * 0.5)
                    / ddmath::tan(phid * 0.5),
            )
        - (csc1 + csc2) * 0.5;
    let (lower, upper) = envelope(center, a_const / nf, -b_const / nf.powi(3));
    Ok(BoundPair {
        lower,
        upper,
        flavor: BoundFlavor::GeneralStrip,
        valid: true,
        constants: vec![("A", a_const.to_f64()), ("B", b_const.to_f64())],
    })
}

/// Bounds for S_n(phi,1), 0 < phi < pi off the lattice pi k/n.
pub fn bounds_sn_phi1(n: u64, phi: f64) -> Result<BoundPair, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("n >= 2 required, got {n}")));
    }
    if !(phi > 0.0 && phi < std::f64::consts::PI) {
        return Err(Error::Domain(format!(
            "bounds require 0 < phi < pi, got {phi}"
        )));
    }
    let nf = DD::from_f64(n as f64);
    let phid = DD::from_f64(phi);
    let (t, _) = ddmath::reduce_mod_pi(phid * (n as f64));
    if t.to_f64().abs() < 1e-12 {
        return Err(Error::Domain("phi lies on the pole lattice pi k/n".into()));
    }
    let (csc1, ctg1) = csc_ctg(phid);
    let a_const = consts::PI * csc1 * ctg1 / 6.0;
    let b_const =
        consts::PI.powi(3) / 360.0 * (csc1 * ctg1.powi(3) + csc1.powi(3) * ctg1 * 5.0);
    let (s, c) = ddmath::sincos(t);
    let center = -nf * (c / s) - nf * 2.0 / consts::PI * ddmath::ln(ddmath::tan(phid * 0.5));
    let (lower, upper) = envelope(center, a_const / nf, -b_const / nf.powi(3));
    Ok(BoundPair {
        lower,
        upper,
        flavor: BoundFlavor::UnitAPhi1,
        valid: true,
        constants: vec![("A", a_const.to_f64()), ("B", b_const.to_f64())],
    })
}

/// Bounds for C_n(phi,a) on the shifted strip |phi| < pi/2,
/// 1/2 - phi/pi < a < 3/2 - phi/pi.
pub fn bounds_cn(n: u64, phi: f64, a: f64) -> Result<BoundPair, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("n >= 2 required, got {n}")));
    }
    let u = phi / std::f64::consts::PI;
    if !(phi.abs() < std::f64::consts::FRAC_PI_2 && a > 0.5 - u && a < 1.5 - u) {
        return Err(Error::Domain(format!(
            "bounds strip requires |phi| < pi/2 and 1/2 - phi/pi < a < 3/2 - phi/pi; \
             got phi = {phi}, a = {a}"
        )));
    }
    let nf = DD::from_f64(n as f64);
    let ad = DD::from_f64(a);
    let phid = DD::from_f64(phi);
    let sec_tg = |x: DD| {
        let (s, c) = ddmath::sincos(x);
        (c.recip(), s / c)
    };
    let (sec1, tg1) = sec_tg(phid);
    let (sec2, tg2) = sec_tg(phid + consts::PI * ad);
    let a_const = -(consts::PI * ad) / 12.0 * (sec1 * tg1 - sec2 * tg2);
    let b_const = -(consts::PI * ad).powi(3) / 720.0
        * (sec1 * tg1.powi(3) + sec1.powi(3) * tg1 * 5.0
            - sec2 * tg2.powi(3)
            - sec2.powi(3) * tg2 * 5.0);
    let (t, _) = ddmath::reduce_mod_pi(nf * (consts::FRAC_PI_2 - phid) / ad);
    let (s, c) = ddmath::sincos(t);
    let center = nf / ad * (c / s)
        + nf / (ad * consts::PI)
            * ddmath::ln(
                ddmath::tan(consts::PI * 0.75 - consts::PI * ad * 0.5 - phid * 0.5)
                    / ddmath::tan(phid * 0.5 + consts::FRAC_PI_4),
            )
        - (sec1 + sec2) * 0.5;
    let (lower, upper) = envelope(center, a_const / nf, -b_const / nf.powi(3));
    Ok(BoundPair {
        lower,
        upper,
        flavor: BoundFlavor::SecantStrip,
        valid: true,
        constants: vec![("A", a_const.to_f64()), ("B", b_const.to_f64())],
    })
}

/// Bounds for C_n(phi,1), |phi| < pi/2 off the lattice.
pub fn bounds_cn_phi1(n: u64, phi: f64) -> Result<BoundPair, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("n >= 2 required, got {n}")));
    }
    if phi.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "bounds require |phi| < pi/2, got {phi}"
        )));
    }
    let nf = DD::from_f64(n as f64);
    let phid = DD::from_f64(phi);
    let arg = (phid + consts::FRAC_PI_2) * (n as f64);
    let (t, _) = ddmath::reduce_mod_pi(arg);
    if t.to_f64().abs() < 1e-12 {
        return Err(Error::Domain("phi lies on the pole lattice".into()));
    }
    let (s, c) = ddmath::sincos(phid);
    let sec1 = c.recip();
    let tg1 = s / c;
    let a_const = -consts::PI * sec1 * tg1 / 6.0;
    let b_const =
        -consts::PI.powi(3) / 360.0 * (sec1 * tg1.powi(3) + sec1.powi(3) * tg1 * 5.0);
    let (ts, tc) = ddmath::sincos(t);
    let center = -nf * (tc / ts)
        - nf * 2.0 / consts::PI * ddmath::ln(ddmath::tan(phid * 0.5 + consts::FRAC_PI_4));
    let (lower, upper) = envelope(center, a_const / nf, -b_const / nf.powi(3));
    Ok(BoundPair {
        lower,
        upper,
        flavor: BoundFlavor::SecantUnitAPhi1,
        valid: true,
        constants: vec![("A", a_const.to_f64()), ("B", b_const.to_f64())],
    })
}

/// The four classical bounds on S_n; one-sided bounds carry an infinite
/// endpoint on the missing side.
pub fn historical_bounds(n: u64) -> Result<Vec<BoundPair>, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("n >= 2 required, got {n}")));
    }
    let nf = DD::from_f64(n as f64);
    let log_center =
        nf * 2.0 / consts::PI * (ddmath::ln(nf * 2.0 / consts::PI) + consts::EULER_GAMMA);
    let neg_inf = DD::from_f64(f64::NEG_INFINITY);

    // S_n < (2n/pi)(ln(2n/pi) + gamma) + 1 - 1/pi
    let cochrane_c = DD::ONE - consts::PI.recip();
    let cochrane = BoundPair {
        lower: neg_inf,
        upper: log_center + cochrane_c,
        flavor: BoundFlavor::CochranePeral,
        valid: true,
        constants: vec![("constant", cochrane_c.to_f64())],
    };
    // alpha <= S_n - center <= 0 with the best-possible
    // alpha = 1 - 4(gamma + 2 ln 2 - ln pi)/pi (attained at n = 2)
    let alpha = DD::ONE
        - (consts::EULER_GAMMA + consts::LN_2 * 2.0 - consts::LN_PI) * 4.0 / consts::PI;
    let alzer = BoundPair {
        lower: log_center + alpha,
        upper: log_center,
        flavor: BoundFlavor::AlzerKoumandos,
        valid: true,
        constants: vec![("alpha", alpha.to_f64()), ("beta", 0.0)],
    };
    // S_n < (2n/pi)(ln(4n/pi) + pi^2/(12 n^2))
    let pomerance_upper = nf * 2.0 / consts::PI
        * (ddmath::ln(nf * 4.0 / consts::PI) + consts::PI * consts::PI / (nf * nf * 12.0));
    let pomerance = BoundPair {
        lower: neg_inf,
        upper: pomerance_upper,
        flavor: BoundFlavor::Pomerance,
        valid: true,
        constants: vec![],
    };
    // -0.358/(pi n) < S_n - center < -0.186/(pi n)
    let tong_lo = DD::from_f64(-0.358) / (consts::PI * nf);
    let tong_hi = DD::from_f64(-0.186) / (consts::PI * nf);
    let tong = BoundPair {
        lower: log_center + tong_lo,
        upper: log_center + tong_hi,
        flavor: BoundFlavor::TongEtAl,
        valid: true,
        constants: vec![
            ("lower_coeff", (DD::from_f64(-0.358) / consts::PI).to_f64()),
            ("upper_coeff", (DD::from_f64(-0.186) / consts::PI).to_f64()),
        ],
    };
    Ok(vec![cochrane, alzer, pomerance, tong])
}

/// Wide-oracle value of S_n used by the containment tests.
pub fn sn_oracle(n: u64) -> Result<DD, Error> {
    Ok(direct_sum_wide(Family::Csc, n, DD::ZERO, DD::ONE)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sums::eval_direct;
    use crate::sums::SumSpec;
    use crate::Precision;

    /// value agrees with a truncated decimal prefix
    fn has_prefix(x: f64, lo: f64, width: f64) -> bool {
        x >= lo && x < lo + width
    }

    #[test]
    fn constants_match_printed_digits() {
        let (a, b) = harmonic_bound_constants();
        assert!(has_prefix(a.to_f64(), 0.0342, 1e-4), "A = {a}");
        assert!(has_prefix(b.to_f64(), 0.00474, 1e-5), "B = {b}");
        let (c, d) = log_bound_constants();
        assert!(has_prefix(c.to_f64(), 0.0872, 1e-4), "C = {c}");
        assert!(has_prefix(d.to_f64(), 0.0100, 1e-4), "D = {d}");
    }

    #[test]
    fn sn_bounds_contain_and_are_tight() {
        for n in [2u64, 5, 10, 50, 200, 1000] {
            let s = sn_oracle(n).unwrap();
            let h = bounds_sn(n, BoundFlavor::HarmonicCentered).unwrap();
            assert!(h.contains(s), "harmonic pair at n={n}");
            let l = bounds_sn(n, BoundFlavor::LogCentered).unwrap();
            assert!(l.contains(s), "log pair at n={n}");
            assert!(h.width() < l.width(), "harmonic tighter at n={n}");
        }
        let h10 = bounds_sn(10, BoundFlavor::HarmonicCentered).unwrap();
        let gap = (h10.upper - sn_oracle(10).unwrap()).to_f64();
        assert!(gap > 0.0 && gap <= 3e-8, "gap at n=10: {gap:e}");
    }

    #[test]
    fn strip_bounds_contain_direct_value() {
        // both sign regions of 2 phi + a pi - 2 pi
        for (phi, a) in [(2.5, 0.9), (1.0, 0.8)] {
            for n in [20u64, 50, 200] {
                let s = eval_direct(&SumSpec::new(Family::Csc, n, phi, a), Precision::Wide)
                    .unwrap()
                    .wide
                    .unwrap();
                let b = bounds_sn_phi_a(n, phi, a).unwrap();
                assert!(
                    b.contains(s),
                    "phi={phi} a={a} n={n}: {} not in ({}, {})",
                    s.to_f64(),
                    b.lower.to_f64(),
                    b.upper.to_f64()
                );
            }
        }
        assert!(bounds_sn_phi_a(10, 0.1, 0.2).is_err());
    }

    #[test]
    fn strip_bounds_zero_sign_case() {
        // 2 phi + a pi = 2 pi: A = B = 0 and the pair degenerates to the
        // centering value (up to the f64 rounding of phi)
        let a = 0.5;
        let phi = std::f64::consts::PI * (1.0 - a / 2.0);
        let b = bounds_sn_phi_a(63, phi, a).unwrap();
        assert!(b.constants[0].1.abs() < 1e-14);
        assert!(b.constants[1].1.abs() < 1e-14);
        assert!(b.width() < 1e-15);
    }

    #[test]
    fn phi1_bounds_contain_direct_value() {
        for phi in [0.4, 2.8] {
            let n = 50u64;
            let s = eval_direct(&SumSpec::new(Family::Csc, n, phi, 1.0), Precision::Wide)
                .unwrap()
                .wide
                .unwrap();
            let b = bounds_sn_phi1(n, phi).unwrap();
            assert!(
                b.contains(s),
                "phi={phi}: {} not in ({}, {})",
                s.to_f64(),
                b.lower.to_f64(),
                b.upper.to_f64()
            );
        }
        // phi = pi/2: A = B = 0 up to rounding of fl(pi/2)
        let b = bounds_sn_phi1(51, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(b.constants[0].1.abs() < 1e-15);
        assert!(b.constants[1].1.abs() < 1e-14);
    }

    #[test]
    fn secant_bounds_contain_direct_value() {
        let (phi, a, n) = (0.3, 0.8, 60u64);
        let s = eval_direct(&SumSpec::new(Family::Sec, n, phi, a), Precision::Wide)
            .unwrap()
            .wide
            .unwrap();
        let b = bounds_cn(n, phi, a).unwrap();
        assert!(b.contains(s));
        // corollary at phi = 0: A = 0 exactly (tg 0 = 0)
        let b0 = bounds_cn_phi1(61, 0.0).unwrap();
        assert_eq!(b0.constants[0].1, 0.0);
        for phi in [-0.3, 0.3] {
            let n = 60u64;
            let s = eval_direct(&SumSpec::new(Family::Sec, n, phi, 1.0), Precision::Wide)
                .unwrap()
                .wide
                .unwrap();
            let b = bounds_cn_phi1(n, phi).unwrap();
            assert!(b.contains(s), "phi={phi}");
        }
    }

    #[test]
    fn historical_constants_and_containment() {
        let hb = historical_bounds(100).unwrap();
        let cochrane = &hb[0];
        assert!(has_prefix(cochrane.constants[0].1, 0.681, 1e-3));
        let alzer = &hb[1];
        assert!(has_prefix(-alzer.constants[0].1, 0.0425, 1e-4));
        let tong = &hb[3];
        assert!(has_prefix(-tong.constants[0].1, 0.113, 1e-3));
        assert!(has_prefix(-tong.constants[1].1, 0.059, 1e-3));
        for n in [3u64, 10, 100, 1000] {
            let s = sn_oracle(n).unwrap();
            for b in historical_bounds(n).unwrap() {
                assert!(
                    s < b.upper && s > b.lower,
                    "{:?} violated at n={n}",
                    b.flavor
                );
            }
        }
        // the Alzer-Koumandos lower constant is attained at n = 2: allow
        // equality to double-wide noise there
        let s2 = sn_oracle(2).unwrap();
        let a2 = &historical_bounds(2).unwrap()[1];
        assert!((s2 - a2.lower).to_f64() > -1e-25);
        assert!(s2 < a2.upper);
    }
}
