use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use super::report::{DeltaReport, Verdict};
use crate::arith::{
    bits_for_digits, default_height_bound, perfect_square, power_of_two_ratio, rational_reconstruct_within, BigComplex,
};
use crate::cmat::cdet3;
use crate::error::{Error, Result};
use crate::periods::{periods_of_quartic, PeriodData, PeriodOptions};
use crate::quartic::{discriminant, TernaryQuartic};
use crate::theta::{chi18_an, Chi18, SiegelPoint};

/// Minimum working precision for the zero test on theta nulls.
pub const MIN_ZERO_TEST_DIGITS: u32 = 120;

/// Required gap, in decades, between vanishing and non-vanishing nulls.
pub const ZERO_MARGIN_DECADES: f64 = 20.0;

/// Extra digits for the periods feeding `delta_of_quartic`.
const PERIOD_GUARD: u32 = 10;

/// Square test on an exact `Delta`.
pub fn is_jacobian(delta: &Rational) -> Verdict {
    if *delta == 0 {
        Verdict::HyperellipticOrDecomposable
    } else if perfect_square(delta).is_some() {
        Verdict::Jacobian
    } else {
        Verdict::TwistedNonJacobian
    }
}

/// Decades separating the vanishing nulls from the rest. With no vanishing
/// null the gap is measured from the zero threshold.
fn zero_margin(chi: &Chi18) -> f64 {
    let mags = chi.null_magnitudes_log10();
    let n = chi.vanishing_count();
    if n == 0 {
        mags[0] - chi.zero_threshold_log10()
    } else if n == mags.len() {
        f64::INFINITY
    } else {
        mags[n] - mags[n - 1]
    }
}

/// Reconstruction of `x` (relative accuracy `10^-p`) as `scale * r`. With
/// `y = x / scale` taken as is when `|y| >= 1` and inverted otherwise, `y` is
/// matched to relative error `10^-(p-6)` by `h/k` with `k <= 10^(p/4)`,
/// `|h| <= 10^(p/4) |y|` and `|h| k <= 10^(p-7)`. Matching relative to `y`
/// means a small nonzero value never collapses to zero.
fn reconstruct_relative(x: &BigComplex, scale: &Rational) -> Option<Rational> {
    let digits = x.digits();
    let y = x.checked_div(&BigComplex::from_rational(scale, digits)).ok()?;
    if !y.log10_abs().is_finite() {
        return None;
    }
    let invert = y.log10_abs() < 0.0;
    let z = if invert { y.recip().ok()? } else { y };
    let den_bound = default_height_bound(digits);
    let mag = z.abs().ceil().to_integer()?.max(Integer::from(1));
    let r = rational_reconstruct_within(&z, &Integer::from(&den_bound * &mag), digits.saturating_sub(6))?;
    if *r.denom() > den_bound || r == 0 {
        return None;
    }
    // Rationals near h/k of this height are about 1/(h k) apart relative to
    // it, so the tolerance must be well inside that spacing.
    let height = Integer::from(r.numer().abs_ref()) * r.denom();
    if height.significant_bits() as f64 * std::f64::consts::LOG10_2 > digits as f64 - 7.0 {
        return None;
    }
    let r = if invert { r.recip() } else { r };
    let q = Rational::from(r * scale);
    if x.rel_diff(&BigComplex::from_rational(&q, digits)) > 10f64.powf(-(digits as f64) / 2.0) {
        return None;
    }
    Some(q)
}

fn set_exact(report: &mut DeltaReport, q: Rational) {
    report.square_root = if q != 0 { perfect_square(&q) } else { None };
    report.verdict = is_jacobian(&q);
    report.delta_rational = Some(q);
}

fn det_omega(omega1: &[[BigComplex; 3]; 3], digits: u32) -> BigComplex {
    let bits = bits_for_digits(digits);
    let m = std::array::from_fn(|i| std::array::from_fn(|j| Complex::with_val(bits, omega1[i][j].value())));
    BigComplex::new(cdet3(&m, bits), digits)
}

/// `Delta` from a period point and the matching `omega1`.
///
/// The value is computed both as `(pi/2)^54 chi18 / det^18` and as
/// `(2 pi i)^54 chi18 / (c det^18)` with `c = -2^108`; the two must agree to
/// `10^-(p-20)`.
pub fn delta_from_tau_omega(tau: &SiegelPoint, omega1: &[[BigComplex; 3]; 3], digits: u32) -> Result<DeltaReport> {
    let bits = bits_for_digits(digits);
    let det = det_omega(omega1, digits);
    let scale = omega1.iter().flatten().map(BigComplex::log10_abs).fold(f64::NEG_INFINITY, f64::max);
    if det.is_zero() || det.log10_abs() < 3.0 * scale - digits as f64 / 2.0 {
        return Err(Error::Precision("omega1 is not invertible at this precision".into()));
    }
    let det18 = det.powu(18);
    let chi = chi18_an(tau, digits)?;

    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let half_pi54 = BigComplex::new(Complex::with_val(bits, (Float::with_val(bits, &pi / 2u32).pow(54u32), 0)), digits);
    let delta = (&half_pi54 * &chi.value).checked_div(&det18)?;

    let two_pi_i54 = BigComplex::new(Complex::with_val(bits, (0, Float::with_val(bits, &pi * 2u32))), digits).powu(54);
    let c = BigComplex::from_rational(&Rational::from(-(Integer::from(1) << 108u32)), digits);
    let alt = (&two_pi_i54 * &chi.value).checked_div(&(&c * &det18))?;
    if !chi.value.is_zero() && delta.rel_diff(&alt) > 10f64.powf(-(digits as f64) + 20.0) {
        return Err(Error::Consistency("the two normalizations of Delta disagree".into()));
    }

    let margin = zero_margin(&chi);
    if digits >= MIN_ZERO_TEST_DIGITS && margin < ZERO_MARGIN_DECADES {
        return Err(Error::Precision(format!(
            "zero test is ambiguous: only {margin:.1} decades separate zero from nonzero theta nulls"
        )));
    }

    let mags = chi.null_magnitudes_log10();
    let mut report = DeltaReport {
        delta_numeric: delta.clone(),
        delta_rational: None,
        square_root: None,
        verdict: Verdict::Undetermined,
        chi18_value: chi.value.clone(),
        det_omega1_18: det18,
        exponent_vs_discr: None,
        discriminant: None,
        coordinate_change: None,
        twist: None,
        vanishing_nulls: chi.vanishing_count(),
        min_null_log10: mags[0],
        second_null_log10: mags[1],
        zero_margin_log10: margin,
        digits,
    };
    let exact = if chi.is_numerically_zero() {
        Some(Rational::new())
    } else {
        reconstruct_relative(&delta, &Rational::from(1))
    };
    if let Some(q) = exact {
        set_exact(&mut report, q);
    }
    Ok(report)
}

/// `Delta` of a plane quartic, together with its period data.
pub fn delta_of_quartic_with(f: &TernaryQuartic, digits: u32, opts: PeriodOptions) -> Result<(DeltaReport, PeriodData)> {
    let disc = discriminant(f)?;
    if disc == 0 {
        return Err(Error::Singular { discriminant: disc });
    }
    let pd = periods_of_quartic(f, digits + PERIOD_GUARD, opts)?;
    let mut report = delta_from_tau_omega(&pd.tau, &pd.omega1, digits)?;
    let change = pd.curve.change();
    if change != [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        report.coordinate_change = Some(change);
    }
    // Delta is expected near a power of two times Discr^2; reconstructing the
    // quotient keeps the height small when Discr has a large denominator.
    if report.vanishing_nulls == 0 {
        if let Some(q) = reconstruct_relative(&report.delta_numeric, &Rational::from(&disc * &disc)) {
            set_exact(&mut report, q);
        }
    }
    if let Some(q) = &report.delta_rational {
        let d2 = Rational::from(&disc * &disc);
        report.exponent_vs_discr = power_of_two_ratio(q, &d2)?;
    }
    report.discriminant = Some(disc);
    Ok((report, pd))
}

/// Periods, `tau`, `chi18` and `Delta` of a smooth plane quartic.
pub fn delta_of_quartic(f: &TernaryQuartic, digits: u32) -> Result<DeltaReport> {
    Ok(delta_of_quartic_with(f, digits, PeriodOptions::default())?.0)
}

/// Report for the quadratic twist by `d`: `Delta / d^27`.
pub fn twist_delta(report: &DeltaReport, d: &Rational) -> Result<DeltaReport> {
    if *d == 0 {
        return Err(Error::InvalidArgument("twist parameter must be nonzero".into()));
    }
    if perfect_square(d).is_some() {
        return Err(Error::InvalidArgument(format!("{d} is a square; the twist is trivial")));
    }
    let delta = match &report.delta_rational {
        Some(q) if *q != 0 => q,
        _ => return Err(Error::InvalidArgument("twisting needs a nonzero exact Delta".into())),
    };
    let d27 = Rational::from(d.pow(27u32));
    let q = Rational::from(delta / &d27);
    let digits = report.digits;
    let d27c = BigComplex::from_rational(&d27, digits);
    let twist = match &report.twist {
        Some(t) => Rational::from(t * d),
        None => d.clone(),
    };
    // A twist by a square is isomorphic to the untwisted variety.
    let twist = match perfect_square(&twist) {
        Some(_) => None,
        None => Some(twist),
    };
    Ok(DeltaReport {
        delta_numeric: report.delta_numeric.checked_div(&d27c)?,
        square_root: perfect_square(&q),
        verdict: is_jacobian(&q),
        delta_rational: Some(q),
        det_omega1_18: &report.det_omega1_18 * &d27c,
        exponent_vs_discr: None,
        twist,
        ..report.clone()
    })
}

/// Number of vanishing even nulls at `tau` and the smallest null magnitude
/// (as `log10`).
pub fn hyperelliptic_probe(tau: &SiegelPoint, digits: u32) -> Result<(usize, f64)> {
    let chi = chi18_an(tau, digits)?;
    Ok((chi.vanishing_count(), chi.min_null_log10()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_rational, Sign};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn numeric(delta: &str, digits: u32) -> DeltaReport {
        let d = q(delta);
        DeltaReport {
            delta_numeric: BigComplex::from_rational(&d, digits),
            square_root: perfect_square(&d),
            verdict: is_jacobian(&d),
            delta_rational: Some(d),
            chi18_value: BigComplex::one(digits),
            det_omega1_18: BigComplex::one(digits),
            exponent_vs_discr: Some((Sign::Plus, 3)),
            discriminant: None,
            coordinate_change: None,
            twist: None,
            vanishing_nulls: 0,
            min_null_log10: -1.0,
            second_null_log10: -0.5,
            zero_margin_log10: 30.0,
            digits,
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(is_jacobian(&q("4/9")), Verdict::Jacobian);
        assert_eq!(is_jacobian(&q("3")), Verdict::TwistedNonJacobian);
        assert_eq!(is_jacobian(&q("0")), Verdict::HyperellipticOrDecomposable);
        assert_eq!(is_jacobian(&q("-4")), Verdict::TwistedNonJacobian);
    }

    #[test]
    fn twists() {
        let r = numeric("4", 60);
        let t = twist_delta(&r, &q("3")).unwrap();
        assert_eq!(t.delta_rational, Some(Rational::from((4, Integer::from(3).pow(27u32)))));
        assert_eq!(t.verdict, Verdict::TwistedNonJacobian);
        assert_eq!(t.exponent_vs_discr, None);
        let back = twist_delta(&t, &q("3")).unwrap();
        assert_eq!(back.verdict, Verdict::Jacobian);
        assert_eq!(back.twist, None);
        assert_eq!(back.delta_rational, Some(Rational::from((4, Integer::from(3).pow(54u32)))));
        assert!(twist_delta(&r, &q("9")).is_err());
        assert!(twist_delta(&numeric("0", 60), &q("3")).is_err());
    }

    #[test]
    fn report_round_trip() {
        let r = twist_delta(&numeric("4", 60), &q("-2/5")).unwrap();
        let back = DeltaReport::parse(&r.to_string()).unwrap();
        assert_eq!(back.delta_rational, r.delta_rational);
        assert_eq!(back.verdict, r.verdict);
        assert_eq!(back.twist, r.twist);
        assert_eq!(back.digits, 60);
        assert!(back.delta_numeric.rel_diff(&r.delta_numeric) < 1e-55);
    }

    #[test]
    fn scaling_omega1() {
        let tau = SiegelPoint::from_upper([
            BigComplex::from_f64(0.1, 1.3, 40),
            BigComplex::from_f64(0.2, 0.3, 40),
            BigComplex::from_f64(-0.1, 0.1, 40),
            BigComplex::from_f64(0.3, 1.1, 40),
            BigComplex::from_f64(0.0, -0.2, 40),
            BigComplex::from_f64(0.05, 1.7, 40),
        ])
        .unwrap();
        let omega: [[BigComplex; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| BigComplex::from_f64(if i == j { 2.0 } else { 0.3 * (i + j) as f64 }, 0.1 * i as f64, 40))
        });
        let a = delta_from_tau_omega(&tau, &omega, 40).unwrap();
        let t = BigComplex::from_rational(&q("3/2"), 40);
        let scaled = omega.clone().map(|r| r.map(|z| &z * &t));
        let b = delta_from_tau_omega(&tau, &scaled, 40).unwrap();
        let ratio = a.delta_numeric.checked_div(&b.delta_numeric).unwrap();
        let expect = BigComplex::from_rational(&Rational::from(q("3/2").pow(54u32)), 40);
        assert!(ratio.rel_diff(&expect) < 1e-35);
    }

    #[test]
    fn singular_quartic_is_rejected() {
        let f = TernaryQuartic::from_terms(4, [([4, 0, 0], 1), ([0, 4, 0], 1)]).unwrap();
        match delta_of_quartic(&f, 30) {
            Err(Error::Singular { discriminant }) => assert_eq!(discriminant, 0),
            other => panic!("expected a singular-input error, got {other:?}"),
        }
    }
}
