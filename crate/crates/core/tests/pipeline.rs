mod common;

use chi18::arith::{BigComplex, Sign};
use chi18::pipeline::{
    degeneration_scan, delta_from_tau_omega, delta_of_quartic, delta_of_quartic_with, hyperelliptic_probe, Verdict,
};
use chi18::periods::PeriodOptions;
use chi18::quartic::{fermat_quartic, klein_quartic};
use chi18::theta::SiegelPoint;
use rug::Rational;

const EXPONENT: Option<(Sign, i64)> = Some((Sign::Plus, -108));

#[test]
fn fermat_delta_is_a_square() {
    let r = delta_of_quartic(&fermat_quartic(), 60).unwrap();
    assert_eq!(r.delta_rational, Some(Rational::from(1)));
    assert_eq!(r.verdict, Verdict::Jacobian);
    assert_eq!(r.exponent_vs_discr, EXPONENT);
    let back = chi18::pipeline::DeltaReport::parse(&r.to_string()).unwrap();
    assert_eq!(back.delta_rational, r.delta_rational);
    assert_eq!(back.exponent_vs_discr, r.exponent_vs_discr);
}

#[test]
fn precision_doubling_keeps_the_rational() {
    let lo = delta_of_quartic(&klein_quartic(), 40).unwrap();
    let hi = delta_of_quartic(&klein_quartic(), 80).unwrap();
    assert!(lo.delta_rational.is_some());
    assert_eq!(lo.delta_rational, hi.delta_rational);
    assert_eq!(lo.verdict, hi.verdict);
    assert_eq!(hi.exponent_vs_discr, EXPONENT);
    assert!(lo.delta_numeric.rel_diff(&hi.delta_numeric) < 1e-37);
}

#[test]
fn random_quartic_has_the_same_exponent() {
    let r = delta_of_quartic(&common::random_fixture(), 50).unwrap();
    assert_eq!(r.exponent_vs_discr, EXPONENT);
    assert_eq!(r.verdict, Verdict::Jacobian);
}

#[test]
fn smooth_period_point_has_no_vanishing_null() {
    let (_, pd) = delta_of_quartic_with(&common::random_fixture(), 40, PeriodOptions::default()).unwrap();
    let (count, min) = hyperelliptic_probe(&pd.tau, 40).unwrap();
    assert_eq!(count, 0);
    assert!(min > -5.0);
}

#[test]
fn product_of_elliptic_curves_has_nine_vanishing_nulls() {
    let (count, min) = hyperelliptic_probe(&SiegelPoint::scaled_identity(1.0, 40), 40).unwrap();
    assert_eq!(count, 9);
    assert!(min < -40.0 / 3.0);
}

#[test]
fn vanishing_chi18_gives_the_boundary_verdict() {
    let p = 120;
    let tau = SiegelPoint::scaled_identity(1.0, p);
    let one: [[BigComplex; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| BigComplex::from_f64(if i == j { 1.0 } else { 0.0 }, 0.0, p)));
    let r = delta_from_tau_omega(&tau, &one, p).unwrap();
    assert_eq!(r.verdict, Verdict::HyperellipticOrDecomposable);
    assert_eq!(r.delta_rational, Some(Rational::new()));
    assert!(r.zero_margin_log10 >= 20.0);
}

#[test]
fn short_degeneration_scan() {
    let ts = [Rational::from((1, 2)), Rational::from((1, 4))];
    let table = degeneration_scan(&common::unit_conic(), &fermat_quartic(), &ts, 50).unwrap();
    assert!(table.is_monotone());
    assert_eq!(table.common_exponent(), EXPONENT);
    // Not yet separated by 10^3 this far from the limit.
    assert!(table.check().is_err());
}
