#![allow(dead_code)]

use chi18::quartic::{TernaryForm, TernaryQuartic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

pub fn form(degree: u32, terms: &[([u32; 3], i64)]) -> TernaryForm {
    TernaryForm::from_terms(degree, terms.iter().map(|&(e, c)| (e, Rational::from(c)))).unwrap()
}

pub fn quartic(terms: &[([u32; 3], i64)]) -> TernaryQuartic {
    form(4, terms)
}

/// The fixed "random" smooth quartic used as a third end-to-end fixture.
pub fn random_fixture() -> TernaryQuartic {
    quartic(&[
        ([4, 0, 0], 1),
        ([3, 1, 0], -1),
        ([0, 4, 0], 2),
        ([1, 1, 2], 1),
        ([0, 2, 2], -3),
        ([0, 0, 4], 2),
        ([2, 0, 2], 1),
        ([0, 1, 3], 1),
    ])
}

pub fn unit_conic() -> TernaryForm {
    form(2, &[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], 1)])
}

/// Quartic with random coefficients in `[-3, 3]` on all 15 monomials.
pub fn random_quartic(seed: u64) -> TernaryQuartic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..15).map(|_| Rational::from(rng.gen_range(-3..=3))).collect();
    TernaryForm::from_coeffs(4, coeffs).unwrap()
}

/// Quartics singular at `(0:0:1)` or along a component, built by hand.
pub fn singular_corpus() -> Vec<(&'static str, TernaryQuartic)> {
    let line = form(1, &[([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)]);
    let nodal_cubic = form(3, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]);
    let cuspidal_cubic = form(3, &[([0, 2, 1], 1), ([3, 0, 0], -1)]);
    let conic_a = form(2, &[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], -1)]);
    let conic_b = form(2, &[([2, 0, 0], 1), ([0, 2, 0], 2), ([0, 0, 2], -3)]);
    let conic = unit_conic();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut random_through_origin = TernaryForm::zero(4);
    for e in chi18::quartic::monomials(4) {
        // No constant or linear part in the chart z = 1.
        if e[2] <= 2 {
            let c = Rational::from(rng.gen_range(-3..=3));
            random_through_origin = random_through_origin.add(&TernaryForm::from_terms(4, [(e, c)]).unwrap()).unwrap();
        }
    }
    vec![
        ("x^4 + y^4", quartic(&[([4, 0, 0], 1), ([0, 4, 0], 1)])),
        ("double conic", conic.mul(&conic)),
        ("nodal cubic times line", nodal_cubic.mul(&line)),
        ("cuspidal cubic times line", cuspidal_cubic.mul(&line)),
        ("two conics", conic_a.mul(&conic_b)),
        ("four lines", form(3, &[([1, 1, 1], 1)]).mul(&line)),
        ("node at origin", quartic(&[([2, 0, 2], 1), ([0, 2, 2], -1), ([4, 0, 0], 1), ([0, 4, 0], 1), ([3, 1, 0], 1)])),
        ("cusp at origin", quartic(&[([0, 2, 2], 1), ([3, 0, 1], 1), ([4, 0, 0], 1), ([0, 4, 0], 1)])),
        ("tacnode at origin", quartic(&[([0, 2, 2], 1), ([4, 0, 0], 1), ([0, 4, 0], 1)])),
        ("random through a singular point", random_through_origin),
        ("double line times conic", form(2, &[([2, 0, 0], 1)]).mul(&conic)),
    ]
}
