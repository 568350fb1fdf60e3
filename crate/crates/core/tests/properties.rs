use chi18::arith::{bits_for_digits, perfect_square, rational_reconstruct, BigComplex};
use chi18::quartic::{resultant, TernaryForm};
use chi18::siegel::{act, random_reduced_point, random_symplectic, SymplecticMatrix};
use chi18::theta::{chi18_an, enumerate_even_characteristics, ThetaCharacteristic};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| Rational::from((n, d)))
}

fn cubic() -> impl Strategy<Value = TernaryForm> {
    prop::collection::vec(-4i64..=4, 10)
        .prop_map(|c| TernaryForm::from_coeffs(3, c.into_iter().map(Rational::from).collect()).unwrap())
}

fn embed(q: &Rational, digits: u32) -> BigComplex {
    let bits = bits_for_digits(digits);
    BigComplex::new(Complex::with_val(bits, (Float::with_val(bits, q), 0)), digits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_root_of_square(q in rational()) {
        let sq = Rational::from(&q * &q);
        prop_assert_eq!(perfect_square(&sq), Some(q.abs()));
    }

    #[test]
    fn reconstruction_inverts_embedding(n in -1_000_000i64..=1_000_000, d in 1i64..=1_000_000) {
        // Height 10^6 needs at least 2 * 6 + 20 digits.
        let q = Rational::from((n, d));
        let got = rational_reconstruct(&embed(&q, 32), &Integer::from(1_000_000));
        prop_assert_eq!(got, Some(q));
    }

    #[test]
    fn arithmetic_precision_doubling(a in -1e6f64..1e6, b in -1e6f64..1e6, c in -1e6f64..1e6, d in 1e-3f64..1e6) {
        let run = |p: u32| {
            let x = BigComplex::from_f64(a, b, p) / BigComplex::from_f64(d, 0.3, p);
            let y = BigComplex::from_f64(c, a, p) * BigComplex::pi(p);
            &(&x * &y) + &x
        };
        let (lo, hi) = (run(40), run(80));
        prop_assert!(lo.rel_diff(&hi) < 1e-38);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn resultant_scales_by_ninth_power(g in [cubic(), cubic(), cubic()], n in -5i64..=5, d in 1i64..=5) {
        prop_assume!(n != 0);
        let c = Rational::from((n, d));
        let base = resultant(&g).unwrap();
        let scaled = resultant(&[g[0].scale(&c), g[1].clone(), g[2].clone()]).unwrap();
        prop_assert_eq!(scaled, base * Rational::from(c.pow(9u32)));
    }

    #[test]
    fn symplectic_words_close(len1 in 1usize..6, len2 in 1usize..6, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (random_symplectic(len1, s1), random_symplectic(len2, s2));
        let ab = a.compose(&b).unwrap();
        prop_assert!(ab.is_symplectic());
        prop_assert!(ab.compose(&ab.inverse()).unwrap().is_identity());
        prop_assert!(SymplecticMatrix::new(ab.a, ab.b, ab.c, ab.d).is_ok());
    }

    #[test]
    fn cocycle_composes(s1 in 0u64..1000, s2 in 0u64..1000, seed in 0u64..100) {
        let p = 40;
        let tau = random_reduced_point(seed, p).unwrap();
        let (g1, g2) = (random_symplectic(2, s1), random_symplectic(2, s2));
        let (mid, c2) = act(&g2, &tau, p).unwrap();
        let (end, c1) = act(&g1, &mid, p).unwrap();
        let (direct, c12) = act(&g1.compose(&g2).unwrap(), &tau, p).unwrap();
        prop_assert!((&c1 * &c2).rel_diff(&c12) < 1e-30);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!(end.entry(i, j).log10_dist(direct.entry(i, j)) < -25.0);
            }
        }
    }
}

#[test]
fn parity_partition() {
    let all = ThetaCharacteristic::all();
    let even = all.iter().filter(|c| c.is_even()).count();
    assert_eq!((all.len(), even, all.len() - even), (64, 36, 28));
    assert_eq!(enumerate_even_characteristics().len(), 36);
}

#[test]
fn deterministic_across_thread_counts() {
    let tau = random_reduced_point(8, 50).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| chi18_an(&tau, 40).unwrap().value.to_string())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(1));
}
