//! Action of `Sp6(Z)` on the Siegel upper half space and reduction of
//! period matrices toward a fundamental domain.

mod lll;
mod symplectic;

pub use lll::lll_gram;
pub use symplectic::{random_symplectic, IMat3, SymplecticMatrix};
pub(crate) use symplectic::unimodular_inverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Float};

use crate::arith::{bits_for_digits, BigComplex};
use crate::cmat::{cadd3, cdet3, cfrom_int3, cinverse3, cmul3, creal3, rto_f64};
use crate::error::{Error, Result};
use crate::theta::SiegelPoint;

/// Maximum number of improving moves performed by [`reduce`].
pub const REDUCTION_CAP: usize = 200;

const LLL_DELTA: f64 = 0.99;
const IMPROVEMENT: f64 = 1e-10;

/// `gamma . tau` together with the cocycle `det(C tau + D)`.
pub fn act(gamma: &SymplecticMatrix, tau: &SiegelPoint, digits: u32) -> Result<(SiegelPoint, BigComplex)> {
    let bits = bits_for_digits(digits);
    let t = tau.matrix(bits);
    let num = cadd3(&cmul3(&cfrom_int3(&gamma.a, bits), &t, bits), &cfrom_int3(&gamma.b, bits), bits);
    let den = cadd3(&cmul3(&cfrom_int3(&gamma.c, bits), &t, bits), &cfrom_int3(&gamma.d, bits), bits);
    let cocycle = cdet3(&den, bits);
    let image = cmul3(&num, &cinverse3(&den, bits)?, bits);
    Ok((SiegelPoint::from_matrix(&image, digits)?, BigComplex::new(cocycle, digits)))
}

/// Outcome of [`reduce`]: `tau_reduced = gamma . tau` and `cocycle = det(C tau + D)`.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub tau_reduced: SiegelPoint,
    pub gamma: SymplecticMatrix,
    pub cocycle: BigComplex,
    pub moves: usize,
}

/// Best-effort ascent of `det Im tau`.
///
/// Each round LLL-reduces `Im tau`, shifts `Re tau` into `[-1/2, 1/2]` and
/// applies whichever of `J` and the three partial inversions has the smallest
/// `|det(C tau + D)|`, provided it is below one. Stops when no inversion
/// helps; running more than [`REDUCTION_CAP`] rounds is an error.
pub fn reduce(tau: &SiegelPoint, digits: u32) -> Result<ReductionResult> {
    let mut cur = tau.with_digits(digits);
    let mut gamma = SymplecticMatrix::identity();
    let mut cocycle = BigComplex::one(digits);
    let mut moves = 0;
    let mut apply = |g: SymplecticMatrix, cur: &mut SiegelPoint| -> Result<()> {
        let (next, c) = act(&g, cur, digits)?;
        *cur = next;
        gamma = g.compose(&gamma)?;
        cocycle = &c * &cocycle;
        Ok(())
    };
    for _ in 0..REDUCTION_CAP {
        let u = lll_gram(&cur.imag_f64(), LLL_DELTA);
        if u != symplectic::I3 {
            let ut = std::array::from_fn(|i| std::array::from_fn(|j| u[j][i]));
            apply(SymplecticMatrix::embed_gl3(ut)?, &mut cur)?;
        }
        let re = rto_f64(&creal3(&cur.matrix(64)));
        let s: IMat3 = std::array::from_fn(|i| std::array::from_fn(|j| -re[i][j].round() as i64));
        if s != [[0; 3]; 3] {
            apply(SymplecticMatrix::shift(s)?, &mut cur)?;
        }
        let bits = bits_for_digits(digits);
        let t = cur.matrix(bits);
        let mut best: Option<(f64, SymplecticMatrix)> = None;
        let mut consider = |size: f64, g: SymplecticMatrix| {
            if size < 1.0 - IMPROVEMENT && best.as_ref().map_or(true, |(b, _)| size < *b) {
                best = Some((size, g));
            }
        };
        consider(Complex::with_val(bits, cdet3(&t, bits).abs_ref()).real().to_f64(), SymplecticMatrix::j());
        for i in 0..3 {
            let size = Float::with_val(bits, t[i][i].abs_ref()).to_f64();
            consider(size, SymplecticMatrix::partial_inversion(i));
        }
        match best {
            Some((_, g)) => {
                apply(g, &mut cur)?;
                moves += 1;
            }
            None => {
                return Ok(ReductionResult { tau_reduced: cur, gamma, cocycle, moves });
            }
        }
    }
    Err(Error::Consistency(format!("reduction did not settle within {REDUCTION_CAP} rounds")))
}

/// Random Siegel point: `Re` uniform in `[-1/2, 1/2]`, `Im = A^T A + I/2`
/// with `A` uniform in `[-1, 1]`, passed through [`reduce`].
pub fn random_reduced_point(seed: u64, digits: u32) -> Result<SiegelPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: [[f64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
    let mut upper = Vec::with_capacity(6);
    for i in 0..3 {
        for j in i..3 {
            let x: f64 = rng.gen_range(-0.5..0.5);
            let mut y: f64 = (0..3).map(|k| a[k][i] * a[k][j]).sum();
            if i == j {
                y += 0.5;
            }
            upper.push(BigComplex::from_f64(x, y, digits));
        }
    }
    let upper: [BigComplex; 6] = upper.try_into().expect("six entries");
    Ok(reduce(&SiegelPoint::from_upper(upper)?, digits)?.tau_reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &SiegelPoint, b: &SiegelPoint, tol: f64) -> bool {
        (0..3).all(|i| (0..3).all(|j| a.entry(i, j).log10_dist(b.entry(i, j)) < tol))
    }

    #[test]
    fn act_examples() {
        let p = 40;
        let tau = SiegelPoint::scaled_identity(1.0, p);
        let (t, c) = act(&SymplecticMatrix::identity(), &tau, p).unwrap();
        assert!(close(&t, &tau, -35.0) && c.log10_dist(&BigComplex::one(p)) < -35.0);

        // J = [[0, I], [-I, 0]] gives det(-iI) = i; its inverse gives det(iI) = -i.
        let (t, c) = act(&SymplecticMatrix::j(), &tau, p).unwrap();
        assert!(close(&t, &tau, -35.0));
        assert!(c.log10_dist(&BigComplex::i(p)) < -35.0);
        let (t, c) = act(&SymplecticMatrix::j().inverse(), &tau, p).unwrap();
        assert!(close(&t, &tau, -35.0));
        assert!(c.log10_dist(&-BigComplex::i(p)) < -35.0);

        let s = [[1, -1, 0], [-1, 2, 0], [0, 0, 0]];
        let (t, c) = act(&SymplecticMatrix::shift(s).unwrap(), &tau, p).unwrap();
        assert!(c.log10_dist(&BigComplex::one(p)) < -35.0);
        assert!(t.entry(1, 1).log10_dist(&BigComplex::from_f64(2.0, 1.0, p)) < -35.0);
        assert!(t.entry(0, 1).log10_dist(&BigComplex::from_f64(-1.0, 0.0, p)) < -35.0);
    }

    #[test]
    fn cocycle_composition() {
        let p = 50;
        let tau = random_reduced_point(11, p).unwrap();
        for seed in 0..10 {
            let g1 = random_symplectic(4, seed);
            let g2 = random_symplectic(4, seed + 100);
            let (t2, c2) = act(&g2, &tau, p).unwrap();
            let (t12, c1) = act(&g1, &t2, p).unwrap();
            let (direct, c12) = act(&g1.compose(&g2).unwrap(), &tau, p).unwrap();
            assert!(close(&t12, &direct, -(p as f64) + 10.0));
            assert!((&c1 * &c2).rel_diff(&c12) < 1e-40);
        }
    }

    #[test]
    fn reduce_examples() {
        let p = 40;
        let tau = SiegelPoint::scaled_identity(1.0, p);
        let r = reduce(&tau, p).unwrap();
        assert!(r.gamma.is_identity());

        let shifted = SiegelPoint::from_upper([
            BigComplex::from_f64(2.0, 1.0, p),
            BigComplex::zero(p),
            BigComplex::zero(p),
            BigComplex::i(p),
            BigComplex::zero(p),
            BigComplex::i(p),
        ])
        .unwrap();
        let r = reduce(&shifted, p).unwrap();
        assert_eq!(r.gamma, SymplecticMatrix::shift([[-2, 0, 0], [0, 0, 0], [0, 0, 0]]).unwrap());
    }

    #[test]
    fn reduce_round_trip() {
        let p = 60;
        for seed in 0..5 {
            let tau0 = random_reduced_point(seed, p).unwrap();
            let g0 = random_symplectic(5, seed + 7);
            let (moved, _) = act(&g0, &tau0, p).unwrap();
            let r = reduce(&moved, p).unwrap();
            assert!(r.gamma.is_symplectic());
            let d0 = BigComplex::from_parts(tau0.det_im(), Float::new(64), p);
            let d1 = BigComplex::from_parts(r.tau_reduced.det_im(), Float::new(64), p);
            assert!(d0.rel_diff(&d1) < 1e-45, "seed {seed}");
            let (direct, c) = act(&r.gamma, &moved, p).unwrap();
            assert!(close(&direct, &r.tau_reduced, -(p as f64) + 10.0));
            assert!(c.rel_diff(&r.cocycle) < 1e-45);
            for i in 0..3 {
                for j in 0..3 {
                    assert!(r.tau_reduced.entry(i, j).re().to_f64().abs() <= 0.5 + 1e-10);
                }
            }
        }
    }
}
