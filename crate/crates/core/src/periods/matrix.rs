use rayon::prelude::*;
use rug::Complex;

use super::curve::AffineCurve;
use super::homology::{homology_basis, symplectic_basis, Homology, HomologyStrategy, SymplecticBasis};
use super::monodromy::{monodromy_with, MonodromyData, MonodromyOptions};
use super::quadrature::{Integrator, SheetIntegrals};
use super::track::{c64, match_roots, Roots64, Tracker};
use crate::arith::{bits_for_digits, BigComplex};
use crate::cmat::{cinverse3, cmul3, CMat3};
use crate::error::{Error, Result};
use crate::quartic::TernaryQuartic;
use crate::theta::SiegelPoint;

/// Extra digits carried through root refinement and quadrature.
const WORK_GUARD: u32 = 15;

/// Choices that change the intermediate data but not the final invariants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PeriodOptions {
    pub monodromy: MonodromyOptions,
    pub strategy: HomologyStrategy,
}

/// Periods of `(x dx/f_y, y dx/f_y, dx/f_y)` over a symplectic basis.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub curve: AffineCurve,
    pub monodromy: MonodromyData,
    pub homology: Homology,
    pub basis: SymplecticBasis,
    /// Integrals over each lifted loop (edge), per differential.
    pub edge_periods: Vec<[BigComplex; 3]>,
    /// `omega1[i][j]` is the integral of differential `i` over `a_j`.
    pub omega1: [[BigComplex; 3]; 3],
    /// Same over `b_j`.
    pub omega2: [[BigComplex; 3]; 3],
    pub tau: SiegelPoint,
    /// Largest `log10 |period|` over the null-homologous lattice cycles.
    pub radical_residual_log10: f64,
    pub digits: u32,
}

impl PeriodData {
    pub fn genus(&self) -> i64 {
        self.monodromy.genus()
    }

    /// Periods of an edge combination.
    pub fn cycle_periods(&self, cycle: &[i64]) -> [BigComplex; 3] {
        let bits = bits_for_digits(self.digits + WORK_GUARD);
        let mut acc: [Complex; 3] = std::array::from_fn(|_| Complex::new(bits));
        for (&c, per) in cycle.iter().zip(&self.edge_periods) {
            if c != 0 {
                for (a, p) in acc.iter_mut().zip(per) {
                    *a += Complex::with_val(bits, p.value() * c);
                }
            }
        }
        acc.map(|z| BigComplex::new(z, self.digits + WORK_GUARD))
    }

    /// Intersection matrix of the six basis cycles.
    pub fn basis_intersections(&self) -> [[i64; 6]; 6] {
        let c = &self.basis.cycles;
        std::array::from_fn(|i| std::array::from_fn(|j| super::intersection_number(&self.monodromy, &c[i], &c[j])))
    }
}

/// `tau = omega1^-1 omega2`, required symmetric to `10^-(p-10)` with
/// positive definite imaginary part.
pub fn tau_of(omega1: &[[BigComplex; 3]; 3], omega2: &[[BigComplex; 3]; 3], digits: u32) -> Result<SiegelPoint> {
    let bits = bits_for_digits(digits);
    let m1: CMat3 = std::array::from_fn(|i| std::array::from_fn(|j| Complex::with_val(bits, omega1[i][j].value())));
    let m2: CMat3 = std::array::from_fn(|i| std::array::from_fn(|j| Complex::with_val(bits, omega2[i][j].value())));
    let t = cmul3(&cinverse3(&m1, bits)?, &m2, bits);
    let scale = t.iter().flatten().map(|z| BigComplex::new(z.clone(), digits).log10_abs()).fold(0.0, f64::max);
    for i in 0..3 {
        for j in 0..i {
            let d = BigComplex::new(Complex::with_val(bits, &t[i][j] - &t[j][i]), digits).log10_abs();
            if d - scale > -(digits as f64) + 10.0 {
                return Err(Error::Consistency(format!("period matrix is not symmetric (asymmetry 1e{d:.0})")));
            }
        }
    }
    SiegelPoint::from_matrix(&t, digits)
        .map_err(|e| Error::Consistency(format!("Riemann relations violated: {e}")))
}

fn add_into(acc: &mut SheetIntegrals, part: &SheetIntegrals) {
    for (a, p) in acc.iter_mut().flatten().zip(part.iter().flatten()) {
        *a += p;
    }
}

/// Full pipeline from a curve to its period matrix and `tau`.
pub fn period_matrix(curve: &AffineCurve, digits: u32, opts: PeriodOptions) -> Result<PeriodData> {
    let work = digits + WORK_GUARD;
    let bits = bits_for_digits(work);
    let monodromy = monodromy_with(curve, work, opts.monodromy)?;
    let homology = homology_basis(&monodromy, opts.strategy)?;
    let basis = symplectic_basis(&homology, opts.strategy)?;
    if monodromy.genus() != 3 {
        return Err(Error::Consistency(format!("Riemann-Hurwitz gives genus {}", monodromy.genus())));
    }

    let branch: Vec<_> = monodromy.discriminant_points.iter().map(|p| c64(p.value())).collect();
    let integrator = Integrator { tracker: Tracker { curve, branch }, bits, target: digits as f64 + 12.0 };
    let base = Complex::with_val(bits, monodromy.base_point.value());
    let start: Roots64 = monodromy.base_roots.clone().map(|y| c64(y.value()));

    let per_loop: Vec<Vec<[Complex; 3]>> = monodromy
        .loops
        .par_iter()
        .zip(monodromy.permutations.par_iter())
        .map(|(lp, sigma)| -> Result<Vec<[Complex; 3]>> {
            let (ray, at_q) = integrator.integrate(&lp.ray(&base, bits))(&start)?;
            let mut circle: SheetIntegrals = std::array::from_fn(|_| std::array::from_fn(|_| Complex::new(bits)));
            let mut roots = at_q;
            for arc in lp.arcs(bits) {
                let (part, end) = integrator.integrate(&arc)(&roots)?;
                add_into(&mut circle, &part);
                roots = end;
            }
            if match_roots(&at_q, &roots)? != *sigma {
                return Err(Error::Consistency("loop monodromy changed between passes".into()));
            }
            Ok((0..4)
                .map(|s| {
                    std::array::from_fn(|i| {
                        Complex::with_val(bits, &ray[s][i] + &circle[s][i]) - &ray[sigma[s]][i]
                    })
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let edge_periods: Vec<[BigComplex; 3]> =
        per_loop.into_iter().flatten().map(|v| v.map(|z| BigComplex::new(z, work))).collect();

    let mut data = PeriodData {
        curve: curve.clone(),
        monodromy,
        homology,
        basis,
        edge_periods,
        omega1: std::array::from_fn(|_| std::array::from_fn(|_| BigComplex::zero(digits))),
        omega2: std::array::from_fn(|_| std::array::from_fn(|_| BigComplex::zero(digits))),
        tau: SiegelPoint::scaled_identity(1.0, digits),
        radical_residual_log10: f64::NEG_INFINITY,
        digits,
    };
    let cyc: Vec<[BigComplex; 3]> = data.basis.cycles.iter().map(|c| data.cycle_periods(c)).collect();
    data.omega1 = std::array::from_fn(|i| std::array::from_fn(|j| cyc[j][i].with_digits(digits)));
    data.omega2 = std::array::from_fn(|i| std::array::from_fn(|j| cyc[j + 3][i].with_digits(digits)));
    data.radical_residual_log10 = data
        .basis
        .radical
        .iter()
        .flat_map(|c| data.cycle_periods(c))
        .map(|z| z.log10_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    if data.radical_residual_log10 > -(digits as f64) + 10.0 {
        return Err(Error::Consistency(format!(
            "null-homologous cycles have periods of size 1e{:.1}",
            data.radical_residual_log10
        )));
    }
    data.tau = tau_of(&data.omega1, &data.omega2, digits)?;
    Ok(data)
}

/// Periods of a plane quartic, after an admissible coordinate change.
pub fn periods_of_quartic(f: &TernaryQuartic, digits: u32, opts: PeriodOptions) -> Result<PeriodData> {
    period_matrix(&AffineCurve::new(f)?, digits, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::{fermat_quartic, klein_quartic};

    #[test]
    fn fermat_periods() {
        let pd = periods_of_quartic(&fermat_quartic(), 30, PeriodOptions::default()).unwrap();
        assert_eq!(pd.genus(), 3);
        assert!(pd.radical_residual_log10 < -20.0);
        let hi = periods_of_quartic(&fermat_quartic(), 60, PeriodOptions::default()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(pd.tau.entry(i, j).log10_dist(hi.tau.entry(i, j)) < -28.0);
            }
        }
    }

    #[test]
    fn klein_periods() {
        let pd = periods_of_quartic(&klein_quartic(), 30, PeriodOptions::default()).unwrap();
        assert_eq!(pd.genus(), 3);
    }
}
