use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Rational};

use super::poly::{aberth, min_separation, polish_roots, qpoly_roots, QPoly};
use crate::arith::{bits_for_digits, BigComplex};
use crate::error::{Error, Result};
use crate::quartic::{random_sl3, TernaryQuartic};
use crate::siegel::IMat3;

const IDENTITY: IMat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
const CHANGE_ATTEMPTS: u64 = 64;

/// The affine model `f(x, y) = G(x, y, 1)` of `G = F o T`, where `T` is an
/// integral change of coordinates of determinant one making the `Y^4`
/// coefficient nonzero. The projection `(x, y) -> x` then has degree 4 and
/// no poles over finite `x`.
#[derive(Clone, Debug)]
pub struct AffineCurve {
    original: TernaryQuartic,
    form: TernaryQuartic,
    change: IMat3,
    /// `a[i][j]` is the coefficient of `x^i y^j`.
    a: [[Rational; 5]; 5],
    a64: [[f64; 5]; 5],
}

impl AffineCurve {
    /// Uses the identity when admissible, otherwise the first admissible
    /// change from a fixed pseudo-random sequence.
    pub fn new(f: &TernaryQuartic) -> Result<Self> {
        f.expect_degree(4)?;
        if let Ok(c) = Self::with_change(f, IDENTITY) {
            return Ok(c);
        }
        for attempt in 0..CHANGE_ATTEMPTS {
            let mut rng = ChaCha8Rng::seed_from_u64(0xc0de_0000 + attempt);
            let t = random_sl3(&mut rng, 2 + attempt as usize / 8, 1);
            if let Ok(c) = Self::with_change(f, t) {
                return Ok(c);
            }
        }
        Err(Error::InvalidArgument("no admissible coordinate change found".into()))
    }

    /// Affine model of `F o T` for a given `T` of determinant one.
    pub fn with_change(f: &TernaryQuartic, t: IMat3) -> Result<Self> {
        f.expect_degree(4)?;
        if crate::quartic::det3_i64(&t) != 1 {
            return Err(Error::InvalidArgument("coordinate change must have determinant 1".into()));
        }
        let form = f.substitute_integer(&t);
        if *form.coeff([0, 4, 0]) == 0 {
            return Err(Error::InvalidArgument("Y^4 coefficient vanishes".into()));
        }
        let mut a: [[Rational; 5]; 5] = Default::default();
        for (e, c) in form.terms() {
            a[e[0] as usize][e[1] as usize] = c.clone();
        }
        let a64 = a.clone().map(|r| r.map(|q| q.to_f64()));
        Ok(AffineCurve { original: f.clone(), form, change: t, a, a64 })
    }

    pub fn original(&self) -> &TernaryQuartic {
        &self.original
    }

    /// The quartic `F o T` whose affine chart is used.
    pub fn form(&self) -> &TernaryQuartic {
        &self.form
    }

    pub fn change(&self) -> IMat3 {
        self.change
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.a[i][j]
    }

    /// `c_j(x)` with `f = sum_j c_j(x) y^j`.
    pub fn y_coefficients(&self) -> [QPoly; 5] {
        std::array::from_fn(|j| QPoly::new((0..=4 - j).map(|i| self.a[i][j].clone()).collect()))
    }

    /// Discriminant in `y` of `f(x, y)`, a polynomial in `x` of degree at most 12.
    ///
    /// Computed exactly from its values at `x = 0, ..., 12` and checked at
    /// `x = 13`.
    pub fn y_discriminant(&self) -> Result<QPoly> {
        let cs = self.y_coefficients();
        let at = |x: &Rational| -> Vec<Rational> { cs.iter().map(|c| c.eval(x)).collect() };
        let xs: Vec<Rational> = (0..13).map(Rational::from).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| quartic_discriminant(&at(x))).collect();
        let d = QPoly::interpolate(&xs, &ys);
        let check = Rational::from(13);
        if d.eval(&check) != quartic_discriminant(&at(&check)) {
            return Err(Error::Consistency("y-discriminant exceeds degree 12".into()));
        }
        Ok(d)
    }

    pub(crate) fn fiber_coeffs(&self, x: &Complex, bits: u32) -> Vec<Complex> {
        (0..5)
            .map(|j| {
                let mut acc = Complex::new(bits);
                for i in (0..=4 - j).rev() {
                    acc *= x;
                    acc += &self.a[i][j];
                }
                acc
            })
            .collect()
    }

    pub(crate) fn fiber_coeffs_f64(&self, x: Complex64) -> [Complex64; 5] {
        std::array::from_fn(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in (0..=4 - j).rev() {
                acc = acc * x + self.a64[i][j];
            }
            acc
        })
    }

    /// `(f_y(x, y))` at high precision.
    pub(crate) fn f_y(&self, coeffs: &[Complex], y: &Complex, bits: u32) -> Complex {
        let mut acc = Complex::new(bits);
        for j in (1..5).rev() {
            acc *= y;
            acc += Complex::with_val(bits, &coeffs[j] * j as u32);
        }
        acc
    }
}

/// Determinant of a small rational matrix by fraction-exact elimination.
fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::from(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return Rational::new();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let f = Rational::from(&m[r][col] / &p);
            for c in col..n {
                let t = Rational::from(&f * &m[col][c]);
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Discriminant `Res(g, g') / lc(g)` of `g = sum_j c[j] y^j`, `deg g = 4`.
fn quartic_discriminant(c: &[Rational]) -> Rational {
    let dc: Vec<Rational> = (1..5).map(|j| Rational::from(&c[j] * j as u32)).collect();
    let mut syl = vec![vec![Rational::new(); 7]; 7];
    for r in 0..3 {
        for j in 0..5 {
            syl[r][r + j] = c[4 - j].clone();
        }
    }
    for r in 0..4 {
        for j in 0..4 {
            syl[3 + r][r + j] = dc[3 - j].clone();
        }
    }
    det_rational(syl) / &c[4]
}

/// Distinct roots of the `y`-discriminant, i.e. the finite branch points of
/// the projection to `x`, each to absolute accuracy `10^-p`.
pub fn discriminant_points(curve: &AffineCurve, digits: u32) -> Result<Vec<BigComplex>> {
    let d = curve.y_discriminant()?;
    if d.is_zero() {
        return Err(Error::Singular { discriminant: Rational::new() });
    }
    let sf = d.squarefree_part();
    let roots = qpoly_roots(&sf, bits_for_digits(digits))?;
    let sep = min_separation(&roots);
    if sep < 10f64.powf(-(digits as f64) / 4.0) {
        return Err(Error::Precision(format!("discriminant points closer than {sep:e}")));
    }
    let mut out: Vec<BigComplex> = roots.into_iter().map(|z| BigComplex::new(z, digits)).collect();
    sort_points(&mut out);
    Ok(out)
}

/// Lexicographic order on `(Re, Im)` of the double precision values.
pub(crate) fn sort_points(v: &mut [BigComplex]) {
    v.sort_by(|a, b| a.to_f64().partial_cmp(&b.to_f64()).unwrap());
}

/// The four `y` with `f(x0, y) = 0`, sorted lexicographically by `(Re, Im)`.
pub fn fiber_roots(curve: &AffineCurve, x0: &BigComplex, digits: u32) -> Result<[BigComplex; 4]> {
    let bits = bits_for_digits(digits);
    let rough = aberth(&curve.fiber_coeffs(x0.value(), 160), 160)?;
    let roots = polish_roots(|b| curve.fiber_coeffs(x0.value(), b), &rough, bits.max(160))?;
    if min_separation(&roots) < 10f64.powf(-(digits as f64) / 4.0) {
        return Err(Error::Precision("base of the fibre is too close to a branch point".into()));
    }
    let mut out: Vec<BigComplex> = roots.into_iter().map(|z| BigComplex::new(z, digits)).collect();
    sort_points(&mut out);
    Ok(out.try_into().expect("quartic in y"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::{fermat_quartic, klein_quartic, TernaryForm};

    #[test]
    fn fermat_branch_points() {
        let c = AffineCurve::new(&fermat_quartic()).unwrap();
        assert_eq!(c.change(), IDENTITY);
        let d = c.y_discriminant().unwrap();
        // disc_y(y^4 + c) = 256 c^3 with c = x^4 + 1.
        assert_eq!(d.degree(), 12);
        assert_eq!(*d.leading().unwrap(), 256);
        let pts = discriminant_points(&c, 50).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            let p4 = p.powu(4);
            assert!(p4.log10_dist(&BigComplex::from_f64(-1.0, 0.0, 50)) < -48.0);
        }
    }

    #[test]
    fn single_branch_point() {
        // f = y^4 + x - 1 has y-discriminant 256 (x - 1)^3.
        let f = TernaryForm::from_terms(4, [([0, 4, 0], 1), ([1, 0, 3], 1), ([0, 0, 4], -1)]).unwrap();
        let c = AffineCurve::new(&f).unwrap();
        let pts = discriminant_points(&c, 30).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].log10_dist(&BigComplex::one(30)) < -28.0);
    }

    #[test]
    fn klein_needs_a_change() {
        let c = AffineCurve::new(&klein_quartic()).unwrap();
        assert_ne!(c.change(), IDENTITY);
        let d = c.y_discriminant().unwrap();
        assert!(d.degree() <= 12 && d.degree() > 0);
    }

    #[test]
    fn fermat_fibre() {
        let c = AffineCurve::new(&fermat_quartic()).unwrap();
        let x0 = BigComplex::zero(40);
        let ys = fiber_roots(&c, &x0, 40).unwrap();
        for y in &ys {
            assert!(y.powu(4).log10_dist(&BigComplex::from_f64(-1.0, 0.0, 40)) < -38.0);
        }
        let hi = fiber_roots(&c, &BigComplex::from_f64(0.3, 0.1, 80), 80).unwrap();
        let lo = fiber_roots(&c, &BigComplex::from_f64(0.3, 0.1, 40), 40).unwrap();
        for (a, b) in hi.iter().zip(&lo) {
            assert!(a.log10_dist(b) < -38.0);
        }
        let x = BigComplex::from_f64(0.3, 0.1, 80);
        let coeffs = c.fiber_coeffs(x.value(), 300);
        for y in &hi {
            let (v, _) = super::super::poly::eval_with_derivative(&coeffs, y.value(), 300);
            assert!(BigComplex::new(v, 80).log10_abs() < -75.0);
        }
    }
}
