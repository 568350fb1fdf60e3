use std::fmt;

use rand::Rng;
use rug::{Integer, Rational};

use crate::arith::{format_rational, parse_rational};
use crate::error::{Error, Result};

/// Exponent triple `(i, j, l)` of the monomial `X^i Y^j Z^l`.
pub type Exponent = [u32; 3];

/// Number of monomials of degree `m` in three variables.
pub fn monomial_count(degree: u32) -> usize {
    ((degree + 2) * (degree + 1) / 2) as usize
}

/// Monomials of degree `m` in graded lexicographic order: `X^m` first, then
/// decreasing powers of `X`, ties broken by decreasing powers of `Y`.
pub fn monomials(degree: u32) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(monomial_count(degree));
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

/// Position of `e` in [`monomials`]`(degree)`.
pub fn monomial_index(e: Exponent) -> usize {
    let degree = e[0] + e[1] + e[2];
    let s = (degree - e[0]) as usize;
    s * (s + 1) / 2 + (s - e[1] as usize)
}

/// Homogeneous form in `X, Y, Z` with rational coefficients, stored densely in
/// the order of [`monomials`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    degree: u32,
    coeffs: Vec<Rational>,
}

/// A ternary form of degree 4.
pub type TernaryQuartic = TernaryForm;

impl TernaryForm {
    pub fn zero(degree: u32) -> Self {
        TernaryForm {
            degree,
            coeffs: vec![Rational::new(); monomial_count(degree)],
        }
    }

    pub fn from_terms<I, Q>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Q)>,
        Q: Into<Rational>,
    {
        let mut f = Self::zero(degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidArgument(format!(
                    "monomial {e:?} does not have degree {degree}"
                )));
            }
            f.coeffs[monomial_index(e)] += c.into();
        }
        Ok(f)
    }

    pub fn from_coeffs(degree: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != monomial_count(degree) {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for degree {degree}, got {}",
                monomial_count(degree),
                coeffs.len()
            )));
        }
        Ok(TernaryForm { degree, coeffs })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: Exponent) -> &Rational {
        &self.coeffs[monomial_index(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// Non-zero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Rational)> + '_ {
        monomials(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| **c != 0)
    }

    pub fn expect_degree(&self, degree: u32) -> Result<()> {
        if self.degree != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: self.degree,
            });
        }
        Ok(())
    }

    /// Formal partial derivative in variable `var` (0 = X, 1 = Y, 2 = Z).
    pub fn partial(&self, var: usize) -> TernaryForm {
        if self.degree == 0 {
            return TernaryForm::zero(0);
        }
        let mut out = TernaryForm::zero(self.degree - 1);
        for (e, c) in self.terms() {
            if e[var] == 0 {
                continue;
            }
            let mut d = e;
            d[var] -= 1;
            out.coeffs[monomial_index(d)] += Rational::from(c * e[var]);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> TernaryForm {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    pub fn add(&self, other: &TernaryForm) -> Result<TernaryForm> {
        other.expect_degree(self.degree)?;
        Ok(TernaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| Rational::from(a + b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let mut out = TernaryForm::zero(self.degree + other.degree);
        for (e, a) in self.terms() {
            for (f, b) in other.terms() {
                let g = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                out.coeffs[monomial_index(g)] += Rational::from(a * b);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::new();
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for v in 0..3 {
                for _ in 0..e[v] {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Returns `F(B v)`, i.e. `X` is replaced by `B[0][0] X + B[0][1] Y + B[0][2] Z`
    /// and likewise for `Y` and `Z`.
    pub fn substitute_linear(&self, b: &[[Rational; 3]; 3]) -> TernaryForm {
        let linear: Vec<TernaryForm> = (0..3)
            .map(|r| {
                TernaryForm::from_terms(
                    1,
                    [
                        ([1, 0, 0], b[r][0].clone()),
                        ([0, 1, 0], b[r][1].clone()),
                        ([0, 0, 1], b[r][2].clone()),
                    ],
                )
                .expect("linear forms have degree 1")
            })
            .collect();
        // powers[v][k] = (row v of B applied to (X, Y, Z))^k
        let powers: Vec<Vec<TernaryForm>> = linear
            .iter()
            .map(|l| {
                let mut p = vec![TernaryForm::from_terms(0, [([0, 0, 0], 1)]).unwrap()];
                for k in 1..=self.degree as usize {
                    p.push(p[k - 1].mul(l));
                }
                p
            })
            .collect();
        let mut out = TernaryForm::zero(self.degree);
        for (e, c) in self.terms() {
            let prod = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            for (acc, t) in out.coeffs.iter_mut().zip(&prod.coeffs) {
                *acc += Rational::from(t * c);
            }
        }
        out
    }

    /// Substitution by an integer matrix.
    pub fn substitute_integer(&self, b: &[[i64; 3]; 3]) -> TernaryForm {
        self.substitute_linear(&b.map(|row| row.map(Rational::from)))
    }

    /// Integral multiple `G = c F` with `c` the least common denominator.
    pub fn clear_denominators(&self) -> (Vec<Integer>, Integer) {
        let mut lcm = Integer::from(1);
        for c in &self.coeffs {
            lcm.lcm_mut(c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| Integer::from(c.numer() * Integer::from(&lcm / c.denom())))
            .collect();
        (ints, lcm)
    }

    /// Parses the text format: one `i j l p/q` entry per line; blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str, degree: u32) -> Result<TernaryForm> {
        let mut f = TernaryForm::zero(degree);
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(Error::parse(n + 1, "expected `i j l p/q`"));
            }
            let mut e = [0u32; 3];
            for k in 0..3 {
                e[k] = parts[k]
                    .parse()
                    .map_err(|_| Error::parse(n + 1, format!("bad exponent {:?}", parts[k])))?;
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::parse(
                    n + 1,
                    format!("exponents {e:?} must sum to {degree}"),
                ));
            }
            let c = parse_rational(parts[3]).map_err(|err| Error::parse(n + 1, err.to_string()))?;
            f.coeffs[monomial_index(e)] += c;
        }
        Ok(f)
    }
}

impl fmt::Display for TernaryForm {
    /// Writes the text format accepted by [`TernaryForm::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.terms() {
            writeln!(f, "{} {} {} {}", e[0], e[1], e[2], format_rational(c))?;
        }
        Ok(())
    }
}

/// `X^4 + Y^4 + Z^4`.
pub fn fermat_quartic() -> TernaryQuartic {
    TernaryForm::from_terms(4, [([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).unwrap()
}

/// `X^3 Y + Y^3 Z + Z^3 X`.
pub fn klein_quartic() -> TernaryQuartic {
    TernaryForm::from_terms(4, [([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]).unwrap()
}

pub fn det3_i64(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Random element of `SL_3(Z)` built from `steps` elementary operations with
/// multipliers in `[-bound, bound]`, plus a random signed permutation of
/// determinant one.
pub fn random_sl3<R: Rng>(rng: &mut R, steps: usize, bound: i64) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..steps {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..2);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-bound..=bound);
        for col in 0..3 {
            m[i][col] += c * m[j][col];
        }
    }
    if rng.gen_bool(0.5) {
        m.swap(0, 1);
        for v in &mut m[2] {
            *v = -*v;
        }
    }
    debug_assert_eq!(det3_i64(&m), 1);
    m
}

/// Exact inverse of an integer matrix of determinant one.
pub fn inverse_sl3(m: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut inv = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = m[a][c] * m[b][d] - m[a][d] * m[b][c];
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_order_and_rank() {
        assert_eq!(monomial_count(4), 15);
        assert_eq!(monomial_count(7), 36);
        let m = monomials(4);
        assert_eq!(m[0], [4, 0, 0]);
        assert_eq!(m[1], [3, 1, 0]);
        assert_eq!(m[2], [3, 0, 1]);
        assert_eq!(m[14], [0, 0, 4]);
        for d in 0..9 {
            for (k, e) in monomials(d).into_iter().enumerate() {
                assert_eq!(monomial_index(e), k);
            }
        }
    }

    #[test]
    fn partials() {
        let f = fermat_quartic();
        let g = [f.partial(0), f.partial(1), f.partial(2)];
        assert_eq!(g[0], TernaryForm::from_terms(3, [([3, 0, 0], 4)]).unwrap());
        assert_eq!(g[1], TernaryForm::from_terms(3, [([0, 3, 0], 4)]).unwrap());
        assert_eq!(g[2], TernaryForm::from_terms(3, [([0, 0, 3], 4)]).unwrap());

        let h = TernaryForm::from_terms(4, [([3, 1, 0], 1)]).unwrap();
        assert_eq!(h.partial(0), TernaryForm::from_terms(3, [([2, 1, 0], 3)]).unwrap());
        assert_eq!(h.partial(1), TernaryForm::from_terms(3, [([3, 0, 0], 1)]).unwrap());
        assert!(h.partial(2).is_zero());
    }

    #[test]
    fn euler_identity() {
        let x = TernaryForm::from_terms(1, [([1, 0, 0], 1)]).unwrap();
        let y = TernaryForm::from_terms(1, [([0, 1, 0], 1)]).unwrap();
        let z = TernaryForm::from_terms(1, [([0, 0, 1], 1)]).unwrap();
        for f in [
            TernaryForm::from_terms(4, [([4, 0, 0], 1)]).unwrap(),
            klein_quartic(),
            TernaryForm::from_terms(4, [([2, 1, 1], Rational::from((-3, 7))), ([0, 2, 2], 5.into())]).unwrap(),
        ] {
            let lhs = x.mul(&f.partial(0)).add(&y.mul(&f.partial(1))).unwrap().add(&z.mul(&f.partial(2))).unwrap();
            assert_eq!(lhs, f.scale(&Rational::from(4)));
        }
    }

    #[test]
    fn linear_substitution() {
        let f = klein_quartic();
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert_eq!(f.substitute_integer(&id), f);

        let x4 = TernaryForm::from_terms(4, [([4, 0, 0], 1)]).unwrap();
        let swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]];
        assert_eq!(x4.substitute_integer(&swap), TernaryForm::from_terms(4, [([0, 4, 0], 1)]).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let b = random_sl3(&mut rng, 6, 2);
            assert_eq!(det3_i64(&b), 1);
            let back = f.substitute_integer(&b).substitute_integer(&inverse_sl3(&b));
            assert_eq!(back, f);
        }
    }

    #[test]
    fn text_format() {
        let f = TernaryForm::parse("# Klein\n3 1 0 1\n0 3 1 1/1\n\n1 0 3 2/2\n", 4).unwrap();
        assert_eq!(f, klein_quartic());
        assert_eq!(TernaryForm::parse(&f.to_string(), 4).unwrap(), f);
        assert!(TernaryForm::parse("3 1 1 1", 4).is_err());
        assert!(TernaryForm::parse("3 1 0", 4).is_err());
    }

    #[test]
    fn denominators() {
        let f = TernaryForm::from_terms(4, [([4, 0, 0], Rational::from((1, 6))), ([0, 0, 4], Rational::from((3, 4)))]).unwrap();
        let (ints, c) = f.clear_denominators();
        assert_eq!(c, 12);
        assert_eq!(ints[0], 2);
        assert_eq!(ints[14], 9);
    }
}
