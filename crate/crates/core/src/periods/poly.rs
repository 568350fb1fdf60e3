//! Dense univariate polynomials over `Q` and complex root isolation.

use rug::{Complex, Rational};

use crate::error::{Error, Result};

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| Rational::from(c * i as u32)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => {
                let l = l.clone();
                QPoly::new(self.coeffs.iter().map(|c| Rational::from(c / &l)).collect())
            }
        }
    }

    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let lead = d.leading().ok_or(Error::DivisionByZero)?.clone();
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len();
        if rem.len() < dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut quo = vec![Rational::new(); rem.len() - dd + 1];
        for i in (0..quo.len()).rev() {
            let q = Rational::from(&rem[i + dd - 1] / &lead);
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] -= Rational::from(&q * c);
            }
            quo[i] = q;
        }
        rem.truncate(dd - 1);
        Ok((QPoly::new(quo), QPoly::new(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> QPoly {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.monic()
    }

    /// Interpolating polynomial through `(x_i, y_i)` by divided differences.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> QPoly {
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = Rational::from(&dd[i] - &dd[i - 1]);
                dd[i] = num / Rational::from(&xs[i] - &xs[i - level]);
            }
        }
        let mut acc = QPoly::zero();
        for i in (0..n).rev() {
            acc = acc.mul_linear(&xs[i]);
            let mut c = acc.coeffs.clone();
            if c.is_empty() {
                c.push(Rational::new());
            }
            c[0] += &dd[i];
            acc = QPoly::new(c);
        }
        acc
    }

    /// `self * (x - a)`.
    fn mul_linear(&self, a: &Rational) -> QPoly {
        let mut out = vec![Rational::new(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= Rational::from(c * a);
        }
        QPoly::new(out)
    }

    pub fn to_complex(&self, bits: u32) -> Vec<Complex> {
        self.coeffs.iter().map(|c| Complex::with_val(bits, c)).collect()
    }
}

/// Horner evaluation of `p` and `p'` at `z`.
pub(crate) fn eval_with_derivative(coeffs: &[Complex], z: &Complex, bits: u32) -> (Complex, Complex) {
    let mut p = Complex::new(bits);
    let mut dp = Complex::new(bits);
    for c in coeffs.iter().rev() {
        dp *= z;
        dp += &p;
        p *= z;
        p += c;
    }
    (p, dp)
}

fn mag(z: &Complex) -> f64 {
    let (re, im) = (z.real().to_f64(), z.imag().to_f64());
    re.hypot(im)
}

/// All roots of a polynomial with simple roots, by Aberth iteration at
/// precision `bits`.
pub fn aberth(coeffs: &[Complex], bits: u32) -> Result<Vec<Complex>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = mag(&coeffs[n]);
    if lead == 0.0 {
        return Err(Error::InvalidArgument("leading coefficient vanishes".into()));
    }
    // Fujiwara-type bound for the root radius.
    let radius = (0..n)
        .map(|i| (mag(&coeffs[i]) / lead).powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex::with_val(bits, (radius * a.cos(), radius * a.sin()))
        })
        .collect();
    let tol = 2f64.powi(-(bits as i32) + 12);
    for _ in 0..2000 {
        let mut worst = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, &z[k], bits);
            if p.is_zero() {
                continue;
            }
            let w = Complex::with_val(bits, &p / &dp);
            let mut s = Complex::new(bits);
            for j in 0..n {
                if j != k {
                    s += Complex::with_val(bits, &z[k] - &z[j]).recip();
                }
            }
            let denom = Complex::with_val(bits, 1) - Complex::with_val(bits, &w * &s);
            let corr = w / denom;
            worst = worst.max(mag(&corr) / mag(&z[k]).max(1.0));
            z[k] -= corr;
        }
        if worst < tol {
            return Ok(z);
        }
    }
    Err(Error::Precision("root iteration did not converge".into()))
}

/// Newton refinement with precision doubling up to `target_bits`.
///
/// `coeffs_at(bits)` supplies the coefficients at each working precision.
/// Fails if a final correction is not negligible or two roots coincide.
pub fn polish_roots(
    coeffs_at: impl Fn(u32) -> Vec<Complex>,
    start: &[Complex],
    target_bits: u32,
) -> Result<Vec<Complex>> {
    let mut bits = start.iter().map(Complex::prec).map(|(a, _)| a).min().unwrap_or(target_bits).min(target_bits);
    let mut z: Vec<Complex> = start.to_vec();
    loop {
        bits = (bits * 2).min(target_bits);
        let coeffs = coeffs_at(bits);
        let rounds = if bits == target_bits { 3 } else { 1 };
        let mut worst = 0.0f64;
        for zk in z.iter_mut() {
            let mut w = Complex::with_val(bits, &*zk);
            for round in 0..rounds {
                let (p, dp) = eval_with_derivative(&coeffs, &w, bits);
                if dp.is_zero() {
                    return Err(Error::Precision("derivative vanishes at a root".into()));
                }
                let corr = p / dp;
                if round + 1 == rounds {
                    worst = worst.max(mag(&corr) / mag(&w).max(1.0));
                }
                w -= corr;
            }
            *zk = w;
        }
        if bits == target_bits {
            if !(worst < 2f64.powi(-(target_bits as i32) / 2)) {
                return Err(Error::Precision("Newton refinement did not settle".into()));
            }
            break;
        }
    }
    let sep = min_separation(&z);
    if !(sep > 0.0) {
        return Err(Error::Precision("roots are not separated".into()));
    }
    Ok(z)
}

pub(crate) fn min_separation(z: &[Complex]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..z.len() {
        for j in 0..i {
            let d = Complex::with_val(64, &z[i] - &z[j]);
            best = best.min(mag(&d));
        }
    }
    best
}

/// Roots of a squarefree rational polynomial at `bits` of precision.
pub fn qpoly_roots(p: &QPoly, bits: u32) -> Result<Vec<Complex>> {
    let rough = aberth(&p.to_complex(160), 160)?;
    polish_roots(|b| p.to_complex(b), &rough, bits.max(160))
        .map(|v| v.into_iter().map(|z| Complex::with_val(bits, z)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = q(&[-1, 0, 1]); // x^2 - 1
        let b = q(&[1, 1]); // x + 1
        let (quo, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quo, q(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&q(&[-1, 1])), q(&[-1, 1]));
        // (x-1)^3 (x+2) -> (x-1)(x+2)
        let cube = q(&[-1, 1]);
        let prod = QPoly::interpolate(
            &(0..5).map(Rational::from).collect::<Vec<_>>(),
            &(0..5)
                .map(|x| {
                    let x = Rational::from(x);
                    let l = cube.eval(&x);
                    Rational::from(&l * &l) * &l * Rational::from(&x + 2)
                })
                .collect::<Vec<_>>(),
        );
        assert_eq!(prod.squarefree_part(), q(&[-2, 1, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = q(&[3, -1, 0, 2, 5]);
        let xs: Vec<Rational> = (0..5).map(Rational::from).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(QPoly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn roots_of_unity() {
        let p = q(&[1, 0, 0, 0, 1]); // x^4 + 1
        let roots = qpoly_roots(&p, 400).unwrap();
        assert_eq!(roots.len(), 4);
        for r in &roots {
            let r2 = Complex::with_val(400, r * r);
            let r4 = Complex::with_val(400, &r2 * &r2) + 1u32;
            assert!(mag(&r4) < 1e-110);
        }
        assert!(min_separation(&roots) > 1.0);
    }
}
