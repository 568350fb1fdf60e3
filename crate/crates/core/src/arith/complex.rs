use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};

/// Extra binary digits carried beyond the requested decimal precision.
pub const GUARD_BITS: u32 = 64;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision in bits for `digits` decimal digits, guard bits included.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
}

/// Decimal digits guaranteed by a working precision of `bits`.
pub fn digits_for_bits(bits: u32) -> u32 {
    (bits.saturating_sub(GUARD_BITS) as f64 / LOG2_10).floor() as u32
}

/// Complex number carried at a stated precision of `digits` decimal digits.
///
/// The value is stored with [`GUARD_BITS`] extra bits, so a single arithmetic
/// operation stays well inside the claimed relative error of `10^(1 - digits)`.
/// Combining two values yields the smaller of the two precisions.
#[derive(Clone, Debug)]
pub struct BigComplex {
    value: Complex,
    digits: u32,
}

impl BigComplex {
    pub fn new(value: Complex, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        let value = if value.prec() == (bits, bits) {
            value
        } else {
            Complex::with_val(bits, value)
        };
        BigComplex { value, digits }
    }

    pub fn from_parts(re: Float, im: Float, digits: u32) -> Self {
        Self::new(Complex::with_val(bits_for_digits(digits), (re, im)), digits)
    }

    pub fn zero(digits: u32) -> Self {
        Self::new(Complex::new(bits_for_digits(digits)), digits)
    }

    pub fn one(digits: u32) -> Self {
        Self::from_f64(1.0, 0.0, digits)
    }

    pub fn i(digits: u32) -> Self {
        Self::from_f64(0.0, 1.0, digits)
    }

    pub fn from_f64(re: f64, im: f64, digits: u32) -> Self {
        Self::new(Complex::with_val(bits_for_digits(digits), (re, im)), digits)
    }

    pub fn from_rational(q: &Rational, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::new(Complex::with_val(bits, (Float::with_val(bits, q), 0)), digits)
    }

    pub fn pi(digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::new(
            Complex::with_val(bits, (Float::with_val(bits, Constant::Pi), 0)),
            digits,
        )
    }

    pub fn value(&self) -> &Complex {
        &self.value
    }

    pub fn into_value(self) -> Complex {
        self.value
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        self.value.prec().0
    }

    pub fn re(&self) -> &Float {
        self.value.real()
    }

    pub fn im(&self) -> &Float {
        self.value.imag()
    }

    pub fn is_zero(&self) -> bool {
        self.value.real().is_zero() && self.value.imag().is_zero()
    }

    /// Same value re-rounded to a different stated precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        Self::new(self.value.clone(), digits)
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.bits(), self.value.abs_ref())
    }

    pub fn conj(&self) -> Self {
        Self::new(Complex::with_val(self.bits(), self.value.conj_ref()), self.digits)
    }

    pub fn exp(&self) -> Self {
        Self::new(Complex::with_val(self.bits(), self.value.exp_ref()), self.digits)
    }

    pub fn sqrt(&self) -> Self {
        Self::new(Complex::with_val(self.bits(), self.value.sqrt_ref()), self.digits)
    }

    pub fn powu(&self, n: u32) -> Self {
        Self::new(Complex::with_val(self.bits(), (&self.value).pow(n)), self.digits)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(
            Complex::with_val(self.bits(), self.value.recip_ref()),
            self.digits,
        ))
    }

    pub fn checked_div(&self, rhs: &BigComplex) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }

    /// Lossy conversion for diagnostics and heuristics.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.value.real().to_f64(), self.value.imag().to_f64())
    }

    /// `log10 |z|`, robust for magnitudes far outside the `f64` range.
    pub fn log10_abs(&self) -> f64 {
        let a = self.abs();
        if a.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (mant, exp) = a.to_f64_exp();
        mant.abs().log10() + exp as f64 * std::f64::consts::LOG10_2
    }

    /// Relative distance `|a - b| / max(|a|, |b|)`; zero when both vanish.
    pub fn rel_diff(&self, other: &BigComplex) -> f64 {
        let d = (self - other).log10_abs();
        let s = self.log10_abs().max(other.log10_abs());
        if d == f64::NEG_INFINITY {
            0.0
        } else if s == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            10f64.powf(d - s)
        }
    }

    /// `log10 |a - b|`.
    pub fn log10_dist(&self, other: &BigComplex) -> f64 {
        (self - other).log10_abs()
    }
}

fn binop(a: &BigComplex, b: &BigComplex, op: impl FnOnce(&Complex, &Complex, u32) -> Complex) -> BigComplex {
    let digits = a.digits.min(b.digits);
    let bits = bits_for_digits(digits);
    BigComplex::new(op(&a.value, &b.value, bits), digits)
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<'a> $tr<&'a BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &'a BigComplex) -> BigComplex {
                binop(self, rhs, |x, y, bits| Complex::with_val(bits, x $op y))
            }
        }
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &'a BigComplex) -> BigComplex {
                (&self).$method(rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);
impl_binop!(Div, div, /);

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(Complex::with_val(self.bits(), -&self.value), self.digits)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

fn format_float(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1) as usize))
}

/// Text form `(re,im)@p` with `p` significant decimal digits per part.
impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})@{}",
            format_float(self.re(), self.digits),
            format_float(self.im(), self.digits),
            self.digits
        )
    }
}

impl FromStr for BigComplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a complex literal: {s:?}"));
        let s = s.trim();
        let (body, digits) = s.rsplit_once('@').ok_or_else(bad)?;
        let digits: u32 = digits.trim().parse().map_err(|_| bad())?;
        let body = body
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (re, im) = body.split_once(',').ok_or_else(bad)?;
        let bits = bits_for_digits(digits);
        let re = Float::parse(re.trim()).map_err(|_| bad())?;
        let im = Float::parse(im.trim()).map_err(|_| bad())?;
        Ok(BigComplex::from_parts(
            Float::with_val(bits, re),
            Float::with_val(bits, im),
            digits,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_is_min_of_operands() {
        let a = BigComplex::from_f64(1.0, 2.0, 50);
        let b = BigComplex::from_f64(3.0, -1.0, 80);
        let c = &a * &b;
        assert_eq!(c.digits(), 50);
        assert_eq!(c.to_f64(), (5.0, 5.0));
    }

    #[test]
    fn text_round_trip() {
        let x = BigComplex::pi(40) / BigComplex::from_f64(3.0, 0.0, 40);
        let y = BigComplex::from_f64(0.0, -2.5, 40);
        let z = &x + &(&y * &BigComplex::i(40));
        let s = z.to_string();
        assert!(s.ends_with("@40"), "{s}");
        let back: BigComplex = s.parse().unwrap();
        assert!(back.log10_dist(&z) < -38.0);
        let zero: BigComplex = "(0,0)@20".parse().unwrap();
        assert!(zero.is_zero());
        assert!("(1,2)".parse::<BigComplex>().is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = BigComplex::zero(30);
        assert!(BigComplex::one(30).checked_div(&z).is_err());
        assert!(z.recip().is_err());
    }

    #[test]
    fn log10_of_huge_values() {
        let big = BigComplex::from_f64(10.0, 0.0, 30).powu(500);
        assert!((big.log10_abs() - 500.0).abs() < 1e-9);
    }
}
