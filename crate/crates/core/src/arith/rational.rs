use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Exact rational number; always stored in lowest terms with a positive
/// denominator.
pub type BigRational = Rational;

/// Sign of a power-of-two ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Serializes as `p/q`, including `q = 1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = Integer::from_str_radix(num, 10).map_err(|_| bad())?;
    let den = Integer::from_str_radix(den, 10).map_err(|_| bad())?;
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::from((num, den)))
}

/// Square root of `q` in Q, if `q` is the square of a rational.
///
/// Numerator and denominator are tested separately with exact integer square
/// roots; the returned root is non-negative.
pub fn perfect_square(q: &Rational) -> Option<Rational> {
    if *q < 0 {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    if !n.is_perfect_square() || !d.is_perfect_square() {
        return None;
    }
    Some(Rational::from((n.clone().sqrt(), d.clone().sqrt())))
}

/// Returns `(s, k)` with `a = s * 2^k * b` when `a / b` is plus or minus a
/// power of two.
pub fn power_of_two_ratio(a: &Rational, b: &Rational) -> Result<Option<(Sign, i64)>> {
    if *b == 0 {
        return Err(Error::DivisionByZero);
    }
    if *a == 0 {
        return Ok(None);
    }
    let ratio = Rational::from(a / b);
    let sign = if ratio < 0 { Sign::Minus } else { Sign::Plus };
    let num = ratio.numer().clone().abs();
    let den = ratio.denom();
    if !num.is_power_of_two() || !den.is_power_of_two() {
        return Ok(None);
    }
    let k = num.significant_bits() as i64 - den.significant_bits() as i64;
    Ok(Some((sign, k)))
}

/// `2^k` as an exact rational, for any integer `k`.
#[cfg(test)]
fn pow2(k: i64) -> Rational {
    let p = Integer::from(1) << (k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from(p)
    } else {
        Rational::from((Integer::from(1), p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn squares() {
        assert_eq!(perfect_square(&r("4/9")), Some(r("2/3")));
        assert_eq!(perfect_square(&r("2")), None);
        assert_eq!(perfect_square(&pow2(54)), Some(pow2(27)));
        assert_eq!(perfect_square(&r("0")), Some(r("0")));
        assert_eq!(perfect_square(&r("-4")), None);
        assert_eq!(perfect_square(&r("4/3")), None);
    }

    #[test]
    fn two_power_ratios() {
        assert_eq!(
            power_of_two_ratio(&r("-8"), &r("1")).unwrap(),
            Some((Sign::Minus, 3))
        );
        assert_eq!(power_of_two_ratio(&r("3"), &r("1")).unwrap(), None);
        assert_eq!(
            power_of_two_ratio(&pow2(54), &pow2(-54)).unwrap(),
            Some((Sign::Plus, 108))
        );
        assert_eq!(
            power_of_two_ratio(&r("3/16"), &r("-3")).unwrap(),
            Some((Sign::Minus, -4))
        );
        assert!(matches!(
            power_of_two_ratio(&r("1"), &r("0")),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn rational_text_format() {
        assert_eq!(format_rational(&r("6/4")), "3/2");
        assert_eq!(format_rational(&r("5")), "5/1");
        assert_eq!(r(" -12 / 8 "), r("-3/2"));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
