use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::BigComplex;

/// Default height bound `10^(digits / 4)`.
pub fn default_height_bound(digits: u32) -> Integer {
    Integer::from(10).pow(digits / 4)
}

/// Acceptance radius `10^(-decades) * max(1, |x|)` as an exact rational.
fn residual_budget(x: &Rational, decades: u32) -> Rational {
    let scale = if x.clone().abs() > 1 { x.clone().abs() } else { Rational::from(1) };
    scale / Rational::from(Integer::from(10).pow(decades))
}

/// Recovers `p/q` with `|p|, q <= height_bound` from a numerical value.
///
/// The real part is expanded as a continued fraction and the first convergent
/// within `10^(-digits/2)` (relative to `max(1, |x|)`) is returned. The
/// imaginary part must lie inside the same budget.
pub fn rational_reconstruct(x: &BigComplex, height_bound: &Integer) -> Option<Rational> {
    rational_reconstruct_within(x, height_bound, x.digits() / 2)
}

/// As [`rational_reconstruct`], with the acceptance radius
/// `10^(-decades) * max(1, |x|)` chosen by the caller.
pub fn rational_reconstruct_within(x: &BigComplex, height_bound: &Integer, decades: u32) -> Option<Rational> {
    let re = x.re().to_rational()?;
    let im = x.im().to_rational()?;
    let budget = residual_budget(&re, decades);
    if im.abs() >= budget {
        return None;
    }

    // Convergents h_k / k_k of the (terminating) expansion of `re`.
    let (mut h_prev, mut h) = (Integer::from(0), Integer::from(1));
    let (mut k_prev, mut k) = (Integer::from(1), Integer::from(0));
    let mut rest = re.clone();
    loop {
        let a = rest.clone().floor().into_numer_denom().0;
        let h_next = Integer::from(&a * &h) + &h_prev;
        let k_next = Integer::from(&a * &k) + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if h.clone().abs() > *height_bound || k > *height_bound {
            return None;
        }
        let candidate = Rational::from((h.clone(), k.clone()));
        if Rational::from(&re - &candidate).abs() < budget {
            return Some(candidate);
        }
        let frac = rest - Rational::from(a);
        if frac == 0 {
            return None;
        }
        rest = frac.recip();
    }
}

/// Reconstruction with the height bound scaled to the magnitude of `x`:
/// denominators up to `10^(digits/4)` and numerators up to that times `|x|`.
pub fn rational_reconstruct_scaled(x: &BigComplex) -> Option<Rational> {
    let base = default_height_bound(x.digits());
    let mag = Float::with_val(64, x.abs()).ceil();
    let mag = mag.to_integer().unwrap_or_else(|| Integer::from(1)).max(Integer::from(1));
    rational_reconstruct(x, &(base * mag))
}
