//! Ternary forms, the Macaulay resultant of three ternary cubics and the
//! discriminant of plane quartics.

mod form;
pub(crate) mod linalg;
mod macaulay;

pub use form::{
    det3_i64, fermat_quartic, inverse_sl3, klein_quartic, monomial_count, monomial_index, monomials, random_sl3,
    Exponent, TernaryForm, TernaryQuartic,
};
pub use macaulay::{macaulay_matrix, resultant, resultant_multimodular, verified_resultant, MacaulayMatrix};

use rug::Rational;

use crate::error::Result;

/// `(F_X, F_Y, F_Z)` of a quartic.
pub fn partial_derivatives(f: &TernaryQuartic) -> Result<[TernaryForm; 3]> {
    f.expect_degree(4)?;
    Ok([f.partial(0), f.partial(1), f.partial(2)])
}

/// `Res(F_X, F_Y, F_Z)`, cross-checked by the multi-modular route.
pub fn discriminant(f: &TernaryQuartic) -> Result<Rational> {
    verified_resultant(&partial_derivatives(f)?)
}

/// A quartic is smooth iff its discriminant is non-zero.
pub fn is_smooth(f: &TernaryQuartic) -> Result<bool> {
    Ok(discriminant(f)? != 0)
}

/// `F o B` for a rational 3 x 3 matrix.
pub fn substitute_linear(f: &TernaryForm, b: &[[Rational; 3]; 3]) -> TernaryForm {
    f.substitute_linear(b)
}
