//! Exact rationals, arbitrary-precision complex numbers and the small amount
//! of number theory the pipeline needs on top of them.

mod complex;
mod rational;
mod reconstruct;
mod sum;

pub use complex::{bits_for_digits, digits_for_bits, BigComplex, GUARD_BITS};
pub use rational::{
    format_rational, parse_rational, perfect_square, power_of_two_ratio, BigRational, Sign,
};
pub use reconstruct::{default_height_bound, rational_reconstruct, rational_reconstruct_scaled, rational_reconstruct_within};
pub use sum::CompensatedSum;
