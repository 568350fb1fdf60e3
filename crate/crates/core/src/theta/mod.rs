//! Theta characteristics, theta constants and the weight-18 form `chi18`.

mod characteristic;
mod chi18;
mod eval;
mod point;

pub use characteristic::{enumerate_even_characteristics, ThetaCharacteristic};
pub use chi18::{chi18_an, chi18_with, Chi18, Chi18Options};
pub use eval::{theta_constant, theta_constant_1d, truncation_radius, Convention};
pub use point::SiegelPoint;
