pub mod arith;
pub(crate) mod cmat;
pub mod error;
pub mod periods;
pub mod pipeline;
pub mod quartic;
pub mod siegel;
pub mod theta;

pub use error::{Error, Result};
