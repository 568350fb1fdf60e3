//! Period matrices of smooth plane quartics.

mod curve;
mod homology;
mod matrix;
mod monodromy;
mod poly;
mod quadrature;
mod track;

pub use curve::{discriminant_points, fiber_roots, AffineCurve};
pub use poly::QPoly;
pub use monodromy::{
    compose, cycle_count, inverse, monodromy, monodromy_with, LoopGeometry, MonodromyData, MonodromyOptions,
    Permutation,
};
pub use homology::{homology_basis, intersection_number, symplectic_basis, Homology, HomologyStrategy, SymplecticBasis};
pub use matrix::{period_matrix, periods_of_quartic, tau_of, PeriodData, PeriodOptions};
