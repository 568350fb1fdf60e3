//! End-to-end computations: `Delta` from periods and theta nulls, the square
//! test, twists, the hyperelliptic probe and degeneration scans.

mod delta;
mod report;
mod scan;

pub use delta::{
    delta_from_tau_omega, delta_of_quartic, delta_of_quartic_with, hyperelliptic_probe, is_jacobian, twist_delta,
    MIN_ZERO_TEST_DIGITS, ZERO_MARGIN_DECADES,
};
pub use report::{format_grid, format_period_report, parse_grid, DeltaReport, Verdict, VERSION};
pub use scan::{degeneration_scan, family_member, ScanRow, ScanTable};
