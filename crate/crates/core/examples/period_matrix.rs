//! Branch points, monodromy, a symplectic homology basis and the period
//! matrix of a plane quartic.
//!
//! Usage: `cargo run --release --example period_matrix [digits]`

use chi18::periods::{periods_of_quartic, PeriodOptions};
use chi18::pipeline::format_period_report;
use chi18::quartic::klein_quartic;

fn main() -> chi18::Result<()> {
    let digits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let pd = periods_of_quartic(&klein_quartic(), digits, PeriodOptions::default())?;
    for (p, s) in pd.monodromy.discriminant_points.iter().zip(&pd.monodromy.permutations) {
        println!("branch point {p}: sheets {s:?}");
    }
    println!("sphere relation holds: {}", pd.monodromy.sphere_relation_holds());
    println!("basis intersections: {:?}", pd.basis_intersections());
    print!("{}", format_period_report(&pd));
    Ok(())
}
