//! Quadratic twists flip the square class of Delta.

use chi18::arith::parse_rational;
use chi18::pipeline::{delta_of_quartic, twist_delta};
use chi18::quartic::fermat_quartic;

fn main() -> chi18::Result<()> {
    let report = delta_of_quartic(&fermat_quartic(), 60)?;
    println!("Fermat: Delta = {:?}, verdict {}", report.delta_rational, report.verdict);
    for d in ["3", "-1", "2/5"] {
        let d = parse_rational(d)?;
        let once = twist_delta(&report, &d)?;
        let twice = twist_delta(&once, &d)?;
        println!("D = {d}: {} then {}", once.verdict, twice.verdict);
    }
    Ok(())
}
