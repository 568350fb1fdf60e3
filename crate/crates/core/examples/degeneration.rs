//! The family Q^2 + t^2 H approaching a double conic: one even theta null
//! goes to zero as the curves approach the hyperelliptic locus.
//!
//! Usage: `cargo run --release --example degeneration [digits]`

use chi18::arith::parse_rational;
use chi18::pipeline::degeneration_scan;
use chi18::quartic::{fermat_quartic, TernaryForm};

fn main() -> chi18::Result<()> {
    let digits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let q = TernaryForm::parse("2 0 0 1\n0 2 0 1\n0 0 2 1\n", 2)?;
    let ts = ["1/2", "1/4", "1/8", "1/16"].map(|t| parse_rational(t).unwrap());
    let table = degeneration_scan(&q, &fermat_quartic(), &ts, digits)?;
    print!("{table}");
    match table.check() {
        Ok(()) => println!("single vanishing null confirmed"),
        Err(e) => println!("check failed: {e}"),
    }
    Ok(())
}
