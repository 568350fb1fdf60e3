//! Delta of the Fermat and Klein quartics and the square test.
//!
//! Usage: `cargo run --release --example jacobian_criterion [digits]`

use chi18::pipeline::delta_of_quartic;
use chi18::quartic::{fermat_quartic, klein_quartic};

fn main() -> chi18::Result<()> {
    let digits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(120);
    for (name, f) in [("fermat", fermat_quartic()), ("klein", klein_quartic())] {
        let start = std::time::Instant::now();
        let r = delta_of_quartic(&f, digits)?;
        println!("== {name} ({:.1}s)", start.elapsed().as_secs_f64());
        print!("{r}");
    }
    Ok(())
}
