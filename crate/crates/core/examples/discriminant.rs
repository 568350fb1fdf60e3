//! Exact discriminants through the Macaulay resultant, and their behaviour
//! under linear substitutions.

use chi18::quartic::{discriminant, fermat_quartic, klein_quartic, random_sl3, resultant_multimodular, TernaryForm};
use rand::SeedableRng;

fn main() -> chi18::Result<()> {
    let fermat = fermat_quartic();
    let klein = klein_quartic();
    println!("Disc(x^4+y^4+z^4)      = {}", discriminant(&fermat)?);
    println!("Disc(x^3y+y^3z+z^3x)   = {}", discriminant(&klein)?);

    let cusp = TernaryForm::parse("4 0 0 1\n0 4 0 1\n", 4)?;
    println!("Disc(x^4+y^4)          = {}", discriminant(&cusp)?);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let t = random_sl3(&mut rng, 6, 2);
    let moved = klein.substitute_integer(&t);
    println!("SL3(Z) change {t:?}");
    println!("  Disc after change    = {}", discriminant(&moved)?);
    let parts = [moved.partial(0), moved.partial(1), moved.partial(2)];
    println!("  multi-modular route  = {}", resultant_multimodular(&parts)?);
    Ok(())
}
