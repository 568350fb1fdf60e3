//! The symplectic action on the Siegel upper half space and reduction toward
//! the fundamental domain.

use chi18::siegel::{act, random_reduced_point, random_symplectic, reduce};

fn main() -> chi18::Result<()> {
    let digits = 40;
    let tau = random_reduced_point(1, digits)?;
    println!("tau (lambda_min = {:.4}):\n{tau}", tau.lambda_min());

    let gamma = random_symplectic(5, 11);
    let (moved, cocycle) = act(&gamma, &tau, digits)?;
    println!("gamma:\n{gamma}");
    println!("gamma.tau has lambda_min = {:.3e}, det(C tau + D) = {cocycle}", moved.lambda_min());

    let r = reduce(&moved, digits)?;
    println!("reduced after {} moves, lambda_min = {:.4}", r.moves, r.tau_reduced.lambda_min());
    println!("reduced point:\n{}", r.tau_reduced);
    Ok(())
}
