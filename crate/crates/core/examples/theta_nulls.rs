//! The 36 even theta nulls and chi18, with the weight-18 transformation law.

use chi18::siegel::{act, random_reduced_point, random_symplectic};
use chi18::theta::{chi18_an, chi18_with, Chi18Options, SiegelPoint};

fn main() -> chi18::Result<()> {
    let digits = 50;
    let tau = random_reduced_point(3, digits)?;
    let chi = chi18_an(&tau, digits)?;
    println!("chi18(tau) = {}", chi.value);
    for (c, v) in chi.nulls.iter().take(6) {
        println!("  theta{c} = {v}");
    }
    println!("  ... ({} even nulls in total)", chi.nulls.len());

    let gamma = random_symplectic(4, 5);
    let (moved, cocycle) = act(&gamma, &tau, digits)?;
    let lhs = chi18_with(&moved, digits, Chi18Options { reduce: false, ..Default::default() })?.value;
    let rhs = &cocycle.powu(18) * &chi.value;
    println!("chi18(gamma tau) / (det(C tau + D)^18 chi18(tau)) = {}", lhs.checked_div(&rhs)?);

    let diag = SiegelPoint::scaled_identity(1.0, digits);
    let at_i = chi18_an(&diag, digits)?;
    println!("at tau = iI: {} even nulls vanish, chi18 = {}", at_i.vanishing_count(), at_i.value);
    Ok(())
}
