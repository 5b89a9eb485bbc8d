//! `A^B_{ψ + ζ B̄ ψ} ⊕ 0` realized as a TTO on `K_{Θ∘B}` with an explicit
//! unitary, plus the closed-form symbol for `Θ = z²`.

use ttokit::directsum::{boundary_symbol, quadratic_special_symbol, theorem_5_1};
use ttokit::symbols::same_symbol_for;
use ttokit::{BlaschkeProduct, CircleRational, Quadrature, C64};

fn main() -> ttokit::Result<()> {
    let b = BlaschkeProduct::new(vec![C64::new(0.5, 0.2), C64::new(0.0, 0.0)], C64::new(1.0, 0.0))?;
    let psi = CircleRational::cauchy(C64::new(0.5, 0.2))?;
    let zeta = C64::from_polar(1.0, 0.9);
    let r = theorem_5_1(&b, &psi, zeta, 2, None, Quadrature::default())?;
    println!(
        "dim {}, witness residual {:.2e}, unitarity {:.2e}",
        r.tto.dim(),
        r.witness.residual,
        r.witness.unitarity_residual
    );

    let z2 = BlaschkeProduct::monomial(2);
    for zeta in [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::from_polar(1.0, 0.5)] {
        let ours = boundary_symbol(&z2, zeta)?.scale(C64::new(0.5, 0.0));
        let same = same_symbol_for(&ours, &quadratic_special_symbol(zeta), &z2)?;
        println!("ζ = {zeta:.3}: closed form matches: {same}");
    }
    Ok(())
}
