//! The unitary `ω_B : K_B ⊗ K_Θ → K_{Θ∘B}` and the intertwining identity for
//! `A_{ψ (φ∘B)}` with a symbol `ψ` spread over a band of powers of `B`.

use ttokit::sample;
use ttokit::tensorcomp::{build_omega, decompose_psi, verify_main_with};
use ttokit::{BlaschkeProduct, Quadrature, C64};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ttokit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = BlaschkeProduct::new(vec![C64::new(0.5, 0.1), C64::new(-0.2, 0.4)], C64::new(1.0, 0.0))?;
    let theta = BlaschkeProduct::new(vec![C64::new(0.0, 0.6), C64::new(0.3, 0.0)], C64::new(0.0, -1.0))?;
    let omega = build_omega(&b, &theta, Quadrature::default())?;
    println!(
        "ω: {}×{}, ‖ω*ω − I‖ = {:.2e}, containment {:.2e}",
        omega.matrix.nrows(),
        omega.matrix.ncols(),
        omega.unitarity_residual,
        omega.containment_residual
    );

    let band = (-1, 1);
    let psi = sample::band_symbol(&mut rng, omega.basis_b(), band.0, band.1);
    let parts = decompose_psi(&psi, omega.basis_b(), band.0, band.1)?;
    println!(
        "ψ splits into {} band components, residual {:.2e}",
        parts.components.len(),
        parts.residual
    );

    let phi = sample::laurent(&mut rng, 2);
    let report = verify_main_with(&omega, &psi, &phi, band)?;
    println!(
        "intertwining residual: abs {:.2e}, rel {:.2e}",
        report.residual_abs, report.residual_rel
    );
    Ok(())
}
