//! Orthonormal bases of model spaces, reproducing kernels, the conjugation
//! `J`, and the quadrature pairing against the exact residue pairing.

use ttokit::modelspace::{conjugation, kernel_pair, residue_inner_product};
use ttokit::{BlaschkeProduct, CircleRational, ModelBasis, Quadrature, C64};

fn main() -> ttokit::Result<()> {
    let theta = BlaschkeProduct::new(
        vec![C64::new(0.4, 0.2), C64::new(-0.3, 0.5), C64::new(0.0, 0.0)],
        C64::new(0.0, 1.0),
    )?;
    let basis = ModelBasis::new(&theta, Quadrature::default())?;
    let gram = basis.gram()?;
    let eye = ttokit::CMatrix::identity(basis.dim(), basis.dim());
    println!("dim K_Θ = {}, ‖G − I‖ = {:.2e}", basis.dim(), (gram - eye).norm());

    let lambda = C64::new(0.1, -0.2);
    let kp = kernel_pair(&theta, lambda)?;
    // reproducing property: ⟨f, k_λ⟩ = f(λ)
    let f = basis.element(1);
    let ip = basis.inner_product(f, &kp.k)?;
    println!("|⟨e₁, k_λ⟩ − e₁(λ)| = {:.2e}", (ip - f.evaluate(lambda)).norm());

    let jk = conjugation(&kp.k, &basis)?;
    let z = C64::from_polar(1.0, 2.0);
    println!(
        "|J k_λ − k̃_λ| at a circle point = {:.2e}",
        (jk.evaluate(z) - kp.ktilde.evaluate(z)).norm()
    );

    let g = CircleRational::cauchy(C64::new(0.6, 0.1))?.mul(&CircleRational::z_pow(-1));
    let quad = ttokit::modelspace::inner_product(&kp.k, &g, 512)?;
    let exact = residue_inner_product(&kp.k, &g);
    println!("quadrature vs residues: {:.2e}", (quad - exact).norm());
    Ok(())
}
