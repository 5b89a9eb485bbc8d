//! Rank-one operators `x ⊙ y`: realization as a TTO with an explicit unitary,
//! the kernel-angle invariant, and tensor products with analytic TTOs.

use ttokit::rankone::{kernel_angle, realize_as_tto, tensor_rank_one};
use ttokit::{BlaschkeProduct, CVector, CircleRational, Quadrature, RankOnePair, C64};

fn main() -> ttokit::Result<()> {
    let quad = Quadrature::default();
    let x = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.5, 0.5), C64::new(0.0, -1.0)]);
    let y = CVector::from_vec(vec![C64::new(0.2, 0.0), C64::new(1.0, 0.0), C64::new(0.3, 0.3)]);
    let p = RankOnePair::new(x, y)?;

    let real = realize_as_tto(&p, quad)?;
    println!("Θ of degree {}, Θ'(0) = {:.4}", real.theta.degree(), real.tau);
    println!("witness residual {:.2e}", real.witness.residual);

    let theta = BlaschkeProduct::new(vec![C64::new(0.3, 0.1), C64::new(-0.5, 0.2)], C64::new(1.0, 0.0))?;
    let angle = kernel_angle(&theta, quad)?;
    println!(
        "cos angle(k̃₀, k₀) = {:.12}, |Θ'(0)|(1−|Θ(0)|²) = {:.12}, |Θ'(0)|/(1−|Θ(0)|²) = {:.12}",
        angle.cosine, angle.product_form, angle.quotient_form
    );

    let b = BlaschkeProduct::new(vec![C64::new(0.6, 0.0)], C64::new(1.0, 0.0))?;
    let psi = CircleRational::polynomial(ttokit::poly::Poly::new(vec![C64::new(1.0, 0.0), C64::new(0.5, -0.2)]));
    let r = tensor_rank_one(&b, &psi, &p, quad)?;
    println!("A_ψ ⊗ (x ⊙ y) as a TTO: residual {:.2e}", r.residual.residual_rel);
    Ok(())
}
