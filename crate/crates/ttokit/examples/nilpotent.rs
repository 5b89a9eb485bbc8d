//! Kernels of analytic TTOs and the square-zero construction
//! `A^Θ_φ ⊕ 0 ≅ A^{uΘ}_{uφ}`.

use ttokit::directsum::{kernel_decompose, theorem_5_3};
use ttokit::{BlaschkeProduct, CircleRational, Quadrature, C64};

fn main() -> ttokit::Result<()> {
    let quad = Quadrature::default();
    let theta = BlaschkeProduct::monomial(5);
    let phi = CircleRational::z_pow(3);
    let dec = kernel_decompose(&theta, &phi, quad)?;
    println!(
        "ker dim {}, deg u = {}, divisibility {:.2e}",
        dec.kernel_dim,
        dec.u.degree(),
        dec.divisibility_residual
    );

    let a = C64::new(0.3, 0.2);
    let theta = BlaschkeProduct::new(vec![a, a, a], C64::new(1.0, 0.0))?;
    let phi = CircleRational::polynomial(ttokit::poly::Poly::new(vec![-a, C64::new(1.0, 0.0)]).pow(2));
    let r = theorem_5_3(&theta, &phi, quad)?;
    println!(
        "deg u = {}, witness residual {:.2e}, unitarity {:.2e}",
        r.decomposition.u.degree(),
        r.witness.residual,
        r.witness.unitarity_residual
    );
    Ok(())
}
