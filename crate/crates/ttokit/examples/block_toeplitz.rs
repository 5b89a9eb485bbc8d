//! The two block Toeplitz families: symbols `Σ z^m (φ_m ∘ z^n)` on
//! `K_{Θ(z^n)}`, and `Σ ψ_m B^m` on `K_{B^n}` with `ψ_m ∈ K_B ⊕ ℂ`.

use std::collections::BTreeMap;

use ttokit::tensorcomp::{block_toeplitz_4_1, block_toeplitz_4_2};
use ttokit::{BlaschkeProduct, CircleRational, Quadrature, C64};

fn main() -> ttokit::Result<()> {
    let quad = Quadrature::default();
    let theta = BlaschkeProduct::new(vec![C64::new(0.4, 0.0), C64::new(0.0, 0.4)], C64::new(1.0, 0.0))?;
    let phis = vec![
        CircleRational::z_pow(1),
        CircleRational::constant(C64::new(2.0, 0.0)),
        CircleRational::z_pow(-1),
    ];
    let r = block_toeplitz_4_1(&theta, 3, &phis, quad)?;
    println!("analytic-index family, n = 3: residual {:.2e}", r.residual.residual_rel);

    // constant ψ_m reproduce A ⊗ I for the classical Toeplitz matrix A = [[1, 2], [3, 1]]
    let b = BlaschkeProduct::new(vec![C64::new(0.5, 0.0), C64::new(-0.3, 0.3)], C64::new(1.0, 0.0))?;
    let psis = BTreeMap::from([
        (-1, CircleRational::constant(C64::new(2.0, 0.0))),
        (0, CircleRational::constant(C64::new(1.0, 0.0))),
        (1, CircleRational::constant(C64::new(3.0, 0.0))),
    ]);
    let r = block_toeplitz_4_2(&b, 2, &psis, quad)?;
    println!("B-power family, n = 2: residual {:.2e}", r.residual.residual_rel);
    println!("block matrix (real part):\n{:.3}", r.block.map(|c| c.re));
    Ok(())
}
