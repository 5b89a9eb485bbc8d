//! `A^{Θ∘B}_{φ∘B}` is unitarily equivalent to `deg B` copies of `A^Θ_φ`.

use std::collections::BTreeMap;
use ttokit::tensorcomp::verify_inflation;
use ttokit::{BlaschkeProduct, CircleRational, Quadrature, C64};

fn main() -> ttokit::Result<()> {
    let b = BlaschkeProduct::new(
        vec![C64::new(0.6, 0.0), C64::new(0.0, -0.4), C64::new(-0.1, 0.2)],
        C64::new(1.0, 0.0),
    )?;
    let theta = BlaschkeProduct::new(vec![C64::new(0.2, 0.2), C64::new(-0.7, 0.1)], C64::new(-1.0, 0.0))?;
    let phi = CircleRational::laurent(&BTreeMap::from([
        (-1, C64::new(0.5, 0.0)),
        (0, C64::new(0.0, 1.0)),
        (2, C64::new(1.0, -0.5)),
    ]));
    let r = verify_inflation(&b, &theta, &phi, Quadrature::default())?;
    println!("relative residual {:.2e}", r.residual.residual_rel);
    println!("spectrum vs {} copies: {:.2e}", b.degree(), r.spectral_distance);
    Ok(())
}
