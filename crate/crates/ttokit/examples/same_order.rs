//! Inflations by two inner functions of the same degree are equivalent; the
//! witness is `ω₂ ω₁*`, and the trace-word checker agrees.

use ttokit::directsum::sufficient_word_len;
use ttokit::tensorcomp::verify_same_order;
use ttokit::{BlaschkeProduct, CircleRational, Quadrature, C64};

fn main() -> ttokit::Result<()> {
    let theta = BlaschkeProduct::new(vec![C64::new(0.3, -0.3), C64::new(0.5, 0.5)], C64::new(1.0, 0.0))?;
    let phi = CircleRational::z_pow(1).add(&CircleRational::monomial(-2, C64::new(0.3, 0.1)));
    let b1 = BlaschkeProduct::monomial(2);
    let b2 = BlaschkeProduct::new(vec![C64::new(0.7, 0.0), C64::new(-0.2, 0.6)], C64::new(0.0, 1.0))?;
    let n = b1.degree() * theta.degree();
    let r = verify_same_order(&theta, &phi, &b1, &b2, Quadrature::default(), sufficient_word_len(n))?;
    println!(
        "witness residual {:.2e}, unitarity {:.2e}",
        r.residual.residual_rel, r.witness.unitarity_residual
    );
    println!("trace-word verdict: {:?}", r.verdict);
    Ok(())
}
