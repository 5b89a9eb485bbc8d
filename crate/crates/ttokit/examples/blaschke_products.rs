//! Evaluation, composition, products, divisors and derivatives of finite
//! Blaschke products.

use ttokit::{BlaschkeProduct, C64};

fn main() -> ttokit::Result<()> {
    let b = BlaschkeProduct::new(vec![C64::new(0.5, 0.0), C64::new(0.0, 0.3)], C64::new(1.0, 0.0))?;
    let theta = BlaschkeProduct::monomial(2);

    let z = C64::from_polar(1.0, 0.7);
    println!("|B(e^0.7i)| = {:.15}", b.evaluate(z)?.norm());
    println!("B(0) = {}", b.evaluate(C64::new(0.0, 0.0))?);
    println!("B'(0) = {}", b.derivative_at(C64::new(0.0, 0.0))?);

    let composed = theta.compose(&b)?;
    println!("deg (z² ∘ B) = {}", composed.degree());
    let w = C64::new(0.2, -0.1);
    let direct = theta.evaluate(b.evaluate(w)?)?;
    println!("|(Θ∘B)(w) − Θ(B(w))| = {:.2e}", (composed.evaluate(w)? - direct).norm());

    let product = b.multiply(&theta);
    println!("deg (B·z²) = {}", product.degree());

    let divisors = BlaschkeProduct::monomial(3).multiply(&b).divisors()?;
    println!("z³·B has {} inner divisors", divisors.len());
    Ok(())
}
