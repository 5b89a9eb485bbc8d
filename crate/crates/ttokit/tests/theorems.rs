use ttokit::directsum::theorem_5_1;
use ttokit::linalg::kron;
use ttokit::scenario::{generate, CheckKind};
use ttokit::tensorcomp::{block_toeplitz_4_1, verify_inflation, verify_same_order};
use ttokit::{BlaschkeProduct, CMatrix, CircleRational, EquivVerdict, ModelBasis, Quadrature, TtoMatrix, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn q() -> Quadrature {
    Quadrature::default()
}

#[test]
fn same_order_against_a_product_of_mobius_maps() {
    let b1 = BlaschkeProduct::monomial(2);
    let b2 = BlaschkeProduct::mobius(c(0.3, 0.0))
        .unwrap()
        .multiply(&BlaschkeProduct::mobius(c(-0.4, 0.0)).unwrap());
    let theta = BlaschkeProduct::monomial(2);
    let r = verify_same_order(&theta, &CircleRational::z_pow(1), &b1, &b2, q(), 8).unwrap();
    assert!(r.residual.residual_rel < 1e-8);
    assert!(r.spectral_distance < 1e-7);
    assert!(r.witness.unitarity_residual < 1e-9);
    assert_eq!(r.verdict, EquivVerdict::Equivalent);
}

#[test]
fn same_order_with_equal_maps_has_identity_witness() {
    let b = BlaschkeProduct::new(vec![c(0.2, 0.1), c(-0.5, 0.3)], c(0.0, 1.0)).unwrap();
    let theta = BlaschkeProduct::mobius(c(0.1, -0.6)).unwrap();
    let phi = CircleRational::z_pow(-1).add(&CircleRational::z_pow(1));
    let r = verify_same_order(&theta, &phi, &b, &b, q(), 8).unwrap();
    let n = r.witness.unitary.nrows();
    assert!((&r.witness.unitary - CMatrix::identity(n, n)).norm() < 1e-9);
}

#[test]
fn first_block_family_with_one_symbol_is_inflation() {
    let theta = BlaschkeProduct::new(vec![c(0.4, 0.0), c(0.0, -0.3)], c(1.0, 0.0)).unwrap();
    let phi = CircleRational::z_pow(-1)
        .scale(c(2.0, 0.0))
        .add(&CircleRational::z_pow(1));
    let r = block_toeplitz_4_1(&theta, 2, &[phi.clone(), CircleRational::zero()], q()).unwrap();
    let a = TtoMatrix::build(&ModelBasis::new(&theta, q()).unwrap(), &phi)
        .unwrap()
        .matrix;
    assert!((&r.block - kron(&CMatrix::identity(2, 2), &a)).norm() < 1e-10);
    let z2 = BlaschkeProduct::monomial(2);
    let composed = TtoMatrix::build(
        &ModelBasis::new(&theta.compose(&z2).unwrap(), q()).unwrap(),
        &phi.compose_blaschke(&z2).unwrap(),
    )
    .unwrap();
    assert!((&r.tto.matrix - &composed.matrix).norm() < 1e-10);
    assert!(verify_inflation(&z2, &theta, &phi, q()).unwrap().residual.residual_rel < 1e-8);
}

#[test]
fn first_block_family_two_by_two_monomial() {
    let theta = BlaschkeProduct::monomial(2);
    let r = block_toeplitz_4_1(&theta, 2, &[CircleRational::one(), CircleRational::z_pow(1)], q()).unwrap();
    assert!(r.residual.residual_rel < 1e-8);
    // h = 1 + z·z² = 1 + z³ on K_{z⁴}
    let mut expect = CMatrix::identity(4, 4);
    expect[(3, 0)] = c(1.0, 0.0);
    assert!((&r.tto.matrix - expect).norm() < 1e-12);
}

#[test]
fn direct_sum_with_zero_symbol() {
    let b = BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap();
    let r = theorem_5_1(&b, &CircleRational::zero(), c(1.0, 0.0), 1, None, q()).unwrap();
    assert!(r.tto.matrix.norm() < 1e-12);
    assert!(r.target.norm() < 1e-12);
    assert!(r.witness.unitarity_residual < 1e-9);
}

#[test]
fn direct_sum_on_z_squared() {
    let b = BlaschkeProduct::monomial(2);
    let psi = CircleRational::one().add(&CircleRational::z_pow(1));
    let r = theorem_5_1(&b, &psi, c(1.0, 0.0), 2, None, q()).unwrap();
    assert_eq!(r.tto.dim(), 6);
    assert_eq!(r.target.nrows(), 6);
    assert!(r.witness.relative_residual(&r.tto.matrix, &r.target) < 1e-8);
}

#[test]
fn generated_square_zero_instances_are_nilpotent() {
    for (_, s) in generate(CheckKind::Thm53, 5, 1, 4).unwrap() {
        let theta = s.theta.unwrap();
        let phi = s.phi.unwrap();
        let a = TtoMatrix::build(&ModelBasis::new(&theta, q()).unwrap(), &phi)
            .unwrap()
            .matrix;
        assert!((&a * &a).norm() < 1e-9);
    }
}

#[test]
fn direct_sum_with_a_supplied_inner_function() {
    let b = BlaschkeProduct::new(vec![c(0.3, -0.2), c(-0.1, 0.5)], c(1.0, 0.0)).unwrap();
    let theta = BlaschkeProduct::new(vec![c(0.5, 0.1), c(-0.2, -0.6), c(0.0, 0.3)], c(0.0, 1.0)).unwrap();
    let basis = ModelBasis::new(&b, q()).unwrap();
    let psi = basis.element(0).add(&basis.element(1).scale(c(0.5, -1.0)));
    let zeta = C64::from_polar(1.0, 2.0);
    let r = theorem_5_1(&b, &psi, zeta, 2, Some(&theta), q()).unwrap();
    assert_eq!(r.tto.dim(), 6);
    assert!(r.kernel_identity_residual < 1e-10);
    assert!(r.witness.relative_residual(&r.tto.matrix, &r.target) < 1e-8);
    assert!(theorem_5_1(&b, &psi, zeta, 1, Some(&theta), q()).is_err());
}
