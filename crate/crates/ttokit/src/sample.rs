//! Seeded random instances for the randomized suites and `generate`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::Rng;

use crate::blaschke::BlaschkeProduct;
use crate::modelspace::ModelBasis;
use crate::poly::Poly;
use crate::rankone::RankOnePair;
use crate::symbols::CircleRational;
use crate::{CVector, C64};

/// Zero-modulus cap for random Blaschke products.
pub const MAX_ZERO_MODULUS: f64 = 0.8;

pub fn unit_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))
}

/// Uniform in the square `[−1, 1]²`.
pub fn small_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Uniform in the disk of radius `r`.
pub fn disk_point<R: Rng>(rng: &mut R, r: f64) -> C64 {
    let rho = r * rng.gen::<f64>().sqrt();
    C64::from_polar(rho, rng.gen_range(0.0..2.0 * PI))
}

pub fn blaschke<R: Rng>(rng: &mut R, degree: usize) -> BlaschkeProduct {
    let zeros = (0..degree).map(|_| disk_point(rng, MAX_ZERO_MODULUS)).collect();
    BlaschkeProduct::new(zeros, unit_complex(rng)).expect("zeros drawn inside the disk")
}

/// Random degree in `1..=max_degree`.
pub fn blaschke_up_to<R: Rng>(rng: &mut R, max_degree: usize) -> BlaschkeProduct {
    let d = rng.gen_range(1..=max_degree.max(1));
    blaschke(rng, d)
}

/// Laurent polynomial `Σ_{|k| ≤ d} c_k z^k` with `d ≤ max_degree`.
pub fn laurent_terms<R: Rng>(rng: &mut R, max_degree: usize) -> BTreeMap<i32, C64> {
    let d = rng.gen_range(0..=max_degree) as i32;
    (-d..=d).map(|k| (k, small_complex(rng))).collect()
}

pub fn laurent<R: Rng>(rng: &mut R, max_degree: usize) -> CircleRational {
    CircleRational::laurent(&laurent_terms(rng, max_degree))
}

pub fn analytic_poly<R: Rng>(rng: &mut R, degree: usize) -> Poly {
    Poly::new((0..=degree).map(|_| small_complex(rng)).collect())
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> CVector {
    CVector::from_vec((0..n).map(|_| small_complex(rng)).collect())
}

/// Random element of `K_B` as a rational function.
pub fn model_element<R: Rng>(rng: &mut R, basis: &ModelBasis) -> CircleRational {
    basis.combine(&vector(rng, basis.dim()))
}

/// `ψ = Σ_{j=jmin}^{jmax} B^j ψ_j` with random `ψ_j ∈ K_B`.
pub fn band_symbol<R: Rng>(rng: &mut R, basis: &ModelBasis, jmin: i32, jmax: i32) -> CircleRational {
    let b = basis.theta();
    (jmin..=jmax).fold(CircleRational::zero(), |acc, j| {
        acc.add(&CircleRational::blaschke_power(b, j).mul(&model_element(rng, basis)))
    })
}

/// Random band `(jmin, jmax)` inside `[−3, 3]` of width at most 3.
pub fn band<R: Rng>(rng: &mut R) -> (i32, i32) {
    let width = rng.gen_range(0..3);
    let jmin = rng.gen_range(-3..=3 - width);
    (jmin, jmin + width)
}

/// A pair with `|⟨x, y⟩| / (‖x‖‖y‖) ≤ 0.9`.
pub fn noncolinear_pair<R: Rng>(rng: &mut R, n: usize) -> RankOnePair {
    loop {
        let x = vector(rng, n);
        let y = vector(rng, n);
        let p = RankOnePair::new(x, y).expect("equal lengths");
        if p.pairing().norm() <= 0.9 * p.norm_product() && !p.is_selfadjoint() {
            return p;
        }
    }
}

/// Square-zero analytic TTO data: `Θ` with zero `a_i` of multiplicity `m_i ≥ 2`
/// and `φ = Π (z − a_i)^{⌈m_i/2⌉} · h`, so that `Θ | φ²`.
pub fn nilpotent<R: Rng>(rng: &mut R, max_degree: usize) -> (BlaschkeProduct, CircleRational) {
    let max_degree = max_degree.max(2);
    loop {
        let mut zeros = Vec::new();
        let mut g = Poly::one();
        while zeros.len() + 2 <= max_degree {
            let m = rng.gen_range(2..=3.min(max_degree - zeros.len()));
            let a = disk_point(rng, 0.6);
            zeros.extend(std::iter::repeat_n(a, m));
            for _ in 0..m.div_ceil(2) {
                g = g.mul_linear(a);
            }
            if rng.gen_bool(0.5) {
                break;
            }
        }
        let h = Poly::new(vec![
            C64::new(1.0, 0.0) + small_complex(rng) * 0.2,
            small_complex(rng) * 0.5,
        ]);
        let theta = BlaschkeProduct::new(zeros, unit_complex(rng)).expect("zeros inside the disk");
        let phi = CircleRational::polynomial(&g * &h);
        if theta.zeros().iter().any(|a| a.norm() > 1e-3) {
            return (theta, phi);
        }
    }
}

/// `Θ = z^n`, `φ = z^m` with `2m ≥ n` and `m < n`.
pub fn nilpotent_monomial<R: Rng>(rng: &mut R, max_degree: usize) -> (usize, usize) {
    let n = rng.gen_range(2..=max_degree.max(2));
    let m = rng.gen_range(n.div_ceil(2)..n);
    (n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_blaschke_is_reproducible() {
        let a = blaschke(&mut ChaCha8Rng::seed_from_u64(5), 3);
        let b = blaschke(&mut ChaCha8Rng::seed_from_u64(5), 3);
        assert_eq!(a, b);
        assert!(a.max_zero_modulus() <= MAX_ZERO_MODULUS);
    }

    #[test]
    fn band_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (lo, hi) = band(&mut rng);
            assert!(-3 <= lo && lo <= hi && hi <= 3 && hi - lo < 3);
        }
    }
}
