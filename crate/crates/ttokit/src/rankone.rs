//! Rank-one operators `x ⊙ y : ξ ↦ ⟨ξ, y⟩ x`, their unitary invariants, and
//! their realization as `μ k̃₀ ⊙ k₀` on a suitable model space.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::blaschke::BlaschkeProduct;
use crate::directsum::UnitaryWitness;
use crate::error::{Error, Result};
use crate::linalg::{complete_frame, kron, outer};
use crate::modelspace::{kernel_pair, max_negative_fourier, ModelBasis, Quadrature};
use crate::symbols::CircleRational;
use crate::tensorcomp::{build_omega, ResidualReport};
use crate::tto::TtoMatrix;
use crate::{CMatrix, CVector, C64};

const EQUIV_TOL: f64 = 1e-10;
const COLINEAR_TOL: f64 = 1e-10;
const DERIVATIVE_TOL: f64 = 1e-10;
const MATRIX_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct RankOnePair {
    pub x: CVector,
    pub y: CVector,
}

impl RankOnePair {
    pub fn new(x: CVector, y: CVector) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Invalid(format!(
                "vectors of lengths {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(RankOnePair { x, y })
    }

    pub fn dimension(&self) -> usize {
        self.x.len()
    }

    /// `x y*`
    pub fn matrix(&self) -> CMatrix {
        outer(&self.x, &self.y)
    }

    /// `⟨x, y⟩ = Σ x_i conj(y_i)`
    pub fn pairing(&self) -> C64 {
        self.y.dotc(&self.x)
    }

    pub fn norm_product(&self) -> f64 {
        self.x.norm() * self.y.norm()
    }

    pub fn is_colinear(&self) -> bool {
        self.pairing().norm() >= self.norm_product() - COLINEAR_TOL
    }

    pub fn is_selfadjoint(&self) -> bool {
        let m = self.matrix();
        (&m - m.adjoint()).norm() <= 1e-12 * m.norm().max(1.0)
    }
}

/// Same dimension, same `‖x‖‖y‖` and same `⟨x, y⟩`, each within `1e-10`.
pub fn rank_one_equivalent(p1: &RankOnePair, p2: &RankOnePair) -> bool {
    p1.dimension() == p2.dimension()
        && (p1.norm_product() - p2.norm_product()).abs() <= EQUIV_TOL
        && (p1.pairing() - p2.pairing()).norm() <= EQUIV_TOL
}

/// Unitary `U` with `U (x₁ ⊙ y₁) U* = x₂ ⊙ y₂`, built by matching orthonormal
/// frames of `(x₁, y₁)` and of the rescaled `(s x₂, y₂/s)`, `s = ‖x₁‖/‖x₂‖`.
pub fn equivalence_witness(p1: &RankOnePair, p2: &RankOnePair) -> Option<UnitaryWitness> {
    if !rank_one_equivalent(p1, p2) {
        return None;
    }
    let n = p1.dimension();
    let (m1, m2) = (p1.matrix(), p2.matrix());
    if p1.norm_product() <= EQUIV_TOL {
        return Some(UnitaryWitness::new(
            CMatrix::identity(n, n),
            &m1,
            &m2,
            "identity on zero operators",
        ));
    }
    let s = p1.x.norm() / p2.x.norm();
    let x2 = &p2.x * C64::new(s, 0.0);
    let y2 = &p2.y / C64::new(s, 0.0);
    let f1 = complete_frame(&[p1.x.clone(), p1.y.clone()], n);
    let f2 = complete_frame(&[x2, y2], n);
    Some(UnitaryWitness::new(f2 * f1.adjoint(), &m1, &m2, "matched frames"))
}

/// `Θ(z) = z·(τ − z^{n−1})/(1 − τ̄ z^{n−1})`: `Θ(0) = 0`, `Θ′(0) = τ`, degree `n`.
pub fn kernel_angle_inner(tau: C64, n: usize) -> Result<BlaschkeProduct> {
    if n < 2 {
        return Err(Error::Precondition("dimension must be at least 2".into()));
    }
    if tau.norm() >= 1.0 {
        return Err(Error::Precondition(format!("|τ| = {} must be below 1", tau.norm())));
    }
    let m = n - 1;
    let radius = tau.norm().powf(1.0 / m as f64);
    let arg = tau.arg();
    let mut zeros = vec![C64::new(0.0, 0.0)];
    zeros.extend((0..m).map(|k| {
        if radius == 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::from_polar(radius, (arg + 2.0 * PI * k as f64) / m as f64)
        }
    }));
    BlaschkeProduct::new(zeros, C64::new(-1.0, 0.0))
}

/// `x ⊙ y` realized as `μ k̃₀ ⊙ k₀` on `K_Θ`, `μ = ‖x‖‖y‖`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub theta: BlaschkeProduct,
    pub tau: C64,
    pub scale: f64,
    /// Matrix `μ c(k̃₀) c(k₀)*` with symbol `μ z̄ Θ`.
    pub tto: TtoMatrix,
    /// `U (x ⊙ y) U* = tto.matrix`
    pub witness: UnitaryWitness,
    /// The pair `(μ c(k̃₀), c(k₀))` in the coordinates of `K_Θ`.
    pub kernel_pair: RankOnePair,
}

pub fn realize_as_tto(p: &RankOnePair, quad: Quadrature) -> Result<Realization> {
    let n = p.dimension();
    if n < 2 {
        return Err(Error::Precondition("dimension must be at least 2".into()));
    }
    let mu = p.norm_product();
    if mu <= COLINEAR_TOL {
        return Err(Error::Precondition("zero operator".into()));
    }
    if p.is_colinear() {
        return Err(Error::Precondition("x and y are colinear".into()));
    }
    let tau = p.pairing() / mu;
    let theta = kernel_angle_inner(tau, n)?;
    let dev = (theta.derivative_at(C64::new(0.0, 0.0))? - tau).norm();
    if dev > DERIVATIVE_TOL {
        return Err(Error::residual("Θ′(0) = τ", dev, DERIVATIVE_TOL));
    }
    let basis = Arc::new(ModelBasis::new(&theta, quad)?);
    let kp = kernel_pair(&theta, C64::new(0.0, 0.0))?;
    let k0 = CVector::from_vec(
        basis
            .eval_all(C64::new(0.0, 0.0))
            .into_iter()
            .map(|v| v.conj())
            .collect(),
    );
    let kt0 = basis.project(&kp.ktilde)?;
    let matrix = outer(&kt0, &k0) * C64::new(mu, 0.0);
    let symbol = CircleRational::from_blaschke(&theta)
        .mul(&CircleRational::z_pow(-1))
        .scale(C64::new(mu, 0.0));
    let tto = TtoMatrix::build_shared(basis, &symbol)?;
    let dev = (&tto.matrix - &matrix).norm();
    if dev > MATRIX_TOL {
        return Err(Error::residual("μ k̃₀ ⊙ k₀ against its symbol", dev, MATRIX_TOL));
    }
    let target = RankOnePair::new(kt0 * C64::new(mu, 0.0), k0)?;
    let witness = equivalence_witness(p, &target)
        .ok_or_else(|| Error::IllConditioned("kernel pair does not match the invariants".into()))?;
    Ok(Realization {
        theta,
        tau,
        scale: mu,
        tto,
        witness,
        kernel_pair: target,
    })
}

/// Both sides of the angle identity between `k₀` and `k̃₀`.
#[derive(Clone, Copy, Debug)]
pub struct KernelAngle {
    /// `|⟨k̃₀, k₀⟩| / (‖k₀‖ ‖k̃₀‖)`, by quadrature.
    pub cosine: f64,
    /// `|Θ′(0)| (1 − |Θ(0)|²)`
    pub product_form: f64,
    /// `|Θ′(0)| / (1 − |Θ(0)|²)`
    pub quotient_form: f64,
}

pub fn kernel_angle(theta: &BlaschkeProduct, quad: Quadrature) -> Result<KernelAngle> {
    let origin = C64::new(0.0, 0.0);
    let kp = kernel_pair(theta, origin)?;
    let ip = |f: &CircleRational, g: &CircleRational| quad.pairing(|z| f.evaluate(z), |z| g.evaluate(z));
    let cross = ip(&kp.ktilde, &kp.k)?;
    let nk = ip(&kp.k, &kp.k)?.re.sqrt();
    let nkt = ip(&kp.ktilde, &kp.ktilde)?.re.sqrt();
    let t0 = theta.evaluate(origin)?.norm_sqr();
    let d0 = theta.derivative_at(origin)?.norm();
    Ok(KernelAngle {
        cosine: cross.norm() / (nk * nkt),
        product_form: d0 * (1.0 - t0),
        quotient_form: d0 / (1.0 - t0),
    })
}

/// `A^B_ψ ⊗ R` against the TTO `A^{Θ∘B}_{ψ·(φ∘B)}`, `φ = μ z̄ Θ`, where
/// `R = x ⊙ y` is realized on `K_Θ`.
#[derive(Clone, Debug)]
pub struct TensorRankOneReport {
    pub realization: Realization,
    /// `T ω_B` against `ω_B (A^B_ψ ⊗ μ k̃₀ ⊙ k₀)`
    pub residual: ResidualReport,
    /// `W = ω_B (I ⊗ U)` with `W (A^B_ψ ⊗ R) W* = T`.
    pub witness: UnitaryWitness,
    pub tto: TtoMatrix,
}

pub fn tensor_rank_one(
    b: &BlaschkeProduct,
    psi: &CircleRational,
    p: &RankOnePair,
    quad: Quadrature,
) -> Result<TensorRankOneReport> {
    if p.is_selfadjoint() {
        return Err(Error::OpenQuestion(
            "R is selfadjoint; whether A_ψ ⊗ R is then equivalent to a TTO is not known".into(),
        ));
    }
    let neg = max_negative_fourier(|z| psi.evaluate(z), 1024);
    if neg > 1e-10 {
        return Err(Error::Precondition(format!("ψ has a coanalytic part of size {neg:e}")));
    }
    let realization = realize_as_tto(p, quad)?;
    let theta = &realization.theta;
    let omega = build_omega(b, theta, quad)?;
    let phi = realization.tto.symbol.clone();
    let tto = TtoMatrix::build_composed(omega.basis_composed().clone(), psi, &phi, b)?;
    let a_psi = TtoMatrix::build_shared(omega.basis_b().clone(), psi)?.matrix;
    let lhs = &tto.matrix * &omega.matrix;
    let rhs = &omega.matrix * kron(&a_psi, &realization.tto.matrix);
    let residual = ResidualReport::compare(&lhs, &rhs, vec![b.degree(), theta.degree()]);
    let d = b.degree();
    let w = &omega.matrix * kron(&CMatrix::identity(d, d), &realization.witness.unitary);
    let witness = UnitaryWitness::new(w, &kron(&a_psi, &p.matrix()), &tto.matrix, "ω_B (I ⊗ U)");
    Ok(TensorRankOneReport {
        realization,
        residual,
        witness,
        tto,
    })
}
