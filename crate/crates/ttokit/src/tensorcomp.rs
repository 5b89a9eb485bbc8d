//! The composition unitary `ω_B : K_B ⊗ K_Θ → K_{Θ∘B}`, `h ⊗ f ↦ h·(f∘B)`,
//! and the intertwining identities it satisfies.
//!
//! Tensor products are ordered B-major: the domain basis vector
//! `e_i^B ⊗ e_j^Θ` has index `i·deg Θ + j`, and every Kronecker product
//! `kron(X, Y)` takes `X` acting on `K_B` and `Y` acting on `K_Θ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::blaschke::{compose, BlaschkeProduct};
use crate::directsum::{unitary_equiv_check, EquivVerdict, UnitaryWitness};
use crate::error::{Error, Result};
use crate::linalg::{self, kron};
use crate::modelspace::{ModelBasis, Quadrature};
use crate::symbols::CircleRational;
use crate::tto::TtoMatrix;
use crate::{CMatrix, CVector, C64};

const CONTAINMENT_TOL: f64 = 1e-9;
const UNITARY_TOL: f64 = 1e-9;
const BAND_TOL: f64 = 1e-9;
const MEMBERSHIP_TOL: f64 = 1e-9;
const VANISH_TOL: f64 = 1e-10;

/// Default band for `ψ ∈ ⊕_j B^j K_B`.
pub const DEFAULT_BAND: (i32, i32) = (-3, 3);

/// Matrix of `ω_B` from the B-major basis of `K_B ⊗ K_Θ` to the basis of `K_{Θ∘B}`.
#[derive(Clone, Debug)]
pub struct OmegaMatrix {
    pub matrix: CMatrix,
    pub b: BlaschkeProduct,
    pub theta: BlaschkeProduct,
    pub composed: BlaschkeProduct,
    /// Largest norm of the part of `e_i^B·(e_j^Θ∘B)` outside `K_{Θ∘B}`.
    pub containment_residual: f64,
    /// `‖M*M − I‖_F`
    pub unitarity_residual: f64,
    basis_b: Arc<ModelBasis>,
    basis_theta: Arc<ModelBasis>,
    basis_composed: Arc<ModelBasis>,
}

impl OmegaMatrix {
    pub fn basis_b(&self) -> &Arc<ModelBasis> {
        &self.basis_b
    }

    pub fn basis_theta(&self) -> &Arc<ModelBasis> {
        &self.basis_theta
    }

    pub fn basis_composed(&self) -> &Arc<ModelBasis> {
        &self.basis_composed
    }

    /// Conjugates an operator on `K_B ⊗ K_Θ` into `K_{Θ∘B}`: `ω X ω*`.
    pub fn push_forward(&self, x: &CMatrix) -> CMatrix {
        &self.matrix * x * self.matrix.adjoint()
    }

    /// Largest norm of `P_{Θ∘B}(e_i^B·(Θ∘B)·(e_j^Θ∘B)·B^k)` for `k = 0, 1`.
    /// Vanishing certifies `ω_B(K_B ⊗ ΘH²) ⊆ (Θ∘B)H²` on these test vectors.
    pub fn range_residual(&self) -> Result<f64> {
        let (db, dt) = (self.basis_b.dim(), self.basis_theta.dim());
        let mut worst: f64 = 0.0;
        for k in 0..2 {
            let v = self.basis_composed.quadrature().integrate(|pts| {
                let e_out = self.basis_composed.sample(pts);
                let f = self.sample_products(pts, |z, bz| self.composed.eval_unchecked(z) * bz.powi(k));
                (e_out.adjoint() * f / C64::new(pts.len() as f64, 0.0))
                    .iter()
                    .copied()
                    .collect()
            })?;
            let m = CMatrix::from_column_slice(self.basis_composed.dim(), db * dt, &v);
            worst = worst.max(m.norm());
        }
        Ok(worst)
    }

    /// `N × (deg B · deg Θ)` samples of `e_i^B(z) · e_j^Θ(B(z)) · extra(z, B(z))`.
    fn sample_products(&self, pts: &[C64], extra: impl Fn(C64, C64) -> C64) -> CMatrix {
        let (db, dt) = (self.basis_b.dim(), self.basis_theta.dim());
        let mut f = CMatrix::zeros(pts.len(), db * dt);
        for (t, &z) in pts.iter().enumerate() {
            let bz = self.b.eval_unchecked(z);
            let eb = self.basis_b.eval_all(z);
            let et = self.basis_theta.eval_all(bz);
            let w = extra(z, bz);
            for i in 0..db {
                for j in 0..dt {
                    f[(t, i * dt + j)] = eb[i] * et[j] * w;
                }
            }
        }
        f
    }
}

/// Builds `ω_B` column by column: column `(i, j)` holds the coefficients of
/// `e_i^B · (e_j^Θ ∘ B)` in the basis of `K_{Θ∘B}`. Fails when any product
/// leaves `K_{Θ∘B}` by more than `1e-9` or the result is not unitary.
pub fn build_omega(b: &BlaschkeProduct, theta: &BlaschkeProduct, quad: Quadrature) -> Result<OmegaMatrix> {
    if b.degree() == 0 || theta.degree() == 0 {
        return Err(Error::Precondition("ω_B needs deg B ≥ 1 and deg Θ ≥ 1".into()));
    }
    let composed = compose(theta, b)?;
    let basis_b = Arc::new(ModelBasis::new(b, quad)?);
    let basis_theta = Arc::new(ModelBasis::new(theta, quad)?);
    let basis_composed = Arc::new(ModelBasis::new(&composed, quad)?);
    let n = composed.degree();
    let mut omega = OmegaMatrix {
        matrix: CMatrix::zeros(n, n),
        b: b.clone(),
        theta: theta.clone(),
        composed,
        containment_residual: 0.0,
        unitarity_residual: 0.0,
        basis_b,
        basis_theta,
        basis_composed,
    };
    let coeffs = quad.integrate(|pts| {
        let e_out = omega.basis_composed.sample(pts);
        let f = omega.sample_products(pts, |_, _| C64::new(1.0, 0.0));
        (e_out.adjoint() * f / C64::new(pts.len() as f64, 0.0))
            .iter()
            .copied()
            .collect()
    })?;
    omega.matrix = CMatrix::from_column_slice(n, n, &coeffs);
    // remainder norms, sampled directly
    let rem = quad.integrate(|pts| {
        let e_out = omega.basis_composed.sample(pts);
        let f = omega.sample_products(pts, |_, _| C64::new(1.0, 0.0));
        let diff = f - e_out * &omega.matrix;
        (0..n)
            .map(|c| C64::new(diff.column(c).norm_squared() / pts.len() as f64, 0.0))
            .collect()
    })?;
    omega.containment_residual = rem.iter().map(|v| v.re.max(0.0).sqrt()).fold(0.0, f64::max);
    omega.unitarity_residual = linalg::unitarity_residual(&omega.matrix);
    if omega.containment_residual > CONTAINMENT_TOL {
        return Err(Error::residual(
            "containment of e_i^B (e_j^Θ ∘ B) in K_{Θ∘B}",
            omega.containment_residual,
            CONTAINMENT_TOL,
        ));
    }
    if omega.unitarity_residual > UNITARY_TOL {
        return Err(Error::residual(
            "unitarity of ω_B",
            omega.unitarity_residual,
            UNITARY_TOL,
        ));
    }
    Ok(omega)
}

/// `‖L − R‖_F` and its size relative to the operators compared.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ResidualReport {
    pub residual_abs: f64,
    pub residual_rel: f64,
    pub dims: Vec<usize>,
}

impl ResidualReport {
    /// Relative residual divides by `max(‖L‖, ‖R‖)`; when both vanish it is the absolute one.
    pub fn compare(lhs: &CMatrix, rhs: &CMatrix, dims: Vec<usize>) -> Self {
        let abs = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel = if scale > 1e-12 { abs / scale } else { abs };
        ResidualReport {
            residual_abs: abs,
            residual_rel: rel,
            dims,
        }
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.residual_rel <= tolerance
    }
}

/// Components `ψ_j ∈ K_B` of `ψ = Σ_j B^j ψ_j` over a finite band.
#[derive(Clone, Debug)]
pub struct PsiDecomposition {
    /// Coefficient vectors in the basis of `K_B`; zero components are omitted.
    pub components: BTreeMap<i32, CVector>,
    /// `‖ψ − Σ_j B^j ψ_j‖₂`
    pub residual: f64,
}

/// Splits `ψ` along `L² = ⊕_j B^j K_B`, keeping `jmin ≤ j ≤ jmax`.
/// Fails when the band does not reconstruct `ψ` to within `1e-9`.
pub fn decompose_psi(psi: &CircleRational, basis_b: &ModelBasis, jmin: i32, jmax: i32) -> Result<PsiDecomposition> {
    let d = decompose_unchecked(psi, basis_b, jmin, jmax)?;
    if d.residual > BAND_TOL {
        return Err(Error::residual(
            format!("ψ outside the band {jmin}..={jmax} of B^j K_B"),
            d.residual,
            BAND_TOL,
        ));
    }
    Ok(d)
}

fn decompose_unchecked(psi: &CircleRational, basis_b: &ModelBasis, jmin: i32, jmax: i32) -> Result<PsiDecomposition> {
    if jmin > jmax {
        return Err(Error::Invalid(format!("empty band {jmin}..={jmax}")));
    }
    let b = basis_b.theta();
    let mut components = BTreeMap::new();
    for j in jmin..=jmax {
        let c = basis_b.project_fn(|z| b.eval_unchecked(z).powi(-j) * psi.evaluate(z))?;
        if c.norm() > 1e-13 {
            components.insert(j, c);
        }
    }
    let residual = basis_b.quadrature().integrate(|pts| {
        let s: f64 = pts
            .iter()
            .map(|&z| {
                let bz = b.eval_unchecked(z);
                let e = basis_b.eval_all(z);
                let rec: C64 = components
                    .iter()
                    .map(|(j, c)| {
                        let part: C64 = e.iter().zip(c.iter()).map(|(x, y)| x * y).sum();
                        part * bz.powi(*j)
                    })
                    .sum();
                (psi.evaluate(z) - rec).norm_sqr()
            })
            .sum();
        vec![C64::new(s / pts.len() as f64, 0.0)]
    })?[0]
        .re
        .max(0.0)
        .sqrt();
    Ok(PsiDecomposition { components, residual })
}

/// `A^B_{B̄^j ψ}`
fn band_operator(basis_b: &Arc<ModelBasis>, psi: &CircleRational, j: i32) -> Result<CMatrix> {
    let b = basis_b.theta();
    let sym = CircleRational::blaschke_power(b, -j).mul(psi);
    let f = |z: C64| b.eval_unchecked(z).powi(-j) * psi.evaluate(z);
    Ok(TtoMatrix::from_pointwise(basis_b.clone(), sym, f)?.matrix)
}

/// Checks the band hypothesis for the intertwining identity: either `ψ`
/// decomposes over the band, or the operators `A^B_{B̄^j ψ}` vanish on two
/// guard indices on each side of the summation range.
fn check_band(psi: &CircleRational, basis_b: &Arc<ModelBasis>, jmin: i32, jmax: i32) -> Result<()> {
    let d = decompose_unchecked(psi, basis_b, jmin, jmax)?;
    if d.residual <= BAND_TOL {
        return Ok(());
    }
    for j in [jmin - 2, jmin - 1, jmax + 2, jmax + 3] {
        let m = band_operator(basis_b, psi, j)?;
        if m.norm() > VANISH_TOL {
            return Err(Error::residual(
                format!("ψ outside the band {jmin}..={jmax} of B^j K_B"),
                d.residual,
                BAND_TOL,
            ));
        }
    }
    Ok(())
}

/// `Σ_{j=jmin}^{jmax+1} A^B_{B̄^j ψ} ⊗ A^Θ_{z^j φ}` on `K_B ⊗ K_Θ`.
pub fn band_sum(omega: &OmegaMatrix, psi: &CircleRational, phi: &CircleRational, jband: (i32, i32)) -> Result<CMatrix> {
    let (db, dt) = (omega.basis_b.dim(), omega.basis_theta.dim());
    let mut sum = CMatrix::zeros(db * dt, db * dt);
    for j in jband.0..=jband.1 + 1 {
        let left = band_operator(&omega.basis_b, psi, j)?;
        if left.norm() <= 1e-14 {
            continue;
        }
        let zj = CircleRational::z_pow(j).mul(phi);
        let right = TtoMatrix::build_shared(omega.basis_theta.clone(), &zj)?.matrix;
        sum += kron(&left, &right);
    }
    Ok(sum)
}

/// Checks `A^{Θ∘B}_{ψ(φ∘B)} ω_B = ω_B Σ_j (A^B_{B̄^j ψ} ⊗ A^Θ_{z^j φ})`.
pub fn verify_main_theorem(
    b: &BlaschkeProduct,
    theta: &BlaschkeProduct,
    psi: &CircleRational,
    phi: &CircleRational,
    jband: (i32, i32),
    quad: Quadrature,
) -> Result<ResidualReport> {
    let omega = build_omega(b, theta, quad)?;
    verify_main_with(&omega, psi, phi, jband)
}

pub fn verify_main_with(
    omega: &OmegaMatrix,
    psi: &CircleRational,
    phi: &CircleRational,
    jband: (i32, i32),
) -> Result<ResidualReport> {
    psi.validate()?;
    phi.validate()?;
    check_band(psi, &omega.basis_b, jband.0, jband.1)?;
    let big = TtoMatrix::build_composed(omega.basis_composed.clone(), psi, phi, &omega.b)?;
    let lhs = &big.matrix * &omega.matrix;
    let rhs = &omega.matrix * band_sum(omega, psi, phi, jband)?;
    Ok(ResidualReport::compare(
        &lhs,
        &rhs,
        vec![omega.b.degree(), omega.theta.degree()],
    ))
}

/// Outcome of the inflation check `A^{Θ∘B}_{φ∘B} ≅ I_{deg B} ⊗ A^Θ_φ`.
#[derive(Clone, Debug, Serialize)]
pub struct InflationReport {
    pub residual: ResidualReport,
    /// Matching distance between the spectrum of `A^{Θ∘B}_{φ∘B}` and `deg B` copies of that of `A^Θ_φ`.
    pub spectral_distance: f64,
}

pub fn verify_inflation(
    b: &BlaschkeProduct,
    theta: &BlaschkeProduct,
    phi: &CircleRational,
    quad: Quadrature,
) -> Result<InflationReport> {
    let omega = build_omega(b, theta, quad)?;
    inflation_with(&omega, phi)
}

pub fn inflation_with(omega: &OmegaMatrix, phi: &CircleRational) -> Result<InflationReport> {
    phi.validate()?;
    let one = CircleRational::one();
    let big = TtoMatrix::build_composed(omega.basis_composed.clone(), &one, phi, &omega.b)?;
    let small = TtoMatrix::build_shared(omega.basis_theta.clone(), phi)?;
    let k = omega.b.degree();
    let lhs = &big.matrix * &omega.matrix;
    let rhs = &omega.matrix * kron(&CMatrix::identity(k, k), &small.matrix);
    let residual = ResidualReport::compare(&lhs, &rhs, vec![k, omega.theta.degree()]);
    let big_ev = eigenvalues(&big.matrix)?;
    let small_ev = eigenvalues(&small.matrix)?;
    let copies: Vec<C64> = (0..k).flat_map(|_| small_ev.iter().copied()).collect();
    Ok(InflationReport {
        residual,
        spectral_distance: linalg::multiset_distance(&big_ev, &copies),
    })
}

fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    linalg::eigenvalues(m).ok_or_else(|| Error::IllConditioned("Schur iteration did not converge".into()))
}

/// Equivalence of `A^{Θ∘B₁}_{φ∘B₁}` and `A^{Θ∘B₂}_{φ∘B₂}` for `deg B₁ = deg B₂`.
#[derive(Clone, Debug)]
pub struct SameOrderReport {
    /// `W = ω₂ ω₁*`, with `W T₁ W* = T₂`.
    pub witness: UnitaryWitness,
    pub residual: ResidualReport,
    pub spectral_distance: f64,
    pub verdict: EquivVerdict,
}

pub fn verify_same_order(
    theta: &BlaschkeProduct,
    phi: &CircleRational,
    b1: &BlaschkeProduct,
    b2: &BlaschkeProduct,
    quad: Quadrature,
    max_word_len: usize,
) -> Result<SameOrderReport> {
    if b1.degree() != b2.degree() {
        return Err(Error::Precondition(format!(
            "inner functions of different order: {} and {}",
            b1.degree(),
            b2.degree()
        )));
    }
    let w1 = build_omega(b1, theta, quad)?;
    let w2 = build_omega(b2, theta, quad)?;
    let one = CircleRational::one();
    let t1 = TtoMatrix::build_composed(w1.basis_composed.clone(), &one, phi, b1)?.matrix;
    let t2 = TtoMatrix::build_composed(w2.basis_composed.clone(), &one, phi, b2)?.matrix;
    let w = &w2.matrix * w1.matrix.adjoint();
    let witness = UnitaryWitness::new(w, &t1, &t2, "ω_{B2} ω_{B1}*");
    let residual = ResidualReport::compare(
        &(&witness.unitary * &t1 * witness.unitary.adjoint()),
        &t2,
        vec![b1.degree(), theta.degree()],
    );
    let spectral_distance = linalg::multiset_distance(&eigenvalues(&t1)?, &eigenvalues(&t2)?);
    let verdict = unitary_equiv_check(&t1, &t2, max_word_len);
    Ok(SameOrderReport {
        witness,
        residual,
        spectral_distance,
        verdict,
    })
}

/// A TTO, the block operator matrix it is claimed to be equivalent to, and
/// the residual of the intertwining under `ω`.
#[derive(Clone, Debug)]
pub struct BlockReport {
    pub tto: TtoMatrix,
    /// Block matrix in the summand-major order of `⊕ K`.
    pub block: CMatrix,
    pub residual: ResidualReport,
}

/// `B = z^n`, `h = Σ_{m<n} z^m (φ_m ∘ z^n)`. The `(p, q)` block of the
/// comparison matrix is `A^Θ_{φ_{p−q}}` for `p ≥ q` and `A^Θ_{z φ_{n+p−q}}` otherwise.
pub fn block_toeplitz_4_1(
    theta: &BlaschkeProduct,
    n: usize,
    phis: &[CircleRational],
    quad: Quadrature,
) -> Result<BlockReport> {
    if n == 0 || phis.len() != n {
        return Err(Error::Invalid(format!(
            "need n ≥ 1 symbols, got n = {n} and {}",
            phis.len()
        )));
    }
    let zn = BlaschkeProduct::monomial(n);
    let omega = build_omega(&zn, theta, quad)?;
    let mut h = CircleRational::zero();
    for (m, phi) in phis.iter().enumerate() {
        phi.validate()?;
        h = h.add(&CircleRational::z_pow(m as i32).mul(&phi.compose_blaschke(&zn)?));
    }
    let tto = TtoMatrix::from_pointwise(omega.basis_composed.clone(), h, |z| {
        let zn = z.powu(n as u32);
        phis.iter()
            .enumerate()
            .map(|(m, phi)| z.powu(m as u32) * phi.evaluate(zn))
            .sum()
    })?;
    let d = theta.degree();
    let mut blocks: Vec<CMatrix> = Vec::with_capacity(2 * n);
    for phi in phis {
        blocks.push(TtoMatrix::build_shared(omega.basis_theta.clone(), phi)?.matrix);
    }
    let mut upper: Vec<CMatrix> = Vec::with_capacity(n);
    for phi in phis {
        let zphi = CircleRational::z_pow(1).mul(phi);
        upper.push(TtoMatrix::build_shared(omega.basis_theta.clone(), &zphi)?.matrix);
    }
    let mut block = CMatrix::zeros(n * d, n * d);
    for p in 0..n {
        for q in 0..n {
            let src = if p >= q { &blocks[p - q] } else { &upper[n + p - q] };
            block.view_mut((p * d, q * d), (d, d)).copy_from(src);
        }
    }
    // the B-major order of K_{z^n} ⊗ K_Θ is already the summand order
    let residual = ResidualReport::compare(&(&tto.matrix * &omega.matrix), &(&omega.matrix * &block), vec![n, d]);
    Ok(BlockReport { tto, block, residual })
}

/// `ψ ∈ K_B ⊕ ℂ`: the remainder after projecting onto `K_B` and onto `B`
/// (which spans the part of the constants orthogonal to `K_B`).
fn check_kb_or_constant(psi: &CircleRational, basis_b: &ModelBasis) -> Result<()> {
    let b = basis_b.theta();
    let c = basis_b.project(psi)?;
    let beta = basis_b
        .quadrature()
        .pairing(|z| psi.evaluate(z), |z| b.eval_unchecked(z))?;
    let f = |z: C64| {
        let rec: C64 = basis_b.eval_all(z).iter().zip(c.iter()).map(|(e, x)| e * x).sum();
        psi.evaluate(z) - rec - beta * b.eval_unchecked(z)
    };
    let r = basis_b.quadrature().pairing(f, f)?.re.max(0.0).sqrt();
    if r > MEMBERSHIP_TOL {
        return Err(Error::residual(
            "block symbol outside K_B + constants",
            r,
            MEMBERSHIP_TOL,
        ));
    }
    Ok(())
}

/// `Θ = z^n`, `h = Σ_{m=−n}^{n−1} ψ_m B^m`. The `(p, q)` block is
/// `A^B_{ψ_{p−q} + B̄ ψ_{p−q−1}}`; missing `ψ_m` are zero.
pub fn block_toeplitz_4_2(
    b: &BlaschkeProduct,
    n: usize,
    psis: &BTreeMap<i32, CircleRational>,
    quad: Quadrature,
) -> Result<BlockReport> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let lo = -(n as i32);
    let hi = n as i32 - 1;
    if let Some(m) = psis.keys().find(|m| **m < lo || **m > hi) {
        return Err(Error::Invalid(format!("index {m} outside {lo}..={hi}")));
    }
    let theta = BlaschkeProduct::monomial(n);
    let omega = build_omega(b, &theta, quad)?;
    for psi in psis.values() {
        psi.validate()?;
        check_kb_or_constant(psi, &omega.basis_b)?;
    }
    let mut h = CircleRational::zero();
    for (m, psi) in psis {
        h = h.add(&psi.mul(&CircleRational::blaschke_power(b, *m)));
    }
    let tto = TtoMatrix::from_pointwise(omega.basis_composed.clone(), h, |z| {
        let bz = b.eval_unchecked(z);
        psis.iter().map(|(m, psi)| psi.evaluate(z) * bz.powi(*m)).sum()
    })?;
    let d = b.degree();
    let zero = CircleRational::zero();
    let get = |m: i32| psis.get(&m).unwrap_or(&zero);
    let bbar = CircleRational::blaschke_power(b, -1);
    let mut block = CMatrix::zeros(n * d, n * d);
    for p in 0..n as i32 {
        for q in 0..n as i32 {
            let (now, prev) = (get(p - q), get(p - q - 1));
            let sym = now.add(&bbar.mul(prev));
            let m = TtoMatrix::from_pointwise(omega.basis_b.clone(), sym, |z| {
                now.evaluate(z) + prev.evaluate(z) / b.eval_unchecked(z)
            })?
            .matrix;
            block.view_mut((p as usize * d, q as usize * d), (d, d)).copy_from(&m);
        }
    }
    // summand-major (p, i) to B-major (i, p)
    let perm = linalg::commutation(n, d);
    let reindexed = &perm * &block * perm.transpose();
    let residual = ResidualReport::compare(&(&tto.matrix * &omega.matrix), &(&omega.matrix * reindexed), vec![d, n]);
    Ok(BlockReport { tto, block, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn q() -> Quadrature {
        Quadrature::default()
    }

    #[test]
    fn omega_monomials_is_permutation() {
        let om = build_omega(&BlaschkeProduct::monomial(2), &BlaschkeProduct::monomial(2), q()).unwrap();
        // z^i ⊗ z^j ↦ z^{i+2j}, column index i·2 + j
        for i in 0..2 {
            for j in 0..2 {
                let col = i * 2 + j;
                for row in 0..4 {
                    let want = if row == i + 2 * j { 1.0 } else { 0.0 };
                    assert!((om.matrix[(row, col)] - c(want, 0.0)).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn omega_identity_b() {
        let theta = BlaschkeProduct::from_zeros(vec![c(0.3, 0.1), c(-0.5, 0.2)]).unwrap();
        let om = build_omega(&BlaschkeProduct::monomial(1), &theta, q()).unwrap();
        assert!((om.matrix.clone() - CMatrix::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn omega_mobius_is_unitary() {
        let b = BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap();
        let om = build_omega(&b, &BlaschkeProduct::monomial(2), q()).unwrap();
        assert!(om.unitarity_residual < 1e-10);
        assert!(om.range_residual().unwrap() < 1e-9);
    }

    #[test]
    fn psi_band_examples() {
        let basis = ModelBasis::new(&BlaschkeProduct::monomial(2), q()).unwrap();
        let d = decompose_psi(&CircleRational::one(), &basis, -3, 3).unwrap();
        assert_eq!(d.components.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert!((d.components[&0].clone() - CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])).norm() < 1e-13);
        let psi = CircleRational::z_pow(1).add(&CircleRational::z_pow(3));
        let d = decompose_psi(&psi, &basis, -3, 3).unwrap();
        assert_eq!(d.components.keys().copied().collect::<Vec<_>>(), vec![0, 1]);
        assert!((d.components[&1][1] - c(1.0, 0.0)).norm() < 1e-13);
        assert!(decompose_psi(&CircleRational::z_pow(9), &basis, -3, 3).is_err());
    }

    #[test]
    fn main_theorem_examples() {
        let mob = BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap();
        let z2 = BlaschkeProduct::monomial(2);
        let r = verify_main_theorem(
            &mob,
            &z2,
            &CircleRational::one(),
            &CircleRational::z_pow(1),
            DEFAULT_BAND,
            q(),
        )
        .unwrap();
        assert!(r.residual_rel < 1e-8, "{r:?}");
        let phi = CircleRational::laurent(&BTreeMap::from([(-1, c(1.0, 0.0)), (0, c(2.0, 0.0)), (1, c(1.0, 0.0))]));
        let psi = CircleRational::polynomial(crate::poly::Poly::new(vec![c(1.0, 0.0), c(0.5, -1.0)]));
        let r = verify_main_theorem(&z2, &z2, &psi, &phi, (0, 0), q()).unwrap();
        assert!(r.residual_rel < 1e-8, "{r:?}");
    }

    #[test]
    fn inflation_monomial() {
        let z2 = BlaschkeProduct::monomial(2);
        let r = verify_inflation(&z2, &z2, &CircleRational::z_pow(1), q()).unwrap();
        assert!(r.residual.residual_abs < 1e-10);
    }

    #[test]
    fn first_block_family_n1_is_plain_tto() {
        let theta = BlaschkeProduct::from_zeros(vec![c(0.2, 0.0), c(0.0, 0.4)]).unwrap();
        let phi = CircleRational::z_pow(-1).add(&CircleRational::z_pow(1));
        let r = block_toeplitz_4_1(&theta, 1, &[phi], q()).unwrap();
        assert!((r.tto.matrix.clone() - r.block.clone()).norm() < 1e-12);
        assert!(r.residual.residual_rel < 1e-8);
    }

    #[test]
    fn second_block_family_constant_symbols() {
        let b = BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap();
        let psis = BTreeMap::from([
            (-1, CircleRational::constant(c(2.0, 0.0))),
            (0, CircleRational::constant(c(1.0, 0.0))),
            (1, CircleRational::constant(c(3.0, 0.0))),
        ]);
        let r = block_toeplitz_4_2(&b, 2, &psis, q()).unwrap();
        assert!(r.residual.residual_rel < 1e-8);
        let a = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)]);
        assert!((r.block - kron(&a, &CMatrix::identity(1, 1))).norm() < 1e-9);
    }

    #[test]
    fn second_block_family_rejects_non_members() {
        let b = BlaschkeProduct::monomial(2);
        let psis = BTreeMap::from([(0, CircleRational::z_pow(3))]);
        assert!(block_toeplitz_4_2(&b, 2, &psis, q()).is_err());
    }
}
