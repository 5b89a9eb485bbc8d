//! Direct sums with zero that are again truncated Toeplitz operators, the
//! kernel of an analytic TTO, and a generic unitary-equivalence checker.

use std::sync::Arc;

use serde::Serialize;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::linalg::{self, commutation, complete_frame, direct_sum, kron, outer};
use crate::modelspace::{kernel_pair, max_negative_fourier, ModelBasis, Quadrature};
use crate::symbols::CircleRational;
use crate::tensorcomp::build_omega;
use crate::tto::TtoMatrix;
use crate::{CMatrix, CVector, C64};

const IDENTITY_TOL: f64 = 1e-9;
const KERNEL_SV: f64 = 1e-9;
const KERNEL_GAP: f64 = 1e-6;
const SUBSPACE_TOL: f64 = 1e-8;
const FOURIER_TOL: f64 = 1e-9;
const FOURIER_NODES: usize = 1024;
const ANALYTIC_TOL: f64 = 1e-10;
const NILPOTENT_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-8;
const INDEPENDENCE_TOL: f64 = 1e-7;
/// New directions shorter than this are rounding noise; generators have norm ≤ 1.
const INDEPENDENCE_FLOOR: f64 = 1e-10;

/// Unitary `U` with the claim `U A U* = B`.
#[derive(Clone, Debug, Serialize)]
pub struct UnitaryWitness {
    #[serde(skip)]
    pub unitary: CMatrix,
    /// `‖U A U* − B‖_F`
    pub residual: f64,
    /// `‖U*U − I‖_F`
    pub unitarity_residual: f64,
    pub description: String,
}

impl UnitaryWitness {
    pub fn new(unitary: CMatrix, a: &CMatrix, b: &CMatrix, description: impl Into<String>) -> Self {
        let residual = (&unitary * a * unitary.adjoint() - b).norm();
        UnitaryWitness {
            unitarity_residual: linalg::unitarity_residual(&unitary),
            unitary,
            residual,
            description: description.into(),
        }
    }

    /// Residual relative to `max(‖A‖, ‖B‖)`, or absolute when both vanish.
    pub fn relative_residual(&self, a: &CMatrix, b: &CMatrix) -> f64 {
        let scale = a.norm().max(b.norm());
        if scale > 1e-12 {
            self.residual / scale
        } else {
            self.residual
        }
    }
}

fn require_unimodular(zeta: C64) -> Result<()> {
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!("ζ = {zeta} is not on the unit circle")));
    }
    Ok(())
}

/// `φ = k_ζ + conj(k_ζ) − 1 + Θ(ζ) conj(Θ)`, a symbol of `k_ζ ⊙ k_ζ` with
/// `A_{zφ} = ζ k_ζ ⊙ k_ζ`.
pub fn boundary_symbol(theta: &BlaschkeProduct, zeta: C64) -> Result<CircleRational> {
    require_unimodular(zeta)?;
    let kp = kernel_pair(theta, zeta)?;
    let t_zeta = theta.evaluate(zeta)?;
    Ok(kp
        .k
        .add(&kp.k.circle_conjugate())
        .sub(&CircleRational::one())
        .add(&CircleRational::blaschke_power(theta, -1).scale(t_zeta)))
}

/// Largest pointwise deviation on `samples` circle points of
/// `φ − ζ̄ z φ = −conj(Θ(ζ)) Θ + Θ(ζ) conj(Θ)`.
pub fn boundary_symbol_identity(theta: &BlaschkeProduct, zeta: C64, samples: usize) -> Result<f64> {
    let phi = boundary_symbol(theta, zeta)?;
    let t_zeta = theta.evaluate(zeta)?;
    let mut worst: f64 = 0.0;
    for z in crate::modelspace::nodes(samples) {
        let z = z * C64::from_polar(1.0, 0.1234);
        let th = theta.evaluate(z)?;
        let lhs = phi.evaluate(z) - zeta.conj() * z * phi.evaluate(z);
        let rhs = -t_zeta.conj() * th + t_zeta * th.conj();
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Closed form `½(ζ̄² z̄² + ζ̄ z̄ + 1 + ζ z)` quoted for `Θ = z²`. It gives the
/// same operator as `½ boundary_symbol(z², ζ̄)`, so it matches at `ζ` only for real `ζ`.
pub fn quadratic_special_symbol(zeta: C64) -> CircleRational {
    let zb = zeta.conj();
    CircleRational::laurent(&std::collections::BTreeMap::from([
        (-2, zb * zb * 0.5),
        (-1, zb * 0.5),
        (0, C64::new(0.5, 0.0)),
        (1, zeta * 0.5),
    ]))
}

/// Output of the direct-sum construction for `A^B_{ψ + ζ B̄ ψ} ⊕ 0_{n·deg B}`.
#[derive(Clone, Debug)]
pub struct DirectSumReport {
    /// The TTO on `K_{Θ∘B}` with symbol `ψ (φ∘B)/‖k_ζ‖²`.
    pub tto: TtoMatrix,
    /// `A^B_{ψ + ζ B̄ ψ} ⊕ 0`
    pub target: CMatrix,
    /// `W T W* = target`
    pub witness: UnitaryWitness,
    pub theta: BlaschkeProduct,
    /// Symbol `φ` on `K_Θ`.
    pub phi: CircleRational,
    /// `max(‖A_φ − k⊙k‖, ‖ζ̄ A_{zφ} − k⊙k‖)`
    pub kernel_identity_residual: f64,
}

/// Realizes `A^B_{ψ + ζ B̄ ψ} ⊕ 0_{n·deg B}` as a TTO on `K_{Θ∘B}` with an
/// explicit witness `W = P (I ⊗ V) ω_B*`, where `V` rotates the normalized
/// kernel `k_ζ` to the first basis vector and `P` reorders `K_B ⊗ K_Θ` to
/// `K_Θ ⊗ K_B`. `Θ` defaults to `z^{n+1}`; a supplied `Θ` must have degree `n + 1`.
pub fn theorem_5_1(
    b: &BlaschkeProduct,
    psi: &CircleRational,
    zeta: C64,
    n: usize,
    theta: Option<&BlaschkeProduct>,
    quad: Quadrature,
) -> Result<DirectSumReport> {
    require_unimodular(zeta)?;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let theta = match theta {
        Some(t) if t.degree() != n + 1 => {
            return Err(Error::Precondition(format!(
                "Θ must have degree {}, got {}",
                n + 1,
                t.degree()
            )))
        }
        Some(t) => t.clone(),
        None => BlaschkeProduct::monomial(n + 1),
    };
    let omega = build_omega(b, &theta, quad)?;
    omega.basis_b().require_member(psi)?;
    let basis_t = omega.basis_theta().clone();

    let phi = boundary_symbol(&theta, zeta)?;
    let kvec = CVector::from_vec(basis_t.eval_all(zeta).into_iter().map(|v| v.conj()).collect());
    let kk = outer(&kvec, &kvec);
    let a_phi = TtoMatrix::build_shared(basis_t.clone(), &phi)?.matrix;
    let a_zphi = TtoMatrix::build_shared(basis_t.clone(), &CircleRational::z_pow(1).mul(&phi))?.matrix;
    let kernel_identity_residual = (&a_phi - &kk).norm().max((a_zphi * zeta.conj() - &kk).norm());
    if kernel_identity_residual > IDENTITY_TOL {
        return Err(Error::residual(
            "A_φ = ζ̄ A_{zφ} = k_ζ ⊙ k_ζ",
            kernel_identity_residual,
            IDENTITY_TOL,
        ));
    }

    let knorm2 = kvec.norm_squared();
    let scaled = psi.scale(C64::new(1.0 / knorm2, 0.0));
    let tto = TtoMatrix::build_composed(omega.basis_composed().clone(), &scaled, &phi, b)?;

    let g_symbol = psi.add(&CircleRational::blaschke_power(b, -1).mul(psi).scale(zeta));
    let g = TtoMatrix::from_pointwise(omega.basis_b().clone(), g_symbol, |z| {
        psi.evaluate(z) * (C64::new(1.0, 0.0) + zeta / b.eval_unchecked(z))
    })?
    .matrix;
    let d = b.degree();
    let target = direct_sum(&g, &CMatrix::zeros(n * d, n * d));

    let v = kvec / C64::new(knorm2.sqrt(), 0.0);
    let rot = complete_frame(&[v], n + 1).adjoint();
    let w = commutation(d, n + 1) * kron(&CMatrix::identity(d, d), &rot) * omega.matrix.adjoint();
    let witness = UnitaryWitness::new(w, &tto.matrix, &target, "P (I ⊗ V) ω_B*");
    Ok(DirectSumReport {
        tto,
        target,
        witness,
        theta,
        phi,
        kernel_identity_residual,
    })
}

/// `K_Θ ⊖ ker A^Θ_φ = K_u` for analytic `φ`, with the divisibility checks.
#[derive(Clone, Debug)]
pub struct KernelDecomposition {
    pub u: BlaschkeProduct,
    pub kernel_dim: usize,
    /// Orthonormal kernel basis, columns in the coordinates of `K_Θ`.
    pub kernel: CMatrix,
    /// Coefficients of the basis of `K_u` in the coordinates of `K_Θ`.
    pub ku_coords: CMatrix,
    /// `‖P_{K_u} − P_{ker^⊥}‖_F`
    pub projection_residual: f64,
    /// Largest negative Fourier coefficient of `uφ Θ̄`; small means `Θ | uφ`.
    pub divisibility_residual: f64,
    /// `u | Θ`, true by construction from the divisor list.
    pub u_divides_theta: bool,
    pub singular_values: Vec<f64>,
}

fn require_analytic(phi: &CircleRational) -> Result<()> {
    let neg = max_negative_fourier(|z| phi.evaluate(z), FOURIER_NODES);
    if neg > ANALYTIC_TOL {
        return Err(Error::Precondition(format!(
            "symbol has a coanalytic part of size {neg:e}"
        )));
    }
    Ok(())
}

/// Finds the divisor `u` of `Θ` with `K_Θ ⊖ ker A^Θ_φ = K_u`.
pub fn kernel_decompose(
    theta: &BlaschkeProduct,
    phi: &CircleRational,
    quad: Quadrature,
) -> Result<KernelDecomposition> {
    require_analytic(phi)?;
    let basis = Arc::new(ModelBasis::new(theta, quad)?);
    let a = TtoMatrix::build_shared(basis.clone(), phi)?.matrix;
    kernel_decompose_matrix(&basis, phi, &a)
}

fn kernel_decompose_matrix(basis: &Arc<ModelBasis>, phi: &CircleRational, a: &CMatrix) -> Result<KernelDecomposition> {
    let theta = basis.theta();
    let n = basis.dim();
    let svd = a.clone().svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::IllConditioned("SVD without right vectors".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].partial_cmp(&svd.singular_values[i]).unwrap());
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let kernel_idx: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&i| svd.singular_values[i] < KERNEL_SV)
        .collect();
    let kdim = kernel_idx.len();
    if kdim < n {
        let smallest_kept = sv[n - kdim - 1];
        if smallest_kept <= KERNEL_GAP {
            return Err(Error::IllConditioned(format!(
                "no spectral gap: smallest nonzero singular value {smallest_kept:e}"
            )));
        }
    }
    let cols: Vec<CVector> = kernel_idx.iter().map(|&i| v_t.row(i).adjoint()).collect();
    let kernel = if cols.is_empty() {
        CMatrix::zeros(n, 0)
    } else {
        CMatrix::from_columns(&cols)
    };
    let perp = CMatrix::identity(n, n) - &kernel * kernel.adjoint();
    let target_deg = n - kdim;

    let mut best: Option<(f64, BlaschkeProduct, CMatrix)> = None;
    for u in theta.divisors()? {
        if u.degree() != target_deg {
            continue;
        }
        let coords = if target_deg == 0 {
            CMatrix::zeros(n, 0)
        } else {
            let bu = ModelBasis::new(&u, basis.quadrature())?;
            let mut m = CMatrix::zeros(n, target_deg);
            for (k, e) in bu.elements().iter().enumerate() {
                m.set_column(k, &basis.project(e)?);
            }
            m
        };
        let r = (&coords * coords.adjoint() - &perp).norm();
        if best.as_ref().is_none_or(|(br, _, _)| r < *br) {
            best = Some((r, u, coords));
        }
    }
    let (projection_residual, u, ku_coords) =
        best.ok_or_else(|| Error::IllConditioned(format!("no divisor of degree {target_deg}")))?;
    if projection_residual > SUBSPACE_TOL {
        return Err(Error::residual(
            "no divisor u with K_u = (ker A)^⊥",
            projection_residual,
            SUBSPACE_TOL,
        ));
    }
    let divisibility_residual = max_negative_fourier(
        |z| u.eval_unchecked(z) * phi.evaluate(z) * theta.eval_unchecked(z).conj(),
        FOURIER_NODES,
    );
    if divisibility_residual > FOURIER_TOL {
        return Err(Error::residual("Θ divides uφ", divisibility_residual, FOURIER_TOL));
    }
    Ok(KernelDecomposition {
        u,
        kernel_dim: kdim,
        kernel,
        ku_coords,
        projection_residual,
        divisibility_residual,
        u_divides_theta: true,
        singular_values: sv,
    })
}

/// Output of the square-zero construction `A^Θ_φ ⊕ 0_k ≅ A^{uΘ}_{uφ}`.
#[derive(Clone, Debug)]
pub struct NilpotentReport {
    /// `A^{uΘ}_{uφ}`
    pub tto: TtoMatrix,
    /// `A^Θ_φ ⊕ 0_k`
    pub target: CMatrix,
    pub witness: UnitaryWitness,
    pub decomposition: KernelDecomposition,
}

/// For `(A^Θ_φ)² = 0` with `φ` analytic: `A^Θ_φ ⊕ 0_{deg u} ≅ A^{uΘ}_{uφ}`.
///
/// The basis of `K_{uΘ}` is `[e^u, u·e^Θ]`. The witness sends
/// `(x, y) ↦ (C x + K K* y, C* y)`, where `C` embeds `K_u` in `K_Θ` and
/// `K` spans the kernel of `A^Θ_φ`.
pub fn theorem_5_3(theta: &BlaschkeProduct, phi: &CircleRational, quad: Quadrature) -> Result<NilpotentReport> {
    require_analytic(phi)?;
    let basis = Arc::new(ModelBasis::new(theta, quad)?);
    let a = TtoMatrix::build_shared(basis.clone(), phi)?.matrix;
    let sq = (&a * &a).norm();
    if sq > NILPOTENT_TOL {
        return Err(Error::Precondition(format!(
            "‖A²‖ = {sq:e}, operator is not square-zero"
        )));
    }
    let dec = kernel_decompose_matrix(&basis, phi, &a)?;
    let u = dec.u.clone();
    let k = u.degree();
    let n = theta.degree();
    let u_theta = u.multiply(theta);
    let u_sym = CircleRational::from_blaschke(&u);
    let tto = TtoMatrix::build(&ModelBasis::new(&u_theta, quad)?, &u_sym.mul(phi))?;
    let target = direct_sum(&a, &CMatrix::zeros(k, k));

    let c = &dec.ku_coords;
    let kk = &dec.kernel * dec.kernel.adjoint();
    let mut w = CMatrix::zeros(n + k, n + k);
    w.view_mut((0, 0), (n, k)).copy_from(c);
    w.view_mut((0, k), (n, n)).copy_from(&kk);
    w.view_mut((n, k), (k, n)).copy_from(&c.adjoint());
    let witness = UnitaryWitness::new(w, &tto.matrix, &target, "(x, y) ↦ (C x + K K* y, C* y)");
    Ok(NilpotentReport {
        tto,
        target,
        witness,
        decomposition: dec,
    })
}

/// Verdict of the trace-word test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivVerdict {
    Equivalent,
    Inequivalent,
    Inconclusive,
}

/// Word length that always suffices for `n × n` inputs: the paired algebra
/// has dimension at most `2n²`.
pub fn sufficient_word_len(n: usize) -> usize {
    2 * n * n
}

/// Compares traces of words in `X, X*` for `A` and `B`.
///
/// Words are explored breadth first and reduced to a basis of the algebra
/// of pairs `(w(A), w(B))`. If this span closes under multiplication by the
/// generators within `max_word_len` and every trace agrees, all words agree
/// and the matrices are unitarily equivalent; a trace mismatch proves they
/// are not; otherwise the answer is inconclusive.
pub fn unitary_equiv_check(a: &CMatrix, b: &CMatrix, max_word_len: usize) -> EquivVerdict {
    if a.shape() != b.shape() || a.nrows() != a.ncols() {
        return EquivVerdict::Inequivalent;
    }
    let n = a.nrows();
    if n == 0 {
        return EquivVerdict::Equivalent;
    }
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        return EquivVerdict::Equivalent;
    }
    let s = C64::new(1.0 / scale, 0.0);
    let (xa, xb) = (a * s, b * s);
    let gens = [(xa.clone(), xb.clone()), (xa.adjoint(), xb.adjoint())];

    let inner = |p: &(CMatrix, CMatrix), q: &(CMatrix, CMatrix)| -> C64 { p.0.dotc(&q.0) + p.1.dotc(&q.1) };
    let id = CMatrix::identity(n, n);
    let norm_id = (2.0 * n as f64).sqrt();
    let mut basis: Vec<(CMatrix, CMatrix)> = vec![(&id / C64::new(norm_id, 0.0), &id / C64::new(norm_id, 0.0))];
    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..max_word_len {
        let mut next = Vec::new();
        for &idx in &frontier {
            for g in &gens {
                let cand = (&g.0 * &basis[idx].0, &g.1 * &basis[idx].1);
                let cnorm = inner(&cand, &cand).re.sqrt();
                if cnorm <= INDEPENDENCE_FLOOR {
                    continue;
                }
                let mut r = cand;
                for _ in 0..2 {
                    for e in &basis {
                        let c = inner(e, &r);
                        r.0 -= &e.0 * c;
                        r.1 -= &e.1 * c;
                    }
                }
                // inputs are scaled to norm ≤ 1, so the trace gap is compared absolutely
                if (r.0.trace() - r.1.trace()).norm() > TRACE_TOL {
                    return EquivVerdict::Inequivalent;
                }
                let rnorm = inner(&r, &r).re.sqrt();
                if rnorm > INDEPENDENCE_TOL * cnorm && rnorm > INDEPENDENCE_FLOOR {
                    let inv = C64::new(1.0 / rnorm, 0.0);
                    basis.push((r.0 * inv, r.1 * inv));
                    next.push(basis.len() - 1);
                }
            }
        }
        if next.is_empty() {
            return EquivVerdict::Equivalent;
        }
        frontier = next;
    }
    EquivVerdict::Inconclusive
}
