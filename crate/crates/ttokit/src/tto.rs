//! Truncated Toeplitz operators `A^Θ_φ f = P_Θ(φ f)` as matrices in the
//! Takenaka–Malmquist basis, and the rank-one family with explicit symbols.

use std::sync::Arc;

use serde::Serialize;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::linalg;
use crate::modelspace::{kernel_pair, ModelBasis, Quadrature};
use crate::symbols::CircleRational;
use crate::{CMatrix, CVector, C64};

const RANK_ONE_TOL: f64 = 1e-9;

/// Matrix of `A^Θ_φ`; entry `(i, j)` is `⟨φ e_j, e_i⟩`.
///
/// The symbol is kept for reference only. Symbols are not unique, so two
/// operators are compared through their matrices, never through their symbols.
#[derive(Clone, Debug)]
pub struct TtoMatrix {
    pub matrix: CMatrix,
    pub theta: BlaschkeProduct,
    pub symbol: CircleRational,
    basis: Arc<ModelBasis>,
}

impl TtoMatrix {
    pub fn build(basis: &ModelBasis, phi: &CircleRational) -> Result<Self> {
        Self::build_shared(Arc::new(basis.clone()), phi)
    }

    pub fn build_shared(basis: Arc<ModelBasis>, phi: &CircleRational) -> Result<Self> {
        phi.validate()?;
        Self::from_pointwise(basis, phi.clone(), |z| phi.evaluate(z))
    }

    /// Compresses the pointwise values `f` on the circle, recording `symbol`
    /// as the symbol. `f` must agree with `symbol` on the circle; products
    /// evaluated factor by factor avoid the rounding of expanded numerators.
    pub fn from_pointwise<F: Fn(C64) -> C64>(basis: Arc<ModelBasis>, symbol: CircleRational, f: F) -> Result<Self> {
        let n = basis.dim();
        let v = basis.quadrature().integrate(|pts| {
            let e = basis.sample(pts);
            let mut weighted = e.clone();
            for (t, z) in pts.iter().enumerate() {
                let w = f(*z);
                for k in 0..n {
                    weighted[(t, k)] *= w;
                }
            }
            let m = e.adjoint() * weighted / C64::new(pts.len() as f64, 0.0);
            m.iter().copied().collect()
        })?;
        Ok(TtoMatrix {
            matrix: CMatrix::from_column_slice(n, n, &v),
            theta: basis.theta().clone(),
            symbol,
            basis,
        })
    }

    /// `A_{ψ (φ∘B)}` on `basis`, sampled as `ψ(z) φ(B(z))`.
    pub fn build_composed(
        basis: Arc<ModelBasis>,
        psi: &CircleRational,
        phi: &CircleRational,
        b: &BlaschkeProduct,
    ) -> Result<Self> {
        psi.validate()?;
        phi.validate()?;
        let symbol = psi.mul(&phi.compose_blaschke(b)?);
        Self::from_pointwise(basis, symbol, |z| psi.evaluate(z) * phi.evaluate(b.eval_unchecked(z)))
    }

    pub fn basis(&self) -> &ModelBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// JSON object `{"theta", "symbol", "matrix"}` with the matrix row-major as `[re, im]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out<'a> {
            theta: &'a BlaschkeProduct,
            symbol: &'a CircleRational,
            matrix: Vec<Vec<[f64; 2]>>,
        }
        serde_json::to_value(Out {
            theta: &self.theta,
            symbol: &self.symbol,
            matrix: matrix_to_rows(&self.matrix),
        })
        .expect("serializable")
    }
}

pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Invalid("ragged matrix rows".into()));
    }
    Ok(CMatrix::from_fn(n, m, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

/// `A^Θ_φ` with the default quadrature.
pub fn build_tto(theta: &BlaschkeProduct, phi: &CircleRational) -> Result<TtoMatrix> {
    TtoMatrix::build(&ModelBasis::new(theta, Quadrature::default())?, phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankOneKind {
    /// `k̃_λ ⊙ k_λ`, `|λ| < 1`
    InteriorAnalytic,
    /// `k_λ ⊙ k̃_λ`, `|λ| < 1`
    InteriorCoanalytic,
    /// `k_ζ ⊙ k_ζ`, `|ζ| = 1`
    Boundary,
}

/// Coefficients of a kernel function in the basis.
pub fn coefficients(basis: &ModelBasis, f: &CircleRational) -> Result<CVector> {
    basis.project(f)
}

/// Rank-one TTO as the outer product of kernel coefficient vectors, together
/// with an explicit symbol whose compression is checked against it.
///
/// Symbols: `Θ/(z − λ)` for `k̃_λ ⊙ k_λ` (which is `z̄Θ` at `λ = 0`), its circle
/// conjugate for `k_λ ⊙ k̃_λ`, and `k_ζ + conj(k_ζ) − 1` for `k_ζ ⊙ k_ζ`.
pub fn rank_one_tto(basis: &ModelBasis, kind: RankOneKind, point: C64) -> Result<(TtoMatrix, CircleRational)> {
    let theta = basis.theta();
    let modulus = point.norm();
    match kind {
        RankOneKind::Boundary if (modulus - 1.0).abs() > 1e-12 => {
            return Err(Error::Precondition(format!(
                "boundary kernel needs |ζ| = 1, got {modulus}"
            )))
        }
        RankOneKind::InteriorAnalytic | RankOneKind::InteriorCoanalytic if modulus >= 1.0 => {
            return Err(Error::Precondition(format!(
                "interior kernel needs |λ| < 1, got {modulus}"
            )))
        }
        _ => {}
    }
    let kp = kernel_pair(theta, point)?;
    // ⟨k_λ, e_i⟩ = conj(e_i(λ)) by the reproducing property
    let k: CVector = CVector::from_vec(basis.eval_all(point).into_iter().map(|v| v.conj()).collect());
    let (matrix, symbol) = match kind {
        RankOneKind::InteriorAnalytic | RankOneKind::InteriorCoanalytic => {
            let kt = coefficients(basis, &kp.ktilde)?;
            let theta_r = CircleRational::from_blaschke(theta);
            let sym = theta_r.mul(&crate::symbols::CircleRational::from_factors(
                crate::poly::Poly::one(),
                vec![crate::symbols::Factor::Inner(point)],
            )?);
            if kind == RankOneKind::InteriorAnalytic {
                (linalg::outer(&kt, &k), sym)
            } else {
                (linalg::outer(&k, &kt), sym.circle_conjugate())
            }
        }
        RankOneKind::Boundary => {
            let sym = kp.k.add(&kp.k.circle_conjugate()).sub(&CircleRational::one());
            (linalg::outer(&k, &k), sym)
        }
    };
    let check = TtoMatrix::build(basis, &symbol)?;
    let dev = (&check.matrix - &matrix).norm();
    if dev > RANK_ONE_TOL {
        return Err(Error::residual("rank-one symbol compression", dev, RANK_ONE_TOL));
    }
    Ok((
        TtoMatrix {
            matrix,
            theta: theta.clone(),
            symbol: symbol.clone(),
            basis: Arc::new(basis.clone()),
        },
        symbol,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn toeplitz(n: usize, coef: impl Fn(i32) -> C64) -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| coef(i as i32 - j as i32))
    }

    #[test]
    fn shift_and_identity() {
        let a = build_tto(&BlaschkeProduct::monomial(3), &CircleRational::z_pow(1)).unwrap();
        let want = toeplitz(3, |d| if d == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!((a.matrix - want).norm() < 1e-14);
        let i2 = build_tto(&BlaschkeProduct::monomial(2), &CircleRational::one()).unwrap();
        assert!((i2.matrix - CMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn laurent_symbol_gives_toeplitz() {
        let phi = CircleRational::laurent(&BTreeMap::from([(-1, c(2.0, 0.0)), (0, c(1.0, 0.0)), (1, c(3.0, 0.0))]));
        let a = build_tto(&BlaschkeProduct::monomial(3), &phi).unwrap();
        let want = toeplitz(3, |d| match d {
            0 => c(1.0, 0.0),
            1 => c(3.0, 0.0),
            -1 => c(2.0, 0.0),
            _ => c(0.0, 0.0),
        });
        assert!((a.matrix - want).norm() < 1e-13);
    }

    #[test]
    fn rank_one_at_origin() {
        let basis = ModelBasis::new(&BlaschkeProduct::monomial(2), Quadrature::default()).unwrap();
        let (m, sym) = rank_one_tto(&basis, RankOneKind::InteriorAnalytic, c(0.0, 0.0)).unwrap();
        let want = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((m.matrix - want).norm() < 1e-14);
        assert!((sym.evaluate(c(0.6, 0.8)) - c(0.6, 0.8)).norm() < 1e-14);
    }

    #[test]
    fn rank_one_boundary() {
        let basis = ModelBasis::new(&BlaschkeProduct::monomial(2), Quadrature::default()).unwrap();
        let (m, _) = rank_one_tto(&basis, RankOneKind::Boundary, c(1.0, 0.0)).unwrap();
        let ones = CMatrix::from_element(2, 2, c(1.0, 0.0));
        assert!((m.matrix.clone() - ones).norm() < 1e-14);
        let s = linalg::singular_values(&m.matrix);
        assert!(s[1] < 1e-10);
    }

    #[test]
    fn rank_one_preconditions() {
        let basis = ModelBasis::new(&BlaschkeProduct::monomial(2), Quadrature::default()).unwrap();
        assert!(rank_one_tto(&basis, RankOneKind::Boundary, c(0.5, 0.0)).is_err());
        assert!(rank_one_tto(&basis, RankOneKind::InteriorAnalytic, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn json_shape() {
        let a = build_tto(&BlaschkeProduct::monomial(2), &CircleRational::z_pow(1)).unwrap();
        let v = a.to_json();
        assert_eq!(v["matrix"][1][0][0].as_f64().unwrap().round(), 1.0);
        assert!(v["theta"]["zeros"].is_array());
        assert!(v["symbol"]["num"].is_array());
    }
}
