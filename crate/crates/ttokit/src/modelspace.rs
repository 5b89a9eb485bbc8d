//! Model spaces `K_Θ`, circle quadrature, reproducing kernels and the
//! conjugation `J f = Θ z̄ f̄`.

use std::f64::consts::PI;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::symbols::{CircleRational, Factor};
use crate::{CMatrix, CVector, C64};

const GRAM_TOL: f64 = 1e-10;
const MEMBERSHIP_TOL: f64 = 1e-9;
const BOUNDARY_TOL: f64 = 1e-12;

/// Environment variable overriding the initial quadrature order.
pub const QUAD_START_ENV: &str = "TTOKIT_QUAD_START";

/// Successive differences shrinking by less than this factor count as stalled.
const STALL_RATIO: f64 = 0.1;
/// Largest stalled difference accepted as evaluation noise.
const NOISE_FLOOR: f64 = 1e-10;

/// Uniform circle quadrature with successive doubling.
///
/// For rational integrands without poles on the circle the trapezoidal rule
/// converges geometrically, so agreement of two successive orders certifies
/// the value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub start: usize,
    pub max: usize,
    pub tol: f64,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            start: 512,
            max: 1 << 18,
            tol: 1e-12,
        }
    }
}

impl Quadrature {
    pub fn with_start(start: usize) -> Self {
        Quadrature {
            start: start.max(2).next_power_of_two(),
            ..Self::default()
        }
    }

    /// Defaults, with the initial order taken from `TTOKIT_QUAD_START` when set.
    pub fn from_env() -> Self {
        match std::env::var(QUAD_START_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            Some(start) => Self::with_start(start),
            None => Self::default(),
        }
    }

    /// Integrates a vector of functions. `f` receives the nodes and returns
    /// the per-component averages over them.
    pub fn integrate<F>(&self, f: F) -> Result<Vec<C64>>
    where
        F: Fn(&[C64]) -> Vec<C64>,
    {
        let mut n = self.start.max(2);
        let mut prev = f(&nodes(n));
        let mut prev_diff = f64::INFINITY;
        loop {
            n *= 2;
            if n > self.max {
                return Err(Error::QuadratureNonConvergence(self.max));
            }
            let next = f(&nodes(n));
            let scale = next.iter().map(|v| v.norm()).fold(1.0, f64::max);
            let diff = prev.iter().zip(&next).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            // A stalled difference below the floor is rounding noise, not truncation error.
            let stalled = diff > STALL_RATIO * prev_diff && diff <= NOISE_FLOOR * scale;
            if diff <= self.tol * scale || stalled {
                return Ok(next);
            }
            prev = next;
            prev_diff = diff;
        }
    }

    /// `(1/2π) ∫ f conj(g) dt` for pointwise-evaluable functions.
    pub fn pairing<F, G>(&self, f: F, g: G) -> Result<C64>
    where
        F: Fn(C64) -> C64,
        G: Fn(C64) -> C64,
    {
        let v = self.integrate(|pts| {
            let s: C64 = pts.iter().map(|&z| f(z) * g(z).conj()).sum();
            vec![s / pts.len() as f64]
        })?;
        Ok(v[0])
    }
}

/// The `n` roots of unity.
pub fn nodes(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// Largest modulus among the Fourier coefficients `f̂(−k)`, `1 ≤ k ≤ n/2`,
/// from an `n`-point DFT. Small values certify analyticity on the disk.
pub fn max_negative_fourier<F: Fn(C64) -> C64>(f: F, n: usize) -> f64 {
    let pts = nodes(n);
    let vals: Vec<C64> = pts.iter().map(|&z| f(z)).collect();
    (1..=n / 2)
        .map(|k| {
            let s: C64 = vals.iter().enumerate().map(|(t, v)| v * pts[(t * k) % n]).sum();
            s.norm() / n as f64
        })
        .fold(0.0, f64::max)
}

/// Orthonormal Takenaka–Malmquist basis of `K_Θ`:
/// `e_k = √(1−|a_k|²)/(1 − ā_k z) · Π_{j<k} (z − a_j)/(1 − ā_j z)`.
#[derive(Clone, Debug)]
pub struct ModelBasis {
    theta: BlaschkeProduct,
    basis: Vec<CircleRational>,
    quadrature: Quadrature,
}

impl ModelBasis {
    pub fn new(theta: &BlaschkeProduct, quadrature: Quadrature) -> Result<Self> {
        if theta.degree() == 0 {
            return Err(Error::Precondition(
                "model space of a constant is zero-dimensional".into(),
            ));
        }
        let zeros = theta.zeros();
        let mut basis = Vec::with_capacity(zeros.len());
        let mut prefix = Poly::one();
        let mut den: Vec<Factor> = Vec::new();
        for a in zeros {
            let mut d = den.clone();
            if a.norm() > 0.0 {
                d.push(Factor::Outer(a.conj()));
            }
            let norm = (1.0 - a.norm_sqr()).sqrt();
            basis.push(CircleRational::from_factors(
                prefix.scale(C64::new(norm, 0.0)),
                d.clone(),
            )?);
            prefix = prefix.mul_linear(*a);
            den = d;
        }
        let mb = ModelBasis {
            theta: theta.clone(),
            basis,
            quadrature,
        };
        let gram = mb.gram()?;
        let n = mb.dim();
        let dev = (gram - CMatrix::identity(n, n)).norm();
        if dev > GRAM_TOL {
            return Err(Error::residual("Gram matrix of model basis", dev, GRAM_TOL));
        }
        Ok(mb)
    }

    pub fn theta(&self) -> &BlaschkeProduct {
        &self.theta
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, k: usize) -> &CircleRational {
        &self.basis[k]
    }

    pub fn elements(&self) -> &[CircleRational] {
        &self.basis
    }

    pub fn quadrature(&self) -> Quadrature {
        self.quadrature
    }

    /// Values of all basis functions at `z`, by the running-product recursion.
    pub fn eval_all(&self, z: C64) -> Vec<C64> {
        let one = C64::new(1.0, 0.0);
        let mut prod = one;
        let mut out = Vec::with_capacity(self.dim());
        for a in self.theta.zeros() {
            let den = one - a.conj() * z;
            out.push(prod * (1.0 - a.norm_sqr()).sqrt() / den);
            prod *= (z - a) / den;
        }
        out
    }

    /// `N × n` matrix of basis values at the nodes.
    pub fn sample(&self, pts: &[C64]) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(pts.len(), n);
        for (t, z) in pts.iter().enumerate() {
            for (k, v) in self.eval_all(*z).into_iter().enumerate() {
                m[(t, k)] = v;
            }
        }
        m
    }

    pub fn gram(&self) -> Result<CMatrix> {
        let n = self.dim();
        let v = self.quadrature.integrate(|pts| {
            let e = self.sample(pts);
            let g = e.adjoint() * &e / C64::new(pts.len() as f64, 0.0);
            // g[(i, j)] = ⟨e_j, e_i⟩
            g.iter().copied().collect()
        })?;
        Ok(CMatrix::from_column_slice(n, n, &v))
    }

    pub fn inner_product(&self, f: &CircleRational, g: &CircleRational) -> Result<C64> {
        self.quadrature.pairing(|z| f.evaluate(z), |z| g.evaluate(z))
    }

    /// Coefficients `⟨f, e_k⟩`.
    pub fn project(&self, f: &CircleRational) -> Result<CVector> {
        self.project_fn(|z| f.evaluate(z))
    }

    pub fn project_fn<F: Fn(C64) -> C64>(&self, f: F) -> Result<CVector> {
        let v = self.quadrature.integrate(|pts| {
            let mut acc = vec![C64::new(0.0, 0.0); self.dim()];
            for z in pts {
                let fz = f(*z);
                for (k, e) in self.eval_all(*z).into_iter().enumerate() {
                    acc[k] += fz * e.conj();
                }
            }
            let n = pts.len() as f64;
            acc.into_iter().map(|s| s / n).collect()
        })?;
        Ok(CVector::from_vec(v))
    }

    /// `‖f − Σ c_k e_k‖₂` on the circle.
    pub fn residual_fn<F: Fn(C64) -> C64>(&self, f: F, coeffs: &CVector) -> Result<f64> {
        let v = self.quadrature.integrate(|pts| {
            let s: f64 = pts
                .iter()
                .map(|z| {
                    let rec: C64 = self
                        .eval_all(*z)
                        .into_iter()
                        .zip(coeffs.iter())
                        .map(|(e, c)| e * c)
                        .sum();
                    (f(*z) - rec).norm_sqr()
                })
                .sum();
            vec![C64::new(s / pts.len() as f64, 0.0)]
        })?;
        Ok(v[0].re.max(0.0).sqrt())
    }

    /// Projection coefficients together with the norm of the unprojected remainder.
    pub fn project_with_residual<F: Fn(C64) -> C64 + Copy>(&self, f: F) -> Result<(CVector, f64)> {
        let c = self.project_fn(f)?;
        let r = self.residual_fn(f, &c)?;
        Ok((c, r))
    }

    /// `Σ c_k e_k` as a rational function.
    pub fn combine(&self, coeffs: &CVector) -> CircleRational {
        self.basis
            .iter()
            .zip(coeffs.iter())
            .fold(CircleRational::zero(), |acc, (e, c)| acc.add(&e.scale(*c)))
    }

    pub fn norm(&self, f: &CircleRational) -> Result<f64> {
        Ok(self.inner_product(f, f)?.re.max(0.0).sqrt())
    }

    /// Fails unless `f` lies in `K_Θ` to within `1e-9`.
    pub fn require_member(&self, f: &CircleRational) -> Result<CVector> {
        let (c, r) = self.project_with_residual(|z| f.evaluate(z))?;
        if r > MEMBERSHIP_TOL {
            return Err(Error::residual("membership in model space", r, MEMBERSHIP_TOL));
        }
        Ok(c)
    }
}

/// Takenaka–Malmquist basis with default quadrature.
pub fn build_basis(theta: &BlaschkeProduct) -> Result<ModelBasis> {
    ModelBasis::new(theta, Quadrature::default())
}

/// `(1/2π) ∫ f conj(g) dt` with doubling quadrature starting at `order` nodes.
pub fn inner_product(f: &CircleRational, g: &CircleRational, order: usize) -> Result<C64> {
    Quadrature::with_start(order).pairing(|z| f.evaluate(z), |z| g.evaluate(z))
}

pub fn project(f: &CircleRational, basis: &ModelBasis) -> Result<CVector> {
    basis.project(f)
}

/// Exact pairing by residues: `⟨f, g⟩ = Σ_{|p|<1} Res_p f(z) g*(z) / z`, where
/// `g*` is the circle conjugate of `g`.
pub fn residue_inner_product(f: &CircleRational, g: &CircleRational) -> C64 {
    let h = f.mul(&g.circle_conjugate()).mul(&CircleRational::z_pow(-1));
    h.terms().map(|t| inner_residues(t.numerator, t.factors)).sum()
}

/// Sum of residues of `num / Π factors` at its poles inside the disk.
fn inner_residues(num: &Poly, factors: &[Factor]) -> C64 {
    let mut groups: Vec<(C64, usize)> = Vec::new();
    for fct in factors {
        if let Factor::Inner(p) = *fct {
            match groups.iter_mut().find(|(q, _)| (q - p).norm() < 1e-12) {
                Some(g) => g.1 += 1,
                None => groups.push((p, 1)),
            }
        }
    }
    let mut total = C64::new(0.0, 0.0);
    for (p, m) in &groups {
        let mut series = num.taylor_at(*p, *m);
        for fct in factors {
            let s = match *fct {
                Factor::Inner(q) if (q - p).norm() < 1e-12 => continue,
                // 1/((z−p) + (p−q))
                Factor::Inner(q) => {
                    let d = p - q;
                    (0..*m)
                        .map(|k| C64::new(-1.0, 0.0).powu(k as u32) / d.powu(k as u32 + 1))
                        .collect::<Vec<_>>()
                }
                // 1/((1 − q p) − q (z − p))
                Factor::Outer(q) => {
                    let d = C64::new(1.0, 0.0) - q * p;
                    (0..*m).map(|k| (q / d).powu(k as u32) / d).collect::<Vec<_>>()
                }
            };
            series = truncated_product(&series, &s, *m);
        }
        total += series[*m - 1];
    }
    total
}

fn truncated_product(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Reproducing kernel `k_λ` and its conjugate `k̃_λ = J k_λ` at a point of the closed disk.
#[derive(Clone, Debug)]
pub struct KernelPair {
    pub k: CircleRational,
    pub ktilde: CircleRational,
    pub point: C64,
    pub theta: BlaschkeProduct,
}

/// `k_λ = (1 − conj(Θ(λ)) Θ)/(1 − λ̄ z)` and `k̃_λ = (Θ − Θ(λ))/(z − λ)`.
/// Boundary points `|λ| = 1` are handled by exact polynomial division.
pub fn kernel_pair(theta: &BlaschkeProduct, lambda: C64) -> Result<KernelPair> {
    let modulus = lambda.norm();
    if modulus > 1.0 + BOUNDARY_TOL {
        return Err(Error::Precondition(format!(
            "kernel point {lambda} outside the closed disk"
        )));
    }
    let boundary = (modulus - 1.0).abs() <= BOUNDARY_TOL;
    let val = theta.eval_unchecked(lambda);
    let n_poly = theta.numerator().scale(theta.constant());
    let d_poly = theta.denominator();
    let d_factors: Vec<Factor> = theta
        .zeros()
        .iter()
        .filter(|a| a.norm() > 0.0)
        .map(|a| Factor::Outer(a.conj()))
        .collect();

    let k_num = &d_poly - &n_poly.scale(val.conj());
    let mut k_den = d_factors.clone();
    let k_num = if boundary {
        let (q, rem) = k_num.div_outer(lambda.conj());
        check_exact(rem, &k_num)?;
        q
    } else {
        if lambda != C64::new(0.0, 0.0) {
            k_den.push(Factor::Outer(lambda.conj()));
        }
        k_num
    };
    let k = CircleRational::from_factors(k_num, k_den)?;

    let kt_num = &n_poly - &d_poly.scale(val);
    let (kt_q, rem) = kt_num.div_linear(lambda);
    check_exact(rem, &kt_num)?;
    let ktilde = CircleRational::from_factors(kt_q, d_factors)?;
    Ok(KernelPair {
        k,
        ktilde,
        point: lambda,
        theta: theta.clone(),
    })
}

fn check_exact(rem: C64, p: &Poly) -> Result<()> {
    let tol = 1e-10 * p.norm1().max(1.0);
    if rem.norm() > tol {
        return Err(Error::residual("kernel numerator division", rem.norm(), tol));
    }
    Ok(())
}

/// `J f = Θ z̄ f̄` for `f ∈ K_Θ`.
pub fn conjugation(f: &CircleRational, basis: &ModelBasis) -> Result<CircleRational> {
    basis.require_member(f)?;
    Ok(CircleRational::from_blaschke(basis.theta())
        .mul(&CircleRational::z_pow(-1))
        .mul(&f.circle_conjugate()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn max_diff(a: &CircleRational, b: &CircleRational) -> f64 {
        nodes(64)
            .into_iter()
            .map(|z| (a.evaluate(z) - b.evaluate(z)).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn monomial_basis() {
        let mb = build_basis(&BlaschkeProduct::monomial(3)).unwrap();
        for k in 0..3 {
            assert!(max_diff(mb.element(k), &CircleRational::z_pow(k as i32)) < 1e-15);
        }
    }

    #[test]
    fn degree_one_basis() {
        let mb = build_basis(&BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap()).unwrap();
        let want = CircleRational::cauchy(c(0.5, 0.0))
            .unwrap()
            .scale(c(0.75f64.sqrt(), 0.0));
        assert_eq!(mb.dim(), 1);
        assert!(max_diff(mb.element(0), &want) < 1e-15);
    }

    #[test]
    fn mixed_basis_orthonormal() {
        let theta = BlaschkeProduct::monomial(1).multiply(&BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap());
        let mb = build_basis(&theta).unwrap();
        let gram = mb.gram().unwrap();
        assert!((gram - CMatrix::identity(2, 2)).norm() < 1e-12);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                let r = residue_inner_product(mb.element(i), mb.element(j));
                assert!((r - c(want, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn zero_degree_rejected() {
        let b = BlaschkeProduct::new(vec![], c(1.0, 0.0)).unwrap();
        assert!(matches!(build_basis(&b), Err(Error::Precondition(_))));
    }

    #[test]
    fn fourier_orthogonality() {
        for m in -2..=2 {
            for n in -2..=2 {
                let v = inner_product(&CircleRational::z_pow(m), &CircleRational::z_pow(n), 512).unwrap();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((v - c(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn kernel_norm_and_cauchy_pairing() {
        let theta = BlaschkeProduct::monomial(2);
        let kp = kernel_pair(&theta, c(0.5, 0.0)).unwrap();
        let v = inner_product(&kp.k, &kp.k, 512).unwrap();
        assert!((v - c(1.25, 0.0)).norm() < 1e-13);
        assert!((residue_inner_product(&kp.k, &kp.k) - c(1.25, 0.0)).norm() < 1e-13);

        let a = CircleRational::cauchy(c(0.5, 0.0)).unwrap();
        let b = CircleRational::cauchy(c(0.25, 0.0)).unwrap();
        let want = c(8.0 / 7.0, 0.0);
        assert!((inner_product(&a, &b, 512).unwrap() - want).norm() < 1e-13);
        assert!((residue_inner_product(&a, &b) - want).norm() < 1e-13);
    }

    #[test]
    fn projection_examples() {
        let mb = build_basis(&BlaschkeProduct::monomial(3)).unwrap();
        let p = mb.project(&CircleRational::z_pow(1)).unwrap();
        let want = [0.0, 1.0, 0.0];
        for k in 0..3 {
            assert!((p[k] - c(want[k], 0.0)).norm() < 1e-14);
        }
        let p = mb.project(&CircleRational::z_pow(3)).unwrap();
        assert!(p.norm() < 1e-14);
    }

    #[test]
    fn kernel_at_origin_reproduces() {
        let theta = BlaschkeProduct::new(vec![c(0.2, 0.3), c(-0.4, 0.1), c(0.5, -0.5)], c(0.0, 1.0)).unwrap();
        let mb = build_basis(&theta).unwrap();
        let kp = kernel_pair(&theta, c(0.0, 0.0)).unwrap();
        let p = mb.project(&kp.k).unwrap();
        for k in 0..3 {
            let e0 = mb.element(k).evaluate(c(0.0, 0.0));
            assert!((p[k] - e0.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn kernel_examples() {
        let z2 = BlaschkeProduct::monomial(2);
        let kp = kernel_pair(&z2, c(0.0, 0.0)).unwrap();
        assert!(max_diff(&kp.k, &CircleRational::one()) < 1e-15);
        assert!(max_diff(&kp.ktilde, &CircleRational::z_pow(1)) < 1e-15);
        let kb = kernel_pair(&z2, c(1.0, 0.0)).unwrap();
        let want = CircleRational::laurent(&BTreeMap::from([(0, c(1.0, 0.0)), (1, c(1.0, 0.0))]));
        assert!(max_diff(&kb.k, &want) < 1e-15);
        assert!((inner_product(&kb.k, &kb.k, 512).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn conjugation_examples() {
        let z3 = BlaschkeProduct::monomial(3);
        let mb = build_basis(&z3).unwrap();
        let j1 = conjugation(&CircleRational::one(), &mb).unwrap();
        assert!(max_diff(&j1, &CircleRational::z_pow(2)) < 1e-15);
        let f = CircleRational::laurent(&BTreeMap::from([(0, c(1.0, 0.0)), (1, c(2.0, 0.0))]));
        let want = CircleRational::laurent(&BTreeMap::from([(1, c(2.0, 0.0)), (2, c(1.0, 0.0))]));
        assert!(max_diff(&conjugation(&f, &mb).unwrap(), &want) < 1e-14);
        assert!(conjugation(&CircleRational::z_pow(3), &mb).is_err());

        let theta = BlaschkeProduct::new(vec![c(0.3, 0.1), c(-0.2, 0.5)], c(1.0, 0.0)).unwrap();
        let mb = build_basis(&theta).unwrap();
        let kp = kernel_pair(&theta, c(0.0, 0.0)).unwrap();
        assert!(max_diff(&conjugation(&kp.k, &mb).unwrap(), &kp.ktilde) < 1e-13);
    }

    #[test]
    fn env_override() {
        assert_eq!(Quadrature::with_start(300).start, 512);
        assert_eq!(Quadrature::with_start(64).start, 64);
    }
}
