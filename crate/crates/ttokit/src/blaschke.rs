//! Finite Blaschke products `c · Π (z − a)/(1 − ā z)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::C64;

const POLE_GUARD: f64 = 1e-13;
const UNIMODULAR_TOL: f64 = 1e-14;
/// Zeros closer than this are one multiplicity class when enumerating divisors.
const CLASS_TOL: f64 = 1e-10;
const DIVISOR_GUARD: usize = 20;
const ROOT_ACCEPT: f64 = 1e-9;
/// Zeros beyond this modulus degrade circle quadrature.
pub const MODULUS_WARNING: f64 = 0.95;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlaschkeRepr", into = "BlaschkeRepr")]
pub struct BlaschkeProduct {
    zeros: Vec<C64>,
    constant: C64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<C64>, constant: C64) -> Result<Self> {
        for a in &zeros {
            if !(a.norm() < 1.0) {
                return Err(Error::ZeroOutsideDisk(*a, a.norm()));
            }
        }
        if (constant.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NotUnimodular(constant));
        }
        Ok(BlaschkeProduct { zeros, constant })
    }

    /// Product of the factors `(z − a)/(1 − ā z)` with constant one.
    pub fn from_zeros(zeros: Vec<C64>) -> Result<Self> {
        Self::new(zeros, C64::new(1.0, 0.0))
    }

    /// `z^n`
    pub fn monomial(n: usize) -> Self {
        BlaschkeProduct {
            zeros: vec![C64::new(0.0, 0.0); n],
            constant: C64::new(1.0, 0.0),
        }
    }

    /// The automorphism `(τ − z)/(1 − τ̄ z)`, which sends `0` to `τ`.
    pub fn mobius(tau: C64) -> Result<Self> {
        Self::new(vec![tau], C64::new(-1.0, 0.0))
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn constant(&self) -> C64 {
        self.constant
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// True when every zero sits at the origin.
    pub fn is_monomial(&self) -> bool {
        self.zeros.iter().all(|a| *a == C64::new(0.0, 0.0))
    }

    pub fn evaluate(&self, z: C64) -> Result<C64> {
        let mut v = self.constant;
        for a in &self.zeros {
            let den = C64::new(1.0, 0.0) - a.conj() * z;
            if den.norm() < POLE_GUARD {
                return Err(Error::PoleProximity(z));
            }
            v *= (z - a) / den;
        }
        Ok(v)
    }

    /// Evaluation without the pole guard, for points on the closed disk.
    pub(crate) fn eval_unchecked(&self, z: C64) -> C64 {
        self.zeros
            .iter()
            .fold(self.constant, |v, a| v * (z - a) / (C64::new(1.0, 0.0) - a.conj() * z))
    }

    /// Derivative by the product rule over the Möbius factors.
    pub fn derivative_at(&self, z: C64) -> Result<C64> {
        let mut factors = Vec::with_capacity(self.zeros.len());
        let mut derivs = Vec::with_capacity(self.zeros.len());
        for a in &self.zeros {
            let den = C64::new(1.0, 0.0) - a.conj() * z;
            if den.norm() < POLE_GUARD {
                return Err(Error::PoleProximity(z));
            }
            factors.push((z - a) / den);
            derivs.push((1.0 - a.norm_sqr()) / (den * den));
        }
        let mut total = C64::new(0.0, 0.0);
        for (i, &d) in derivs.iter().enumerate() {
            let mut term = d;
            for (j, f) in factors.iter().enumerate() {
                if j != i {
                    term *= f;
                }
            }
            total += term;
        }
        Ok(total * self.constant)
    }

    /// Zeros concatenated (self first), constants multiplied.
    pub fn multiply(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        BlaschkeProduct {
            zeros,
            constant: self.constant * other.constant,
        }
    }

    /// `Π (z − a)` over the zeros.
    pub fn numerator(&self) -> Poly {
        Poly::from_roots(&self.zeros)
    }

    /// `Π (1 − ā z)` over the zeros.
    pub fn denominator(&self) -> Poly {
        self.zeros.iter().fold(Poly::one(), |acc, a| acc.mul_outer(a.conj()))
    }

    /// Solutions of `self(z) = w` for `|w| < 1`; they lie in the open disk.
    pub fn preimages(&self, w: C64) -> Result<Vec<C64>> {
        if w == C64::new(0.0, 0.0) {
            return Ok(self.zeros.clone());
        }
        let g = &self.numerator().scale(self.constant) - &self.denominator().scale(w);
        let roots = g.roots()?;
        for r in &roots {
            let res = (self.eval_unchecked(*r) - w).norm();
            if !(res < ROOT_ACCEPT) || !(r.norm() < 1.0) {
                return Err(Error::RootFinding(format!("preimage {r} of {w} has residual {res:e}")));
            }
        }
        Ok(roots)
    }

    /// `self ∘ inner`; see [`compose`].
    pub fn compose(&self, inner: &BlaschkeProduct) -> Result<BlaschkeProduct> {
        compose(self, inner)
    }

    /// Sub-multisets of the zeros, each with constant one, including `1` and
    /// `self` (up to its constant).
    pub fn divisors(&self) -> Result<Vec<BlaschkeProduct>> {
        if self.degree() > DIVISOR_GUARD {
            return Err(Error::DegreeGuard(self.degree()));
        }
        let mut classes: Vec<(C64, usize)> = Vec::new();
        for a in &self.zeros {
            match classes.iter_mut().find(|(c, _)| (c - a).norm() < CLASS_TOL) {
                Some(entry) => entry.1 += 1,
                None => classes.push((*a, 1)),
            }
        }
        let mut out = Vec::new();
        let mut counts = vec![0usize; classes.len()];
        loop {
            let zeros = classes
                .iter()
                .zip(&counts)
                .flat_map(|((a, _), &k)| std::iter::repeat_n(*a, k))
                .collect();
            out.push(BlaschkeProduct {
                zeros,
                constant: C64::new(1.0, 0.0),
            });
            // odometer increment
            let mut i = 0;
            loop {
                if i == classes.len() {
                    return Ok(out);
                }
                if counts[i] < classes[i].1 {
                    counts[i] += 1;
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
        }
    }
}

/// `theta ∘ b`. Its zeros are the preimages under `b` of the zeros of
/// `theta`; the unimodular constant is fixed by matching the value at `z = 1`.
pub fn compose(theta: &BlaschkeProduct, b: &BlaschkeProduct) -> Result<BlaschkeProduct> {
    if b.degree() == 0 {
        return Err(Error::Degenerate(
            "inner argument of a composition must have degree at least one".into(),
        ));
    }
    let mut zeros = Vec::with_capacity(theta.degree() * b.degree());
    for a in &theta.zeros {
        zeros.extend(b.preimages(*a)?);
    }
    let one = C64::new(1.0, 0.0);
    let target = theta.eval_unchecked(b.eval_unchecked(one));
    let partial = BlaschkeProduct {
        zeros: zeros.clone(),
        constant: one,
    }
    .eval_unchecked(one);
    let c = target / partial;
    Ok(BlaschkeProduct {
        zeros,
        constant: c / c.norm(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BlaschkeRepr {
    Monomial {
        monomial: usize,
    },
    Full {
        zeros: Vec<[f64; 2]>,
        #[serde(default = "unit")]
        constant: [f64; 2],
    },
}

fn unit() -> [f64; 2] {
    [1.0, 0.0]
}

impl TryFrom<BlaschkeRepr> for BlaschkeProduct {
    type Error = Error;
    fn try_from(r: BlaschkeRepr) -> Result<Self> {
        match r {
            BlaschkeRepr::Monomial { monomial } => Ok(BlaschkeProduct::monomial(monomial)),
            BlaschkeRepr::Full { zeros, constant } => BlaschkeProduct::new(
                zeros.iter().map(|z| C64::new(z[0], z[1])).collect(),
                C64::new(constant[0], constant[1]),
            ),
        }
    }
}

impl From<BlaschkeProduct> for BlaschkeRepr {
    fn from(b: BlaschkeProduct) -> Self {
        BlaschkeRepr::Full {
            zeros: b.zeros.iter().map(|z| [z.re, z.im]).collect(),
            constant: [b.constant.re, b.constant.im],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn circle(k: usize, n: usize) -> C64 {
        C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64 + 0.1)
    }

    #[test]
    fn evaluate_examples() {
        let z2 = BlaschkeProduct::monomial(2);
        assert!((z2.evaluate(c(0.0, 1.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let m = BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap();
        assert!((m.evaluate(c(0.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        let b = BlaschkeProduct::monomial(1).multiply(&m);
        // 0.3 · (0.5 − 0.3)/(1 − 0.15)
        let want = 0.3 * (0.2 / 0.85);
        assert!((b.evaluate(c(0.3, 0.0)).unwrap() - c(want, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn evaluate_rejects_pole() {
        let m = BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap();
        assert!(matches!(m.evaluate(c(2.0, 0.0)), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn construction_validates() {
        assert!(BlaschkeProduct::from_zeros(vec![c(1.0, 0.0)]).is_err());
        assert!(BlaschkeProduct::new(vec![], c(0.5, 0.0)).is_err());
    }

    #[test]
    fn compose_monomials() {
        let t = compose(&BlaschkeProduct::monomial(3), &BlaschkeProduct::monomial(2)).unwrap();
        assert_eq!(t.degree(), 6);
        assert!(t.zeros().iter().all(|a| a.norm() == 0.0));
        assert!((t.constant() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compose_identity_outer() {
        let b = BlaschkeProduct::new(vec![c(0.3, 0.1), c(-0.5, 0.2)], C64::from_polar(1.0, 0.7)).unwrap();
        let t = compose(&BlaschkeProduct::monomial(1), &b).unwrap();
        for k in 0..16 {
            let z = circle(k, 16);
            assert!((t.evaluate(z).unwrap() - b.evaluate(z).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn compose_square_of_mobius() {
        let b = BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap();
        let t = compose(&BlaschkeProduct::monomial(2), &b).unwrap();
        assert_eq!(t.degree(), 2);
        for a in t.zeros() {
            assert!((a - c(0.5, 0.0)).norm() < 1e-12);
        }
        for k in 0..64 {
            let z = circle(k, 64);
            let direct = b.evaluate(z).unwrap().powu(2);
            let v = t.evaluate(z).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!((v - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let one = BlaschkeProduct::new(vec![], c(0.0, 1.0)).unwrap();
        assert!(matches!(
            compose(&BlaschkeProduct::monomial(2), &one),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn multiply_examples() {
        let z = BlaschkeProduct::monomial(1);
        assert_eq!(z.multiply(&z), BlaschkeProduct::monomial(2));
        assert_eq!(z.multiply(&BlaschkeProduct::monomial(3)).degree(), 4);
        let a = BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap();
        let b = BlaschkeProduct::mobius(c(-0.3, 0.0)).unwrap();
        let p = a.multiply(&b);
        assert_eq!(p.zeros(), &[c(0.5, 0.0), c(-0.3, 0.0)]);
        for k in 0..32 {
            let w = circle(k, 32) * 0.7;
            let want = a.evaluate(w).unwrap() * b.evaluate(w).unwrap();
            assert!((p.evaluate(w).unwrap() - want).norm() < 1e-15);
        }
    }

    #[test]
    fn divisor_counts() {
        let d = BlaschkeProduct::monomial(2).divisors().unwrap();
        let degs: Vec<usize> = d.iter().map(|b| b.degree()).collect();
        assert_eq!(degs, vec![0, 1, 2]);
        assert_eq!(
            BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap().divisors().unwrap().len(),
            2
        );
        let b = BlaschkeProduct::monomial(1).multiply(&BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap());
        assert_eq!(b.divisors().unwrap().len(), 4);
        assert!(matches!(
            BlaschkeProduct::monomial(21).divisors(),
            Err(Error::DegreeGuard(21))
        ));
    }

    #[test]
    fn derivative_examples() {
        assert!(BlaschkeProduct::monomial(2).derivative_at(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        let id = BlaschkeProduct::monomial(1);
        assert!((id.derivative_at(c(0.3, -0.2)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let theta = id.multiply(&BlaschkeProduct::mobius(c(0.4, 0.0)).unwrap());
        let h = 1e-6;
        let fd = (theta.evaluate(c(h, 0.0)).unwrap() - theta.evaluate(c(-h, 0.0)).unwrap()) / (2.0 * h);
        assert!((fd - c(0.4, 0.0)).norm() < 1e-8);
        assert!((theta.derivative_at(c(0.0, 0.0)).unwrap() - c(0.4, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn json_forms() {
        let b: BlaschkeProduct = serde_json::from_str(r#"{"monomial": 3}"#).unwrap();
        assert_eq!(b, BlaschkeProduct::monomial(3));
        let b: BlaschkeProduct = serde_json::from_str(r#"{"zeros": [[0.5, 0.0]], "constant": [-1.0, 0.0]}"#).unwrap();
        assert_eq!(b, BlaschkeProduct::mobius(c(0.5, 0.0)).unwrap());
        let back: BlaschkeProduct = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<BlaschkeProduct>(r#"{"zeros": [[1.5, 0.0]]}"#).is_err());
    }
}
