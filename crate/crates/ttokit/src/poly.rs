//! Dense complex polynomials in ascending coefficient order.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::C64;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    /// Trailing exact zeros are dropped; the zero polynomial has no coefficients.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// `c · z^k`
    pub fn monomial(k: usize, c: C64) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `z − r`
    pub fn linear_root(r: C64) -> Self {
        Self::new(vec![-r, C64::new(1.0, 0.0)])
    }

    /// `Π (z − r)`
    pub fn from_roots(roots: &[C64]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| acc.mul_linear(*r))
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Length of the coefficient vector (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// `z^d p(1/z)` with `d = len − 1`, padded so that the result has `len` slots.
    pub fn reversed(&self, len: usize) -> Self {
        let size = len.max(self.coeffs.len());
        let mut v = vec![C64::new(0.0, 0.0); size];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[size - 1 - k] = *c;
        }
        Self::new(v)
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C64::new(0.0, 0.0); k];
        v.extend_from_slice(&self.coeffs);
        Self::new(v)
    }

    /// Multiplies by `z − r`.
    pub fn mul_linear(&self, r: C64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut v = vec![C64::new(0.0, 0.0); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k + 1] += c;
            v[k] -= c * r;
        }
        Self::new(v)
    }

    /// Multiplies by `1 − q z`.
    pub fn mul_outer(&self, q: C64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut v = vec![C64::new(0.0, 0.0); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k] += c;
            v[k + 1] -= c * q;
        }
        Self::new(v)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Synthetic division by `z − r`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, r: C64) -> (Self, C64) {
        if self.coeffs.is_empty() {
            return (Self::zero(), C64::new(0.0, 0.0));
        }
        let n = self.coeffs.len();
        let mut q = vec![C64::new(0.0, 0.0); n - 1];
        let mut acc = C64::new(0.0, 0.0);
        for k in (0..n).rev() {
            acc = acc * r + self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        (Self::new(q), acc)
    }

    /// Division by `1 − q z`, performed on the reversed polynomial so that the
    /// recursion runs over the root `q` of modulus below one.
    pub fn div_outer(&self, q: C64) -> (Self, C64) {
        if self.coeffs.is_empty() {
            return (Self::zero(), C64::new(0.0, 0.0));
        }
        let n = self.coeffs.len();
        // p(z) = (1 − q z) m(z) + rem  <=>  rev(p)(w) = (w − q) rev(m)(w) + rem w^{n-1}
        let rev: Vec<C64> = self.coeffs.iter().rev().copied().collect();
        let (quot, rem) = Poly { coeffs: rev }.div_linear(q);
        let mut m: Vec<C64> = quot.coeffs.clone();
        m.resize(n - 1, C64::new(0.0, 0.0));
        m.reverse();
        (Self::new(m), rem)
    }

    /// Taylor coefficients about `p`: `self(z) = Σ t_k (z − p)^k`, first `count` terms.
    pub fn taylor_at(&self, p: C64, count: usize) -> Vec<C64> {
        let mut out = Vec::with_capacity(count);
        let mut cur = self.clone();
        for _ in 0..count {
            let (q, r) = cur.div_linear(p);
            out.push(r);
            cur = q;
        }
        out
    }

    /// All complex roots (with multiplicity) from the eigenvalues of the
    /// companion matrix, then polished by Newton steps. Clusters produced by a
    /// multiple root are replaced by their centroid when that does not worsen
    /// the residual.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let deg = match self.degree() {
            None => return Err(Error::RootFinding("zero polynomial".into())),
            Some(d) => d,
        };
        if deg == 0 {
            return Ok(Vec::new());
        }
        let lead = self.leading();
        if deg == 1 {
            return Ok(vec![-self.coeffs[0] / lead]);
        }
        let mut comp = DMatrix::<C64>::zeros(deg, deg);
        for i in 1..deg {
            comp[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        for i in 0..deg {
            comp[(i, deg - 1)] = -self.coeffs[i] / lead;
        }
        let mut roots = crate::linalg::eigenvalues(&comp)
            .ok_or_else(|| Error::RootFinding("companion Schur iteration failed".into()))?;
        self.refine(&mut roots);
        if roots.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
            return Err(Error::RootFinding("non-finite root".into()));
        }
        Ok(roots)
    }

    fn residual_at(&self, z: C64) -> f64 {
        let scale: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * z.norm().powi(k as i32))
            .sum();
        self.eval(z).norm() / scale.max(f64::MIN_POSITIVE)
    }

    fn polish(&self, mut z: C64) -> C64 {
        let deriv = self.derivative();
        let mut best = self.residual_at(z);
        for _ in 0..8 {
            let d = deriv.eval(z);
            if d.norm() == 0.0 {
                break;
            }
            let cand = z - self.eval(z) / d;
            let res = self.residual_at(cand);
            if res < best {
                best = res;
                z = cand;
            } else {
                break;
            }
        }
        z
    }

    /// Groups eigenvalues split off a multiple root. A cluster of size `m`
    /// is replaced by the simple root of `p^(m−1)` near its centroid.
    fn refine(&self, roots: &mut [C64]) {
        let n = roots.len();
        let raw = roots.to_vec();
        let mut used = vec![false; n];
        for i in 0..n {
            if used[i] {
                continue;
            }
            let scale = raw[i].norm().max(1.0);
            let members: Vec<usize> = (i..n)
                .filter(|&j| !used[j] && (raw[j] - raw[i]).norm() < 1e-4 * scale)
                .collect();
            let m = members.len();
            let simple = self.polish(raw[i]);
            if m < 2 {
                roots[i] = simple;
                used[i] = true;
                continue;
            }
            let centroid = members.iter().map(|&j| raw[j]).sum::<C64>() / m as f64;
            let mut d = self.clone();
            for _ in 1..m {
                d = d.derivative();
            }
            let merged = d.polish(centroid);
            let worst = members
                .iter()
                .map(|&j| self.residual_at(self.polish(raw[j])))
                .fold(0.0, f64::max);
            if self.residual_at(merged) <= 10.0 * worst + 1e-15 {
                for &j in &members {
                    roots[j] = merged;
                    used[j] = true;
                }
            } else {
                roots[i] = simple;
                used[i] = true;
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn synthetic_division_recovers_factor() {
        let p = Poly::from_roots(&[c(0.5, 0.1), c(-0.3, 0.0), c(2.0, -1.0)]);
        let (q, r) = p.div_linear(c(-0.3, 0.0));
        assert!(r.norm() < 1e-14);
        let back = q.mul_linear(c(-0.3, 0.0));
        for k in 0..4 {
            assert!((back.coeff(k) - p.coeff(k)).norm() < 1e-14);
        }
    }

    #[test]
    fn outer_division_inverts_outer_multiplication() {
        let base = Poly::new(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.25, 0.25)]);
        let q = c(0.3, -0.4);
        let (m, rem) = base.mul_outer(q).div_outer(q);
        assert!(rem.norm() < 1e-14);
        for k in 0..3 {
            assert!((m.coeff(k) - base.coeff(k)).norm() < 1e-14);
        }
    }

    #[test]
    fn roots_of_known_polynomial() {
        let want = [c(0.5, 0.0), c(-0.25, 0.75), c(0.1, -0.6)];
        let mut got = Poly::from_roots(&want).roots().unwrap();
        for w in want {
            let (idx, d) = got
                .iter()
                .enumerate()
                .map(|(i, g)| (i, (g - w).norm()))
                .fold((0, f64::MAX), |a, b| if b.1 < a.1 { b } else { a });
            assert!(d < 1e-12, "root {w} off by {d}");
            got.remove(idx);
        }
    }

    #[test]
    fn double_root_is_merged() {
        let r = c(0.3, 0.2);
        let roots = Poly::from_roots(&[r, r, c(-0.5, 0.0)]).roots().unwrap();
        let near: Vec<_> = roots.iter().filter(|z| (*z - r).norm() < 1e-6).collect();
        assert_eq!(near.len(), 2);
        for z in near {
            assert!((z - r).norm() < 1e-12);
        }
    }

    #[test]
    fn taylor_expansion_matches_eval() {
        let p = Poly::new(vec![c(1.0, 0.0), c(2.0, -1.0), c(0.0, 3.0)]);
        let center = c(0.2, 0.1);
        let t = p.taylor_at(center, 3);
        let z = c(0.7, -0.4);
        let v: C64 = t
            .iter()
            .enumerate()
            .map(|(k, tk)| tk * (z - center).powu(k as u32))
            .sum();
        assert!((v - p.eval(z)).norm() < 1e-13);
    }
}
