//! Symbols as rational functions of `z` restricted to the unit circle.
//!
//! On `|z| = 1` we have `z̄ = 1/z`, so every symbol built from kernels, Blaschke
//! products and their conjugates is a rational function of `z`. The denominator
//! is kept factored: each linear factor is either `z − p` with `|p| < 1`
//! ([`Factor::Inner`]) or `1 − q z` with `|q| < 1` ([`Factor::Outer`], pole at
//! `1/q`). Conjugation on the circle swaps the two kinds exactly, and Blaschke
//! denominators `1 − ā z` are stored without any inversion of `ā`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::modelspace::{ModelBasis, Quadrature};
use crate::poly::Poly;
use crate::tto::TtoMatrix;
use crate::C64;

/// Common-root cancellation threshold, relative to the numerator's 1-norm.
const REDUCE_TOL: f64 = 1e-10;
/// Minimum distance of a pole from the unit circle.
const CIRCLE_GUARD: f64 = 1e-8;
const FACTOR_MATCH: f64 = 1e-13;
const SAME_SYMBOL_TOL: f64 = 1e-10;
const STRUCTURAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Factor {
    /// `z − p`, `|p| < 1`
    Inner(C64),
    /// `1 − q z`, `|q| < 1`, pole at `1/q`
    Outer(C64),
}

impl Factor {
    pub fn eval(&self, z: C64) -> C64 {
        match *self {
            Factor::Inner(p) => z - p,
            Factor::Outer(q) => C64::new(1.0, 0.0) - q * z,
        }
    }

    /// Location of the pole this factor contributes.
    pub fn pole(&self) -> C64 {
        match *self {
            Factor::Inner(p) => p,
            Factor::Outer(q) => C64::new(1.0, 0.0) / q,
        }
    }

    fn matches(&self, other: &Factor) -> bool {
        match (self, other) {
            (Factor::Inner(a), Factor::Inner(b)) | (Factor::Outer(a), Factor::Outer(b)) => {
                (a - b).norm() <= FACTOR_MATCH
            }
            _ => false,
        }
    }

    /// Brings the parameter inside the closed disk; returns the scalar `s`
    /// with `old = s · new`.
    fn normalized(self) -> (C64, Option<Factor>) {
        let one = C64::new(1.0, 0.0);
        match self {
            Factor::Inner(p) if p.norm() > 1.0 => (-p, Some(Factor::Outer(one / p))),
            Factor::Outer(q) if q == C64::new(0.0, 0.0) => (one, None),
            Factor::Outer(q) if q.norm() > 1.0 => (-q, Some(Factor::Inner(one / q))),
            f => (one, Some(f)),
        }
    }

    fn parameter(&self) -> C64 {
        match *self {
            Factor::Inner(p) | Factor::Outer(p) => p,
        }
    }
}

/// A symbol, stored as a finite sum of reduced fractions.
///
/// Fractions are merged only when their denominators agree up to powers of
/// `z`. Bringing unrelated pole sets over one common denominator produces
/// numerators whose rounding error is amplified near poles close to the
/// circle, so sums such as `Σ B^j ψ_j` keep one fraction per pole pattern.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymbolRepr", into = "SymbolRepr")]
pub struct CircleRational {
    terms: Vec<Fraction>,
}

/// One summand of a [`CircleRational`].
#[derive(Clone, Copy, Debug)]
pub struct Term<'a> {
    pub numerator: &'a Poly,
    pub factors: &'a [Factor],
}

/// Denominators differ only by factors `z − 0`.
fn mergeable(a: &Fraction, b: &Fraction) -> bool {
    let mut rest: Vec<Option<Factor>> = a.den.iter().copied().map(Some).collect();
    for f in &b.den {
        match rest.iter_mut().find(|s| s.is_some_and(|s| s.matches(f))) {
            Some(slot) => *slot = None,
            None if *f == Factor::Inner(C64::new(0.0, 0.0)) => {}
            None => return false,
        }
    }
    rest.into_iter()
        .flatten()
        .all(|f| f == Factor::Inner(C64::new(0.0, 0.0)))
}

impl CircleRational {
    fn single(f: Fraction) -> Self {
        let mut r = CircleRational { terms: Vec::new() };
        r.push(f);
        r
    }

    fn push(&mut self, f: Fraction) {
        if f.is_zero() {
            return;
        }
        if let Some(i) = self.terms.iter().position(|t| mergeable(t, &f)) {
            let merged = self.terms[i].add(&f);
            if merged.is_zero() {
                self.terms.remove(i);
            } else {
                self.terms[i] = merged;
            }
            return;
        }
        self.terms.push(f);
    }

    fn collect(fractions: impl IntoIterator<Item = Fraction>) -> Self {
        let mut r = CircleRational { terms: Vec::new() };
        for f in fractions {
            r.push(f);
        }
        r
    }

    /// Builds `num / Π den`, normalizing factors, cancelling common roots and
    /// rejecting poles on the circle.
    pub fn from_factors(num: Poly, den: Vec<Factor>) -> Result<Self> {
        Ok(Self::single(Fraction::from_factors(num, den)?))
    }

    pub fn zero() -> Self {
        CircleRational { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::single(Fraction::constant(c))
    }

    pub fn polynomial(p: Poly) -> Self {
        Self::single(Fraction::polynomial(p))
    }

    /// `c · z^k` for any integer `k`.
    pub fn monomial(k: i32, c: C64) -> Self {
        Self::single(Fraction::monomial(k, c))
    }

    /// `z^k`
    pub fn z_pow(k: i32) -> Self {
        Self::monomial(k, C64::new(1.0, 0.0))
    }

    /// Trigonometric polynomial `Σ c_k z^k`.
    pub fn laurent(terms: &BTreeMap<i32, C64>) -> Self {
        Self::single(Fraction::laurent(terms))
    }

    /// The Blaschke product as a rational function.
    pub fn from_blaschke(b: &BlaschkeProduct) -> Self {
        Self::single(Fraction::from_blaschke(b))
    }

    /// `B^j`, where negative powers mean `B̄^{|j|} = B^{-|j|}` on the circle.
    pub fn blaschke_power(b: &BlaschkeProduct, j: i32) -> Self {
        Self::single(Fraction::blaschke_power(b, j))
    }

    /// Cauchy kernel `1/(1 − λ̄ z)` for `|λ| < 1`.
    pub fn cauchy(lambda: C64) -> Result<Self> {
        Self::from_factors(Poly::one(), vec![Factor::Outer(lambda.conj())])
    }

    /// Parses ascending numerator/denominator coefficients; the denominator is
    /// factored through its roots.
    pub fn from_coefficients(num: Vec<C64>, den: Vec<C64>) -> Result<Self> {
        Ok(Self::single(Fraction::from_coefficients(num, den)?))
    }

    /// Ascending coefficients `(num, den)` of the whole sum over a common
    /// monic denominator.
    pub fn to_coefficients(&self) -> (Vec<C64>, Vec<C64>) {
        self.terms
            .iter()
            .fold(Fraction::constant(C64::new(0.0, 0.0)), |acc, t| acc.add(t))
            .to_coefficients()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term<'_>> {
        self.terms.iter().map(|t| Term {
            numerator: &t.num,
            factors: &t.den,
        })
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_reduced(&self) -> bool {
        self.terms.iter().all(|t| t.reduced)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// No summand has a pole in the closed disk.
    pub fn is_analytic(&self) -> bool {
        self.terms.iter().all(Fraction::is_analytic)
    }

    pub fn poles(&self) -> Vec<C64> {
        self.terms.iter().flat_map(|t| t.den.iter().map(Factor::pole)).collect()
    }

    pub fn evaluate(&self, z: C64) -> C64 {
        self.terms.iter().map(|t| t.evaluate(z)).sum()
    }

    pub fn scale(&self, c: C64) -> Self {
        if c == C64::new(0.0, 0.0) {
            return Self::zero();
        }
        CircleRational {
            terms: self.terms.iter().map(|t| t.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &CircleRational) -> Self {
        let mut r = self.clone();
        for t in &other.terms {
            r.push(t.clone());
        }
        r
    }

    pub fn sub(&self, other: &CircleRational) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &CircleRational) -> Self {
        Self::collect(
            self.terms
                .iter()
                .flat_map(|a| other.terms.iter().map(move |b| a.mul(b))),
        )
    }

    pub fn powi(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `s(z) = conj(r(1/z̄))`; on the circle `s = r̄` pointwise.
    pub fn circle_conjugate(&self) -> Self {
        Self::collect(self.terms.iter().map(Fraction::circle_conjugate))
    }

    /// `r ∘ B`. Poles of `r` pull back to the solutions of `B(z) = pole`.
    pub fn compose_blaschke(&self, b: &BlaschkeProduct) -> Result<Self> {
        let mut out = Vec::new();
        for t in &self.terms {
            match t.laurent_shift() {
                // Σ c_k B^{k−s}: one fraction per power keeps the pole orders low
                Some(shift) if b.degree() > 0 => {
                    for (k, c) in t.num.coeffs().iter().enumerate() {
                        if *c != C64::new(0.0, 0.0) {
                            out.push(Fraction::blaschke_power(b, k as i32 - shift as i32).scale(*c));
                        }
                    }
                }
                _ => out.push(t.compose_blaschke(b)?),
            }
        }
        Ok(Self::collect(out))
    }

    /// Fails with [`Error::CirclePole`] when a pole lies within `1e-8` of the circle.
    pub fn validate(&self) -> Result<()> {
        self.terms.iter().try_for_each(Fraction::check_circle)
    }
}

/// One reduced fraction `num / Π den`.
#[derive(Clone, Debug, PartialEq)]
struct Fraction {
    num: Poly,
    den: Vec<Factor>,
    reduced: bool,
}

impl Fraction {
    /// Builds `num / Π den`, normalizing factors, cancelling common roots and
    /// rejecting poles on the circle.
    fn from_factors(num: Poly, den: Vec<Factor>) -> Result<Self> {
        let mut scale = C64::new(1.0, 0.0);
        let mut factors = Vec::with_capacity(den.len());
        for f in den {
            let (s, nf) = f.normalized();
            scale *= s;
            factors.extend(nf);
        }
        let mut r = Fraction {
            num: num.scale(C64::new(1.0, 0.0) / scale),
            den: factors,
            reduced: false,
        };
        r.reduce();
        r.check_circle()?;
        Ok(r)
    }

    fn zero() -> Self {
        Self::constant(C64::new(0.0, 0.0))
    }

    fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    fn constant(c: C64) -> Self {
        Fraction {
            num: Poly::constant(c),
            den: Vec::new(),
            reduced: true,
        }
    }

    fn polynomial(p: Poly) -> Self {
        Fraction {
            num: p,
            den: Vec::new(),
            reduced: true,
        }
    }

    /// `c · z^k` for any integer `k`.
    fn monomial(k: i32, c: C64) -> Self {
        if k >= 0 {
            Self::polynomial(Poly::monomial(k as usize, c))
        } else {
            Fraction {
                num: Poly::constant(c),
                den: vec![Factor::Inner(C64::new(0.0, 0.0)); (-k) as usize],
                reduced: true,
            }
        }
    }

    /// Trigonometric polynomial `Σ c_k z^k`.
    fn laurent(terms: &BTreeMap<i32, C64>) -> Self {
        let lo = terms.keys().next().copied().unwrap_or(0).min(0);
        let shift = (-lo) as usize;
        let hi = terms.keys().last().copied().unwrap_or(0).max(0);
        let mut coeffs = vec![C64::new(0.0, 0.0); (hi - lo) as usize + 1];
        for (k, c) in terms {
            coeffs[(*k - lo) as usize] += c;
        }
        let r = Fraction {
            num: Poly::new(coeffs),
            den: vec![Factor::Inner(C64::new(0.0, 0.0)); shift],
            reduced: false,
        };
        r.into_reduced()
    }

    /// The Blaschke product as a rational function.
    fn from_blaschke(b: &BlaschkeProduct) -> Self {
        let den = b
            .zeros()
            .iter()
            .filter(|a| a.norm() > 0.0)
            .map(|a| Factor::Outer(a.conj()))
            .collect();
        Fraction {
            num: b.numerator().scale(b.constant()),
            den,
            reduced: true,
        }
    }

    /// `B^j`, where negative powers mean `B̄^{|j|} = B^{-|j|}` on the circle.
    fn blaschke_power(b: &BlaschkeProduct, j: i32) -> Self {
        if j >= 0 {
            return Self::from_blaschke(b).powi(j as usize);
        }
        let inv = Fraction {
            num: b.denominator().scale(b.constant().conj()),
            den: b.zeros().iter().map(|a| Factor::Inner(*a)).collect(),
            reduced: true,
        };
        inv.powi((-j) as usize)
    }

    /// Parses ascending numerator/denominator coefficients; the denominator is
    /// factored through its roots.
    fn from_coefficients(num: Vec<C64>, den: Vec<C64>) -> Result<Self> {
        let den = Poly::new(den);
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let lead = den.leading();
        let roots = den.roots()?;
        let factors = roots.into_iter().map(Factor::Inner).collect();
        Self::from_factors(Poly::new(num).scale(C64::new(1.0, 0.0) / lead), factors)
    }

    /// Ascending coefficients `(num, den)` with a monic denominator.
    fn to_coefficients(&self) -> (Vec<C64>, Vec<C64>) {
        let den = self.den.iter().fold(Poly::one(), |acc, f| match *f {
            Factor::Inner(p) => acc.mul_linear(p),
            Factor::Outer(q) => acc.mul_outer(q),
        });
        let lead = den.leading();
        let inv = C64::new(1.0, 0.0) / lead;
        let mut num = self.num.scale(inv).coeffs().to_vec();
        if num.is_empty() {
            num.push(C64::new(0.0, 0.0));
        }
        (num, den.scale(inv).coeffs().to_vec())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// No poles in the closed disk.
    fn is_analytic(&self) -> bool {
        self.den.iter().all(|f| matches!(f, Factor::Outer(_)))
    }

    fn evaluate(&self, z: C64) -> C64 {
        let d = self.den.iter().fold(C64::new(1.0, 0.0), |acc, f| acc * f.eval(z));
        self.num.eval(z) / d
    }

    fn scale(&self, c: C64) -> Self {
        if c == C64::new(0.0, 0.0) {
            return Self::zero();
        }
        Fraction {
            num: self.num.scale(c),
            den: self.den.clone(),
            reduced: self.reduced,
        }
    }

    fn add(&self, other: &Fraction) -> Self {
        let mut unmatched_self: Vec<Option<Factor>> = self.den.iter().copied().map(Some).collect();
        let mut common = Vec::new();
        let mut only_other = Vec::new();
        for f in &other.den {
            match unmatched_self.iter_mut().find(|s| s.is_some_and(|s| s.matches(f))) {
                Some(slot) => {
                    common.push(slot.take().unwrap());
                }
                None => only_other.push(*f),
            }
        }
        let only_self: Vec<Factor> = unmatched_self.into_iter().flatten().collect();
        let lhs = mul_factors(&self.num, &only_other);
        let rhs = mul_factors(&other.num, &only_self);
        let mut den = common;
        den.extend(only_self);
        den.extend(only_other);
        Fraction {
            num: &lhs + &rhs,
            den,
            reduced: false,
        }
        .into_reduced()
    }

    fn mul(&self, other: &Fraction) -> Self {
        let mut den = self.den.clone();
        den.extend_from_slice(&other.den);
        Fraction {
            num: &self.num * &other.num,
            den,
            reduced: false,
        }
        .into_reduced()
    }

    fn powi(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `s(z) = conj(r(1/z̄))`; on the circle `s = r̄` pointwise.
    fn circle_conjugate(&self) -> Self {
        let m = self.num.len().saturating_sub(1);
        // conj(n(1/z̄)) = rev(n̄)(z) / z^m
        let mut num = self.num.conj_coeffs().reversed(m + 1);
        let mut den = Vec::with_capacity(self.den.len());
        let mut z_power: i64 = -(m as i64);
        for f in &self.den {
            match *f {
                // 1/conj(1/z̄ − p) = z/(1 − p̄ z)
                Factor::Inner(p) => {
                    z_power += 1;
                    if p != C64::new(0.0, 0.0) {
                        den.push(Factor::Outer(p.conj()));
                    }
                }
                // 1/conj(1 − q/z̄) = z/(z − q̄)
                Factor::Outer(q) => {
                    z_power += 1;
                    den.push(Factor::Inner(q.conj()));
                }
            }
        }
        if z_power >= 0 {
            num = num.shift_up(z_power as usize);
        } else {
            den.extend(std::iter::repeat_n(
                Factor::Inner(C64::new(0.0, 0.0)),
                (-z_power) as usize,
            ));
        }
        Fraction {
            num,
            den,
            reduced: false,
        }
        .into_reduced()
    }

    /// `r ∘ B`. Poles of `r` pull back to the solutions of `B(z) = pole`.
    /// `s` when the fraction is `num / z^s`.
    fn laurent_shift(&self) -> Option<usize> {
        self.den
            .iter()
            .all(|f| *f == Factor::Inner(C64::new(0.0, 0.0)))
            .then_some(self.den.len())
    }

    fn compose_blaschke(&self, b: &BlaschkeProduct) -> Result<Self> {
        if self.num.is_zero() {
            return Ok(Self::zero());
        }
        if b.degree() == 0 {
            // constant B = c
            let v = self.evaluate(b.constant());
            return Ok(Self::constant(v));
        }
        let c = b.constant();
        let n_poly = b.numerator().scale(c);
        let d_poly = b.denominator();
        let m = self.num.len() - 1;
        // Σ n_k (cN)^k D^{m-k}
        let mut num = Poly::zero();
        let mut npow = Poly::one();
        let dpows: Vec<Poly> = {
            let mut v = vec![Poly::one()];
            for k in 1..=m {
                v.push(&v[k - 1] * &d_poly);
            }
            v
        };
        for k in 0..=m {
            let term = (&npow * &dpows[m - k]).scale(self.num.coeff(k));
            num = &num + &term;
            npow = &npow * &n_poly;
        }
        let p_count = self.den.len();
        let mut den = Vec::new();
        if p_count >= m {
            num = &num * &d_poly.pow(p_count - m);
        } else {
            for _ in 0..(m - p_count) {
                den.extend(
                    b.zeros()
                        .iter()
                        .filter(|a| a.norm() > 0.0)
                        .map(|a| Factor::Outer(a.conj())),
                );
            }
        }
        let mut scale = C64::new(1.0, 0.0);
        for f in &self.den {
            match *f {
                Factor::Inner(p) => {
                    // cN − pD = lead · Π (z − r)
                    let g = &n_poly - &d_poly.scale(p);
                    scale *= g.leading();
                    den.extend(b.preimages(p)?.into_iter().map(Factor::Inner));
                }
                Factor::Outer(q) => {
                    // D − q cN = g(0) · Π (1 − s z), s inside the disk
                    let g = &d_poly - &n_poly.scale(q);
                    let deg = b.degree();
                    let rev = g.reversed(deg + 1);
                    scale *= g.coeff(0);
                    let roots = rev.roots()?;
                    for s in &roots {
                        if !(s.norm() < 1.0) {
                            return Err(Error::RootFinding(format!(
                                "pulled-back pole parameter {s} not inside the disk"
                            )));
                        }
                    }
                    den.extend(roots.into_iter().map(Factor::Outer));
                }
            }
        }
        Self::from_factors(num.scale(C64::new(1.0, 0.0) / scale), den)
    }

    fn into_reduced(mut self) -> Self {
        self.reduce();
        self
    }

    fn reduce(&mut self) {
        if self.num.coeffs().iter().all(|c| *c == C64::new(0.0, 0.0)) {
            self.num = Poly::zero();
            self.den.clear();
            self.reduced = true;
            return;
        }
        'outer: loop {
            let scale = self.num.norm1();
            for i in 0..self.den.len() {
                let f = self.den[i];
                let (val, quotient) = match f {
                    Factor::Inner(p) => {
                        let (q, r) = self.num.div_linear(p);
                        (r, q)
                    }
                    Factor::Outer(q) => {
                        let (m, r) = self.num.div_outer(q);
                        (r, m)
                    }
                };
                if val.norm() <= REDUCE_TOL * scale {
                    self.num = quotient;
                    self.den.remove(i);
                    continue 'outer;
                }
            }
            break;
        }
        self.reduced = true;
    }

    fn check_circle(&self) -> Result<()> {
        for f in &self.den {
            if f.parameter().norm() > 1.0 - CIRCLE_GUARD {
                return Err(Error::CirclePole(f.pole()));
            }
        }
        Ok(())
    }
}

fn mul_factors(p: &Poly, factors: &[Factor]) -> Poly {
    factors.iter().fold(p.clone(), |acc, f| match *f {
        Factor::Inner(r) => acc.mul_linear(r),
        Factor::Outer(q) => acc.mul_outer(q),
    })
}

/// `A^Θ_φ = A^Θ_ψ`, decided by comparing the two compressions entrywise.
pub fn same_symbol(phi: &CircleRational, psi: &CircleRational, basis: &ModelBasis) -> Result<bool> {
    let a = TtoMatrix::build(basis, phi)?;
    let b = TtoMatrix::build(basis, psi)?;
    let diff = (&a.matrix - &b.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(diff <= SAME_SYMBOL_TOL)
}

/// Structural form of [`same_symbol`]: `χ = φ − ψ` lies in `ΘH² + conj(ΘH²)`.
///
/// Writing `χ = χ₊ + χ₋` (analytic and conjugate-analytic parts), membership
/// holds iff for some scalar `c` both `P_Θ χ₊ = c̄ k₀` and `P_Θ conj(χ₋) = −c k₀`.
/// Both projections are computed from `χ` alone by circle quadrature.
pub fn same_symbol_structural(phi: &CircleRational, psi: &CircleRational, basis: &ModelBasis) -> Result<bool> {
    let chi = phi.sub(psi);
    let chi_bar = chi.circle_conjugate();
    let n = basis.dim();
    let zero = C64::new(0.0, 0.0);
    let a = basis.project(&chi)?;
    let chi0 = basis.inner_product(&chi, &CircleRational::one())?;
    let b_full = basis.project(&chi_bar)?;
    let e0: Vec<C64> = (0..n).map(|k| basis.element(k).evaluate(zero)).collect();
    let kappa: Vec<C64> = e0.iter().map(|v| v.conj()).collect();
    let b: Vec<C64> = (0..n).map(|k| b_full[k] - (chi0 * e0[k]).conj()).collect();
    let kk: f64 = kappa.iter().map(|v| v.norm_sqr()).sum();
    // least-squares c from b = −c κ
    let c = -kappa.iter().zip(&b).map(|(k, bv)| k.conj() * bv).sum::<C64>() / kk;
    let ra: f64 = (0..n)
        .map(|k| (a[k] - c.conj() * kappa[k]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let rb: f64 = (0..n).map(|k| (b[k] + c * kappa[k]).norm_sqr()).sum::<f64>().sqrt();
    Ok(ra <= STRUCTURAL_TOL && rb <= STRUCTURAL_TOL)
}

/// Convenience wrapper that builds the basis of `theta` with default quadrature.
pub fn same_symbol_for(phi: &CircleRational, psi: &CircleRational, theta: &BlaschkeProduct) -> Result<bool> {
    same_symbol(phi, psi, &ModelBasis::new(theta, Quadrature::default())?)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SymbolRepr {
    Laurent {
        laurent: BTreeMap<String, [f64; 2]>,
    },
    Ratio {
        num: Vec<[f64; 2]>,
        #[serde(default = "unit_den")]
        den: Vec<[f64; 2]>,
        /// Exact pole data for the monic `den`; avoids refactoring multiple roots.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        factors: Option<FactorRepr>,
        /// Exact summands; when present they define the symbol and `num`/`den`
        /// are informational.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        terms: Option<Vec<TermRepr>>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorRepr {
    /// `p` in a factor `z − p`
    #[serde(default)]
    inner: Vec<[f64; 2]>,
    /// `q` in a factor `1 − q z`
    #[serde(default)]
    outer: Vec<[f64; 2]>,
}

/// `num / (Π (z − p) · Π (1 − q z))`
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    num: Vec<[f64; 2]>,
    #[serde(default)]
    inner: Vec<[f64; 2]>,
    #[serde(default)]
    outer: Vec<[f64; 2]>,
}

fn unit_den() -> Vec<[f64; 2]> {
    vec![[1.0, 0.0]]
}

fn cx(v: &[f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

fn pair(c: &C64) -> [f64; 2] {
    [c.re, c.im]
}

fn factor_list(inner: &[[f64; 2]], outer: &[[f64; 2]]) -> Result<Vec<Factor>> {
    if outer.iter().any(|q| q[0] == 0.0 && q[1] == 0.0) {
        return Err(Error::Invalid("outer factor 1 − 0·z is trivial".into()));
    }
    let mut list: Vec<Factor> = inner.iter().map(|p| Factor::Inner(cx(p))).collect();
    list.extend(outer.iter().map(|q| Factor::Outer(cx(q))));
    Ok(list)
}

fn split_factors(den: &[Factor]) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for f in den {
        match f {
            Factor::Inner(p) => inner.push(pair(p)),
            Factor::Outer(q) => outer.push(pair(q)),
        }
    }
    (inner, outer)
}

impl TryFrom<SymbolRepr> for CircleRational {
    type Error = Error;
    fn try_from(r: SymbolRepr) -> Result<Self> {
        match r {
            SymbolRepr::Laurent { laurent } => {
                let mut terms = BTreeMap::new();
                for (k, v) in &laurent {
                    let k: i32 = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Invalid(format!("laurent key {k:?} is not an integer")))?;
                    *terms.entry(k).or_insert(C64::new(0.0, 0.0)) += cx(v);
                }
                Ok(CircleRational::laurent(&terms))
            }
            SymbolRepr::Ratio {
                factors: Some(_),
                terms: Some(_),
                ..
            } => Err(Error::Invalid("give either `factors` or `terms`, not both".into())),
            SymbolRepr::Ratio { terms: Some(terms), .. } => {
                let mut sum = CircleRational::zero();
                for t in &terms {
                    let list = factor_list(&t.inner, &t.outer)?;
                    sum = sum.add(&CircleRational::from_factors(
                        Poly::new(t.num.iter().map(cx).collect()),
                        list,
                    )?);
                }
                Ok(sum)
            }
            SymbolRepr::Ratio {
                num,
                den,
                factors: None,
                ..
            } => CircleRational::from_coefficients(num.iter().map(cx).collect(), den.iter().map(cx).collect()),
            SymbolRepr::Ratio {
                num,
                den,
                factors: Some(f),
                ..
            } => {
                let list = factor_list(&f.inner, &f.outer)?;
                if list.len() + 1 != den.len().max(1) {
                    return Err(Error::Invalid(format!(
                        "{} pole factors for a denominator of degree {}",
                        list.len(),
                        den.len().saturating_sub(1)
                    )));
                }
                // `num / den` has a monic denominator; rescale to the factored one
                let lead = list.iter().fold(C64::new(1.0, 0.0), |acc, fct| match fct {
                    Factor::Inner(_) => acc,
                    Factor::Outer(q) => acc * -q,
                });
                CircleRational::from_factors(Poly::new(num.iter().map(cx).collect()).scale(lead), list)
            }
        }
    }
}

impl From<CircleRational> for SymbolRepr {
    fn from(r: CircleRational) -> Self {
        let (num, den) = r.to_coefficients();
        let (factors, terms) = match r.terms.as_slice() {
            [] => (None, None),
            [t] if t.den.is_empty() => (None, None),
            [t] => {
                let (inner, outer) = split_factors(&t.den);
                (Some(FactorRepr { inner, outer }), None)
            }
            many => {
                let terms = many
                    .iter()
                    .map(|t| {
                        let (inner, outer) = split_factors(&t.den);
                        let mut num: Vec<[f64; 2]> = t.num.coeffs().iter().map(pair).collect();
                        if num.is_empty() {
                            num.push([0.0, 0.0]);
                        }
                        TermRepr { num, inner, outer }
                    })
                    .collect();
                (None, Some(terms))
            }
        };
        SymbolRepr::Ratio {
            num: num.iter().map(pair).collect(),
            den: den.iter().map(pair).collect(),
            factors,
            terms,
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

    fn circle(n: usize) -> impl Iterator<Item = C64> {
        (0..n).map(move |k| C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64 + 0.05))
    }

    fn max_diff(a: &CircleRational, f: impl Fn(C64) -> C64, n: usize) -> f64 {
        circle(n).map(|z| (a.evaluate(z) - f(z)).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn sum_of_z_and_inverse() {
        let s = CircleRational::z_pow(1).add(&CircleRational::z_pow(-1));
        // (z² + 1)/z, a single fraction
        let t: Vec<Term> = s.terms().collect();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].numerator.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(t[0].factors, &[Factor::Inner(c(0.0, 0.0))]);
    }

    #[test]
    fn product_cancels() {
        let p = CircleRational::z_pow(1).mul(&CircleRational::z_pow(-1));
        let t: Vec<Term> = p.terms().collect();
        assert!(t[0].factors.is_empty());
        assert_eq!(t[0].numerator.coeffs(), &[c(1.0, 0.0)]);
    }

    #[test]
    fn sum_of_cauchy_kernels() {
        let a = CircleRational::cauchy(c(0.5, 0.0)).unwrap();
        let b = CircleRational::cauchy(c(0.25, 0.0)).unwrap();
        let s = a.add(&b);
        assert_eq!(s.term_count(), 2);
        let want = |z: C64| (c(2.0, 0.0) - 0.75 * z) / ((1.0 - 0.5 * z) * (1.0 - 0.25 * z));
        assert!(max_diff(&s, want, 32) < 1e-12);
        let (num, den) = s.to_coefficients();
        assert_eq!(den.len(), 3);
        let back = CircleRational::from_coefficients(num, den).unwrap();
        assert!(max_diff(&back, want, 32) < 1e-12);
        assert!(s.sub(&a).sub(&b).is_zero());
    }

    #[test]
    fn conjugate_examples() {
        let zc = CircleRational::z_pow(1).circle_conjugate();
        assert!(max_diff(&zc, |z| 1.0 / z, 16) < 1e-15);
        let one = CircleRational::one().circle_conjugate();
        assert!(max_diff(&one, |_| c(1.0, 0.0), 4) < 1e-15);
        let k = CircleRational::cauchy(c(0.5, 0.0)).unwrap();
        let kc = k.circle_conjugate();
        assert!(max_diff(&kc, |z| k.evaluate(z).conj(), 32) < 1e-12);
    }

    #[test]
    fn compose_examples() {
        let z2 = BlaschkeProduct::monomial(2);
        let r = CircleRational::z_pow(1).compose_blaschke(&z2).unwrap();
        assert!(max_diff(&r, |z| z * z, 16) < 1e-15);
        let r = CircleRational::z_pow(-1).compose_blaschke(&z2).unwrap();
        assert!(max_diff(&r, |z| 1.0 / (z * z), 16) < 1e-14);
    }

    #[test]
    fn circle_pole_rejected() {
        let err = CircleRational::from_factors(Poly::one(), vec![Factor::Inner(c(1.0, 0.0))]);
        assert!(matches!(err, Err(Error::CirclePole(_))));
        let err = CircleRational::from_coefficients(vec![c(1.0, 0.0)], vec![c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(err, Err(Error::CirclePole(_))));
    }

    #[test]
    fn json_roundtrip_and_laurent() {
        let r: CircleRational =
            serde_json::from_str(r#"{"laurent": {"-1": [2.0, 0.0], "0": [1.0, 0.0], "1": [3.0, 0.0]}}"#).unwrap();
        assert!(max_diff(&r, |z| 2.0 / z + 1.0 + 3.0 * z, 16) < 1e-14);
        let k = CircleRational::cauchy(c(0.5, 0.2))
            .unwrap()
            .mul(&CircleRational::z_pow(-2));
        let s = serde_json::to_string(&k).unwrap();
        let back: CircleRational = serde_json::from_str(&s).unwrap();
        assert!(max_diff(&back, |z| k.evaluate(z), 32) < 1e-12);
    }

    #[test]
    fn blaschke_powers_on_circle() {
        let b = BlaschkeProduct::new(vec![c(0.3, 0.4), c(0.0, 0.0)], C64::from_polar(1.0, 1.0)).unwrap();
        for j in -2..=2 {
            let r = CircleRational::blaschke_power(&b, j);
            let want = |z: C64| b.evaluate(z).unwrap().powi(j);
            assert!(max_diff(&r, want, 32) < 1e-13, "power {j}");
        }
    }

    #[test]
    fn multi_term_json_is_exact() {
        let b = BlaschkeProduct::new(vec![c(0.75, 0.2), c(-0.3, 0.1)], C64::from_polar(1.0, 0.3)).unwrap();
        let s = (1..=3).fold(CircleRational::zero(), |acc, j| {
            acc.add(&CircleRational::blaschke_power(&b, j).mul(&CircleRational::cauchy(c(0.75, 0.2)).unwrap()))
        });
        assert!(s.term_count() > 1);
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"terms\""));
        let back: CircleRational = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn factors_and_terms_conflict() {
        let text = r#"{"num": [[1,0]], "den": [[1,0]], "factors": {}, "terms": []}"#;
        assert!(serde_json::from_str::<CircleRational>(text).is_err());
    }
}
