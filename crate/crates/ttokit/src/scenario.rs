//! Scenario files, per-scenario reports, and seeded scenario generation.
//!
//! A scenario is one JSON object naming a `check` and its inputs. Reports
//! are flat JSON objects; `pass` holds exactly when `residual_rel ≤ tolerance`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blaschke::{BlaschkeProduct, MODULUS_WARNING};
use crate::directsum::{self, sufficient_word_len, EquivVerdict};
use crate::error::{Error, Result};
use crate::linalg::complete_frame;
use crate::modelspace::{ModelBasis, Quadrature};
use crate::rankone::{self, RankOnePair};
use crate::sample;
use crate::symbols::CircleRational;
use crate::tensorcomp::{self, ResidualReport, DEFAULT_BAND};
use crate::tto::{matrix_from_rows, matrix_to_rows};
use crate::{CMatrix, CVector, C64, VERSION};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Main,
    Inflation,
    SameOrder,
    Block41,
    Block42,
    Thm51,
    Lemma52,
    Thm53,
    Equiv,
    RankOne,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Main,
        CheckKind::Inflation,
        CheckKind::SameOrder,
        CheckKind::Block41,
        CheckKind::Block42,
        CheckKind::Thm51,
        CheckKind::Lemma52,
        CheckKind::Thm53,
        CheckKind::Equiv,
        CheckKind::RankOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Main => "main",
            CheckKind::Inflation => "inflation",
            CheckKind::SameOrder => "same_order",
            CheckKind::Block41 => "block41",
            CheckKind::Block42 => "block42",
            CheckKind::Thm51 => "thm51",
            CheckKind::Lemma52 => "lemma52",
            CheckKind::Thm53 => "thm53",
            CheckKind::Equiv => "equiv",
            CheckKind::RankOne => "rank_one",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown check kind {s:?}")))
    }
}

type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub check: CheckKind,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<BlaschkeProduct>,
    #[serde(rename = "B2", default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<BlaschkeProduct>,
    #[serde(rename = "Theta", default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<BlaschkeProduct>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<CircleRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<CircleRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jband: Option<(i32, i32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phis: Option<Vec<CircleRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psis: Option<BTreeMap<i32, CircleRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_a: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_b: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_word_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Scenario {
    pub fn new(check: CheckKind) -> Self {
        Scenario {
            check,
            b: None,
            b2: None,
            theta: None,
            psi: None,
            phi: None,
            jband: None,
            n: None,
            phis: None,
            psis: None,
            zeta: None,
            x: None,
            y: None,
            matrix_a: None,
            matrix_b: None,
            max_word_len: None,
            tolerance: None,
            seed: None,
        }
    }

    /// Notes on inputs that are valid but numerically delicate.
    pub fn warnings(&self) -> Vec<String> {
        [("B", &self.b), ("B2", &self.b2), ("Theta", &self.theta)]
            .into_iter()
            .filter_map(|(name, b)| b.as_ref().map(|b| (name, b.max_zero_modulus())))
            .filter(|&(_, r)| r > MODULUS_WARNING)
            .map(|(name, r)| format!("{name} has a zero of modulus {r:.3}; quadrature may be slow or inaccurate"))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: CheckKind,
    pub scenario: Scenario,
    pub dims: Vec<usize>,
    pub residual_abs: Option<f64>,
    pub residual_rel: Option<f64>,
    pub pass: bool,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<EquivVerdict>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub wall_time_s: f64,
    pub version: String,
}

/// Run-wide defaults.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub tolerance: f64,
    pub quadrature: Quadrature,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tolerance: DEFAULT_TOLERANCE,
            quadrature: Quadrature::from_env(),
        }
    }
}

struct Outcome {
    dims: Vec<usize>,
    abs: f64,
    rel: f64,
    verdict: Option<EquivVerdict>,
    extras: BTreeMap<String, f64>,
    reason: Option<String>,
}

impl Outcome {
    fn from_residual(r: ResidualReport) -> Self {
        Outcome {
            dims: r.dims,
            abs: r.residual_abs,
            rel: r.residual_rel,
            verdict: None,
            extras: BTreeMap::new(),
            reason: None,
        }
    }

    fn extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }
}

fn need<'a, T>(v: &'a Option<T>, field: &str, check: CheckKind) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::Invalid(format!("check {check} needs field `{field}`")))
}

fn cvec(v: &[[f64; 2]]) -> CVector {
    CVector::from_vec(v.iter().map(|p| C64::new(p[0], p[1])).collect())
}

fn relative(residual: f64, a: &CMatrix, b: &CMatrix) -> f64 {
    let s = a.norm().max(b.norm());
    if s > 1e-12 {
        residual / s
    } else {
        residual
    }
}

fn evaluate(s: &Scenario, quad: Quadrature) -> Result<Outcome> {
    let k = s.check;
    match k {
        CheckKind::Main => {
            let one = CircleRational::one();
            let psi = s.psi.as_ref().unwrap_or(&one);
            let r = tensorcomp::verify_main_theorem(
                need(&s.b, "B", k)?,
                need(&s.theta, "Theta", k)?,
                psi,
                need(&s.phi, "phi", k)?,
                s.jband.unwrap_or(DEFAULT_BAND),
                quad,
            )?;
            Ok(Outcome::from_residual(r))
        }
        CheckKind::Inflation => {
            let r = tensorcomp::verify_inflation(
                need(&s.b, "B", k)?,
                need(&s.theta, "Theta", k)?,
                need(&s.phi, "phi", k)?,
                quad,
            )?;
            Ok(Outcome::from_residual(r.residual).extra("spectral_distance", r.spectral_distance))
        }
        CheckKind::SameOrder => {
            let b1 = need(&s.b, "B", k)?;
            let n = b1.degree() * need(&s.theta, "Theta", k)?.degree();
            let r = tensorcomp::verify_same_order(
                need(&s.theta, "Theta", k)?,
                need(&s.phi, "phi", k)?,
                b1,
                need(&s.b2, "B2", k)?,
                quad,
                s.max_word_len.unwrap_or_else(|| sufficient_word_len(n)),
            )?;
            let mut o = Outcome::from_residual(r.residual)
                .extra("spectral_distance", r.spectral_distance)
                .extra("unitarity_residual", r.witness.unitarity_residual);
            o.verdict = Some(r.verdict);
            Ok(o)
        }
        CheckKind::Block41 => {
            let theta = need(&s.theta, "Theta", k)?;
            let phis = need(&s.phis, "phis", k)?;
            let n = s.n.unwrap_or(phis.len());
            Ok(Outcome::from_residual(
                tensorcomp::block_toeplitz_4_1(theta, n, phis, quad)?.residual,
            ))
        }
        CheckKind::Block42 => {
            let b = need(&s.b, "B", k)?;
            let psis = need(&s.psis, "psis", k)?;
            let n = *need(&s.n, "n", k)?;
            Ok(Outcome::from_residual(
                tensorcomp::block_toeplitz_4_2(b, n, psis, quad)?.residual,
            ))
        }
        CheckKind::Thm51 => {
            let z = need(&s.zeta, "zeta", k)?;
            let r = directsum::theorem_5_1(
                need(&s.b, "B", k)?,
                need(&s.psi, "psi", k)?,
                C64::new(z[0], z[1]),
                *need(&s.n, "n", k)?,
                s.theta.as_ref(),
                quad,
            )?;
            let rel = relative(r.witness.residual, &r.tto.matrix, &r.target);
            Ok(Outcome {
                dims: vec![r.tto.dim(), r.target.nrows()],
                abs: r.witness.residual,
                rel,
                verdict: None,
                extras: BTreeMap::new(),
                reason: None,
            }
            .extra("unitarity_residual", r.witness.unitarity_residual)
            .extra("kernel_identity_residual", r.kernel_identity_residual))
        }
        CheckKind::Lemma52 => {
            let theta = need(&s.theta, "Theta", k)?;
            let d = directsum::kernel_decompose(theta, need(&s.phi, "phi", k)?, quad)?;
            Ok(Outcome {
                dims: vec![theta.degree(), d.kernel_dim, d.u.degree()],
                abs: d.projection_residual,
                rel: d.projection_residual,
                verdict: None,
                extras: BTreeMap::new(),
                reason: None,
            }
            .extra("divisibility_residual", d.divisibility_residual))
        }
        CheckKind::Thm53 => {
            let r = directsum::theorem_5_3(need(&s.theta, "Theta", k)?, need(&s.phi, "phi", k)?, quad)?;
            let rel = relative(r.witness.residual, &r.tto.matrix, &r.target);
            Ok(Outcome {
                dims: vec![
                    r.target.nrows() - r.decomposition.u.degree(),
                    r.decomposition.u.degree(),
                ],
                abs: r.witness.residual,
                rel,
                verdict: None,
                extras: BTreeMap::new(),
                reason: None,
            }
            .extra("unitarity_residual", r.witness.unitarity_residual)
            .extra("divisibility_residual", r.decomposition.divisibility_residual))
        }
        CheckKind::Equiv => {
            let a = matrix_from_rows(need(&s.matrix_a, "matrix_a", k)?)?;
            let b = matrix_from_rows(need(&s.matrix_b, "matrix_b", k)?)?;
            let len = s.max_word_len.unwrap_or_else(|| sufficient_word_len(a.nrows()));
            let verdict = directsum::unitary_equiv_check(&a, &b, len);
            let (res, reason) = match verdict {
                EquivVerdict::Equivalent => (0.0, None),
                EquivVerdict::Inequivalent => (1.0, Some("trace of some word differs".to_string())),
                EquivVerdict::Inconclusive => {
                    (1.0, Some(format!("algebra did not close within words of length {len}")))
                }
            };
            Ok(Outcome {
                dims: vec![a.nrows(), b.nrows()],
                abs: res,
                rel: res,
                verdict: Some(verdict),
                extras: BTreeMap::new(),
                reason,
            })
        }
        CheckKind::RankOne => {
            let one = CircleRational::one();
            let psi = s.psi.as_ref().unwrap_or(&one);
            let p = RankOnePair::new(cvec(need(&s.x, "x", k)?), cvec(need(&s.y, "y", k)?))?;
            let r = rankone::tensor_rank_one(need(&s.b, "B", k)?, psi, &p, quad)?;
            Ok(Outcome::from_residual(r.residual)
                .extra("witness_residual", r.witness.residual)
                .extra("realization_residual", r.realization.witness.residual))
        }
    }
}

pub fn run_scenario(s: &Scenario, settings: &Settings) -> Report {
    let start = Instant::now();
    let tolerance = s.tolerance.unwrap_or(settings.tolerance);
    let outcome = evaluate(s, settings.quadrature);
    let wall_time_s = start.elapsed().as_secs_f64();
    match outcome {
        Ok(o) => Report {
            check: s.check,
            scenario: s.clone(),
            dims: o.dims,
            residual_abs: Some(o.abs),
            residual_rel: Some(o.rel),
            pass: o.rel <= tolerance,
            tolerance,
            verdict: o.verdict,
            extras: o.extras,
            reason: o.reason,
            warnings: s.warnings(),
            wall_time_s,
            version: VERSION.to_string(),
        },
        Err(e) => Report {
            check: s.check,
            scenario: s.clone(),
            dims: Vec::new(),
            residual_abs: None,
            residual_rel: None,
            pass: false,
            tolerance,
            verdict: None,
            extras: BTreeMap::new(),
            reason: Some(e.to_string()),
            warnings: s.warnings(),
            wall_time_s,
            version: VERSION.to_string(),
        },
    }
}

/// Runs scenarios on `jobs` threads; reports come back in input order.
pub fn run_all(scenarios: &[Scenario], settings: &Settings, jobs: usize) -> Result<Vec<Report>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(|| scenarios.par_iter().map(|s| run_scenario(s, settings)).collect()))
}

/// Parses a single scenario object or an array of them.
pub fn parse_scenarios(text: &str, origin: &str) -> Result<Vec<Scenario>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("{origin}: {e}")))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .enumerate()
        .map(|(i, v)| serde_json::from_value(v).map_err(|e| Error::Invalid(format!("{origin}: scenario {i}: {e}"))))
        .collect()
}

/// Scenarios from a file, or from every `*.json` file of a directory in name order.
pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>> {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())));
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        let mut out = Vec::new();
        for f in files {
            out.extend(parse_scenarios(&read(&f)?, &f.display().to_string())?);
        }
        Ok(out)
    } else {
        parse_scenarios(&read(path)?, &path.display().to_string())
    }
}

fn pair_of(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

/// Random instance of `kind`; all inputs drawn from `rng` only.
pub fn random_scenario<R: Rng>(rng: &mut R, kind: CheckKind, max_degree: usize, quad: Quadrature) -> Result<Scenario> {
    let max_degree = max_degree.max(1);
    let small = max_degree.min(3);
    let mut s = Scenario::new(kind);
    match kind {
        CheckKind::Main => {
            let b = sample::blaschke_up_to(rng, small);
            let basis = ModelBasis::new(&b, quad)?;
            let band = sample::band(rng);
            s.psi = Some(sample::band_symbol(rng, &basis, band.0, band.1));
            s.theta = Some(sample::blaschke_up_to(rng, small));
            s.phi = Some(sample::laurent(rng, 3));
            s.jband = Some(band);
            s.b = Some(b);
        }
        CheckKind::Inflation => {
            s.b = Some(sample::blaschke_up_to(rng, small));
            s.theta = Some(sample::blaschke_up_to(rng, small));
            s.phi = Some(sample::laurent(rng, 3));
        }
        CheckKind::SameOrder => {
            let d = rng.gen_range(1..=small);
            s.b = Some(sample::blaschke(rng, d));
            s.b2 = Some(sample::blaschke(rng, d));
            s.theta = Some(sample::blaschke_up_to(rng, small));
            s.phi = Some(sample::laurent(rng, 3));
        }
        CheckKind::Block41 => {
            let n = rng.gen_range(1..=3);
            s.theta = Some(sample::blaschke_up_to(rng, small));
            s.phis = Some((0..n).map(|_| sample::laurent(rng, 2)).collect());
            s.n = Some(n);
        }
        CheckKind::Block42 => {
            let n = rng.gen_range(1..=3usize);
            let b = sample::blaschke_up_to(rng, small);
            let basis = ModelBasis::new(&b, quad)?;
            let lo = -(n as i32);
            let mut psis = BTreeMap::new();
            for m in lo..n as i32 {
                if rng.gen_bool(0.7) {
                    psis.insert(m, sample::model_element(rng, &basis));
                }
            }
            s.b = Some(b);
            s.n = Some(n);
            s.psis = Some(psis);
        }
        CheckKind::Thm51 => {
            let b = sample::blaschke_up_to(rng, small);
            let basis = ModelBasis::new(&b, quad)?;
            s.psi = Some(sample::model_element(rng, &basis));
            let zeta = sample::unit_complex(rng);
            s.zeta = Some([zeta.re, zeta.im]);
            s.n = Some(rng.gen_range(1..=3));
            s.b = Some(b);
        }
        CheckKind::Lemma52 => {
            let d = rng.gen_range(2..=max_degree.max(2));
            let theta = sample::blaschke(rng, d);
            let keep: Vec<C64> = theta.zeros().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let w = BlaschkeProduct::from_zeros(keep)?;
            let h = crate::poly::Poly::new(vec![
                C64::new(1.0, 0.0) + sample::small_complex(rng) * 0.2,
                sample::small_complex(rng) * 0.3,
            ]);
            s.phi = Some(CircleRational::from_blaschke(&w).mul(&CircleRational::polynomial(h)));
            s.theta = Some(theta);
        }
        CheckKind::Thm53 => {
            let (n, m) = sample::nilpotent_monomial(rng, max_degree.max(2));
            let h = crate::poly::Poly::new(vec![
                C64::new(1.0, 0.0) + sample::small_complex(rng) * 0.2,
                sample::small_complex(rng) * 0.3,
            ]);
            s.theta = Some(BlaschkeProduct::monomial(n));
            s.phi = Some(CircleRational::monomial(m as i32, C64::new(1.0, 0.0)).mul(&CircleRational::polynomial(h)));
        }
        CheckKind::Equiv => {
            let n = rng.gen_range(2..=max_degree.max(2));
            let a = CMatrix::from_fn(n, n, |_, _| sample::small_complex(rng));
            let u = complete_frame(&[sample::vector(rng, n)], n);
            let b = &u * &a * u.adjoint();
            s.matrix_a = Some(matrix_to_rows(&a));
            s.matrix_b = Some(matrix_to_rows(&b));
            s.max_word_len = Some(sufficient_word_len(n));
        }
        CheckKind::RankOne => {
            let dim = rng.gen_range(2..=max_degree.clamp(2, 4));
            let p = sample::noncolinear_pair(rng, dim);
            s.b = Some(sample::blaschke_up_to(rng, small));
            s.psi = Some(CircleRational::polynomial(sample::analytic_poly(rng, 2)));
            s.x = Some(pair_of(&p.x));
            s.y = Some(pair_of(&p.y));
        }
    }
    Ok(s)
}

/// `count` scenarios named `{kind}_{idx:03}.json`, reproducible from `seed`.
pub fn generate(kind: CheckKind, count: usize, seed: u64, max_degree: usize) -> Result<Vec<(String, Scenario)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quad = Quadrature::default();
    (0..count)
        .map(|idx| {
            let mut s = random_scenario(&mut rng, kind, max_degree, quad)?;
            s.seed = Some(seed);
            Ok((format!("{kind}_{idx:03}.json"), s))
        })
        .collect()
}

/// Writes generated scenarios as pretty JSON into `dir`, returning the paths.
pub fn write_generated(dir: &Path, items: &[(String, Scenario)]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
    items
        .iter()
        .map(|(name, s)| {
            let path = dir.join(name);
            let text = serde_json::to_string_pretty(s).expect("serializable") + "\n";
            std::fs::write(&path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inflation_scenario_passes() {
        let text = r#"{"check": "inflation", "B": {"monomial": 2}, "Theta": {"monomial": 2},
                       "phi": {"laurent": {"1": [1, 0]}}}"#;
        let s = &parse_scenarios(text, "inline").unwrap()[0];
        let r = run_scenario(s, &Settings::default());
        assert!(r.pass, "{r:?}");
        assert!(r.residual_abs.unwrap() < 1e-10);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"check": "main", "bogus": 1}"#;
        assert!(parse_scenarios(text, "inline").is_err());
    }

    #[test]
    fn missing_input_is_a_failed_report() {
        let r = run_scenario(&Scenario::new(CheckKind::Main), &Settings::default());
        assert!(!r.pass);
        assert!(r.residual_rel.is_none());
        assert!(r.reason.unwrap().contains("`B`"));
    }

    #[test]
    fn zeros_near_the_circle_are_flagged() {
        let mut s = Scenario::new(CheckKind::Inflation);
        s.b = Some(BlaschkeProduct::from_zeros(vec![C64::new(0.97, 0.0)]).unwrap());
        s.theta = Some(BlaschkeProduct::monomial(2));
        s.phi = Some(CircleRational::z_pow(1));
        let r = run_scenario(&s, &Settings::default());
        assert_eq!(r.warnings.len(), 1);
        assert!(r.warnings[0].starts_with("B has a zero of modulus 0.970"));
        s.b = Some(BlaschkeProduct::monomial(2));
        assert!(s.warnings().is_empty());
    }

    #[test]
    fn scenario_round_trip() {
        let items = generate(CheckKind::Main, 2, 3, 3).unwrap();
        for (_, s) in items {
            let text = serde_json::to_string(&s).unwrap();
            let back: Scenario = serde_json::from_str(&text).unwrap();
            assert_eq!(back.b, s.b);
            assert_eq!(back.theta, s.theta);
            assert_eq!(back.jband, s.jband);
            let (p0, p1) = (s.psi.unwrap(), back.psi.unwrap());
            for t in 0..16 {
                let z = C64::from_polar(1.0, 0.4 * t as f64);
                assert!((p0.evaluate(z) - p1.evaluate(z)).norm() < 1e-12 * (1.0 + p0.evaluate(z).norm()));
            }
        }
    }

    #[test]
    fn kind_names_parse() {
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
    }
}
