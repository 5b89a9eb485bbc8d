use thiserror::Error;

use crate::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero {0} has modulus {1} >= 1")]
    ZeroOutsideDisk(C64, f64),

    #[error("constant {0} is not unimodular")]
    NotUnimodular(C64),

    #[error("evaluation point {0} is within 1e-13 of a pole")]
    PoleProximity(C64),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("divisor enumeration limited to degree 20, got {0}")]
    DegreeGuard(usize),

    #[error("symbol has a pole on the unit circle near {0}")]
    CirclePole(C64),

    #[error("quadrature did not converge below order {0}")]
    QuadratureNonConvergence(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("residual {residual:e} exceeds {tolerance:e}: {what}")]
    Residual {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("open question: {0}")]
    OpenQuestion(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn residual(what: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Error::Residual {
            what: what.into(),
            residual,
            tolerance,
        }
    }
}
