//! Truncated Toeplitz operators on model spaces of finite Blaschke products.
//!
//! Every space here is finite dimensional: an inner function is a finite
//! Blaschke product `Θ`, the model space `K_Θ = H² ⊖ ΘH²` has dimension
//! `deg Θ`, and a truncated Toeplitz operator `A^Θ_φ` is a `deg Θ × deg Θ`
//! complex matrix in the Takenaka–Malmquist basis of `K_Θ`.
//!
//! The crate builds the composition unitary `ω_B : K_B ⊗ K_Θ → K_{Θ∘B}`,
//! checks the intertwining identities it satisfies, and produces explicit
//! unitary witnesses for the resulting equivalences (inflations, block
//! Toeplitz families, rank-one tensor products, direct sums with zero).

// `!(x < bound)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blaschke;
pub mod directsum;
pub mod error;
pub mod linalg;
pub mod modelspace;
pub mod poly;
pub mod rankone;
pub mod sample;
pub mod scenario;
pub mod symbols;
pub mod tensorcomp;
pub mod tto;

pub use blaschke::BlaschkeProduct;
pub use directsum::{unitary_equiv_check, EquivVerdict, UnitaryWitness};
pub use error::{Error, Result};
pub use modelspace::{KernelPair, ModelBasis, Quadrature};
pub use rankone::RankOnePair;
pub use symbols::CircleRational;
pub use tensorcomp::{OmegaMatrix, ResidualReport};
pub use tto::TtoMatrix;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix used throughout.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;

/// Library version, echoed in scenario reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
