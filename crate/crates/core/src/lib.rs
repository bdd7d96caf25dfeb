//! Fractional jumps of projective automorphisms over prime fields.
//!
//! - [`ff`]: prime-field arithmetic with an optional lookup-table backend
//! - [`poly`]: polynomials, irreducibility, orders in quotient rings,
//!   projective primitivity
//! - [`linalg`]: matrices, companion matrices, characteristic and minimal
//!   polynomials
//! - [`fjump`]: the generic piecewise jump, its direct-iteration oracle and
//!   brute-force transitivity classification
//! - [`asjump`]: the closed-form Artin-Schreier jump on `A^{p-1}` with
//!   operation counting

pub mod asjump;
pub mod error;
pub mod ff;
pub mod fjump;
pub mod linalg;
pub mod nt;
pub mod poly;

pub use asjump::{ArtinSchreierJump, CostCounters};
pub use error::{Error, Result};
pub use ff::{Fp, PrimeField};
pub use fjump::{
    build, eval_direct, Budget, BuildMode, FractionalJump, ProjectiveAutomorphism,
    ProjectivePoint,
};
pub use linalg::Matrix;
pub use nt::FactorBudget;
pub use poly::{Poly, QuotientElement};

/// Arbitrary-precision natural number used for group orders.
pub type BigNat = num_bigint::BigUint;

/// Exact rational used for expected costs.
pub type Rational = num_rational::BigRational;
