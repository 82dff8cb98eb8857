//! Exact classes and holomorphic Euler characteristics of pointed
//! Brill-Noether loci on Prym varieties.
//!
//! Everything is computed in exact rational arithmetic. The numeric layer is
//! generic: Pfaffians and the raising-operator engine work over any [`Ring`],
//! truncated series over any [`Scalar`]. The concrete instantiations used by
//! the domain layer are the aliases below.
//!
//! Two independent routes produce the Euler characteristic of a locus:
//!
//! * [`prym::euler_oracle`] integrates the Chern character of the K-class,
//!   obtained as a Pfaffian whose entries are truncated θ′-polynomials;
//! * [`prym::euler_theorem`] evaluates the closed summation formula over
//!   permutations, pair assignments and the `g`-coefficients.
//!
//! They must agree exactly; [`checks`] runs that comparison together with the
//! remaining invariants of every module.

pub mod arith;
pub mod checks;
pub mod error;
pub mod json;
pub mod operator;
pub mod pfaffian;
pub mod prym;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{Ring, Scalar};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Normalized arbitrary-precision rational (denominator positive, lowest terms).
pub type Rational = num_rational::BigRational;
/// Truncated polynomial in θ′ with rational coefficients.
pub type ThetaPoly = series::TruncPoly<Rational>;
/// Truncated polynomial in θ′ whose coefficients are polynomials in β.
pub type ThetaBetaPoly = series::TruncPoly<series::BetaPoly>;

/// Crate version, reported in CLI metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
