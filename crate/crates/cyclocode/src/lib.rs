//! Cyclic codes over small finite fields built from cyclotomic sequences of
//! order four.
//!
//! The crate constructs prime-length cyclic codes whose generator
//! polynomials arise from quartic residue classes, computes or bounds their
//! minimum weights, and verifies the predicted generator structure across
//! parameter sweeps. Modules:
//!
//! - [`field`]: finite field tower GF(p^m) with packed element values
//! - [`poly`]: dense univariate polynomials over those fields
//! - [`cyclotomy`]: residue classes, cyclotomic numbers, Gaussian periods
//! - [`extring`]: quotient rings and splitting x^n - 1 into irreducibles
//! - [`seq`]: the two quartic sequence families and linear-span analysis
//! - [`code`]: cyclic code construction, class polynomials, structure tags
//! - [`weights`]: weight distributions, minimum-distance tiers, searches
//! - [`bounds`]: square-root and irreducible-cyclic-code weight bounds
//! - [`verify`]: case classification, prediction checks, example catalog

pub mod arith;
pub mod bounds;
pub mod code;
pub mod cyclotomy;
pub mod error;
pub mod extring;
pub mod field;
pub mod poly;
pub mod seq;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
