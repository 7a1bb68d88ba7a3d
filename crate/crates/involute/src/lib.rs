//! Exact-arithmetic toolkit for involutions restricted by classical
//! permutation patterns.
//!
//! The crate has three layers:
//!
//! * a small computer-algebra layer (`series`): Gaussian integers, dense
//!   polynomials, rational functions, truncated power series in one and two
//!   variables, and generalized continued fractions;
//! * a combinatorial layer (`core`, `enumerate`, `motzkin`): permutations
//!   and their operations, brute-force involution enumeration used as the
//!   ground truth throughout the test suite, and the bijection between
//!   restricted involutions and bounded Motzkin paths;
//! * a generating-function layer (`chebyshev`, `genfun`, `verify`): closed
//!   forms built from shifted Chebyshev polynomials, recursive engines for
//!   several restriction semantics, and an audit harness that compares every
//!   closed form against enumeration.
//!
//! All arithmetic is exact; coefficients are `BigInt`-backed Gaussian
//! integers, so signed statistics that live in `Z[i]` along the way come out
//! exactly as well.

pub mod chebyshev;
pub mod core;
pub mod enumerate;
pub mod error;
pub mod genfun;
pub mod motzkin;
pub mod series;
pub mod verify;

pub use crate::core::{Permutation, StatVector};
pub use enumerate::{InvolutionIter, RestrictionSpec, SeriesSample};
pub use error::{Error, Result};
pub use series::{
    BivarSeries, CFSpec, CfSign, GaussianInt, Polynomial, PowerSeries, RationalFunction,
};
