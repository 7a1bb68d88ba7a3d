//! Exact arithmetic: Gaussian integers, polynomials, rational functions,
//! truncated power series in one and two variables, and continued fractions.

mod bivar;
mod cf;
mod gaussian;
mod poly;
mod power;
mod ratfun;

pub use bivar::{bivar_cf_truncate, BivarSeries, StatCf};
pub use cf::{CFSpec, CfSign};
pub use gaussian::GaussianInt;
pub use poly::Polynomial;
pub use power::PowerSeries;
pub use ratfun::RationalFunction;
