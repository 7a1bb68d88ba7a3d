//! One error enum for the whole crate.

use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Enumeration was asked to walk more objects than the configured cap allows.
    #[error("enumeration size {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    /// A series inversion needs a unit constant term.
    #[error("constant term {found} is not a unit, cannot invert")]
    NonUnitConstant { found: String },

    /// An exact division left a remainder.
    #[error("exact division failed: {context}")]
    NonIntegralDivision { context: String },

    /// A square root was requested for a series whose constant term is not 1.
    #[error("square root needs constant term 1, found {found}")]
    SqrtBranch { found: String },

    /// A generating-function engine has no rule for this pattern.
    #[error("pattern {pattern} is not supported by {engine}")]
    UnsupportedPattern { pattern: String, engine: String },

    /// No closed form is cataloged under the requested identifier/parameters.
    #[error("no closed form for {id}")]
    UnknownClosedForm { id: String },

    /// A parameter is outside the valid range of a formula.
    #[error("parameter out of range: {context}")]
    ParameterRange { context: String },

    /// Text could not be parsed as a permutation.
    #[error("cannot parse permutation from {input:?}: {reason}")]
    ParsePermutation { input: String, reason: String },

    /// A permutation that must be an involution is not one.
    #[error("{0} is not an involution")]
    NotInvolution(String),

    /// Text could not be parsed as a Motzkin path, or a step sequence leaves
    /// the first quadrant.
    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// The path bijection is only defined on crossing-free involutions.
    #[error("involution {0} contains a crossing; its chord diagram is not a valid path")]
    CrossingPresent(String),

    /// The composition machinery found no way to express an occurrence count.
    #[error("no composition represents r={r} for k={k}")]
    NoComposition { r: usize, k: usize },

    /// An iterative solver did not stabilize in the allotted rounds.
    #[error("fixpoint did not converge for {context}")]
    ConvergenceFailure { context: String },
}

pub type Result<T> = std::result::Result<T, Error>;
