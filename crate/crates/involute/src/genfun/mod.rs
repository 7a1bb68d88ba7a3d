//! Generating function engines for restricted involutions.
//!
//! Four series families are exposed, all ordinary power series in one
//! variable counting involutions by length:
//!
//! * [`F_series`]: involutions avoiding 3412 and every pattern in a set `T`;
//! * [`G_series`]: involutions avoiding 3412 and containing a pattern
//!   exactly once;
//! * [`P_series`]: involutions containing 3412 exactly once and avoiding a
//!   pattern (or unrestricted otherwise);
//! * [`Q_series`]: involutions containing 3412 exactly once and a decreasing
//!   pattern exactly once.
//!
//! Each family comes in an unsigned (`Plus`) and a signed (`Minus`) variant;
//! the signed variant weights each involution by its sign. `Q_series` is
//! unsigned only.
//!
//! Rational and algebraic closed forms for many of these series live in
//! [`catalog`]; the catalog and the engines are checked against each other
//! and against brute-force enumeration in the acceptance suite.

mod catalog;
mod engine;
mod gpq;
mod roccur;

pub use catalog::{
    f_closed_form, g_closed_form, p_closed_form, q_closed_form, AlgebraicForm, ClosedFormId,
    ClosedFormValue,
};
pub use engine::F_series;
pub use gpq::{
    g_series_or_oracle, p_series_or_oracle, q_series_printed_cap, G_series, P_series, Q_series,
};
pub use roccur::{compositions, r_occurrence_gf, CompositionSeq, Parity};

use crate::core::Permutation;
use crate::error::{Error, Result};
use crate::series::PowerSeries;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Whether involutions are counted with weight `1` or with their sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignVariant {
    /// Plain counting, weight `1` per involution.
    Plus,
    /// Signed counting, weight `(-1)^inv` per involution.
    Minus,
}

impl SignVariant {
    /// The sign carried onto quadratic terms of the defining recurrences:
    /// `+1` for `Plus`, `-1` for `Minus`.
    pub(crate) fn unit(self) -> i64 {
        match self {
            SignVariant::Plus => 1,
            SignVariant::Minus => -1,
        }
    }
}

impl fmt::Display for SignVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignVariant::Plus => write!(f, "plus"),
            SignVariant::Minus => write!(f, "minus"),
        }
    }
}

impl FromStr for SignVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plus" | "+" | "unsigned" => Ok(SignVariant::Plus),
            "minus" | "-" | "signed" => Ok(SignVariant::Minus),
            other => Err(Error::ParameterRange {
                context: format!("unknown sign variant {other:?}; expected plus or minus"),
            }),
        }
    }
}

/// The four series families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    F,
    G,
    P,
    Q,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F => write!(f, "F"),
            Family::G => write!(f, "G"),
            Family::P => write!(f, "P"),
            Family::Q => write!(f, "Q"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            "P" | "p" => Ok(Family::P),
            "Q" | "q" => Ok(Family::Q),
            other => Err(Error::ParameterRange {
                context: format!("unknown family {other:?}; expected F, G, P or Q"),
            }),
        }
    }
}

/// A fully specified series request: family, variant, pattern payload, order.
///
/// The pattern payload is interpreted per family: `F` takes any number of
/// patterns (none means only 3412 is avoided), `G` takes exactly one, `P`
/// takes none (unrestricted) or one, and `Q` takes one decreasing pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFQuery {
    pub family: Family,
    pub variant: SignVariant,
    pub patterns: Vec<Permutation>,
    pub order: usize,
}

impl GFQuery {
    pub fn run(&self) -> Result<PowerSeries> {
        match self.family {
            Family::F => F_series(&self.patterns, self.variant, self.order),
            Family::G => match self.patterns.as_slice() {
                [p] => G_series(p, self.variant, self.order),
                other => Err(Error::ParameterRange {
                    context: format!("family G takes exactly one pattern, got {}", other.len()),
                }),
            },
            Family::P => match self.patterns.as_slice() {
                [] => P_series(None, self.variant, self.order),
                [p] => P_series(Some(p), self.variant, self.order),
                other => Err(Error::ParameterRange {
                    context: format!("family P takes at most one pattern, got {}", other.len()),
                }),
            },
            Family::Q => match self.patterns.as_slice() {
                [p] if p.is_decreasing() && !p.is_empty() => {
                    if self.variant == SignVariant::Minus {
                        return Err(Error::ParameterRange {
                            context: "family Q is unsigned only".into(),
                        });
                    }
                    Q_series(p.len(), self.order)
                }
                _ => Err(Error::ParameterRange {
                    context: "family Q takes exactly one decreasing pattern".into(),
                }),
            },
        }
    }
}
