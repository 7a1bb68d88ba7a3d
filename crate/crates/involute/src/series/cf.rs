//! Generalized continued fractions with polynomial levels.

use super::poly::Polynomial;
use super::power::PowerSeries;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// How consecutive levels are assembled.
///
/// `Sub` nests as `a_i / (b_i - next)`, `Add` as `a_i / (b_i + next)`.
/// The two differ by the sign of every second partial numerator, which is
/// exactly the difference between unsigned and signed involution counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CfSign {
    Sub,
    Add,
}

/// A finite continued fraction `a_0 / (b_0 ± a_1 / (b_1 ± ...))` holding
/// `depth` levels, indexed `0..depth`.
///
/// Levels below the cut are treated as zero, which is exact for truncation
/// orders `< 2*depth` whenever every partial numerator past the top is
/// divisible by `x^2` (all fractions in this crate are of that shape).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFSpec {
    pub a: Vec<Polynomial>,
    pub b: Vec<Polynomial>,
    pub depth: usize,
    pub sign: CfSign,
}

impl CFSpec {
    /// Builds levels `0..depth` from a generator; `depth` must be positive.
    pub fn from_levels(
        depth: usize,
        sign: CfSign,
        mut level: impl FnMut(usize) -> (Polynomial, Polynomial),
    ) -> Self {
        assert!(depth >= 1, "a continued fraction needs at least one level");
        let mut a = Vec::with_capacity(depth);
        let mut b = Vec::with_capacity(depth);
        for i in 0..depth {
            let (ai, bi) = level(i);
            a.push(ai);
            b.push(bi);
        }
        CFSpec { a, b, depth, sign }
    }

    /// Level count sufficient for a truncation of order `n` when partial
    /// numerators carry `x^2` per level.
    pub fn auto_depth(n: usize) -> usize {
        n / 2 + 2
    }

    /// Evaluates the fraction as a power series of order `n`, bottom up.
    pub fn cf_truncate(&self, n: usize) -> Result<PowerSeries> {
        if self.depth == 0 || self.a.len() != self.depth || self.b.len() != self.depth {
            return Err(Error::ParameterRange {
                context: format!(
                    "continued fraction with depth {} but {}/{} levels",
                    self.depth,
                    self.a.len(),
                    self.b.len()
                ),
            });
        }
        let mut v = PowerSeries::zero(n);
        for i in (0..self.depth).rev() {
            let b = PowerSeries::from_polynomial(&self.b[i], n);
            let den = match self.sign {
                CfSign::Sub => &b - &v,
                CfSign::Add => &b + &v,
            };
            let a = PowerSeries::from_polynomial(&self.a[i], n);
            v = &a * &den.invert()?;
        }
        Ok(v)
    }
}
