//! Rational functions as raw numerator/denominator pairs.
//!
//! No gcd reduction is ever performed: the polynomials that show up here
//! (Chebyshev-like families and their products) are kept verbatim so that
//! printed shapes stay recognizable. Equality is by cross multiplication.

use super::poly::Polynomial;
use super::power::PowerSeries;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFunction {
    /// Errors if `den` is the zero polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ParameterRange {
                context: "rational function with zero denominator".into(),
            });
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn zero() -> Self {
        RationalFunction::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_polynomial(Polynomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        self.mul_rat(&rhs.recip()?)
    }

    fn mul_rat(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Taylor expansion to order `n`; needs a unit constant term downstairs.
    pub fn expand(&self, n: usize) -> Result<PowerSeries> {
        let den = PowerSeries::from_polynomial(&self.den, n);
        let num = PowerSeries::from_polynomial(&self.num, n);
        Ok(&num * &den.invert()?)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &self.num * &rhs.den - &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

macro_rules! forward_rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $trait<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}

forward_rat_binop!(Add, add);
forward_rat_binop!(Sub, sub);
forward_rat_binop!(Mul, mul);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
    }

    #[test]
    fn equality_ignores_common_factors() {
        // (1+x)/(1-x^2) == 1/(1-x)
        assert_eq!(rf(&[1, 1], &[1, 0, -1]), rf(&[1], &[1, -1]));
        assert_ne!(rf(&[1], &[1, -1]), rf(&[1], &[1, 1]));
    }

    #[test]
    fn arithmetic() {
        let a = rf(&[1], &[1, -1]);
        let b = rf(&[1], &[1, 1]);
        // 1/(1-x) + 1/(1+x) = 2/(1-x^2)
        assert_eq!(&a + &b, rf(&[2], &[1, 0, -1]));
        assert_eq!(&a * &b, rf(&[1], &[1, 0, -1]));
        assert_eq!(a.div(&b).unwrap(), rf(&[1, 1], &[1, -1]));
        assert_eq!(a.pow(2), rf(&[1], &[1, -2, 1]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn expansion() {
        let geo = rf(&[1], &[1, -1]).expand(5).unwrap();
        assert_eq!(geo.coeff(0), crate::series::GaussianInt::one());
        assert_eq!(geo.coeff(5), crate::series::GaussianInt::one());
        // x/(1-x-x^2): Fibonacci numbers.
        let fib = rf(&[0, 1], &[1, -1, -1]).expand(8).unwrap();
        let want = [0i64, 1, 1, 2, 3, 5, 8, 13, 21];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(fib.coeff(k), crate::series::GaussianInt::from(*w));
        }
    }
}
