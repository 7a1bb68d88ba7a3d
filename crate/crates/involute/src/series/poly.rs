//! Dense univariate polynomials over the Gaussian integers.

use super::gaussian::GaussianInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients in ascending order of degree, with no trailing zeros.
/// The zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<GaussianInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianInt>) -> Self {
        while coeffs.last().is_some_and(GaussianInt::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Convenience constructor from small integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| GaussianInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussianInt::one())
    }

    pub fn x() -> Self {
        Polynomial::monomial(GaussianInt::one(), 1)
    }

    pub fn constant(c: GaussianInt) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn monomial(c: GaussianInt, degree: usize) -> Self {
        let mut coeffs = vec![GaussianInt::zero(); degree];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> GaussianInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[GaussianInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> GaussianInt {
        self.coeff(0)
    }

    pub fn scale(&self, c: &GaussianInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![GaussianInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &GaussianInt) -> GaussianInt {
        let mut acc = GaussianInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![GaussianInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            // A coefficient that is not a plain signed integer gets parens.
            let complex = !c.is_real();
            let (sign, mag) = if !complex && s.starts_with('-') {
                ("-", s[1..].to_string())
            } else {
                ("+", if complex { format!("({s})") } else { s })
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let unit_mag = mag == "1";
            match (k, unit_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_trims_trailing_zeros() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_ints(&[0, 0]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = Polynomial::from_ints(&[1, 1]); // 1 + x
        let b = Polynomial::from_ints(&[1, -1]); // 1 - x
        assert_eq!(&a * &b, Polynomial::from_ints(&[1, 0, -1]));
        assert_eq!(&a + &b, Polynomial::from_ints(&[2]));
        assert_eq!(&a - &b, Polynomial::from_ints(&[0, 2]));
        assert_eq!(a.pow(3), Polynomial::from_ints(&[1, 3, 3, 1]));
    }

    #[test]
    fn shift_and_eval() {
        let p = Polynomial::from_ints(&[1, 2]);
        assert_eq!(p.shift_up(2), Polynomial::from_ints(&[0, 0, 1, 2]));
        assert_eq!(p.eval(&GaussianInt::from(3)), GaussianInt::from(7));
        let q = Polynomial::new(vec![GaussianInt::one(), GaussianInt::i()]);
        assert_eq!(q.eval(&GaussianInt::i()), GaussianInt::zero());
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_ints(&[1, -3, 0, 1]).to_string(), "1 - 3*x + x^3");
        assert_eq!(Polynomial::from_ints(&[0, -1]).to_string(), "-x");
        let p = Polynomial::new(vec![GaussianInt::zero(), GaussianInt::new(0, 2)]);
        assert_eq!(p.to_string(), "(2i)*x");
    }
}
