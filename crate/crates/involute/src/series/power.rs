//! Truncated power series with exact Gaussian-integer coefficients.

use super::gaussian::GaussianInt;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients `c_0 .. c_N` of a series known through order `N`.
/// Binary operations truncate to the shorter of the two orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerSeries {
    coeffs: Vec<GaussianInt>,
}

impl PowerSeries {
    /// Wraps explicit coefficients; the vector must be nonempty.
    pub fn new(coeffs: Vec<GaussianInt>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![GaussianInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::monomial(GaussianInt::one(), 0, order)
    }

    pub fn x(order: usize) -> Self {
        PowerSeries::monomial(GaussianInt::one(), 1, order)
    }

    /// `c * x^k` truncated at `order`; degrees beyond the order are dropped.
    pub fn monomial(c: GaussianInt, k: usize, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        for k in 0..=order {
            s.coeffs[k] = p.coeff(k);
        }
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> GaussianInt) -> Self {
        PowerSeries { coeffs: (0..=order).map(&mut f).collect() }
    }

    /// Highest order this truncation knows.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> GaussianInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[GaussianInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianInt::is_zero)
    }

    /// Shortens to order `n`; never extends.
    pub fn truncate(&self, n: usize) -> PowerSeries {
        let keep = (n + 1).min(self.coeffs.len());
        PowerSeries { coeffs: self.coeffs[..keep].to_vec() }
    }

    /// Index of the first nonzero coefficient, if any survives truncation.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &GaussianInt) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `x^k`. All shifted coefficients are determined, so the
    /// known order grows by `k`.
    pub fn shift_up(&self, k: usize) -> PowerSeries {
        let mut coeffs = vec![GaussianInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries { coeffs }
    }

    /// Divide by `x^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<PowerSeries> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.coeffs.len() <= k {
            return Err(Error::NonIntegralDivision {
                context: format!("shift_down({k}) on order-{} series", self.order()),
            });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonIntegralDivision {
                context: format!("shift_down({k}) on series with valuation {:?}", self.valuation()),
            });
        }
        Ok(PowerSeries { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<PowerSeries> {
        let c0_inv = self.coeffs[0].unit_inverse()?;
        let n = self.order();
        let mut inv = vec![GaussianInt::zero(); n + 1];
        inv[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = GaussianInt::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &inv[k - j]);
            }
            inv[k] = &(-acc) * &c0_inv;
        }
        Ok(PowerSeries { coeffs: inv })
    }

    pub fn divide(&self, rhs: &PowerSeries) -> Result<PowerSeries> {
        Ok(self * &rhs.invert()?)
    }

    /// Divide every coefficient by `c`, exactly.
    pub fn divide_exact_const(&self, c: &GaussianInt) -> Result<PowerSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.div_exact(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries { coeffs })
    }

    /// Square root with constant term `+1`. The input's constant term must be
    /// exactly 1 and every derived coefficient must stay integral.
    pub fn sqrt(&self) -> Result<PowerSeries> {
        if self.coeffs[0] != GaussianInt::one() {
            return Err(Error::SqrtBranch { found: self.coeffs[0].to_string() });
        }
        let n = self.order();
        let two = GaussianInt::from(2);
        let mut s = vec![GaussianInt::zero(); n + 1];
        s[0] = GaussianInt::one();
        for k in 1..=n {
            // 2 s_0 s_k = a_k - sum_{j=1}^{k-1} s_j s_{k-j}
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc -= &(&s[j] * &s[k - j]);
            }
            s[k] = acc.div_exact(&two)?;
        }
        Ok(PowerSeries { coeffs: s })
    }

    pub fn pow(&self, mut e: u32) -> PowerSeries {
        let mut base = self.clone();
        let mut acc = PowerSeries::one(self.order());
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

    /// All coefficients as plain integers; errors if any is non-real.
    pub fn real_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs.iter().map(GaussianInt::expect_real).collect()
    }
}

fn min_len(a: &PowerSeries, b: &PowerSeries) -> usize {
    a.coeffs.len().min(b.coeffs.len())
}

impl Add<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = min_len(self, rhs);
        PowerSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = min_len(self, rhs);
        PowerSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = min_len(self, rhs);
        let mut out = vec![GaussianInt::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PowerSeries { coeffs: out }
    }
}

macro_rules! forward_series_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for PowerSeries {
            type Output = PowerSeries;
            fn $method(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&PowerSeries> for PowerSeries {
            type Output = PowerSeries;
            fn $method(self, rhs: &PowerSeries) -> PowerSeries {
                (&self).$method(rhs)
            }
        }
        impl $trait<PowerSeries> for &PowerSeries {
            type Output = PowerSeries;
            fn $method(self, rhs: PowerSeries) -> PowerSeries {
                self.$method(&rhs)
            }
        }
    };
}

forward_series_binop!(Add, add);
forward_series_binop!(Sub, sub);
forward_series_binop!(Mul, mul);

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        -&self
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = Polynomial::new(self.coeffs.clone());
        if p.is_zero() {
            p = Polynomial::zero();
        }
        write!(f, "{} + O(x^{})", p, self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(&c.expect_real().unwrap()).unwrap()).collect()
    }

    #[test]
    fn truncation_meets_at_min_order() {
        let a = PowerSeries::one(5);
        let b = PowerSeries::x(3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_x = PowerSeries::from_polynomial(&Polynomial::from_ints(&[1, -1]), 6);
        assert_eq!(ints(&one_minus_x.invert().unwrap()), vec![1, 1, 1, 1, 1, 1, 1]);
        let back = one_minus_x.invert().unwrap().invert().unwrap();
        assert_eq!(ints(&back), vec![1, -1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn invert_needs_unit() {
        let s = PowerSeries::from_polynomial(&Polynomial::from_ints(&[2, 1]), 4);
        assert!(s.invert().is_err());
        let i_series = PowerSeries::monomial(GaussianInt::i(), 0, 3);
        assert!(i_series.invert().is_ok());
    }

    #[test]
    fn shifts() {
        let s = PowerSeries::from_polynomial(&Polynomial::from_ints(&[0, 0, 1, 2]), 4);
        assert_eq!(ints(&s.shift_down(2).unwrap()), vec![1, 2, 0]);
        assert!(s.shift_down(3).is_err());
        assert_eq!(s.shift_up(1).order(), 5);
        assert_eq!(s.shift_up(1).coeff(3), GaussianInt::one());
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let p = Polynomial::from_ints(&[1, 3, 1]);
        let sq = PowerSeries::from_polynomial(&(&p * &p), 8);
        assert_eq!(sq.sqrt().unwrap(), PowerSeries::from_polynomial(&p, 8));
    }

    #[test]
    fn sqrt_catalan_like() {
        // 1/sqrt(1-2x-3x^2) has the central trinomial coefficients.
        let p = PowerSeries::from_polynomial(&Polynomial::from_ints(&[1, -2, -3]), 6);
        let inv_sqrt = p.sqrt().unwrap().invert().unwrap();
        assert_eq!(ints(&inv_sqrt), vec![1, 1, 3, 7, 19, 51, 141]);
    }

    #[test]
    fn sqrt_branch_requires_one() {
        let p = PowerSeries::from_polynomial(&Polynomial::from_ints(&[4, 1]), 3);
        assert!(p.sqrt().is_err());
    }

    #[test]
    fn divide_exact() {
        let s = PowerSeries::from_polynomial(&Polynomial::from_ints(&[2, -4, 6]), 2);
        assert_eq!(
            ints(&s.divide_exact_const(&GaussianInt::from(2)).unwrap()),
            vec![1, -2, 3]
        );
        assert!(s.divide_exact_const(&GaussianInt::from(4)).is_err());
    }
}
