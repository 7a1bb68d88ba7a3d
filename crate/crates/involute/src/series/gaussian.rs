//! Gaussian integers with arbitrary-precision components.
//!
//! Signed statistics on involutions pick up factors of `i` along the way,
//! so the whole series stack is built over `Z[i]` rather than `Z`. Final
//! answers are real; the imaginary parts cancel and the tests assert so.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An element `re + im*i` of the Gaussian integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        GaussianInt::default()
    }

    pub fn one() -> Self {
        GaussianInt::new(1, 0)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    /// `i^k`, reduced mod 4.
    pub fn i_pow(k: u64) -> Self {
        match k % 4 {
            0 => GaussianInt::one(),
            1 => GaussianInt::i(),
            2 => -GaussianInt::one(),
            _ => -GaussianInt::i(),
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GaussianInt { re: n.into(), im: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for the four units `1, -1, i, -i`.
    pub fn is_unit(&self) -> bool {
        (self.re.abs().is_one() && self.im.is_zero())
            || (self.re.is_zero() && self.im.abs().is_one())
    }

    /// Multiplicative inverse, defined exactly for the four units.
    pub fn unit_inverse(&self) -> Result<GaussianInt> {
        if !self.is_unit() {
            return Err(Error::NonUnitConstant { found: self.to_string() });
        }
        // 1/(a+bi) = conj/(a^2+b^2); for units the norm is 1.
        Ok(self.conj())
    }

    pub fn conj(&self) -> GaussianInt {
        GaussianInt { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact division; errors unless `self = q * rhs` for a Gaussian integer `q`.
    pub fn div_exact(&self, rhs: &GaussianInt) -> Result<GaussianInt> {
        if rhs.is_zero() {
            return Err(Error::NonIntegralDivision {
                context: format!("{self} / 0"),
            });
        }
        let n = rhs.norm();
        let num = self * &rhs.conj();
        let (qr, rr) = num_integer::div_rem(num.re, n.clone());
        let (qi, ri) = num_integer::div_rem(num.im, n);
        if !rr.is_zero() || !ri.is_zero() {
            return Err(Error::NonIntegralDivision {
                context: format!("{self} / {rhs}"),
            });
        }
        Ok(GaussianInt { re: qr, im: qi })
    }

    /// The real part, provided the imaginary part is zero.
    pub fn expect_real(&self) -> Result<BigInt> {
        if self.is_real() {
            Ok(self.re.clone())
        } else {
            Err(Error::NonIntegralDivision {
                context: format!("{self} is not real"),
            })
        }
    }
}

impl From<i64> for GaussianInt {
    fn from(n: i64) -> Self {
        GaussianInt::from_int(n)
    }
}

impl From<BigInt> for GaussianInt {
    fn from(n: BigInt) -> Self {
        GaussianInt::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &GaussianInt) -> GaussianInt {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianInt> for &GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianInt> for &GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}
forward_binop!(Add, add);

impl Sub<&GaussianInt> for &GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussianInt> for &GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
forward_binop!(Mul, mul);

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussianInt> for GaussianInt {
    fn add_assign(&mut self, rhs: &GaussianInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianInt> for GaussianInt {
    fn sub_assign(&mut self, rhs: &GaussianInt) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return match () {
                _ if self.im.is_one() => write!(f, "i"),
                _ if (-&self.im).is_one() => write!(f, "-i"),
                _ => write!(f, "{}i", self.im),
            };
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let mag = self.im.abs();
        if mag.is_one() {
            write!(f, "{}{}i", self.re, sign)
        } else {
            write!(f, "{}{}{}i", self.re, sign, mag)
        }
    }
}

/// One component of the `[re, im]` wire form: a plain JSON number when it
/// fits in an `i64`, a decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Small(i64),
    Big(String),
}

fn encode(n: &BigInt) -> Coord {
    match i64::try_from(n) {
        Ok(v) => Coord::Small(v),
        Err(_) => Coord::Big(n.to_string()),
    }
}

fn decode<E: serde::de::Error>(c: Coord) -> std::result::Result<BigInt, E> {
    match c {
        Coord::Small(v) => Ok(BigInt::from(v)),
        Coord::Big(s) => {
            BigInt::from_str(&s).map_err(|e| E::custom(format!("bad integer {s:?}: {e}")))
        }
    }
}

impl Serialize for GaussianInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (encode(&self.re), encode(&self.im)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(Coord, Coord)>::deserialize(d)?;
        Ok(GaussianInt { re: decode::<D::Error>(re)?, im: decode::<D::Error>(im)? })
    }
}
