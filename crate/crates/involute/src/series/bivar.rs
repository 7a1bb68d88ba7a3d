//! Truncated series in `x` whose coefficients are polynomials in a second
//! variable `q`, used for statistic-refined generating functions.

use super::cf::CfSign;
use super::gaussian::GaussianInt;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `coeffs[n]` is the `q`-polynomial multiplying `x^n`; `q`-degrees above
/// `q_cap` are dropped by every operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivarSeries {
    coeffs: Vec<Polynomial>,
    q_cap: usize,
}

fn qtrunc(p: &Polynomial, cap: usize) -> Polynomial {
    match p.degree() {
        Some(d) if d > cap => Polynomial::new(p.coeffs()[..=cap].to_vec()),
        _ => p.clone(),
    }
}

fn qpoly_mul(a: &Polynomial, b: &Polynomial, cap: usize) -> Polynomial {
    qtrunc(&(a * b), cap)
}

/// Inverse of a `q`-polynomial in the ring truncated at `q`-degree `cap`;
/// the constant term must be a unit.
fn qpoly_invert(p: &Polynomial, cap: usize) -> Result<Polynomial> {
    let c0_inv = p.coeff(0).unit_inverse()?;
    let mut inv = vec![GaussianInt::zero(); cap + 1];
    inv[0] = c0_inv.clone();
    for k in 1..=cap {
        let mut acc = GaussianInt::zero();
        for j in 1..=k {
            acc += &(&p.coeff(j) * &inv[k - j]);
        }
        inv[k] = &(-acc) * &c0_inv;
    }
    Ok(Polynomial::new(inv))
}

fn qpoly_div_exact_const(p: &Polynomial, c: &GaussianInt) -> Result<Polynomial> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|a| a.div_exact(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}

impl BivarSeries {
    pub fn zero(order: usize, q_cap: usize) -> Self {
        BivarSeries { coeffs: vec![Polynomial::zero(); order + 1], q_cap }
    }

    pub fn one(order: usize, q_cap: usize) -> Self {
        let mut s = BivarSeries::zero(order, q_cap);
        s.coeffs[0] = Polynomial::one();
        s
    }

    /// `c * x^xdeg * q^qdeg`, silently dropped if either degree exceeds the caps.
    pub fn monomial(c: GaussianInt, xdeg: usize, qdeg: usize, order: usize, q_cap: usize) -> Self {
        let mut s = BivarSeries::zero(order, q_cap);
        if xdeg <= order && qdeg <= q_cap {
            s.coeffs[xdeg] = Polynomial::monomial(c, qdeg);
        }
        s
    }

    pub fn from_qpolys(coeffs: Vec<Polynomial>, q_cap: usize) -> Self {
        assert!(!coeffs.is_empty());
        let coeffs = coeffs.iter().map(|p| qtrunc(p, q_cap)).collect();
        BivarSeries { coeffs, q_cap }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_cap(&self) -> usize {
        self.q_cap
    }

    /// Coefficient of `x^n q^s`.
    pub fn coeff(&self, n: usize, s: usize) -> GaussianInt {
        self.coeffs.get(n).map(|p| p.coeff(s)).unwrap_or_default()
    }

    /// The whole `q`-polynomial at `x^n`.
    pub fn qpoly(&self, n: usize) -> Polynomial {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn qpolys(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn add_term(&mut self, n: usize, s: usize, c: &GaussianInt) {
        if n < self.coeffs.len() && s <= self.q_cap {
            let bump = Polynomial::monomial(c.clone(), s);
            self.coeffs[n] = &self.coeffs[n] + &bump;
        }
    }

    fn meet(&self, rhs: &BivarSeries) -> (usize, usize) {
        (
            self.coeffs.len().min(rhs.coeffs.len()),
            self.q_cap.min(rhs.q_cap),
        )
    }

    pub fn add(&self, rhs: &BivarSeries) -> BivarSeries {
        let (n, cap) = self.meet(rhs);
        BivarSeries {
            coeffs: (0..n)
                .map(|k| qtrunc(&(&self.coeffs[k] + &rhs.coeffs[k]), cap))
                .collect(),
            q_cap: cap,
        }
    }

    pub fn sub(&self, rhs: &BivarSeries) -> BivarSeries {
        let (n, cap) = self.meet(rhs);
        BivarSeries {
            coeffs: (0..n)
                .map(|k| qtrunc(&(&self.coeffs[k] - &rhs.coeffs[k]), cap))
                .collect(),
            q_cap: cap,
        }
    }

    pub fn neg(&self) -> BivarSeries {
        BivarSeries {
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
            q_cap: self.q_cap,
        }
    }

    pub fn mul(&self, rhs: &BivarSeries) -> BivarSeries {
        let (n, cap) = self.meet(rhs);
        let mut out = vec![Polynomial::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &qpoly_mul(a, b, cap);
            }
        }
        BivarSeries { coeffs: out, q_cap: cap }
    }

    pub fn scale(&self, c: &GaussianInt) -> BivarSeries {
        BivarSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
            q_cap: self.q_cap,
        }
    }

    pub fn shift_up(&self, k: usize) -> BivarSeries {
        let mut coeffs = vec![Polynomial::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BivarSeries { coeffs, q_cap: self.q_cap }
    }

    pub fn shift_down(&self, k: usize) -> Result<BivarSeries> {
        if self.coeffs.len() <= k || self.coeffs[..k].iter().any(|p| !p.is_zero()) {
            return Err(Error::NonIntegralDivision {
                context: format!("bivariate shift_down({k}) hits nonzero low-order terms"),
            });
        }
        Ok(BivarSeries { coeffs: self.coeffs[k..].to_vec(), q_cap: self.q_cap })
    }

    /// Multiplicative inverse; `coeffs[0]` must have a unit constant term.
    pub fn invert(&self) -> Result<BivarSeries> {
        let c0_inv = qpoly_invert(&self.coeffs[0], self.q_cap)?;
        let n = self.order();
        let mut inv = vec![Polynomial::zero(); n + 1];
        inv[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = Polynomial::zero();
            for j in 1..=k {
                acc = &acc + &qpoly_mul(&self.coeffs[j], &inv[k - j], self.q_cap);
            }
            inv[k] = qpoly_mul(&(-acc), &c0_inv, self.q_cap);
        }
        Ok(BivarSeries { coeffs: inv, q_cap: self.q_cap })
    }

    /// Solves `rhs * u = self` coefficientwise. Unlike [`BivarSeries::invert`]
    /// this also handles a leading coefficient that is a non-unit constant
    /// (such as 2), as long as every division stays exact.
    pub fn divide_exact(&self, rhs: &BivarSeries) -> Result<BivarSeries> {
        let (n, cap) = self.meet(rhs);
        let lead = &rhs.coeffs[0];
        enum Lead {
            Inverse(Polynomial),
            Constant(GaussianInt),
        }
        let lead = if lead.coeff(0).is_unit() {
            Lead::Inverse(qpoly_invert(lead, cap)?)
        } else if lead.degree() == Some(0) {
            Lead::Constant(lead.coeff(0))
        } else {
            return Err(Error::NonIntegralDivision {
                context: format!("bivariate division by leading coefficient {lead}"),
            });
        };
        let mut u = vec![Polynomial::zero(); n];
        for k in 0..n {
            let mut acc = qtrunc(&self.coeffs[k], cap);
            for j in 1..=k {
                acc = &acc - &qpoly_mul(&rhs.coeffs[j], &u[k - j], cap);
            }
            u[k] = match &lead {
                Lead::Inverse(inv) => qpoly_mul(&acc, inv, cap),
                Lead::Constant(c) => qpoly_div_exact_const(&acc, c)?,
            };
        }
        Ok(BivarSeries { coeffs: u, q_cap: cap })
    }

    pub fn divide_exact_const(&self, c: &GaussianInt) -> Result<BivarSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| qpoly_div_exact_const(p, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(BivarSeries { coeffs, q_cap: self.q_cap })
    }

    /// Square root with constant coefficient 1 (as a `q`-polynomial).
    pub fn sqrt(&self) -> Result<BivarSeries> {
        if self.coeffs[0] != Polynomial::one() {
            return Err(Error::SqrtBranch { found: self.coeffs[0].to_string() });
        }
        let two = GaussianInt::from(2);
        let n = self.order();
        let mut s = vec![Polynomial::zero(); n + 1];
        s[0] = Polynomial::one();
        for k in 1..=n {
            let mut acc = qtrunc(&self.coeffs[k], self.q_cap);
            for j in 1..k {
                acc = &acc - &qpoly_mul(&s[j], &s[k - j], self.q_cap);
            }
            s[k] = qpoly_div_exact_const(&acc, &two)?;
        }
        Ok(BivarSeries { coeffs: s, q_cap: self.q_cap })
    }

    /// Evaluates `q = 1`, collapsing each column to a plain coefficient.
    pub fn eval_q_one(&self) -> Vec<GaussianInt> {
        let one = GaussianInt::one();
        self.coeffs.iter().map(|p| p.eval(&one)).collect()
    }
}

/// Bottom-up evaluation of a continued fraction whose levels are bivariate;
/// `level(i)` must return `(a_i, b_i)` already truncated to `(order, q_cap)`.
pub fn bivar_cf_truncate(
    depth: usize,
    sign: CfSign,
    order: usize,
    q_cap: usize,
    mut level: impl FnMut(usize) -> (BivarSeries, BivarSeries),
) -> Result<BivarSeries> {
    assert!(depth >= 1);
    let mut v = BivarSeries::zero(order, q_cap);
    for i in (0..depth).rev() {
        let (a, b) = level(i);
        let den = match sign {
            CfSign::Sub => b.sub(&v),
            CfSign::Add => b.add(&v),
        };
        v = a.mul(&den.invert()?);
    }
    Ok(v)
}

/// The three statistic-tracking continued fractions over 3412-avoiding
/// involutions: `x` marks the length, `q` the statistic.
///
/// `Inv` assembles with minus signs and tracks the plain distribution;
/// `Lrmax` and `Fix` assemble with plus signs and track the distribution
/// weighted by the sign of the involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StatCf {
    Inv,
    Lrmax,
    Fix,
}

impl StatCf {
    pub fn sign(self) -> CfSign {
        match self {
            StatCf::Inv => CfSign::Sub,
            StatCf::Lrmax | StatCf::Fix => CfSign::Add,
        }
    }

    /// Monomial lists `(a_i, b_i)` as `(coeff, xdeg, qdeg)` triples.
    fn level_monomials(self, i: usize) -> (Vec<(i64, usize, usize)>, Vec<(i64, usize, usize)>) {
        match self {
            StatCf::Inv => {
                if i == 0 {
                    (vec![(1, 0, 0)], vec![(1, 0, 0), (-1, 1, 0)])
                } else {
                    // a_i = x^2 q^(4i-3), b_i = 1 - x q^(2i)
                    (vec![(1, 2, 4 * i - 3)], vec![(1, 0, 0), (-1, 1, 2 * i)])
                }
            }
            StatCf::Lrmax => match i {
                0 => (vec![(1, 0, 0)], vec![(1, 0, 0), (-1, 1, 1)]),
                1 => (vec![(1, 2, 1)], vec![(1, 0, 0), (-1, 1, 0)]),
                _ => (vec![(1, 2, 0)], vec![(1, 0, 0), (-1, 1, 0)]),
            },
            StatCf::Fix => {
                let b = vec![(1, 0, 0), (-1, 1, 1)];
                if i == 0 {
                    (vec![(1, 0, 0)], b)
                } else {
                    (vec![(1, 2, 0)], b)
                }
            }
        }
    }

    fn level(self, i: usize, order: usize, q_cap: usize) -> (BivarSeries, BivarSeries) {
        let assemble = |terms: Vec<(i64, usize, usize)>| {
            let mut s = BivarSeries::zero(order, q_cap);
            for (c, xd, qd) in terms {
                s.add_term(xd, qd, &GaussianInt::from(c));
            }
            s
        };
        let (a, b) = self.level_monomials(i);
        (assemble(a), assemble(b))
    }

    /// Expands the fraction to the given truncation orders.
    pub fn expand(self, order: usize, q_cap: usize) -> Result<BivarSeries> {
        let depth = order / 2 + 2;
        bivar_cf_truncate(depth, self.sign(), order, q_cap, |i| self.level(i, order, q_cap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: i64) -> GaussianInt {
        GaussianInt::from(c)
    }

    #[test]
    fn geometric_in_two_variables() {
        // 1/(1 - xq) = sum x^n q^n
        let mut d = BivarSeries::zero(5, 5);
        d.add_term(0, 0, &int(1));
        d.add_term(1, 1, &int(-1));
        let inv = d.invert().unwrap();
        for n in 0..=5 {
            for s in 0..=5 {
                let want = if n == s { int(1) } else { int(0) };
                assert_eq!(inv.coeff(n, s), want, "({n},{s})");
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        let mut p = BivarSeries::one(6, 6);
        p.add_term(1, 1, &int(3));
        p.add_term(2, 0, &int(-1));
        let sq = p.mul(&p);
        assert_eq!(sq.sqrt().unwrap(), p);
    }

    #[test]
    fn divide_exact_handles_constant_two() {
        // (2 + 2xq) / 2 = 1 + xq via series division.
        let mut num = BivarSeries::zero(3, 3);
        num.add_term(0, 0, &int(2));
        num.add_term(1, 1, &int(2));
        let den = BivarSeries::monomial(int(2), 0, 0, 3, 3);
        let u = num.divide_exact(&den).unwrap();
        assert_eq!(u.coeff(0, 0), int(1));
        assert_eq!(u.coeff(1, 1), int(1));
        // 2/(2-2q) is not a polynomial in q: must fail, not panic.
        let mut bad = BivarSeries::zero(3, 3);
        bad.add_term(0, 0, &int(2));
        bad.add_term(0, 1, &int(-2));
        assert!(den.divide_exact(&bad).is_err());
    }

    #[test]
    fn inv_fraction_matches_hand_counts() {
        let s = StatCf::Inv.expand(4, 8).unwrap();
        // n=2: identity has no inversions, the transposition has one.
        assert_eq!(s.qpoly(2), Polynomial::from_ints(&[1, 1]));
        // n=3: inversion numbers over the four involutions are 0,1,1,3.
        assert_eq!(s.qpoly(3), Polynomial::from_ints(&[1, 2, 0, 1]));
    }

    #[test]
    fn inv_fraction_at_q_one_is_motzkin() {
        let n = 8;
        let s = StatCf::Inv.expand(n, n * (n - 1) / 2).unwrap();
        let at_one = s.eval_q_one();
        let want = [1i64, 1, 2, 4, 9, 21, 51, 127, 323];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(at_one[k], int(*w), "n={k}");
        }
    }

    #[test]
    fn signed_statistic_fractions_low_orders() {
        let lrmax = StatCf::Lrmax.expand(3, 3).unwrap();
        assert_eq!(lrmax.qpoly(1), Polynomial::from_ints(&[0, 1]));
        assert_eq!(lrmax.qpoly(2), Polynomial::from_ints(&[0, -1, 1]));
        assert_eq!(lrmax.qpoly(3), Polynomial::from_ints(&[0, -1, -2, 1]));
        let fix = StatCf::Fix.expand(2, 2).unwrap();
        assert_eq!(fix.qpoly(1), Polynomial::from_ints(&[0, 1]));
        assert_eq!(fix.qpoly(2), Polynomial::from_ints(&[-1, 0, 1]));
    }
}
