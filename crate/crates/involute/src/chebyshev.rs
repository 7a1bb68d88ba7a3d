//! Chebyshev polynomials of the second kind and the polynomial-normalized
//! substitutions every closed form in the catalog is assembled from.
//!
//! The raw substitutions live at `(1-x)/(2x)` and `(1-x)/(2ix)`; clearing
//! the powers of `x` and `ix` turns them into honest polynomials with
//! three-term recurrences, which is the only representation used here:
//!
//! * `vtilde`: `1, 1-x` then `(1-x)·prev - x²·prev2`
//! * `wtilde`: `1, 1-x` then `(1-x)·prev + x²·prev2`
//!
//! The remaining helpers are the fixed numerator/denominator combinations
//! that keep recurring in the catalog.

use crate::series::{GaussianInt, Polynomial, RationalFunction};

/// A Chebyshev polynomial of the second kind, kept with its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebU {
    pub n: i64,
    pub coeffs: Polynomial,
}

/// Which normalized family a polynomial belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebKind {
    V,
    W,
}

/// A normalized polynomial tagged with its family and index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedCheb {
    pub kind: ChebKind,
    pub n: i64,
    pub poly: Polynomial,
}

impl NormalizedCheb {
    pub fn new(kind: ChebKind, n: i64) -> Self {
        let poly = match kind {
            ChebKind::V => vtilde(n),
            ChebKind::W => wtilde(n),
        };
        NormalizedCheb { kind, n, poly }
    }
}

fn poly(ints: &[i64]) -> Polynomial {
    Polynomial::from_ints(ints)
}

/// `U_n` with `U_{-1} = 0`, `U_0 = 1`, `U_1 = 2x`, `U_n = 2x·U_{n-1} - U_{n-2}`.
#[allow(non_snake_case)]
pub fn chebU(n: i64) -> ChebU {
    assert!(n >= -1, "chebU index must be >= -1, got {n}");
    let coeffs = run_recurrence(n, Polynomial::zero(), Polynomial::one(), |prev, prev2| {
        &(&poly(&[0, 2]) * prev) - prev2
    });
    ChebU { n, coeffs }
}

/// Shared driver: `value(-1) = base_m1`, `value(0) = base_0`, then `step`.
fn run_recurrence(
    n: i64,
    base_m1: Polynomial,
    base_0: Polynomial,
    step: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
) -> Polynomial {
    if n == -1 {
        return base_m1;
    }
    let mut prev2 = base_m1;
    let mut prev = base_0;
    for _ in 0..n {
        let next = step(&prev, &prev2);
        prev2 = prev;
        prev = next;
    }
    prev
}

/// `x^n·U_n((1-x)/(2x))`: satisfies `(1-x)·prev - x²·prev2` from `0, 1`.
pub fn vtilde(n: i64) -> Polynomial {
    assert!(n >= -1, "vtilde index must be >= -1, got {n}");
    run_recurrence(n, Polynomial::zero(), Polynomial::one(), |prev, prev2| {
        &(&poly(&[1, -1]) * prev) - &(&poly(&[0, 0, 1]) * prev2)
    })
}

/// `(ix)^n·U_n((1-x)/(2ix))`: satisfies `(1-x)·prev + x²·prev2` from `0, 1`.
pub fn wtilde(n: i64) -> Polynomial {
    assert!(n >= -1, "wtilde index must be >= -1, got {n}");
    run_recurrence(n, Polynomial::zero(), Polynomial::one(), |prev, prev2| {
        &(&poly(&[1, -1]) * prev) + &(&poly(&[0, 0, 1]) * prev2)
    })
}

/// `vtilde(n) + x·vtilde(n-1)`, the odd-index denominator family.
pub fn ytilde(n: i64) -> Polynomial {
    assert!(n >= 0, "ytilde index must be >= 0, got {n}");
    &vtilde(n) + &vtilde(n - 1).shift_up(1)
}

/// `wtilde(n+1) + x·wtilde(n)`, the W-side analogue; defined for `n >= -1`.
pub fn ztilde(n: i64) -> Polynomial {
    assert!(n >= -1, "ztilde index must be >= -1, got {n}");
    &wtilde(n + 1) + &wtilde(n).shift_up(1)
}

/// `(1+x²)·wtilde(m) + x²(1+x)·wtilde(m-1)`; the `m = -1` value `1+x`
/// is the unique backward extension along the `wtilde` recurrence.
pub fn phitilde(m: i64) -> Polynomial {
    assert!(m >= -1, "phitilde index must be >= -1, got {m}");
    if m == -1 {
        return poly(&[1, 1]);
    }
    &(&poly(&[1, 0, 1]) * &wtilde(m)) + &(&poly(&[0, 0, 1, 1]) * &wtilde(m - 1))
}

/// `(1+x²)³·wtilde(m) + x²(1+x+3x²+2x⁴+x⁵)·wtilde(m-1)`; the `m = -1`
/// value is the backward extension `1+x+3x²+2x⁴+x⁵`.
pub fn psitilde(m: i64) -> Polynomial {
    assert!(m >= -1, "psitilde index must be >= -1, got {m}");
    let p = poly(&[1, 1, 3, 0, 2, 1]);
    if m == -1 {
        return p;
    }
    let cube = poly(&[1, 0, 1]).pow(3);
    &(&cube * &wtilde(m)) + &(&p.shift_up(2) * &wtilde(m - 1))
}

/// `(1-x+2x²)·wtilde(m) + x²(1+x²)·wtilde(m-1)`; backward extension
/// `1+x²` at `m = -1`.
pub fn thetatilde(m: i64) -> Polynomial {
    assert!(m >= -1, "thetatilde index must be >= -1, got {m}");
    if m == -1 {
        return poly(&[1, 0, 1]);
    }
    &(&poly(&[1, -1, 2]) * &wtilde(m)) + &(&poly(&[0, 0, 1, 0, 1]) * &wtilde(m - 1))
}

/// `(1-x+x³)·vtilde(k+1) - x²(1-x)·vtilde(k)` for `k >= -1`.
pub fn xitilde(k: i64) -> Polynomial {
    assert!(k >= -1, "xitilde index must be >= -1, got {k}");
    &(&poly(&[1, -1, 0, 1]) * &vtilde(k + 1)) - &(&poly(&[0, 0, 1, -1]) * &vtilde(k))
}

/// `U_{k+w}U_{l+w} - U_kU_l = U_{w-1}U_{k+l+w+1}` as polynomials.
pub fn chebysum_check(k: i64, l: i64, w: i64) -> bool {
    assert!(k >= -1 && l >= -1 && w >= 0, "chebysum range: k,l >= -1, w >= 0");
    let lhs = &(&chebU(k + w).coeffs * &chebU(l + w).coeffs) - &(&chebU(k).coeffs * &chebU(l).coeffs);
    let rhs = &chebU(w - 1).coeffs * &chebU(k + l + w + 1).coeffs;
    lhs == rhs
}

/// `Σ_{j=0}^k (-1)^binom(j,2) x^j`; `k = -1` gives the empty sum.
pub fn v_poly(k: i64) -> Polynomial {
    assert!(k >= -1, "v_poly index must be >= -1, got {k}");
    let coeffs: Vec<GaussianInt> = (0..=k)
        .map(|j| {
            // binom(j,2) is odd exactly when j mod 4 is 2 or 3.
            if j.rem_euclid(4) >= 2 {
                GaussianInt::from(-1i64)
            } else {
                GaussianInt::one()
            }
        })
        .collect();
    Polynomial::new(coeffs)
}

/// `V_k + V_{k-1}` assembled over a common denominator: `ytilde(k)/x^k`.
pub fn y_combination(k: i64) -> RationalFunction {
    assert!(k >= 0, "y_combination index must be >= 0, got {k}");
    RationalFunction::new(ytilde(k), Polynomial::monomial(GaussianInt::one(), k as usize))
        .expect("x^k is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_complex::Complex;
    use num_rational::Ratio;

    fn p(ints: &[i64]) -> Polynomial {
        Polynomial::from_ints(ints)
    }

    #[test]
    fn chebu_bases_and_recurrence() {
        assert_eq!(chebU(-1).coeffs, Polynomial::zero());
        assert_eq!(chebU(0).coeffs, Polynomial::one());
        assert_eq!(chebU(1).coeffs, p(&[0, 2]));
        assert_eq!(chebU(2).coeffs, p(&[-1, 0, 4]));
        assert_eq!(chebU(3).coeffs, p(&[0, -4, 0, 8]));
    }

    #[test]
    fn vtilde_values() {
        assert_eq!(vtilde(-1), Polynomial::zero());
        assert_eq!(vtilde(0), Polynomial::one());
        assert_eq!(vtilde(1), p(&[1, -1]));
        assert_eq!(vtilde(2), p(&[1, -2]));
        assert_eq!(vtilde(3), p(&[1, -3, 1, 1]));
    }

    #[test]
    fn wtilde_values() {
        assert_eq!(wtilde(1), p(&[1, -1]));
        assert_eq!(wtilde(2), p(&[1, -2, 2]));
        assert_eq!(wtilde(3), p(&[1, -3, 5, -3]));
    }

    #[test]
    fn wtilde_coefficients_stay_real() {
        for n in -1..=32 {
            assert!(
                wtilde(n).coeffs().iter().all(|c| c.is_real()),
                "wtilde({n}) has imaginary parts"
            );
        }
    }

    type GaussianRational = Complex<Ratio<BigInt>>;

    fn rat(num: i64, den: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    fn real(r: Ratio<BigInt>) -> GaussianRational {
        Complex::new(r, Ratio::from(BigInt::from(0)))
    }

    fn imaginary_unit() -> GaussianRational {
        Complex::new(Ratio::from(BigInt::from(0)), Ratio::from(BigInt::from(1)))
    }

    fn eval(poly: &Polynomial, z: &GaussianRational) -> GaussianRational {
        let mut acc = Complex::new(Ratio::from(BigInt::from(0)), Ratio::from(BigInt::from(0)));
        for c in poly.coeffs().iter().rev() {
            let c = Complex::new(Ratio::from(c.re.clone()), Ratio::from(c.im.clone()));
            acc = acc * z + c;
        }
        acc
    }

    fn power(base: &GaussianRational, n: i64) -> GaussianRational {
        let mut acc = real(rat(1, 1));
        if n >= 0 {
            for _ in 0..n {
                acc = acc * base;
            }
        } else {
            for _ in 0..-n {
                acc = acc / base;
            }
        }
        acc
    }

    #[test]
    fn vtilde_matches_substitution_at_sample_points() {
        let samples = [rat(2, 1), rat(1, 2), rat(-1, 3), rat(3, 5), rat(-7, 2)];
        for n in -1..=12 {
            for x0 in &samples {
                let x0 = real(x0.clone());
                // (1 - x0) / (2 x0)
                let arg = (real(rat(1, 1)) - &x0) / (real(rat(2, 1)) * &x0);
                let expected = power(&x0, n) * eval(&chebU(n).coeffs, &arg);
                assert_eq!(eval(&vtilde(n), &x0), expected, "n={n}");
            }
        }
    }

    #[test]
    fn wtilde_matches_substitution_at_sample_points() {
        let samples = [rat(2, 1), rat(1, 2), rat(-1, 3), rat(3, 5), rat(-7, 2)];
        for n in -1..=12 {
            for x0 in &samples {
                let ix0 = imaginary_unit() * real(x0.clone());
                let arg = (real(rat(1, 1)) - real(x0.clone())) / (real(rat(2, 1)) * &ix0);
                let expected = power(&ix0, n) * eval(&chebU(n).coeffs, &arg);
                assert_eq!(eval(&wtilde(n), &real(x0.clone())), expected, "n={n}");
            }
        }
    }

    #[test]
    fn product_identity() {
        assert!(chebysum_check(0, 0, 1));
        for l in -1..=4 {
            for w in 0..=4 {
                assert!(chebysum_check(-1, l, w));
            }
        }
        for k in -1..=5 {
            for l in -1..=5 {
                for w in 0..=5 {
                    assert!(chebysum_check(k, l, w), "k={k} l={l} w={w}");
                }
            }
        }
    }

    #[test]
    fn alternating_sign_poly() {
        assert_eq!(v_poly(-1), Polynomial::zero());
        assert_eq!(v_poly(0), Polynomial::one());
        assert_eq!(v_poly(1), p(&[1, 1]));
        assert_eq!(v_poly(2), p(&[1, 1, -1]));
        assert_eq!(v_poly(3), p(&[1, 1, -1, -1]));
        assert_eq!(v_poly(4), p(&[1, 1, -1, -1, 1]));
        assert_eq!(v_poly(5), p(&[1, 1, -1, -1, 1, 1]));
    }

    #[test]
    fn y_combination_values() {
        let y1 = y_combination(1);
        assert_eq!(y1.num, Polynomial::one());
        assert_eq!(y1.den, p(&[0, 1]));
        let y0 = y_combination(0);
        assert_eq!(y0.num, Polynomial::one());
        assert_eq!(y0.den, Polynomial::one());
        let y2 = y_combination(2);
        assert_eq!(y2.num, p(&[1, -1, -1]));
        assert_eq!(y2.den, p(&[0, 0, 1]));
    }

    #[test]
    fn helper_combination_values() {
        assert_eq!(ytilde(0), Polynomial::one());
        assert_eq!(ytilde(1), Polynomial::one());
        assert_eq!(ytilde(2), p(&[1, -1, -1]));
        assert_eq!(ytilde(3), p(&[1, -2, -1, 1]));
        assert_eq!(ztilde(-1), Polynomial::one());
        assert_eq!(ztilde(0), Polynomial::one());
        assert_eq!(ztilde(1), p(&[1, -1, 1]));
        assert_eq!(ztilde(2), p(&[1, -2, 3, -1]));
        assert_eq!(phitilde(-1), p(&[1, 1]));
        assert_eq!(phitilde(0), p(&[1, 0, 1]));
        assert_eq!(phitilde(1), p(&[1, -1, 2]));
        assert_eq!(phitilde(2), p(&[1, -2, 4, -2, 1]));
        assert_eq!(psitilde(-1), p(&[1, 1, 3, 0, 2, 1]));
        assert_eq!(psitilde(0), p(&[1, 0, 3, 0, 3, 0, 1]));
        assert_eq!(psitilde(1), p(&[1, -1, 4, -2, 6, -3, 3]));
        assert_eq!(thetatilde(-1), p(&[1, 0, 1]));
        assert_eq!(thetatilde(0), p(&[1, -1, 2]));
        assert_eq!(thetatilde(1), p(&[1, -2, 4, -2, 1]));
        assert_eq!(xitilde(-1), p(&[1, -1, 0, 1]));
        assert_eq!(xitilde(0), p(&[1, -2, 0, 2, -1]));
    }

    #[test]
    fn helpers_satisfy_parent_recurrences() {
        // Each W-side helper satisfies next = (1-x)·prev + x²·prev2; the
        // V-side helpers satisfy next = (1-x)·prev - x²·prev2.
        let w_step = |prev: &Polynomial, prev2: &Polynomial| {
            &(&p(&[1, -1]) * prev) + &(&p(&[0, 0, 1]) * prev2)
        };
        let v_step = |prev: &Polynomial, prev2: &Polynomial| {
            &(&p(&[1, -1]) * prev) - &(&p(&[0, 0, 1]) * prev2)
        };
        for m in 1..=8 {
            assert_eq!(ztilde(m), w_step(&ztilde(m - 1), &ztilde(m - 2)), "ztilde {m}");
            assert_eq!(phitilde(m), w_step(&phitilde(m - 1), &phitilde(m - 2)), "phitilde {m}");
            assert_eq!(psitilde(m), w_step(&psitilde(m - 1), &psitilde(m - 2)), "psitilde {m}");
            assert_eq!(
                thetatilde(m),
                w_step(&thetatilde(m - 1), &thetatilde(m - 2)),
                "thetatilde {m}"
            );
            assert_eq!(xitilde(m), v_step(&xitilde(m - 1), &xitilde(m - 2)), "xitilde {m}");
            if m >= 2 {
                assert_eq!(ytilde(m), v_step(&ytilde(m - 1), &ytilde(m - 2)), "ytilde {m}");
            }
        }
    }

    #[test]
    fn normalized_cheb_wrapper() {
        let v = NormalizedCheb::new(ChebKind::V, 2);
        assert_eq!(v.poly, vtilde(2));
        let w = NormalizedCheb::new(ChebKind::W, 3);
        assert_eq!(w.poly, wtilde(3));
    }
}
