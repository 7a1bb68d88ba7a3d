//! Closed forms for the series families, organized as an addressable catalog.
//!
//! Every entry is either a rational function in `x` or one of four algebraic
//! expressions involving a square root.  Entries are addressed two ways:
//!
//! * by pattern, through the resolvers [`f_closed_form`], [`g_closed_form`],
//!   [`p_closed_form`] and [`q_closed_form`], which detect the shape of the
//!   supplied pattern and build the matching form;
//! * by identifier, through [`ClosedFormId`], which names each closed-form
//!   family together with its parameters and can produce both the closed
//!   form and the corresponding engine series for cross-checking.

use crate::chebyshev::{
    phitilde, psitilde, thetatilde, v_poly, vtilde, wtilde, xitilde, ytilde, ztilde,
};
use crate::core::Permutation;
use crate::error::{Error, Result};
use crate::genfun::{engine, gpq, roccur, SignVariant};
use crate::series::{GaussianInt, Polynomial, PowerSeries, RationalFunction};
use std::collections::BTreeMap;

fn gi(c: i64) -> GaussianInt {
    GaussianInt::from(c)
}

fn xpow(k: usize) -> Polynomial {
    Polynomial::monomial(GaussianInt::one(), k)
}

/// `1 - x^j`; the zero polynomial for `j = 0`.
fn one_minus_xpow(j: usize) -> Polynomial {
    &Polynomial::one() - &xpow(j)
}

fn sign_pm(e: i64) -> GaussianInt {
    if e.rem_euclid(2) == 0 {
        GaussianInt::one()
    } else {
        gi(-1)
    }
}

fn rf(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
    RationalFunction::new(num, den)
}

fn unknown(what: impl Into<String>) -> Error {
    Error::UnknownClosedForm { id: what.into() }
}

// ---------------------------------------------------------------------------
// Avoidance family F.

/// `[2k]`, both variants, `k >= 0` (the empty pattern gives zero).
pub(crate) fn f_even_dec(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Ok(RationalFunction::zero());
    }
    let k = k as i64;
    match variant {
        SignVariant::Plus => rf(vtilde(k - 1), vtilde(k)),
        SignVariant::Minus => rf(wtilde(k - 1), wtilde(k)),
    }
}

/// `[2k-1]`, both variants, `k >= 1`.
pub(crate) fn f_odd_dec(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(unknown("odd decreasing pattern needs k >= 1"));
    }
    let k = k as i64;
    match variant {
        SignVariant::Plus => rf(ytilde(k - 1), ytilde(k)),
        SignVariant::Minus => rf(ztilde(k - 2), ztilde(k - 1)),
    }
}

/// `[k]` by parity; `k = 0` encodes the empty pattern and yields zero.
pub(crate) fn f_decreasing(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k % 2 == 0 {
        f_even_dec(variant, k / 2)
    } else {
        f_odd_dec(variant, k / 2 + 1)
    }
}

/// `[k] skew 12`, both variants, `k >= 0`.
pub(crate) fn f_skew12(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    let k = k as i64;
    match variant {
        SignVariant::Plus => rf(vtilde(k), vtilde(k + 1)),
        SignVariant::Minus => rf(phitilde(k - 1), phitilde(k)),
    }
}

/// `[k] skew 132` (equivalently 213), both variants, `k >= 0`.
pub(crate) fn f_skew132(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    let k = k as i64;
    match variant {
        SignVariant::Plus => rf(ytilde(k + 1), ytilde(k + 2)),
        SignVariant::Minus => rf(ztilde(k), ztilde(k + 1)),
    }
}

/// `[k] skew 231`.  For `k >= 1` this coincides with `[k] skew 12` at the
/// same `k`; the bare pattern 231 (`k = 0`) instead matches 312, its
/// inverse, which is `[1] skew 12`.
pub(crate) fn f_skew231(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    f_skew12(variant, k.max(1))
}

/// `[k] skew 123`, both variants for all `k >= 0`.  The unsigned quotients
/// telescope because the numerator family obeys the same two-term
/// recurrence as the plain avoidance ladder.
pub(crate) fn f_skew123(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    let k = k as i64;
    match variant {
        SignVariant::Minus => rf(psitilde(k - 1), psitilde(k)),
        SignVariant::Plus => rf(xitilde(k - 1), xitilde(k)),
    }
}

/// Two-layer `[1, l]`, signed, built from the closed form of `[l]`.
pub(crate) fn f_layered_one(l: usize) -> Result<RationalFunction> {
    if l == 0 {
        return Err(unknown("layered part sizes must be positive"));
    }
    let inner = f_decreasing(SignVariant::Minus, l)?;
    let num = &inner.den + &inner.num.shift_up(1);
    let den = &inner.den + &inner.num.shift_up(2);
    rf(num, den)
}

/// Two-layer `[k, l]`, signed, by the two-layer reduction; `k, l >= 1`.
pub(crate) fn f_layered_pair(k: usize, l: usize) -> Result<RationalFunction> {
    if k == 0 || l == 0 {
        return Err(unknown("layered part sizes must be positive"));
    }
    if k == 1 {
        return f_layered_one(l);
    }
    if l == 1 {
        return f_layered_one(k);
    }
    let a = f_decreasing(SignVariant::Minus, k - 2)?;
    let b = f_decreasing(SignVariant::Minus, l)?;
    // (1 + x^2 F_{[k-2]} F_{[l]}) / (1 - x + x^2 F_{[k-2]} + x^2 F_{[l]}).
    let one = RationalFunction::one();
    let x2 = RationalFunction::from_polynomial(xpow(2));
    let one_minus_x = RationalFunction::from_polynomial(Polynomial::from_ints(&[1, -1]));
    let num = &one + &(&(&x2 * &a) * &b);
    let den = &(&one_minus_x + &(&x2 * &a)) + &(&x2 * &b);
    num.div(&den)
}

/// Two-layer `[k, l]` with `k + l` not both-odd reduces to `[k + l]`.
pub(crate) fn f_layered_merged(k: usize, l: usize) -> Result<RationalFunction> {
    if k == 0 || l == 0 {
        return Err(unknown("layered part sizes must be positive"));
    }
    if k % 2 == 1 && l % 2 == 1 {
        return Err(unknown("merged two-layer form needs an even part"));
    }
    f_decreasing(SignVariant::Minus, k + l)
}

/// Two odd layers `[2k-1, 2l-1]`, signed, `k, l >= 1`.
pub(crate) fn f_layered_odd_odd(k: usize, l: usize) -> Result<RationalFunction> {
    if k == 0 || l == 0 {
        return Err(unknown("odd layer indices must be positive"));
    }
    let cap = (k + l) as i64;
    let combo = |m: i64| -> Polynomial {
        let two_x = Polynomial::from_ints(&[0, 2]);
        &(&wtilde(m) + &(&two_x * &wtilde(m - 1))) + &wtilde(m - 2).shift_up(2)
    };
    rf(combo(cap - 1), combo(cap))
}

/// Three even layers `[2k1, 2k2, 2k3]`, signed, all `k_i >= 1`.
pub(crate) fn f_layered_triple(k1: usize, k2: usize, k3: usize) -> Result<RationalFunction> {
    if k1 == 0 || k2 == 0 || k3 == 0 {
        return Err(unknown("even layer indices must be positive"));
    }
    let (a, b, c) = (k1 as i64, k2 as i64, k3 as i64);
    let cap = a + b + c;
    let cross = &(&wtilde(a + b - 1) * &wtilde(a + c - 1)) * &wtilde(b + c - 1);
    let num = &(&wtilde(cap) * &wtilde(cap - 1)) - &cross.shift_up(2);
    let den = &(&wtilde(a + b) * &wtilde(a + c)) * &wtilde(b + c);
    rf(num, den)
}

/// `[j] skew pi skew [j]` from the closed form of `pi`, by the continuant
/// recurrence `B_m = (1 - x) B_{m-1} -/+ x^2 B_{m-2}` seeded with the
/// numerator and denominator of `F_pi`; the series is `B_{j-1} / B_j`.
pub(crate) fn f_nested(
    variant: SignVariant,
    j: usize,
    inner: &Permutation,
) -> Result<RationalFunction> {
    let f0 = f_closed_form(inner, variant)?;
    let mut prev = f0.num.clone();
    let mut cur = f0.den.clone();
    let s = match variant {
        SignVariant::Plus => gi(-1),
        SignVariant::Minus => GaussianInt::one(),
    };
    let one_minus_x = Polynomial::from_ints(&[1, -1]);
    for _ in 0..j {
        let next = &(&one_minus_x * &cur) + &prev.shift_up(2).scale(&s);
        prev = cur;
        cur = next;
    }
    rf(prev, cur)
}

/// Splits `pi` as a maximal decreasing prefix over a tail pattern.
pub(crate) fn split_decreasing_prefix(p: &Permutation) -> (usize, Permutation) {
    let n = p.len();
    let mut k = 0;
    while k < n && p.apply(k + 1) == n - k {
        k += 1;
    }
    (k, Permutation::pattern_of(&p.entries()[k..]))
}

/// Layer sizes if `pi` is a direct sum of decreasing blocks.
fn layer_sizes(p: &Permutation) -> Option<Vec<usize>> {
    let comps = p.indecomposable_decomposition();
    let mut sizes = Vec::with_capacity(comps.len());
    for c in &comps {
        if !c.is_decreasing() {
            return None;
        }
        sizes.push(c.len());
    }
    Some(sizes)
}

/// Resolves the closed form of the avoidance series for a single pattern.
pub fn f_closed_form(p: &Permutation, variant: SignVariant) -> Result<RationalFunction> {
    if p.is_empty() {
        return Ok(RationalFunction::zero());
    }
    if p.is_decreasing() {
        return f_decreasing(variant, p.len());
    }
    let (k, tail) = split_decreasing_prefix(p);
    match tail.entries() {
        [1, 2] => return f_skew12(variant, k),
        [1, 3, 2] | [2, 1, 3] => return f_skew132(variant, k),
        [2, 3, 1] => return f_skew231(variant, k),
        [1, 2, 3] => return f_skew123(variant, k),
        _ => {}
    }
    if variant == SignVariant::Minus {
        if let Some(sizes) = layer_sizes(p) {
            match sizes.as_slice() {
                [a, b] => return f_layered_pair(*a, *b),
                [a, b, c] if a % 2 == 0 && b % 2 == 0 && c % 2 == 0 => {
                    return f_layered_triple(a / 2, b / 2, c / 2)
                }
                _ => {}
            }
        }
    }
    Err(unknown(format!("avoidance closed form for {p}")))
}

// ---------------------------------------------------------------------------
// Exactly-once family G.
//
// The engine facts behind the displays: peeling a frame off a pattern that
// starts with its maximum leaves not the plain exactly-once series of the
// inner pattern but the series of involutions containing the inner pattern
// exactly once while avoiding its one-step extensions (the ones obtained by
// prepending a new maximum and, when the frame closes at both ends, also
// appending a new minimum).  For decreasing inner patterns the restricted
// and unrestricted series coincide, but for the skew families they differ,
// and the displays below carry the restricted bases.

/// Exactly one `[k] skew 12`.  Each frame contributes `sign x^2 (F)^2` and
/// the chain bottoms out at the single involution 12, so the product
/// telescopes through the avoidance forms.
pub(crate) fn g_skew12(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return g_base(&Permutation::from_raw(vec![1, 2]), variant)
            .expect("12 is a base pattern");
    }
    match variant {
        SignVariant::Plus => {
            let num = &xpow(2 * k + 2) * &Polynomial::from_ints(&[1, -1]).pow(2);
            rf(num, vtilde(k as i64 + 1).pow(2))
        }
        SignVariant::Minus => {
            let num = &xpow(2 * k + 2).scale(&sign_pm(k as i64))
                * &Polynomial::from_ints(&[1, 0, 1]).pow(2);
            rf(num, phitilde(k as i64).pow(2))
        }
    }
}

/// Exactly one `[k] skew 231`.  The bare pattern (`k = 0`) matches its
/// inverse 312 = `[1] skew 12`; one frame (`k = 1`) closes over the inner
/// pattern 12 and yields the same series again; deeper frames close over an
/// inner `[j] skew 12` with `j >= 1`, whose restricted exactly-once class
/// is empty, so those series vanish identically.
pub(crate) fn g_skew231(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k <= 1 {
        g_skew12(variant, 1)
    } else {
        Ok(RationalFunction::zero())
    }
}

/// Exactly one `[k] skew 132` (equivalently 213): the restricted base
/// contributes `x^3/(1-x)` and each frame multiplies by `sign x^2 (F)^2`.
pub(crate) fn g_skew132(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return g_base(&Permutation::from_raw(vec![1, 3, 2]), variant)
            .expect("132 is a base pattern");
    }
    match variant {
        SignVariant::Plus => {
            let num = &xpow(2 * k + 3) * &Polynomial::from_ints(&[1, -1, -1]).pow(2);
            let den = &Polynomial::from_ints(&[1, -1]) * &ytilde(k as i64 + 2).pow(2);
            rf(num, den)
        }
        SignVariant::Minus => {
            let num = &xpow(2 * k + 3).scale(&sign_pm(k as i64 + 1))
                * &Polynomial::from_ints(&[1, -1, 1]).pow(2);
            let den = &Polynomial::from_ints(&[1, -1]) * &ztilde(k as i64 + 1).pow(2);
            rf(num, den)
        }
    }
}

/// Exactly one `[k] skew 123`: the restricted base is
/// `x^3 (1 + sign x^2)/(1 - sign x^2)` and the frames telescope through the
/// avoidance forms of the same family.
pub(crate) fn g_skew123(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return g_base(&Permutation::from_raw(vec![1, 2, 3]), variant)
            .expect("123 is a base pattern");
    }
    match variant {
        SignVariant::Plus => {
            let num = &(&xpow(2 * k + 3) * &Polynomial::from_ints(&[1, 0, 1])) * &xitilde(0).pow(2);
            let den = &Polynomial::from_ints(&[1, 0, -1]) * &xitilde(k as i64).pow(2);
            rf(num, den)
        }
        SignVariant::Minus => {
            let num = &(&xpow(2 * k + 3).scale(&sign_pm(k as i64))
                * &Polynomial::from_ints(&[1, 0, -1]))
                * &Polynomial::from_ints(&[1, 0, 1]).pow(6);
            let den = &Polynomial::from_ints(&[1, 0, 1]) * &psitilde(k as i64).pow(2);
            rf(num, den)
        }
    }
}

pub(crate) fn g_base(p: &Permutation, variant: SignVariant) -> Option<Result<RationalFunction>> {
    let form = match (p.entries(), variant) {
        ([1], _) => rf(xpow(1), Polynomial::one()),
        ([2, 1], SignVariant::Plus) => rf(xpow(2), Polynomial::from_ints(&[1, -1]).pow(2)),
        ([2, 1], SignVariant::Minus) => {
            rf(xpow(2).scale(&gi(-1)), Polynomial::from_ints(&[1, -1]).pow(2))
        }
        ([1, 2], SignVariant::Plus) => rf(xpow(2), Polynomial::from_ints(&[1, 0, -1])),
        ([1, 2], SignVariant::Minus) => rf(xpow(2), Polynomial::from_ints(&[1, 0, 1])),
        ([1, 2, 3], SignVariant::Plus) => rf(
            &xpow(3) * &Polynomial::from_ints(&[1, 0, 1]),
            Polynomial::from_ints(&[1, 0, -1]).pow(2),
        ),
        ([1, 2, 3], SignVariant::Minus) => rf(
            &xpow(3) * &Polynomial::from_ints(&[1, 0, -1]),
            Polynomial::from_ints(&[1, 0, 1]).pow(2),
        ),
        ([1, 3, 2], SignVariant::Plus) | ([2, 1, 3], SignVariant::Plus) => {
            rf(xpow(3), Polynomial::from_ints(&[1, -1, -1]))
        }
        ([1, 3, 2], SignVariant::Minus) | ([2, 1, 3], SignVariant::Minus) => {
            rf(xpow(3).scale(&gi(-1)), Polynomial::from_ints(&[1, -1, 1]))
        }
        _ => return None,
    };
    Some(form)
}

/// Exactly one `pi`, avoiding the pattern obtained by prepending a new
/// maximum to `pi`.  This is the series the frame recursion actually needs
/// when only the front of the frame closes; `pi` never ends with 1 there.
fn h_front_closed_form(pi: &Permutation, variant: SignVariant) -> Result<RationalFunction> {
    let unit = GaussianInt::from(variant.unit());
    match pi.entries() {
        // Only the involution 12 itself: anything longer with a single
        // ascent already contains the prepended-maximum extension.
        [1, 2] => return rf(xpow(2), Polynomial::one()),
        // The chain 132, 1324, 13245, ...; each carries one inversion.
        [1, 3, 2] | [2, 1, 3] => {
            return rf(xpow(3).scale(&unit), Polynomial::from_ints(&[1, -1]))
        }
        // A single ascent pair with the rest decreasing around it, padded
        // by a point on one side: x(1 + sign x^2) times the exactly-once
        // series of 12.
        [1, 2, 3] => {
            let num = &xpow(3) * &(&Polynomial::one() + &xpow(2).scale(&unit));
            let den = &Polynomial::one() - &xpow(2).scale(&unit);
            return rf(num, den);
        }
        _ => {}
    }
    let n = pi.len();
    if n >= 2 && pi.apply(1) == n && pi.apply(n) != 1 {
        let tail = Permutation::pattern_of(&pi.entries()[1..]);
        let h_in = h_front_closed_form(&tail, variant)?;
        let f = f_closed_form(pi, variant)?;
        let step = RationalFunction::from_polynomial(xpow(2).scale(&unit));
        return Ok(&(&step * &h_in) * &f.pow(2));
    }
    Err(Error::UnsupportedPattern {
        pattern: pi.to_string(),
        engine: "front-restricted exactly-once closed form".into(),
    })
}

/// Exactly one `pi`, avoiding both one-step extensions (new maximum in
/// front, new minimum behind).  Needed when a frame closes at both ends.
fn h_both_closed_form(pi: &Permutation, variant: SignVariant) -> Result<RationalFunction> {
    // Extending a decreasing pattern either way gives the next decreasing
    // pattern, which an exactly-once involution avoids automatically, so
    // the restriction is vacuous there.
    if pi.is_decreasing() {
        return g_closed_form(pi, variant);
    }
    let unit = GaussianInt::from(variant.unit());
    match pi.entries() {
        // As in the front-restricted case, both extensions of 12 force a
        // second ascent, so only the involution 12 itself survives.
        [1, 2] => return rf(xpow(2), Polynomial::one()),
        // The 132-chain avoids the appended-minimum extension for free: it
        // has no decreasing subsequence of length three.
        [1, 3, 2] | [2, 1, 3] => {
            return rf(xpow(3).scale(&unit), Polynomial::from_ints(&[1, -1]))
        }
        // Both shapes counted by the front-restricted 123 series place the
        // ascent against the boundary, so no appended minimum can follow.
        [1, 2, 3] => {
            let num = &xpow(3) * &(&Polynomial::one() + &xpow(2).scale(&unit));
            let den = &Polynomial::one() - &xpow(2).scale(&unit);
            return rf(num, den);
        }
        // A lone 231 or 312 always extends: its middle ascent sits inside a
        // larger configuration that supplies the extra maximum or minimum.
        [2, 3, 1] | [3, 1, 2] => return Ok(RationalFunction::zero()),
        _ => {}
    }
    // The same emptiness holds along the whole `[j] skew 12` chain.
    let (j, tail) = split_decreasing_prefix(pi);
    if j >= 1 && tail.entries() == [1, 2] {
        return Ok(RationalFunction::zero());
    }
    Err(Error::UnsupportedPattern {
        pattern: pi.to_string(),
        engine: "both-restricted exactly-once closed form".into(),
    })
}

/// Resolves the closed form of the exactly-once series for a pattern.
///
/// Base patterns and the skew families use their explicit displays.  Other
/// patterns are peeled by frames: removing an outer layer multiplies the
/// series by `+/- x^2 (F_p)^2` and replaces the exactly-once series of the
/// inner pattern by its extension-restricted variant, because a second
/// occurrence of the peeled pattern can reuse the frame around any inner
/// occurrence that extends.  Sum-indecomposable patterns with neither a
/// leading maximum nor a trailing minimum cannot occur at all.
pub fn g_closed_form(p: &Permutation, variant: SignVariant) -> Result<RationalFunction> {
    let n = p.len();
    if n == 0 {
        return Err(Error::UnsupportedPattern {
            pattern: "empty".into(),
            engine: "exactly-once closed form".into(),
        });
    }
    if let Some(form) = g_base(p, variant) {
        return form;
    }
    let (k, tail) = split_decreasing_prefix(p);
    match tail.entries() {
        [1, 2] => return g_skew12(variant, k),
        [1, 3, 2] | [2, 1, 3] => return g_skew132(variant, k),
        [2, 3, 1] => return g_skew231(variant, k),
        [1, 2, 3] => return g_skew123(variant, k),
        _ => {}
    }
    let first_max = p.apply(1) == n;
    let last_one = p.apply(n) == 1;
    let entries = p.entries();
    let restricted = if first_max && last_one {
        h_both_closed_form(&Permutation::pattern_of(&entries[1..n - 1]), variant)
    } else if first_max {
        h_front_closed_form(&Permutation::pattern_of(&entries[1..]), variant)
    } else if last_one {
        // Mirror to the leading-maximum shape; the class is closed under
        // reverse complement and the weights are preserved.
        return g_closed_form(&p.reverse_complement(), variant);
    } else if p.is_sum_indecomposable() {
        return Ok(RationalFunction::zero());
    } else {
        return Err(Error::UnsupportedPattern {
            pattern: p.to_string(),
            engine: "exactly-once closed form".into(),
        });
    };
    let h = restricted?;
    let f = f_closed_form(p, variant)?;
    let step = RationalFunction::from_polynomial(xpow(2).scale(&GaussianInt::from(variant.unit())));
    Ok(&(&step * &h) * &f.pow(2))
}

// ---------------------------------------------------------------------------
// Exactly-one-3412 family P.

pub(crate) fn p_even_dec(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(unknown("even decreasing pattern needs k >= 1"));
    }
    let mut num = Polynomial::zero();
    match variant {
        SignVariant::Plus => {
            for j in 0..k.saturating_sub(1) {
                let term = &(&one_minus_xpow(2 * j + 2) * &xpow(2 * (k - j)))
                    * &vtilde(j as i64).pow(2);
                num = &num + &term;
            }
            let den = &Polynomial::from_ints(&[1, -1]) * &vtilde(k as i64).pow(2);
            rf(num, den)
        }
        SignVariant::Minus => {
            for j in 0..k.saturating_sub(1) {
                let term = &(&v_poly(2 * j as i64 + 1) * &xpow(2 * (k - j))
                    .scale(&sign_pm((k - j) as i64)))
                    * &wtilde(j as i64).pow(2);
                num = &num + &term;
            }
            rf(num, wtilde(k as i64).pow(2))
        }
    }
}

pub(crate) fn p_odd_dec(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    let mut num = Polynomial::zero();
    match variant {
        SignVariant::Plus => {
            for j in 0..k {
                let term = &(&one_minus_xpow(2 * j + 1) * &xpow(2 * (k + 1 - j)))
                    * &ytilde(j as i64).pow(2);
                num = &num + &term;
            }
            let den = &Polynomial::from_ints(&[1, -1]) * &ytilde(k as i64 + 1).pow(2);
            rf(num, den)
        }
        SignVariant::Minus => {
            for j in 0..k {
                let term = &(&v_poly(2 * j as i64) * &xpow(2 * (k + 1 - j))
                    .scale(&sign_pm((k + 1 - j) as i64)))
                    * &ztilde(j as i64 - 1).pow(2);
                num = &num + &term;
            }
            rf(num, ztilde(k as i64).pow(2))
        }
    }
}

pub(crate) fn p_decreasing(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k % 2 == 0 {
        if k == 0 {
            return Ok(RationalFunction::zero());
        }
        p_even_dec(variant, k / 2)
    } else {
        p_odd_dec(variant, k / 2)
    }
}

pub(crate) fn p_skew12(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(unknown("skew-12 family needs k >= 1"));
    }
    let mut num = Polynomial::zero();
    match variant {
        SignVariant::Plus => {
            for j in 1..k {
                let term =
                    &(&one_minus_xpow(j) * &xpow(2 * (k + 1 - j))) * &vtilde(j as i64).pow(2);
                num = &num + &term;
            }
            let den = &Polynomial::from_ints(&[1, -1]) * &vtilde(k as i64 + 1).pow(2);
            rf(num, den)
        }
        SignVariant::Minus => {
            for j in 1..k {
                let term = &(&v_poly(j as i64 - 1)
                    * &xpow(2 * (k - j + 1)).scale(&sign_pm((k - j + 1) as i64)))
                    * &thetatilde(j as i64 - 2).pow(2);
                num = &num + &term;
            }
            rf(num, thetatilde(k as i64 - 1).pow(2))
        }
    }
}

pub(crate) fn p_skew132(k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(unknown("skew-132 family needs k >= 1"));
    }
    let mut num = &(&one_minus_xpow(3) * &ytilde(2)) * &xpow(2 * k + 2);
    for j in 2..=k {
        let term = &ytilde(j as i64).pow(2) * &xpow(2 * (k + 2 - j));
        num = &num + &term;
    }
    let den = &Polynomial::from_ints(&[1, -1]) * &ytilde(k as i64 + 2).pow(2);
    rf(num, den)
}

pub(crate) fn p_skew231(variant: SignVariant, k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(unknown("skew-231 family needs k >= 1"));
    }
    // The outer-layer reduction assumes the layer below the frame cannot
    // splice into the crossing gadget; at k = 1 it can, so that case gets
    // its own forms, assembled directly from the gadget census.
    if k == 1 {
        return match variant {
            SignVariant::Plus => rf(
                &xpow(4) * &Polynomial::from_ints(&[1, 1, -1]),
                Polynomial::from_ints(&[1, -2]).pow(2),
            ),
            SignVariant::Minus => {
                let f = f_skew12(SignVariant::Minus, 1)?;
                let pref = rf(
                    &xpow(4) * &Polynomial::from_ints(&[1, 3, 0, 1, -1]),
                    &Polynomial::from_ints(&[1, 0, 1]) * &Polynomial::from_ints(&[1, -1, 2]),
                )?;
                Ok(&pref * &f)
            }
        };
    }
    match variant {
        SignVariant::Plus => {
            let mut num = &xpow(4) * &vtilde(k as i64 - 1).pow(2);
            for j in 1..k - 1 {
                let term =
                    &(&one_minus_xpow(j) * &xpow(2 * (k + 1 - j))) * &vtilde(j as i64).pow(2);
                num = &num + &term;
            }
            let den = &Polynomial::from_ints(&[1, -1]) * &vtilde(k as i64 + 1).pow(2);
            rf(num, den)
        }
        SignVariant::Minus => {
            // Outer-layer reduction from [k-1] skew 12 (the inner pattern of
            // [k] skew 231 once its frame is removed).
            let p_in = p_skew12(SignVariant::Minus, k - 1)?;
            let f_in = f_skew12(SignVariant::Minus, k - 1)?;
            let f = f_skew231(SignVariant::Minus, k)?;
            let weight = rf(
                &xpow(2) * &Polynomial::from_ints(&[1, 1]),
                Polynomial::from_ints(&[1, 0, 1]),
            )?;
            let bracket = &p_in - &(&weight * &f_in.pow(2));
            let shell = RationalFunction::from_polynomial(xpow(2).scale(&gi(-1)));
            Ok(&(&shell * &f.pow(2)) * &bracket)
        }
    }
}

pub(crate) fn p_len3(p: &Permutation, variant: SignVariant) -> Option<Result<RationalFunction>> {
    let form = match (p.entries(), variant) {
        ([1, 2, 3], SignVariant::Plus) => rf(
            &xpow(4) * &Polynomial::from_ints(&[1, 1, 1]),
            &Polynomial::from_ints(&[1, 1]) * &Polynomial::from_ints(&[1, -1]).pow(3),
        ),
        ([1, 2, 3], SignVariant::Minus) => rf(
            &xpow(4) * &Polynomial::from_ints(&[1, 3, 2, -3, 1]),
            Polynomial::from_ints(&[1, 0, 1]).pow(3),
        ),
        ([1, 3, 2], SignVariant::Plus) | ([2, 1, 3], SignVariant::Plus) => rf(
            xpow(4),
            &Polynomial::from_ints(&[1, -1]) * &Polynomial::from_ints(&[1, -1, -1]),
        ),
        ([1, 3, 2], SignVariant::Minus) | ([2, 1, 3], SignVariant::Minus) => rf(
            &xpow(4) * &Polynomial::from_ints(&[1, 1]),
            &Polynomial::from_ints(&[1, -1, 1]) * &Polynomial::from_ints(&[1, 0, 1]),
        ),
        ([2, 3, 1], _) | ([3, 1, 2], _) => Ok(RationalFunction::zero()),
        _ => return None,
    };
    Some(form)
}

/// Resolves the closed form of the exactly-one-3412 series for a pattern
/// restriction (`None` leaves involutions otherwise unrestricted).
pub fn p_closed_form(
    pattern: Option<&Permutation>,
    variant: SignVariant,
) -> Result<ClosedFormValue> {
    let p = match pattern {
        None => {
            let form = match variant {
                SignVariant::Plus => AlgebraicForm::PEmptyPlus,
                SignVariant::Minus => AlgebraicForm::PEmptyMinus,
            };
            return Ok(ClosedFormValue::Algebraic(form));
        }
        Some(p) => p,
    };
    if p.is_empty() {
        return Ok(ClosedFormValue::Rational(RationalFunction::zero()));
    }
    if p.is_decreasing() {
        return p_decreasing(variant, p.len()).map(ClosedFormValue::Rational);
    }
    if p.len() <= 3 {
        if let Some(form) = p_len3(p, variant) {
            return form.map(ClosedFormValue::Rational);
        }
    }
    if p.is_increasing() && p.len() == 2 {
        return Ok(ClosedFormValue::Rational(RationalFunction::zero()));
    }
    let (k, tail) = split_decreasing_prefix(p);
    let form = match tail.entries() {
        [1, 2] => p_skew12(variant, k),
        [1, 3, 2] | [2, 1, 3] => match variant {
            SignVariant::Plus => p_skew132(k),
            SignVariant::Minus => Err(unknown(format!("signed closed form for {p}"))),
        },
        [2, 3, 1] => p_skew231(variant, k),
        _ => Err(unknown(format!("exactly-one-3412 closed form for {p}"))),
    };
    form.map(ClosedFormValue::Rational)
}

// ---------------------------------------------------------------------------
// Doubly-exactly-once family Q.

pub(crate) fn q_even(k: usize) -> Result<RationalFunction> {
    if k < 2 {
        return Err(unknown("even doubly-once display needs k >= 2"));
    }
    let mut sum = RationalFunction::zero();
    for i in 2..=k {
        let ii = i as i64;
        let mut num = &(&one_minus_xpow(2 * i - 2) * &xpow(1)) * &(&vtilde(ii - 2) * &vtilde(ii));
        for j in 0..=i - 2 {
            let term =
                &(&one_minus_xpow(2 * j + 2) * &xpow(2 * i - 1 - 2 * j)) * &vtilde(j as i64).pow(2);
            num = &num + &term;
        }
        let den = &vtilde(ii - 1) * &vtilde(ii);
        sum = &sum + &rf(num, den)?;
    }
    let front = rf(
        xpow(2 * k + 1).scale(&gi(2)),
        &Polynomial::from_ints(&[1, -1]) * &vtilde(k as i64).pow(2),
    )?;
    Ok(&front * &sum)
}

pub(crate) fn q_odd(k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(unknown("odd doubly-once display needs k >= 1"));
    }
    let mut sum = RationalFunction::zero();
    for i in 1..=k {
        let ii = i as i64;
        let mut num =
            &(&one_minus_xpow(2 * i - 1) * &xpow(2)) * &(&ytilde(ii - 1) * &ytilde(ii + 1));
        for j in 0..i {
            let term =
                &(&one_minus_xpow(2 * j + 1) * &xpow(2 * i + 2 - 2 * j)) * &ytilde(j as i64).pow(2);
            num = &num + &term;
        }
        let den = &ytilde(ii) * &ytilde(ii + 1);
        sum = &sum + &rf(num, den)?;
    }
    let front = rf(
        xpow(2 * k + 1).scale(&gi(2)),
        &Polynomial::from_ints(&[1, -1]) * &ytilde(k as i64 + 1).pow(2),
    )?;
    Ok(&front * &sum)
}

/// Resolves the closed form for the doubly-exactly-once series of `[k]`.
pub fn q_closed_form(k: usize) -> Result<RationalFunction> {
    if k < 2 {
        return Err(Error::ParameterRange {
            context: format!("doubly-once family needs a decreasing pattern of length >= 2, got {k}"),
        });
    }
    if k == 2 {
        return Ok(RationalFunction::zero());
    }
    if k % 2 == 0 {
        q_even(k / 2)
    } else {
        q_odd(k / 2)
    }
}

// ---------------------------------------------------------------------------
// Single-occurrence corollaries of the composition expansion.

pub(crate) fn r_one_even(k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(unknown("single-occurrence even corollary needs k >= 1"));
    }
    rf(xpow(2 * k).scale(&sign_pm(k as i64)), wtilde(k as i64).pow(2))
}

pub(crate) fn r_one_odd(k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(unknown("single-occurrence odd corollary needs k >= 1"));
    }
    rf(
        xpow(2 * k + 1).scale(&sign_pm(k as i64)),
        ztilde(k as i64).pow(2),
    )
}

// ---------------------------------------------------------------------------
// Algebraic entries.

/// Closed forms that involve a square root rather than a ratio of
/// polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraicForm {
    /// `(1 - x - sqrt(1 - 2x - 3x^2)) / (2x^2)`.
    FEmptyPlus,
    /// `(x - 1 + sqrt(1 - 2x + 5x^2)) / (2x^2)`.
    FEmptyMinus,
    /// `(2x-1)/(2x^2(1-x)) + (1-2x-2x^2)/(2x^2 sqrt(1-2x-3x^2))`.
    PEmptyPlus,
    /// `(x+1)(2x^2-2x+1)/(2x^2(1+x^2))
    ///  + (x^2-1)(4x^2-2x+1)/(2x^2(1+x^2) sqrt(1-2x+5x^2))`.
    PEmptyMinus,
}

impl AlgebraicForm {
    pub fn expand(self, n_max: usize) -> Result<PowerSeries> {
        let order = n_max + 2;
        let poly = |c: &[i64]| PowerSeries::from_polynomial(&Polynomial::from_ints(c), order);
        let raw = match self {
            AlgebraicForm::FEmptyPlus => {
                let root = poly(&[1, -2, -3]).sqrt()?;
                &poly(&[1, -1]) - &root
            }
            AlgebraicForm::FEmptyMinus => &poly(&[-1, 1]) + &poly(&[1, -2, 5]).sqrt()?,
            AlgebraicForm::PEmptyPlus => {
                let t1 = &poly(&[-1, 2]) * &poly(&[1, -1]).invert()?;
                let t2 = &poly(&[1, -2, -2]) * &poly(&[1, -2, -3]).sqrt()?.invert()?;
                &t1 + &t2
            }
            AlgebraicForm::PEmptyMinus => {
                let inv_q = poly(&[1, 0, 1]).invert()?;
                let t1 = &(&poly(&[1, 1]) * &poly(&[1, -2, 2])) * &inv_q;
                let root_inv = poly(&[1, -2, 5]).sqrt()?.invert()?;
                let t2 = &(&(&poly(&[-1, 0, 1]) * &poly(&[1, -2, 4])) * &inv_q) * &root_inv;
                &t1 + &t2
            }
        };
        raw.shift_down(2)?.divide_exact_const(&gi(2))
    }
}

/// A catalog entry's value.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedFormValue {
    Rational(RationalFunction),
    Algebraic(AlgebraicForm),
}

impl ClosedFormValue {
    pub fn expand(&self, n_max: usize) -> Result<PowerSeries> {
        match self {
            ClosedFormValue::Rational(rf) => rf.expand(n_max),
            ClosedFormValue::Algebraic(a) => a.expand(n_max),
        }
    }
}

// ---------------------------------------------------------------------------
// Identifiers.

/// Addressable catalog entries, each naming a closed-form display together
/// with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedFormId {
    FEmpty { variant: SignVariant },
    FEvenDecreasing { variant: SignVariant, k: usize },
    FOddDecreasing { variant: SignVariant, k: usize },
    FSkew12 { variant: SignVariant, k: usize },
    FSkew132 { variant: SignVariant, k: usize },
    FSkew213 { variant: SignVariant, k: usize },
    FSkew231 { variant: SignVariant, k: usize },
    FSkew123 { variant: SignVariant, k: usize },
    FLayeredOne { l: usize },
    FLayeredPair { k: usize, l: usize },
    FLayeredMerged { k: usize, l: usize },
    FLayeredOddOdd { k: usize, l: usize },
    FLayeredTriple { k1: usize, k2: usize, k3: usize },
    FNested { variant: SignVariant, j: usize, inner: Permutation },
    GBase { variant: SignVariant, pattern: Permutation },
    GSkew12 { variant: SignVariant, k: usize },
    GSkew132 { variant: SignVariant, k: usize },
    GSkew213 { variant: SignVariant, k: usize },
    GSkew231 { variant: SignVariant, k: usize },
    GSkew123 { variant: SignVariant, k: usize },
    PEmpty { variant: SignVariant },
    PLen3 { variant: SignVariant, pattern: Permutation },
    PEvenDecreasing { variant: SignVariant, k: usize },
    POddDecreasing { variant: SignVariant, k: usize },
    PSkew12 { variant: SignVariant, k: usize },
    PSkew132 { k: usize },
    PSkew213 { k: usize },
    PSkew231 { variant: SignVariant, k: usize },
    QEvenDecreasing { k: usize },
    QOddDecreasing { k: usize },
    ROneEven { k: usize },
    ROneOdd { k: usize },
}

impl ClosedFormId {
    pub fn label(&self) -> &'static str {
        use ClosedFormId::*;
        match self {
            FEmpty { .. } => "f-unrestricted",
            FEvenDecreasing { .. } => "f-even-decreasing",
            FOddDecreasing { .. } => "f-odd-decreasing",
            FSkew12 { .. } => "f-skew-12",
            FSkew132 { .. } => "f-skew-132",
            FSkew213 { .. } => "f-skew-213",
            FSkew231 { .. } => "f-skew-231",
            FSkew123 { .. } => "f-skew-123",
            FLayeredOne { .. } => "f-layered-one",
            FLayeredPair { .. } => "f-layered-pair",
            FLayeredMerged { .. } => "f-layered-merged",
            FLayeredOddOdd { .. } => "f-layered-odd-odd",
            FLayeredTriple { .. } => "f-layered-triple",
            FNested { .. } => "f-nested",
            GBase { .. } => "g-base",
            GSkew12 { .. } => "g-skew-12",
            GSkew132 { .. } => "g-skew-132",
            GSkew213 { .. } => "g-skew-213",
            GSkew231 { .. } => "g-skew-231",
            GSkew123 { .. } => "g-skew-123",
            PEmpty { .. } => "p-unrestricted",
            PLen3 { .. } => "p-short",
            PEvenDecreasing { .. } => "p-even-decreasing",
            POddDecreasing { .. } => "p-odd-decreasing",
            PSkew12 { .. } => "p-skew-12",
            PSkew132 { .. } => "p-skew-132",
            PSkew213 { .. } => "p-skew-213",
            PSkew231 { .. } => "p-skew-231",
            QEvenDecreasing { .. } => "q-even-decreasing",
            QOddDecreasing { .. } => "q-odd-decreasing",
            ROneEven { .. } => "r-one-even",
            ROneOdd { .. } => "r-one-odd",
        }
    }

    pub fn params(&self) -> BTreeMap<String, String> {
        use ClosedFormId::*;
        let mut map = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            map.insert(k.to_string(), v);
        };
        match self {
            FEmpty { variant } | PEmpty { variant } => put("variant", variant.to_string()),
            FEvenDecreasing { variant, k }
            | FOddDecreasing { variant, k }
            | FSkew12 { variant, k }
            | FSkew132 { variant, k }
            | FSkew213 { variant, k }
            | FSkew231 { variant, k }
            | FSkew123 { variant, k }
            | GSkew12 { variant, k }
            | GSkew132 { variant, k }
            | GSkew213 { variant, k }
            | GSkew231 { variant, k }
            | GSkew123 { variant, k }
            | PEvenDecreasing { variant, k }
            | POddDecreasing { variant, k }
            | PSkew12 { variant, k }
            | PSkew231 { variant, k } => {
                put("variant", variant.to_string());
                put("k", k.to_string());
            }
            FLayeredOne { l } => put("l", l.to_string()),
            FLayeredPair { k, l } | FLayeredMerged { k, l } | FLayeredOddOdd { k, l } => {
                put("k", k.to_string());
                put("l", l.to_string());
            }
            FLayeredTriple { k1, k2, k3 } => {
                put("k1", k1.to_string());
                put("k2", k2.to_string());
                put("k3", k3.to_string());
            }
            FNested { variant, j, inner } => {
                put("variant", variant.to_string());
                put("j", j.to_string());
                put("inner", inner.to_string());
            }
            GBase { variant, pattern } | PLen3 { variant, pattern } => {
                put("variant", variant.to_string());
                put("pattern", pattern.to_string());
            }
            PSkew132 { k } | PSkew213 { k } | QEvenDecreasing { k } | QOddDecreasing { k }
            | ROneEven { k } | ROneOdd { k } => put("k", k.to_string()),
        }
        map
    }

    /// The pattern whose series this entry describes, when one exists.
    pub fn pattern(&self) -> Option<Permutation> {
        use ClosedFormId::*;
        let skew = |k: usize, tail: &[u8]| {
            Permutation::decreasing(k).skew_sum(&Permutation::new(tail.to_vec()).unwrap())
        };
        match self {
            FEmpty { .. } | PEmpty { .. } => None,
            FEvenDecreasing { k, .. } => Some(Permutation::decreasing(2 * k)),
            FOddDecreasing { k, .. } => Some(Permutation::decreasing(2 * k - 1)),
            FSkew12 { k, .. } | GSkew12 { k, .. } | PSkew12 { k, .. } => Some(skew(*k, &[1, 2])),
            FSkew132 { k, .. } | GSkew132 { k, .. } | PSkew132 { k } => Some(skew(*k, &[1, 3, 2])),
            FSkew213 { k, .. } | GSkew213 { k, .. } | PSkew213 { k } => Some(skew(*k, &[2, 1, 3])),
            FSkew231 { k, .. } | GSkew231 { k, .. } | PSkew231 { k, .. } => {
                Some(skew(*k, &[2, 3, 1]))
            }
            FSkew123 { k, .. } | GSkew123 { k, .. } => Some(skew(*k, &[1, 2, 3])),
            FLayeredOne { l } => Some(Permutation::layered(&[1, *l]).unwrap()),
            FLayeredPair { k, l } | FLayeredMerged { k, l } => {
                Some(Permutation::layered(&[*k, *l]).unwrap())
            }
            FLayeredOddOdd { k, l } => {
                Some(Permutation::layered(&[2 * k - 1, 2 * l - 1]).unwrap())
            }
            FLayeredTriple { k1, k2, k3 } => {
                Some(Permutation::layered(&[2 * k1, 2 * k2, 2 * k3]).unwrap())
            }
            FNested { j, inner, .. } => {
                let frame = Permutation::decreasing(*j);
                Some(frame.skew_sum(inner).skew_sum(&Permutation::decreasing(*j)))
            }
            GBase { pattern, .. } | PLen3 { pattern, .. } => Some(pattern.clone()),
            PEvenDecreasing { k, .. } => Some(Permutation::decreasing(2 * k)),
            POddDecreasing { k, .. } => Some(Permutation::decreasing(2 * k + 1)),
            QEvenDecreasing { k } => Some(Permutation::decreasing(2 * k)),
            QOddDecreasing { k } => Some(Permutation::decreasing(2 * k + 1)),
            ROneEven { k } => Some(Permutation::decreasing(2 * k)),
            ROneOdd { k } => Some(Permutation::decreasing(2 * k + 1)),
        }
    }

    /// Builds the catalog value for this entry.
    pub fn value(&self) -> Result<ClosedFormValue> {
        use ClosedFormId::*;
        let rational = |r: Result<RationalFunction>| r.map(ClosedFormValue::Rational);
        match self {
            FEmpty { variant } => Ok(ClosedFormValue::Algebraic(match variant {
                SignVariant::Plus => AlgebraicForm::FEmptyPlus,
                SignVariant::Minus => AlgebraicForm::FEmptyMinus,
            })),
            FEvenDecreasing { variant, k } => rational(f_even_dec(*variant, *k)),
            FOddDecreasing { variant, k } => rational(f_odd_dec(*variant, *k)),
            FSkew12 { variant, k } => rational(f_skew12(*variant, *k)),
            FSkew132 { variant, k } | FSkew213 { variant, k } => rational(f_skew132(*variant, *k)),
            FSkew231 { variant, k } => rational(f_skew231(*variant, *k)),
            FSkew123 { variant, k } => rational(f_skew123(*variant, *k)),
            FLayeredOne { l } => rational(f_layered_one(*l)),
            FLayeredPair { k, l } => rational(f_layered_pair(*k, *l)),
            FLayeredMerged { k, l } => rational(f_layered_merged(*k, *l)),
            FLayeredOddOdd { k, l } => rational(f_layered_odd_odd(*k, *l)),
            FLayeredTriple { k1, k2, k3 } => rational(f_layered_triple(*k1, *k2, *k3)),
            FNested { variant, j, inner } => rational(f_nested(*variant, *j, inner)),
            GBase { variant, pattern } => rational(
                g_base(pattern, *variant)
                    .unwrap_or_else(|| Err(unknown(format!("base exactly-once {pattern}")))),
            ),
            GSkew12 { variant, k } => rational(g_skew12(*variant, *k)),
            GSkew132 { variant, k } | GSkew213 { variant, k } => rational(g_skew132(*variant, *k)),
            GSkew231 { variant, k } => rational(g_skew231(*variant, *k)),
            GSkew123 { variant, k } => rational(g_skew123(*variant, *k)),
            PEmpty { variant } => p_closed_form(None, *variant),
            PLen3 { variant, pattern } => p_len3(pattern, *variant)
                .unwrap_or_else(|| Err(unknown(format!("short pattern {pattern}"))))
                .map(ClosedFormValue::Rational),
            PEvenDecreasing { variant, k } => rational(p_even_dec(*variant, *k)),
            POddDecreasing { variant, k } => rational(p_odd_dec(*variant, *k)),
            PSkew12 { variant, k } => rational(p_skew12(*variant, *k)),
            PSkew132 { k } | PSkew213 { k } => rational(p_skew132(*k)),
            PSkew231 { variant, k } => rational(p_skew231(*variant, *k)),
            QEvenDecreasing { k } => rational(q_even(*k)),
            QOddDecreasing { k } => rational(q_odd(*k)),
            ROneEven { k } => rational(r_one_even(*k)),
            ROneOdd { k } => rational(r_one_odd(*k)),
        }
    }

    /// Computes the same series through the engines, for cross-checking.
    pub fn engine_series(&self, n_max: usize) -> Result<PowerSeries> {
        use ClosedFormId::*;
        let variant = self.variant().unwrap_or(SignVariant::Plus);
        match self {
            FEmpty { .. } => engine::F_series(&[], variant, n_max),
            FEvenDecreasing { .. } | FOddDecreasing { .. } | FSkew12 { .. } | FSkew132 { .. }
            | FSkew213 { .. } | FSkew231 { .. } | FSkew123 { .. } | FLayeredOne { .. }
            | FLayeredPair { .. } | FLayeredMerged { .. } | FLayeredOddOdd { .. }
            | FLayeredTriple { .. } | FNested { .. } => {
                let p = self.pattern().expect("pattern-backed avoidance entry");
                engine::F_series(&[p], variant, n_max)
            }
            GBase { .. } | GSkew12 { .. } | GSkew132 { .. } | GSkew213 { .. }
            | GSkew231 { .. } | GSkew123 { .. } => {
                let p = self.pattern().expect("pattern-backed exactly-once entry");
                gpq::G_series(&p, variant, n_max)
            }
            PEmpty { .. } => gpq::P_series(None, variant, n_max),
            PLen3 { .. } | PEvenDecreasing { .. } | POddDecreasing { .. } | PSkew12 { .. }
            | PSkew132 { .. } | PSkew213 { .. } | PSkew231 { .. } => {
                let p = self.pattern().expect("pattern-backed entry");
                gpq::P_series(Some(&p), variant, n_max)
            }
            QEvenDecreasing { k } => gpq::Q_series(2 * k, n_max),
            QOddDecreasing { k } => gpq::Q_series(2 * k + 1, n_max),
            ROneEven { k } => roccur::r_occurrence_gf(1, *k, roccur::Parity::Even, n_max),
            ROneOdd { k } => roccur::r_occurrence_gf(1, *k, roccur::Parity::Odd, n_max),
        }
    }

    fn variant(&self) -> Option<SignVariant> {
        use ClosedFormId::*;
        match self {
            FEmpty { variant }
            | FEvenDecreasing { variant, .. }
            | FOddDecreasing { variant, .. }
            | FSkew12 { variant, .. }
            | FSkew132 { variant, .. }
            | FSkew213 { variant, .. }
            | FSkew231 { variant, .. }
            | FSkew123 { variant, .. }
            | FNested { variant, .. }
            | GBase { variant, .. }
            | GSkew12 { variant, .. }
            | GSkew132 { variant, .. }
            | GSkew213 { variant, .. }
            | GSkew231 { variant, .. }
            | GSkew123 { variant, .. }
            | PEmpty { variant }
            | PLen3 { variant, .. }
            | PEvenDecreasing { variant, .. }
            | POddDecreasing { variant, .. }
            | PSkew12 { variant, .. }
            | PSkew231 { variant, .. } => Some(*variant),
            FLayeredOne { .. } | FLayeredPair { .. } | FLayeredMerged { .. }
            | FLayeredOddOdd { .. } | FLayeredTriple { .. } => Some(SignVariant::Minus),
            PSkew132 { .. } | PSkew213 { .. } => Some(SignVariant::Plus),
            QEvenDecreasing { .. } | QOddDecreasing { .. } | ROneEven { .. } | ROneOdd { .. } => {
                None
            }
        }
    }

    /// The standard cross-check grid: `k, l` up to the given bounds and
    /// layered patterns up to the given total weight.
    pub fn grid(k_max: usize, l_max: usize, weight_max: usize) -> Vec<ClosedFormId> {
        use ClosedFormId::*;
        let mut ids = Vec::new();
        let variants = [SignVariant::Plus, SignVariant::Minus];
        for v in variants {
            ids.push(FEmpty { variant: v });
            ids.push(PEmpty { variant: v });
            for k in 1..=k_max {
                ids.push(FEvenDecreasing { variant: v, k });
                ids.push(FOddDecreasing { variant: v, k });
                ids.push(PEvenDecreasing { variant: v, k });
                ids.push(PSkew12 { variant: v, k });
                ids.push(PSkew231 { variant: v, k });
                ids.push(GSkew231 { variant: v, k });
                ids.push(FSkew231 { variant: v, k });
            }
            for k in 0..=k_max {
                ids.push(FSkew12 { variant: v, k });
                ids.push(FSkew132 { variant: v, k });
                ids.push(FSkew213 { variant: v, k });
                ids.push(GSkew12 { variant: v, k });
                ids.push(GSkew132 { variant: v, k });
                ids.push(GSkew213 { variant: v, k });
                ids.push(GSkew123 { variant: v, k });
                ids.push(POddDecreasing { variant: v, k });
                ids.push(FSkew123 { variant: v, k });
            }
            for pattern in ["1", "21", "12", "123", "132", "213"] {
                ids.push(GBase {
                    variant: v,
                    pattern: pattern.parse().unwrap(),
                });
            }
            for pattern in ["123", "132", "213", "231", "312"] {
                ids.push(PLen3 {
                    variant: v,
                    pattern: pattern.parse().unwrap(),
                });
            }
            for j in 0..=3usize {
                for inner in ["12", "132", "231"] {
                    let inner: Permutation = inner.parse().unwrap();
                    if 2 * j + inner.len() <= weight_max {
                        ids.push(FNested {
                            variant: v,
                            j,
                            inner,
                        });
                    }
                }
            }
        }
        for l in 1..=l_max {
            if 1 + l <= weight_max {
                ids.push(FLayeredOne { l });
            }
        }
        for k in 1..=k_max {
            for l in 1..=l_max {
                if k + l > weight_max {
                    continue;
                }
                ids.push(FLayeredPair { k, l });
                if !(k % 2 == 1 && l % 2 == 1) {
                    ids.push(FLayeredMerged { k, l });
                }
                if (2 * k - 1) + (2 * l - 1) <= weight_max {
                    ids.push(FLayeredOddOdd { k, l });
                }
            }
        }
        for k1 in 1..=k_max {
            for k2 in 1..=k_max {
                for k3 in 1..=k_max {
                    if 2 * (k1 + k2 + k3) <= weight_max {
                        ids.push(FLayeredTriple { k1, k2, k3 });
                    }
                }
            }
        }
        ids.push(QOddDecreasing { k: 1 });
        for k in 2..=k_max.max(2) {
            ids.push(QEvenDecreasing { k });
            ids.push(QOddDecreasing { k });
        }
        for k in 1..=3usize {
            ids.push(ROneEven { k });
            ids.push(ROneOdd { k });
        }
        ids.push(PSkew132 { k: 1 });
        ids.push(PSkew213 { k: 1 });
        for k in 2..=k_max {
            ids.push(PSkew132 { k });
            ids.push(PSkew213 { k });
        }
        ids
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn expand(r: Result<RationalFunction>, n: usize) -> Vec<BigInt> {
        r.unwrap().expand(n).unwrap().real_coeffs().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn decreasing_family_small_cases() {
        // [2] leaves the identity, [3] counts Fibonacci-style.
        assert_eq!(
            expand(f_decreasing(SignVariant::Plus, 2), 5),
            ints(&[1, 1, 1, 1, 1, 1])
        );
        assert_eq!(
            expand(f_decreasing(SignVariant::Plus, 3), 6),
            ints(&[1, 1, 2, 3, 5, 8, 13])
        );
        assert_eq!(
            expand(f_decreasing(SignVariant::Minus, 3), 5),
            expand(rf(ztilde(0), ztilde(1)), 5)
        );
    }

    #[test]
    fn skew_families_degenerate_to_bases_at_k_zero() {
        assert_eq!(
            expand(f_skew12(SignVariant::Minus, 0), 6),
            ints(&[1, 1, -1, -1, 1, 1, -1])
        );
        assert_eq!(
            expand(g_skew12(SignVariant::Plus, 0), 8),
            ints(&[0, 0, 1, 0, 1, 0, 1, 0, 1])
        );
        assert_eq!(
            expand(g_skew132(SignVariant::Plus, 0), 6),
            ints(&[0, 0, 0, 1, 1, 2, 3])
        );
        assert_eq!(
            expand(g_skew123(SignVariant::Minus, 0), 7),
            expand(
                rf(
                    &xpow(3) * &Polynomial::from_ints(&[1, 0, -1]),
                    Polynomial::from_ints(&[1, 0, 1]).pow(2)
                ),
                7
            )
        );
    }

    #[test]
    fn layered_routes_agree() {
        // [2, l] always merges; the recurrence must agree with [2 + l].
        for l in 1..=5 {
            assert_eq!(
                expand(f_layered_pair(2, l), 12),
                expand(f_layered_merged(2, l), 12),
                "layer pair [2,{l}]"
            );
        }
        // Two odd layers: the recurrence against the direct display.
        for (k, l) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            assert_eq!(
                expand(f_layered_pair(2 * k - 1, 2 * l - 1), 14),
                expand(f_layered_odd_odd(k, l), 14),
                "odd layers ({k},{l})"
            );
        }
    }

    #[test]
    fn nested_frame_reproduces_decreasing_forms() {
        // [j] skew [m] skew [j] is the decreasing pattern [m + 2j].
        for variant in [SignVariant::Plus, SignVariant::Minus] {
            for j in 0..=3usize {
                for m in 1..=3usize {
                    let inner = Permutation::decreasing(m);
                    assert_eq!(
                        expand(f_nested(variant, j, &inner), 14),
                        expand(f_decreasing(variant, m + 2 * j), 14),
                        "variant {variant} j {j} m {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn exactly_once_skew_values() {
        // 312: x^4 (1-x)^2 / V~_2^2 counts 1, 2, 5, 12, 28, 64 from n = 4.
        assert_eq!(
            expand(g_skew12(SignVariant::Plus, 1), 9),
            ints(&[0, 0, 0, 0, 1, 2, 5, 12, 28, 64])
        );
        assert_eq!(
            expand(g_skew12(SignVariant::Minus, 1), 9),
            ints(&[0, 0, 0, 0, -1, -2, -1, 4, 8, 0])
        );
        // 4132 and 4123 start at n = 5.
        assert_eq!(
            expand(g_skew132(SignVariant::Plus, 1), 10),
            ints(&[0, 0, 0, 0, 0, 1, 3, 8, 20, 50, 124])
        );
        assert_eq!(
            expand(g_skew123(SignVariant::Plus, 1), 10),
            ints(&[0, 0, 0, 0, 0, 1, 2, 7, 16, 42, 102])
        );
        // A decreasing run of length >= 2 over 231 leaves no room for a
        // single occurrence, while the run of length 1 matches 312.
        assert_eq!(
            expand(g_skew231(SignVariant::Plus, 1), 9),
            expand(g_skew12(SignVariant::Plus, 1), 9)
        );
        assert!(g_skew231(SignVariant::Plus, 2).unwrap().is_zero());
        assert!(g_skew231(SignVariant::Minus, 5).unwrap().is_zero());
    }

    #[test]
    fn exactly_one_3412_pins() {
        // Odd decreasing k=1 is the 321 case: x^4 / (1 - x - x^2)^2.
        assert_eq!(
            expand(p_odd_dec(SignVariant::Plus, 1), 8),
            ints(&[0, 0, 0, 0, 1, 2, 5, 10, 20])
        );
        // Skew-231 k=1 is the 4231 case: x^4 (1+x-x^2) / (1-2x)^2.
        assert_eq!(
            expand(p_skew231(SignVariant::Plus, 1), 11),
            ints(&[0, 0, 0, 0, 1, 5, 15, 40, 100, 240, 560, 1280])
        );
        assert_eq!(
            expand(p_skew231(SignVariant::Minus, 1), 11),
            ints(&[0, 0, 0, 0, 1, 5, 5, -10, -30, -10, 70, 110])
        );
        assert_eq!(
            expand(p_skew231(SignVariant::Plus, 2), 11),
            ints(&[0, 0, 0, 0, 1, 5, 19, 63, 194, 570, 1622, 4510])
        );
        assert_eq!(
            expand(p_skew231(SignVariant::Minus, 2), 11),
            ints(&[0, 0, 0, 0, 1, 5, 9, -3, -46, -78, 34, 354])
        );
        assert_eq!(
            expand(p_skew231(SignVariant::Plus, 3), 11),
            ints(&[0, 0, 0, 0, 1, 5, 20, 69, 223, 692, 2093, 6216])
        );
        assert_eq!(
            expand(p_skew231(SignVariant::Minus, 3), 11),
            ints(&[0, 0, 0, 0, 1, 5, 8, -9, -63, -96, 87, 608])
        );
        assert_eq!(
            expand(p_skew132(1), 11),
            ints(&[0, 0, 0, 0, 1, 4, 13, 36, 96, 248, 630, 1578])
        );
        assert_eq!(
            expand(p_skew132(2), 11),
            ints(&[0, 0, 0, 0, 1, 5, 20, 69, 222, 680, 2019, 5860])
        );
        // Short patterns 231 and 312 admit no witness at all.
        let p231: Permutation = "231".parse().unwrap();
        assert!(matches!(
            p_len3(&p231, SignVariant::Plus),
            Some(Ok(r)) if r.is_zero()
        ));
    }

    #[test]
    fn doubly_once_display_pin() {
        assert_eq!(
            expand(q_even(2), 9),
            ints(&[0, 0, 0, 0, 0, 0, 2, 12, 46, 148])
        );
    }

    #[test]
    fn algebraic_forms_expand() {
        let f_plus = AlgebraicForm::FEmptyPlus.expand(8).unwrap();
        assert_eq!(
            f_plus.real_coeffs().unwrap(),
            ints(&[1, 1, 2, 4, 9, 21, 51, 127, 323])
        );
        let f_minus = AlgebraicForm::FEmptyMinus.expand(5).unwrap();
        assert_eq!(f_minus.real_coeffs().unwrap(), ints(&[1, 1, 0, -2, -3, 1]));
    }

    #[test]
    fn grid_ids_have_values() {
        for id in ClosedFormId::grid(3, 3, 6) {
            let value = id.value();
            assert!(value.is_ok(), "{:?} failed: {:?}", id, value.err());
        }
    }
}
