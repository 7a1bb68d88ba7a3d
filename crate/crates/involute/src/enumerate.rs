//! Brute-force oracles: involution generation, restriction filters, and
//! the reference series every closed form is checked against.

use crate::core::Permutation;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// Default resource guard for generation; `I_14` is about 2.39 million.
pub const DEFAULT_CAP: usize = 14;

const CACHE_MAX: usize = 12;

/// `I_n = I_{n-1} + (n-1) I_{n-2}`, the independent count the generator
/// is checked against.
pub fn involution_count(n: usize) -> BigUint {
    let mut prev = BigUint::one();
    let mut cur = BigUint::one();
    if n == 0 {
        return prev;
    }
    for m in 2..=n {
        let next = &cur + BigUint::from(m - 1) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Streams every involution of `S_n` exactly once, identity first.
pub fn involutions(n: usize) -> Result<InvolutionIter> {
    involutions_capped(n, DEFAULT_CAP)
}

pub fn involutions_capped(n: usize, cap: usize) -> Result<InvolutionIter> {
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    Ok(InvolutionIter::new(n))
}

/// Depth-first generation: the smallest unassigned index is either fixed
/// or paired with a larger unassigned index.
pub struct InvolutionIter {
    n: usize,
    arr: Vec<u8>,
    used: Vec<bool>,
    /// `(i, None)` means position `i` is fixed, `(i, Some(j))` means `i`
    /// and `j` are a 2-cycle; later frames always use larger `i`.
    frames: Vec<(usize, Option<usize>)>,
    state: IterState,
}

enum IterState {
    Fresh,
    Mid,
    Done,
}

impl InvolutionIter {
    fn new(n: usize) -> Self {
        InvolutionIter {
            n,
            arr: vec![0; n],
            used: vec![false; n],
            frames: Vec::with_capacity(n),
            state: IterState::Fresh,
        }
    }

    /// Fixes every remaining position, completing the current prefix with
    /// the lexicographically first choice sequence.
    fn extend_with_fixes(&mut self) {
        for i in 0..self.n {
            if !self.used[i] {
                self.used[i] = true;
                self.arr[i] = i as u8 + 1;
                self.frames.push((i, None));
            }
        }
    }

    fn emit(&self) -> Permutation {
        Permutation::from_raw(self.arr.clone())
    }
}

impl Iterator for InvolutionIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        match self.state {
            IterState::Done => None,
            IterState::Fresh => {
                self.state = IterState::Mid;
                self.extend_with_fixes();
                Some(self.emit())
            }
            IterState::Mid => {
                while let Some((i, choice)) = self.frames.pop() {
                    self.used[i] = false;
                    let from = match choice {
                        None => i + 1,
                        Some(j) => {
                            self.used[j] = false;
                            j + 1
                        }
                    };
                    if let Some(j) = (from..self.n).find(|&j| !self.used[j]) {
                        self.used[i] = true;
                        self.used[j] = true;
                        self.arr[i] = j as u8 + 1;
                        self.arr[j] = i as u8 + 1;
                        self.frames.push((i, Some(j)));
                        self.extend_with_fixes();
                        return Some(self.emit());
                    }
                }
                self.state = IterState::Done;
                None
            }
        }
    }
}

/// Visitor-style generation without per-item allocation; `f` receives the
/// one-line form of each involution.
pub fn for_each_involution<F: FnMut(&[u8])>(n: usize, f: &mut F) {
    fn go<F: FnMut(&[u8])>(arr: &mut [u8], used: &mut [bool], f: &mut F) {
        let Some(i) = (0..arr.len()).find(|&i| !used[i]) else {
            f(arr);
            return;
        };
        used[i] = true;
        arr[i] = i as u8 + 1;
        go(arr, used, f);
        for j in i + 1..arr.len() {
            if !used[j] {
                used[j] = true;
                arr[i] = j as u8 + 1;
                arr[j] = i as u8 + 1;
                go(arr, used, f);
                used[j] = false;
            }
        }
        used[i] = false;
    }
    let mut arr = vec![0u8; n];
    let mut used = vec![false; n];
    go(&mut arr, &mut used, f);
}

/// Memoized involution lists for the sizes the test suites sweep over.
pub fn cached_involutions(n: usize) -> &'static [Permutation] {
    assert!(n <= CACHE_MAX, "cached_involutions only stocks n <= {CACHE_MAX}");
    static CACHE: [OnceLock<Vec<Permutation>>; CACHE_MAX + 1] =
        [const { OnceLock::new() }; CACHE_MAX + 1];
    CACHE[n].get_or_init(|| {
        let mut all = Vec::new();
        for_each_involution(n, &mut |arr| all.push(Permutation::from_raw(arr.to_vec())));
        all
    })
}

/// Which involutions qualify: avoid everything in `avoid`, contain each
/// pattern of `exactly_once` exactly once, and optionally contain a
/// designated pattern a prescribed number of times.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionSpec {
    pub avoid: BTreeSet<Permutation>,
    pub exactly_once: BTreeSet<Permutation>,
    pub exactly_r: Option<(Permutation, u64)>,
}

impl RestrictionSpec {
    pub fn avoiding<I: IntoIterator<Item = Permutation>>(patterns: I) -> Self {
        RestrictionSpec {
            avoid: patterns.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.avoid.intersection(&self.exactly_once).next() {
            return Err(Error::ParameterRange {
                context: format!("pattern {p} both avoided and required exactly once"),
            });
        }
        let all_patterns = self
            .avoid
            .iter()
            .chain(self.exactly_once.iter())
            .chain(self.exactly_r.iter().map(|(p, _)| p));
        for p in all_patterns {
            if p.is_empty() {
                return Err(Error::ParameterRange {
                    context: "empty pattern in restriction".into(),
                });
            }
        }
        Ok(())
    }

    /// Filter predicate; `p` must be an involution (the generators only
    /// produce involutions, so this is not rechecked).
    pub fn matches(&self, p: &Permutation) -> bool {
        let is_3412 = |q: &Permutation| q.entries() == [3, 4, 1, 2];
        for a in &self.avoid {
            let avoided = if is_3412(a) { !p.has_crossing() } else { p.avoids(a) };
            if !avoided {
                return false;
            }
        }
        for e in &self.exactly_once {
            // Every crossing is a distinct occurrence, so the crossing
            // count prunes most candidates before the full pattern count.
            if is_3412(e) && p.crossing_count_capped(2) != 1 {
                return false;
            }
            if !p.contains_exactly_once(e) {
                return false;
            }
        }
        if let Some((t, r)) = &self.exactly_r {
            if is_3412(t) && (p.crossing_count_capped(*r as usize + 1) as u64) > *r {
                return false;
            }
            if p.occurrences_capped(t, *r) != *r {
                return false;
            }
        }
        true
    }

    /// Stable one-line description used in emitted series.
    pub fn describe(&self) -> String {
        let set = |s: &BTreeSet<Permutation>| {
            let names: Vec<String> = s.iter().map(|p| p.to_string()).collect();
            names.join(", ")
        };
        let mut parts = Vec::new();
        if !self.avoid.is_empty() {
            parts.push(format!("avoid {{{}}}", set(&self.avoid)));
        }
        if !self.exactly_once.is_empty() {
            parts.push(format!("exactly once {{{}}}", set(&self.exactly_once)));
        }
        if let Some((t, r)) = &self.exactly_r {
            parts.push(format!("exactly {r} of {t}"));
        }
        if parts.is_empty() {
            parts.push("all involutions".into());
        }
        parts.join("; ")
    }
}

impl fmt::Display for RestrictionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// One reference series: exact coefficients for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSample {
    pub spec: String,
    pub signed: bool,
    pub coeffs: Vec<BigInt>,
}

impl SeriesSample {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec,
            "signed": self.signed,
            "coeffs": self.coeffs.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coeff\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

/// Numbers that fit in an i64 stay numbers; anything larger becomes a
/// decimal string so the JSON stays lossless.
pub(crate) fn bigint_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::from(v.to_string()),
    }
}

/// Signed or unsigned count of qualifying involutions for every
/// `n = 0..=n_max`.
pub fn count_series(spec: &RestrictionSpec, n_max: usize, signed: bool) -> Result<SeriesSample> {
    count_series_capped(spec, n_max, signed, DEFAULT_CAP)
}

pub fn count_series_capped(
    spec: &RestrictionSpec,
    n_max: usize,
    signed: bool,
    cap: usize,
) -> Result<SeriesSample> {
    spec.validate()?;
    if n_max > cap {
        return Err(Error::CapExceeded { requested: n_max, cap });
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = BigInt::zero();
        visit_involutions(n, |p| {
            if spec.matches(p) {
                if signed {
                    acc += p.sign() as i64;
                } else {
                    acc += 1;
                }
            }
        });
        coeffs.push(acc);
    }
    Ok(SeriesSample {
        spec: spec.describe(),
        signed,
        coeffs,
    })
}

fn visit_involutions<F: FnMut(&Permutation)>(n: usize, mut f: F) {
    if n <= CACHE_MAX {
        for p in cached_involutions(n) {
            f(p);
        }
    } else {
        for_each_involution(n, &mut |arr| {
            let p = Permutation::from_raw(arr.to_vec());
            f(&p);
        });
    }
}

/// The four single-permutation statistics with refined distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Inv,
    Lrmax,
    Rlmin,
    Fix,
}

impl Statistic {
    pub fn value(self, p: &Permutation) -> usize {
        let n = p.len();
        match self {
            Statistic::Inv => {
                let e = p.entries();
                let mut inv = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if e[i] > e[j] {
                            inv += 1;
                        }
                    }
                }
                inv
            }
            Statistic::Lrmax => {
                let mut best = 0;
                let mut count = 0;
                for i in 1..=n {
                    if p.apply(i) > best {
                        best = p.apply(i);
                        count += 1;
                    }
                }
                count
            }
            Statistic::Rlmin => {
                let mut best = usize::MAX;
                let mut count = 0;
                for i in (1..=n).rev() {
                    if p.apply(i) < best {
                        best = p.apply(i);
                        count += 1;
                    }
                }
                count
            }
            Statistic::Fix => (1..=n).filter(|&i| p.apply(i) == i).count(),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Statistic::Inv => "inv",
            Statistic::Lrmax => "lrmax",
            Statistic::Rlmin => "rlmin",
            Statistic::Fix => "fix",
        };
        f.write_str(name)
    }
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inv" => Ok(Statistic::Inv),
            "lrmax" => Ok(Statistic::Lrmax),
            "rlmin" => Ok(Statistic::Rlmin),
            "fix" => Ok(Statistic::Fix),
            other => Err(Error::ParameterRange {
                context: format!("unknown statistic {other:?} (expected inv, lrmax, rlmin, fix)"),
            }),
        }
    }
}

/// Bivariate refinement: `rows[n][s]` counts qualifying involutions of
/// length `n` with the statistic equal to `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariateTable {
    pub spec: String,
    pub statistic: Statistic,
    pub signed: bool,
    pub rows: Vec<Vec<BigInt>>,
}

impl BivariateTable {
    pub fn coeff(&self, n: usize, s: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|row| row.get(s))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec,
            "statistic": self.statistic,
            "signed": self.signed,
            "rows": self.rows
                .iter()
                .map(|row| row.iter().map(bigint_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,s,coeff\n");
        for (n, row) in self.rows.iter().enumerate() {
            for (s, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push_str(&format!("{n},{s},{c}\n"));
                }
            }
        }
        out
    }
}

/// Distribution of one statistic over the qualifying involutions.
pub fn stat_gf(
    spec: &RestrictionSpec,
    statistic: Statistic,
    n_max: usize,
    signed: bool,
) -> Result<BivariateTable> {
    stat_gf_capped(spec, statistic, n_max, signed, DEFAULT_CAP)
}

pub fn stat_gf_capped(
    spec: &RestrictionSpec,
    statistic: Statistic,
    n_max: usize,
    signed: bool,
    cap: usize,
) -> Result<BivariateTable> {
    spec.validate()?;
    if n_max > cap {
        return Err(Error::CapExceeded { requested: n_max, cap });
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row: Vec<BigInt> = Vec::new();
        visit_involutions(n, |p| {
            if spec.matches(p) {
                let s = statistic.value(p);
                if row.len() <= s {
                    row.resize(s + 1, BigInt::zero());
                }
                if signed {
                    row[s] += p.sign() as i64;
                } else {
                    row[s] += 1;
                }
            }
        });
        while row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
        rows.push(row);
    }
    Ok(BivariateTable {
        spec: spec.describe(),
        statistic,
        signed,
        rows,
    })
}

/// Series of involutions avoiding `3412` whose occurrence count of
/// `sigma` is exactly `r`.
pub fn occurrence_series(
    sigma: &Permutation,
    r: u64,
    n_max: usize,
    signed: bool,
) -> Result<SeriesSample> {
    occurrence_series_capped(sigma, r, n_max, signed, DEFAULT_CAP)
}

pub fn occurrence_series_capped(
    sigma: &Permutation,
    r: u64,
    n_max: usize,
    signed: bool,
    cap: usize,
) -> Result<SeriesSample> {
    let spec = RestrictionSpec {
        avoid: [Permutation::from_raw(vec![3, 4, 1, 2])].into(),
        exactly_once: BTreeSet::new(),
        exactly_r: Some((sigma.clone(), r)),
    };
    count_series_capped(&spec, n_max, signed, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat_3412() -> Permutation {
        p("3412")
    }

    #[test]
    fn recurrence_counts() {
        let expected = [1u64, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(involution_count(n), BigUint::from(e), "n={n}");
        }
    }

    #[test]
    fn iterator_yields_each_involution_once() {
        for n in 0..=9 {
            let mut seen = BTreeSet::new();
            for q in involutions(n).unwrap() {
                assert!(q.is_involution(), "{q}");
                assert_eq!(q.len(), n);
                assert!(seen.insert(q));
            }
            assert_eq!(BigUint::from(seen.len()), involution_count(n), "n={n}");
        }
    }

    #[test]
    fn iterator_small_cases() {
        let two: Vec<String> = involutions(2).unwrap().map(|q| q.to_string()).collect();
        assert_eq!(two, ["12", "21"]);
        let zero: Vec<Permutation> = involutions(0).unwrap().collect();
        assert_eq!(zero, vec![Permutation::empty()]);
    }

    #[test]
    fn cap_guard() {
        assert!(matches!(
            involutions(15),
            Err(Error::CapExceeded { requested: 15, cap: 14 })
        ));
        let spec = RestrictionSpec::avoiding([pat_3412()]);
        assert!(count_series(&spec, 15, false).is_err());
        assert!(count_series_capped(&spec, 15, false, 15).is_ok() || cfg!(debug_assertions));
    }

    #[test]
    fn visitor_agrees_with_iterator() {
        for n in 0..=8 {
            let mut from_visitor = Vec::new();
            for_each_involution(n, &mut |arr| from_visitor.push(arr.to_vec()));
            let from_iter: Vec<Vec<u8>> = involutions(n)
                .unwrap()
                .map(|q| q.entries().to_vec())
                .collect();
            assert_eq!(from_visitor, from_iter, "n={n}");
        }
    }

    #[test]
    fn cached_lists() {
        assert_eq!(cached_involutions(5).len(), 26);
        assert_eq!(cached_involutions(0), &[Permutation::empty()]);
    }

    #[test]
    fn crossing_free_series_is_motzkin() {
        let spec = RestrictionSpec::avoiding([pat_3412()]);
        let s = count_series(&spec, 7, false).unwrap();
        let expect = [1, 1, 2, 4, 9, 21, 51, 127];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(n), BigInt::from(e), "n={n}");
        }
    }

    #[test]
    fn crossing_free_signed_series() {
        let spec = RestrictionSpec::avoiding([pat_3412()]);
        let s = count_series(&spec, 5, true).unwrap();
        let expect: [i64; 6] = [1, 1, 0, -2, -3, 1];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(n), BigInt::from(e), "n={n}");
        }
    }

    #[test]
    fn avoiding_21_leaves_identities() {
        let spec = RestrictionSpec::avoiding([pat_3412(), p("21")]);
        let s = count_series(&spec, 9, false).unwrap();
        assert!(s.coeffs.iter().all(|c| c == &BigInt::one()));
    }

    #[test]
    fn exactly_one_crossing_pattern() {
        let spec = RestrictionSpec {
            exactly_once: [pat_3412()].into(),
            ..Default::default()
        };
        let s = count_series(&spec, 5, false).unwrap();
        assert_eq!(s.coeffs, vec![
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
            BigInt::from(5),
        ]);
    }

    #[test]
    fn spec_validation() {
        let bad = RestrictionSpec {
            avoid: [p("21")].into(),
            exactly_once: [p("21")].into(),
            exactly_r: None,
        };
        assert!(bad.validate().is_err());
        let empty_pat = RestrictionSpec::avoiding([Permutation::empty()]);
        assert!(empty_pat.validate().is_err());
    }

    #[test]
    fn stat_gf_inv_signed() {
        let spec = RestrictionSpec::avoiding([pat_3412()]);
        let t = stat_gf(&spec, Statistic::Inv, 3, true).unwrap();
        assert_eq!(t.coeff(2, 0), BigInt::one());
        assert_eq!(t.coeff(2, 1), BigInt::from(-1));
    }

    #[test]
    fn stat_gf_fix_base() {
        let spec = RestrictionSpec::avoiding([pat_3412()]);
        let t = stat_gf(&spec, Statistic::Fix, 2, false).unwrap();
        assert_eq!(t.coeff(1, 1), BigInt::one());
        assert_eq!(t.coeff(2, 0), BigInt::one());
        assert_eq!(t.coeff(2, 2), BigInt::one());
    }

    #[test]
    fn lrmax_and_rlmin_distributions_match() {
        let spec = RestrictionSpec::avoiding([pat_3412()]);
        for signed in [false, true] {
            let a = stat_gf(&spec, Statistic::Lrmax, 8, signed).unwrap();
            let b = stat_gf(&spec, Statistic::Rlmin, 8, signed).unwrap();
            assert_eq!(a.rows, b.rows, "signed={signed}");
        }
    }

    #[test]
    fn occurrence_series_single_inversion() {
        let s = occurrence_series(&p("21"), 1, 8, false).unwrap();
        assert_eq!(s.coeff(0), BigInt::zero());
        assert_eq!(s.coeff(1), BigInt::zero());
        for n in 2..=8 {
            assert_eq!(s.coeff(n), BigInt::from(n as i64 - 1), "n={n}");
        }
        let signed = occurrence_series(&p("21"), 1, 3, true).unwrap();
        assert_eq!(signed.coeff(3), BigInt::from(-2));
    }

    #[test]
    fn occurrence_series_r_zero_is_avoidance() {
        let a = occurrence_series(&p("4321"), 0, 10, false).unwrap();
        let spec = RestrictionSpec::avoiding([pat_3412(), p("4321")]);
        let b = count_series(&spec, 10, false).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
    }

    #[test]
    fn exactly_once_matches_occurrence_series() {
        for sigma in ["21", "123", "132", "4321", "3412"] {
            let sigma = p(sigma);
            let mut spec = RestrictionSpec::avoiding([pat_3412()]);
            if sigma == pat_3412() {
                // avoid and exactly-once on the same pattern is
                // contradictory; skip the degenerate case here.
                continue;
            }
            spec.exactly_once.insert(sigma.clone());
            let a = count_series(&spec, 8, false).unwrap();
            let b = occurrence_series(&sigma, 1, 8, false).unwrap();
            assert_eq!(a.coeffs, b.coeffs, "{sigma}");
        }
    }

    #[test]
    fn series_sample_encodings() {
        let spec = RestrictionSpec::avoiding([pat_3412()]);
        let s = count_series(&spec, 3, false).unwrap();
        let json = s.to_json();
        assert_eq!(json["spec"], "avoid {3412}");
        assert_eq!(json["signed"], false);
        assert_eq!(json["coeffs"][3], 4);
        assert_eq!(s.to_csv(), "n,coeff\n0,1\n1,1\n2,2\n3,4\n");
    }

    #[test]
    fn statistic_parsing() {
        assert_eq!("inv".parse::<Statistic>().unwrap(), Statistic::Inv);
        assert_eq!("fix".parse::<Statistic>().unwrap(), Statistic::Fix);
        assert!("rise".parse::<Statistic>().is_err());
    }
}
