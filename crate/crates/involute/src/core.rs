//! Permutations, involutions, pattern containment, structural
//! constructions, and the statistics every formula consumes.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A permutation of `{1..n}` in one-line notation. The empty permutation
/// is allowed and shows up as the base case of most recurrences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation {
    entries: Vec<u8>,
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;
    fn try_from(entries: Vec<u8>) -> Result<Self> {
        Permutation::new(entries)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Vec<u8> {
        p.entries
    }
}

impl Permutation {
    /// Validates that `entries` is a bijection on `{1..n}`.
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        if n > u8::MAX as usize {
            return Err(Error::ParsePermutation {
                input: format!("<{n} entries>"),
                reason: "length above 255 unsupported".into(),
            });
        }
        let mut seen = vec![false; n];
        for &v in &entries {
            let ok = (1..=n as u8).contains(&v) && !seen[v as usize - 1];
            if !ok {
                return Err(Error::ParsePermutation {
                    input: format!("{entries:?}"),
                    reason: format!("not a rearrangement of 1..{n}"),
                });
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn empty() -> Self {
        Permutation { entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { entries: (1..=n as u8).collect() }
    }

    /// `[k] = k (k-1) ... 2 1`.
    pub fn decreasing(k: usize) -> Self {
        Permutation { entries: (1..=k as u8).rev().collect() }
    }

    /// `[l_1] ⊕ [l_2] ⊕ ... ⊕ [l_m]`; each part must be nonempty.
    pub fn layered(parts: &[usize]) -> Result<Self> {
        if parts.iter().any(|&l| l == 0) {
            return Err(Error::ParameterRange {
                context: "layered parts must be positive".into(),
            });
        }
        let mut p = Permutation::empty();
        for &l in parts {
            p = p.direct_sum(&Permutation::decreasing(l));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// `π(i)` with one-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    pub fn is_involution(&self) -> bool {
        (0..self.len()).all(|i| self.entries[self.entries[i] as usize - 1] as usize == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation { entries: inv }
    }

    pub fn reverse_complement(&self) -> Permutation {
        let n = self.len() as u8;
        let entries = self.entries.iter().rev().map(|&v| n + 1 - v).collect();
        Permutation { entries }
    }

    /// The pattern (standardization) of an arbitrary sequence of distinct values.
    pub fn pattern_of(values: &[u8]) -> Permutation {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i]);
        let mut entries = vec![0u8; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            entries[i] = rank as u8 + 1;
        }
        Permutation { entries }
    }

    /// `π ⊕ σ`: `π` followed by `σ` shifted above it.
    pub fn direct_sum(&self, rhs: &Permutation) -> Permutation {
        let shift = self.len() as u8;
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().map(|&v| v + shift));
        Permutation { entries }
    }

    /// `π ⊖ σ`: `π` shifted above `σ`, followed by `σ`.
    pub fn skew_sum(&self, rhs: &Permutation) -> Permutation {
        let shift = rhs.len() as u8;
        let mut entries: Vec<u8> = self.entries.iter().map(|&v| v + shift).collect();
        entries.extend_from_slice(&rhs.entries);
        Permutation { entries }
    }

    /// `π * σ = (1 ⊖ π ⊖ 1) ⊕ σ`.
    pub fn star(&self, rhs: &Permutation) -> Permutation {
        let one = Permutation::identity(1);
        one.skew_sum(&self.skew_sum(&one)).direct_sum(rhs)
    }

    /// The three-slot construction of length `|π₁|+|π₂|+|π₃|+4` that wraps
    /// a fixed crossing around its arguments; the second slot sits between
    /// the two crossed pairs.
    ///
    /// The final position carries `|π₁|+2`, the partner of the first
    /// inserted maximum, so that involutions map to involutions.
    pub fn otimes(p1: &Permutation, p2: &Permutation, p3: &Permutation) -> Permutation {
        let (a, b, c) = (p1.len() as u8, p2.len() as u8, p3.len() as u8);
        let n = a + b + c + 4;
        let mut entries = Vec::with_capacity(n as usize);
        entries.push(a + b + 3);
        entries.extend(p1.entries.iter().map(|&v| v + 1));
        entries.push(n);
        entries.extend(p2.entries.iter().map(|&v| v + a + 2));
        entries.push(1);
        entries.extend(p3.entries.iter().map(|&v| v + a + b + 3));
        entries.push(a + 2);
        Permutation { entries }
    }

    /// Splits into the unique sequence of sum-indecomposable components
    /// `α₁ ⊕ ... ⊕ α_k`.
    pub fn indecomposable_decomposition(&self) -> Vec<Permutation> {
        let mut parts = Vec::new();
        let mut start = 0usize;
        let mut max_seen = 0u8;
        for (i, &v) in self.entries.iter().enumerate() {
            max_seen = max_seen.max(v);
            if max_seen as usize == i + 1 {
                let part = self.entries[start..=i]
                    .iter()
                    .map(|&v| v - start as u8)
                    .collect();
                parts.push(Permutation { entries: part });
                start = i + 1;
            }
        }
        parts
    }

    pub fn is_sum_indecomposable(&self) -> bool {
        !self.is_empty() && self.indecomposable_decomposition().len() == 1
    }

    /// Drops a leading component equal to `1`, otherwise returns the input.
    pub fn beta(&self) -> Permutation {
        if self.entries.first() == Some(&1) {
            Permutation {
                entries: self.entries[1..].iter().map(|&v| v - 1).collect(),
            }
        } else {
            self.clone()
        }
    }

    /// The five-case reduction that strips a dominating frame: drop a first
    /// entry equal to the maximum and/or a last entry equal to 1, with
    /// length ≤ 1 collapsing to the empty permutation.
    pub fn overline(&self) -> Permutation {
        let n = self.len();
        if n <= 1 {
            return Permutation::empty();
        }
        let first_is_max = self.entries[0] as usize == n;
        let last_is_one = self.entries[n - 1] == 1;
        let inner: &[u8] = match (first_is_max, last_is_one) {
            (true, true) => &self.entries[1..n - 1],
            (true, false) => &self.entries[1..],
            (false, true) => &self.entries[..n - 1],
            (false, false) => return self.clone(),
        };
        Permutation::pattern_of(inner)
    }

    /// Number of subsequences of `self` whose pattern is `sigma`.
    pub fn occurrences(&self, sigma: &Permutation) -> BigUint {
        if sigma.is_decreasing() {
            return decreasing_occurrences(self, sigma.len());
        }
        BigUint::from(count_backtrack(self, sigma, u64::MAX))
    }

    /// Like [`Permutation::occurrences`], but stops as soon as the count
    /// exceeds `cap`; the result is exact whenever it is ≤ `cap`.
    pub fn occurrences_capped(&self, sigma: &Permutation, cap: u64) -> u64 {
        if sigma.is_decreasing() {
            let full = decreasing_occurrences(self, sigma.len());
            return u64::try_from(&full).unwrap_or(u64::MAX).min(cap.saturating_add(1));
        }
        count_backtrack(self, sigma, cap)
    }

    pub fn avoids(&self, sigma: &Permutation) -> bool {
        self.occurrences_capped(sigma, 0) == 0
    }

    pub fn contains_exactly_once(&self, sigma: &Permutation) -> bool {
        self.occurrences_capped(sigma, 1) == 1
    }

    pub fn is_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] < w[1])
    }

    /// Unvalidated constructor for generators that build involutions
    /// entry by entry.
    pub(crate) fn from_raw(entries: Vec<u8>) -> Permutation {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    /// Counts crossings, stopping at `cap`; assumes `self` is an involution.
    pub(crate) fn crossing_count_capped(&self, cap: usize) -> usize {
        let n = self.len();
        let mut found = 0usize;
        for i in 1..=n {
            let k = self.apply(i);
            if k <= i {
                continue;
            }
            for j in i + 1..k {
                if self.apply(j) > k {
                    found += 1;
                    if found >= cap {
                        return found;
                    }
                }
            }
        }
        found
    }

    /// Crossing-based avoidance test; assumes `self` is an involution.
    pub(crate) fn has_crossing(&self) -> bool {
        self.crossing_count_capped(1) == 1
    }

    /// All crossings `i < j < k < l` with `π(i) = k, π(j) = l`; only
    /// meaningful for involutions, and rejected otherwise.
    pub fn crossings(&self) -> Result<Vec<Crossing>> {
        if !self.is_involution() {
            return Err(Error::NotInvolution(self.to_string()));
        }
        let mut out = Vec::new();
        let n = self.len();
        for i in 1..=n {
            let k = self.apply(i);
            if k <= i {
                continue;
            }
            for j in i + 1..self.apply(i) {
                let l = self.apply(j);
                if j < k && k < l {
                    out.push(Crossing { i, j, k, l });
                }
            }
        }
        Ok(out)
    }

    /// `(-1)^inv`, the parity weight used by every signed series.
    pub fn sign(&self) -> i8 {
        let mut invs = 0usize;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.entries[i] > self.entries[j] {
                    invs += 1;
                }
            }
        }
        if invs % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Full statistic vector with `ω_m` prefilled for `m = 1, 2, 3`.
    pub fn statistics(&self) -> StatVector {
        self.statistics_with_omega(&[1, 2, 3])
    }

    pub fn statistics_with_omega(&self, ms: &[u32]) -> StatVector {
        let n = self.len();
        let tau = tau_counts(self);
        let inv = if n >= 2 { tau[1] } else { 0 };
        let fix = (1..=n).filter(|&i| self.apply(i) == i).count();
        let mut running_max = 0usize;
        let mut lrmax = 0usize;
        for i in 1..=n {
            if self.apply(i) > running_max {
                running_max = self.apply(i);
                lrmax += 1;
            }
        }
        let mut running_min = usize::MAX;
        let mut rlmin = 0usize;
        for i in (1..=n).rev() {
            if self.apply(i) < running_min {
                running_min = self.apply(i);
                rlmin += 1;
            }
        }
        let sign = if inv % 2 == 0 { 1 } else { -1 };
        let mut sv = StatVector {
            length: n,
            inv,
            fix,
            lrmax,
            rlmin,
            tau,
            sign,
            omega: BTreeMap::new(),
        };
        for &m in ms {
            let v = sv.omega_value(m);
            sv.omega.insert(m, v);
        }
        sv
    }
}

/// One crossing `i < j < k < l` in an involution, meaning `π(i) = k` and
/// `π(j) = l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

/// Everything the statistic-refined formulas need about one permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatVector {
    pub length: usize,
    pub inv: u64,
    pub fix: usize,
    pub lrmax: usize,
    pub rlmin: usize,
    /// `tau[k-1]` counts the decreasing subsequences of length `k`,
    /// for `k = 1..=length`.
    pub tau: Vec<u64>,
    pub sign: i8,
    pub omega: BTreeMap<u32, BigInt>,
}

impl StatVector {
    /// `ω_m = Σ_k (-m)^(k-1) τ_k`, exact.
    pub fn omega_value(&self, m: u32) -> BigInt {
        let mut acc = BigInt::zero();
        let mut weight = BigInt::one();
        let neg_m = -BigInt::from(m);
        for &t in &self.tau {
            acc += &weight * BigInt::from(t);
            weight *= &neg_m;
        }
        acc
    }
}

/// `τ_k` for `k = 1..=n` via the standard ending-position DP.
fn tau_counts(p: &Permutation) -> Vec<u64> {
    let n = p.len();
    if n == 0 {
        return Vec::new();
    }
    // dec[i][k-1] = decreasing subsequences of length k ending at position i.
    let mut dec = vec![vec![0u64; n]; n];
    for i in 0..n {
        dec[i][0] = 1;
        for j in 0..i {
            if p.entries[j] > p.entries[i] {
                for k in 1..n {
                    dec[i][k] += dec[j][k - 1];
                }
            }
        }
    }
    (0..n)
        .map(|k| (0..n).map(|i| dec[i][k]).sum())
        .collect()
}

/// Exact count of subsequences of pattern `[k]`, in full precision.
fn decreasing_occurrences(p: &Permutation, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let n = p.len();
    if k > n {
        return BigUint::zero();
    }
    let mut dec = vec![vec![BigUint::zero(); k]; n];
    for i in 0..n {
        dec[i][0] = BigUint::one();
        for j in 0..i {
            if p.entries[j] > p.entries[i] {
                for t in 1..k {
                    let add = dec[j][t - 1].clone();
                    dec[i][t] += add;
                }
            }
        }
    }
    (0..n).map(|i| dec[i][k - 1].clone()).sum()
}

/// Backtracking count of pattern occurrences, stopping past `cap`.
fn count_backtrack(p: &Permutation, sigma: &Permutation, cap: u64) -> u64 {
    let k = sigma.len();
    if k == 0 {
        return 1;
    }
    let n = p.len();
    if k > n {
        return 0;
    }
    let mut chosen = vec![0usize; k];
    let mut count = 0u64;
    backtrack(p, sigma, 0, 0, &mut chosen, &mut count, cap);
    count
}

fn backtrack(
    p: &Permutation,
    sigma: &Permutation,
    depth: usize,
    start: usize,
    chosen: &mut [usize],
    count: &mut u64,
    cap: u64,
) {
    let k = sigma.len();
    if depth == k {
        *count += 1;
        return;
    }
    let n = p.len();
    // Leave room for the remaining pattern entries.
    for pos in start..=(n - (k - depth)) {
        if *count > cap {
            return;
        }
        let ok = (0..depth).all(|t| {
            (sigma.entries[t] < sigma.entries[depth]) == (p.entries[chosen[t]] < p.entries[pos])
        });
        if ok {
            chosen[depth] = pos;
            backtrack(p, sigma, depth + 1, pos + 1, chosen, count, cap);
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for &v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts concatenated digits (`3412`) or comma-separated values
    /// (`10,9,8,...`); the empty string is the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let parse_err = |reason: &str| Error::ParsePermutation {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let entries: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| parse_err("bad integer")))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .map(|d| d as u8)
                        .ok_or_else(|| parse_err("expected digits 1-9 or a comma-separated list"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(Permutation::new(vec![1, 3, 2]).is_ok());
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert_eq!(Permutation::empty().len(), 0);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("3412").entries(), &[3, 4, 1, 2]);
        assert_eq!(p("3412").to_string(), "3412");
        let long = Permutation::decreasing(11);
        assert_eq!(long.to_string(), "11,10,9,8,7,6,5,4,3,2,1");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert_eq!(p(""), Permutation::empty());
        assert!("1 0 2".parse::<Permutation>().is_err());
        assert!("102".parse::<Permutation>().is_err());
    }

    #[test]
    fn involution_checks() {
        assert!(Permutation::identity(6).is_involution());
        assert!(p("3412").is_involution());
        assert!(!p("214538769").is_involution()); // sends 3 -> 4 -> 5
        assert!(p("214538769").inverse().len() == 9);
        let inv = p("4231");
        assert_eq!(inv.inverse(), inv);
    }

    #[test]
    fn occurrence_counts() {
        let big = p("214538769");
        assert_eq!(big.occurrences(&p("2413")), BigUint::zero());
        assert_eq!(big.occurrences(&p("312")), BigUint::zero());
        assert_eq!(big.occurrences(&p("1")), BigUint::from(9u32));
        assert!(big.occurrences(&p("1324")) > BigUint::zero());
        assert_eq!(p("3412").occurrences(&p("3412")), BigUint::one());
        assert_eq!(p("").occurrences(&p("")), BigUint::one());
        assert_eq!(p("563412").occurrences(&p("3412")), BigUint::from(3u32));
    }

    #[test]
    fn capped_occurrences_agree() {
        let sigma = p("21");
        let pi = p("4321");
        assert_eq!(pi.occurrences(&sigma), BigUint::from(6u32));
        assert_eq!(pi.occurrences_capped(&sigma, 10), 6);
        assert_eq!(pi.occurrences_capped(&sigma, 3), 4); // capped early
        assert!(pi.avoids(&p("1234")));
        assert!(p("3412").contains_exactly_once(&p("3412")));
    }

    #[test]
    fn sums_and_star() {
        assert_eq!(p("21").direct_sum(&p("1")), p("213"));
        assert_eq!(p("1").skew_sum(&p("21")), p("321"));
        assert_eq!(Permutation::empty().star(&Permutation::empty()), p("21"));
        assert_eq!(p("1").star(&Permutation::empty()), p("321"));
        assert_eq!(Permutation::empty().star(&p("1")), p("213"));
    }

    #[test]
    fn otimes_pins() {
        let e = Permutation::empty;
        let one = Permutation::identity(1);
        assert_eq!(Permutation::otimes(&e(), &e(), &e()), p("3412"));
        assert_eq!(Permutation::otimes(&one, &e(), &e()), p("42513"));
        assert_eq!(Permutation::otimes(&e(), &one, &e()), p("45312"));
        assert_eq!(Permutation::otimes(&e(), &e(), &one), p("35142"));
        for q in [
            Permutation::otimes(&e(), &e(), &e()),
            Permutation::otimes(&one, &p("21"), &one),
        ] {
            assert!(q.is_involution());
            assert_eq!(q.occurrences(&p("3412")), BigUint::one());
        }
        // A middle slot with an ascent creates extra occurrences: the
        // exactly-once guarantee needs a decreasing middle.
        let bad = Permutation::otimes(&e(), &p("12"), &e());
        assert_eq!(bad, p("563412"));
        assert_eq!(bad.occurrences(&p("3412")), BigUint::from(3u32));
        assert_eq!(bad.crossings().unwrap().len(), 1);
    }

    #[test]
    fn overline_cases() {
        assert_eq!(p("1").overline(), Permutation::empty());
        assert_eq!(p("321").overline(), p("1"));
        assert_eq!(p("213").overline(), p("213"));
        assert_eq!(p("3412").overline(), p("3412"));
        assert_eq!(p("4123").overline(), p("123"));
        assert_eq!(p("2341").overline(), p("123"));
        assert_eq!(p("52341").overline(), p("123"));
    }

    #[test]
    fn decomposition_and_beta() {
        let parts = Permutation::identity(4).indecomposable_decomposition();
        assert_eq!(parts.len(), 4);
        assert!(parts.iter().all(|q| q == &Permutation::identity(1)));
        assert_eq!(p("3412").indecomposable_decomposition(), vec![p("3412")]);
        assert_eq!(
            p("213546").indecomposable_decomposition(),
            vec![p("21"), p("1"), p("21"), p("1")]
        );
        assert_eq!(p("132").beta(), p("21"));
        assert_eq!(p("21").beta(), p("21"));
        assert!(p("3412").is_sum_indecomposable());
        assert!(!p("1324").is_sum_indecomposable());
    }

    #[test]
    fn crossing_detection() {
        assert!(Permutation::identity(5).crossings().unwrap().is_empty());
        assert!(p("21").crossings().unwrap().is_empty());
        let c = p("3412").crossings().unwrap();
        assert_eq!(c, vec![Crossing { i: 1, j: 2, k: 3, l: 4 }]);
        assert!(p("231").crossings().is_err());
        // 45312 contains exactly one 3412; its crossing is at (1,2,4,5).
        let c = p("45312").crossings().unwrap();
        assert_eq!(c, vec![Crossing { i: 1, j: 2, k: 4, l: 5 }]);
    }

    #[test]
    fn reverse_complement_and_sign() {
        assert_eq!(p("213").reverse_complement(), p("132"));
        assert_eq!(Permutation::identity(5).reverse_complement(), Permutation::identity(5));
        assert_eq!(p("3412").sign(), 1);
        assert_eq!(p("21").sign(), -1);
        let q = p("4231");
        assert_eq!(q.sign(), q.reverse_complement().sign());
        assert_eq!(q.sign(), q.inverse().sign());
    }

    #[test]
    fn statistics_fields() {
        let s = p("21").statistics();
        assert_eq!(s.tau, vec![2, 1]);
        assert_eq!(s.inv, 1);
        assert_eq!(s.sign, -1);
        let s = p("3412").statistics();
        assert_eq!(s.sign, 1);
        assert_eq!(s.inv, 4);
        let id = Permutation::identity(7).statistics();
        assert_eq!(id.fix, 7);
        assert_eq!(id.lrmax, 7);
        assert_eq!(id.rlmin, 7);
        assert_eq!(id.tau[0], 7);
        let s = p("1432").statistics();
        assert_eq!((s.lrmax, s.rlmin), (2, 2));
    }

    #[test]
    fn statistic_identities_on_crossing_free_involutions() {
        // lrmax = rlmin = omega_1 and fix = omega_2 hold exactly on
        // involutions with no crossings.
        for q in ["1234", "2143", "1432", "4321", "21435", "21354"] {
            let q = p(q);
            assert!(q.crossings().unwrap().is_empty());
            let s = q.statistics();
            assert_eq!(BigInt::from(s.lrmax), s.omega_value(1), "{q}");
            assert_eq!(BigInt::from(s.rlmin), s.omega_value(1), "{q}");
            assert_eq!(BigInt::from(s.fix), s.omega_value(2), "{q}");
        }
    }

    #[test]
    fn decreasing_and_layered() {
        assert_eq!(Permutation::decreasing(3), p("321"));
        assert_eq!(Permutation::layered(&[1, 2]).unwrap(), p("132"));
        assert_eq!(Permutation::layered(&[2, 1, 1]).unwrap(), p("2134"));
        assert!(Permutation::layered(&[2, 0]).is_err());
        assert!(Permutation::layered(&[3, 1, 2]).unwrap().is_involution());
    }

    #[test]
    fn pattern_of_standardizes() {
        assert_eq!(Permutation::pattern_of(&[2, 8, 6, 9]), p("1324"));
        assert_eq!(Permutation::pattern_of(&[5, 3]), p("21"));
        assert_eq!(Permutation::pattern_of(&[]), Permutation::empty());
    }

    #[test]
    fn serde_as_integer_array() {
        let q = p("3412");
        assert_eq!(serde_json::to_string(&q).unwrap(), "[3,4,1,2]");
        assert_eq!(serde_json::from_str::<Permutation>("[3,4,1,2]").unwrap(), q);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
