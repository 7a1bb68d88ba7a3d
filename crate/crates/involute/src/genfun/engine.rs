//! Fixpoint engine for the avoidance family `F`.
//!
//! `F_series(T, variant, N)` expands the generating function of involutions
//! that avoid 3412 and every pattern in the set `T`, to order `N`.  The
//! engine walks the component recurrence
//!
//! ```text
//! F_T = 1 + x F_{beta(T)} + s x^2 * sum over component tuples of
//!       [ alternating prefix sum ] * F_{suffix set}
//! ```
//!
//! with `s = +1` unsigned, `s = -1` signed.  Every pattern set reached along
//! the way is canonicalized (duplicates removed, automatically avoided
//! patterns dropped) and the resulting system of series equations is solved
//! by Kleene iteration from zero.  Each equation's right-hand side only
//! consumes coefficients below the current one (every self-reference passes
//! through a factor of `x` or `x^2`), so coefficient `n` is exact after
//! `n + 1` rounds; the solver runs `N + 3` rounds and then demands that one
//! more application of the right-hand sides changes nothing.

use crate::core::Permutation;
use crate::error::{Error, Result};
use crate::genfun::SignVariant;
use crate::series::{GaussianInt, PowerSeries};
use std::collections::{BTreeSet, HashMap};

/// A canonicalized pattern set: either provably zero (it contains the empty
/// pattern, which every involution contains) or a sorted deduplicated set.
#[derive(Clone, Debug, PartialEq, Eq)]
enum CanonSet {
    Zero,
    Set(Vec<Permutation>),
}

/// Patterns that no 3412-avoiding involution can contain at all: sum
/// indecomposable, not beginning with the maximum, not ending with 1.
/// Avoiding such a pattern is no restriction, so it is dropped from sets.
fn auto_avoided(p: &Permutation) -> bool {
    let n = p.len();
    n >= 2 && p.is_sum_indecomposable() && p.apply(1) != n && p.apply(n) != 1
}

fn canonicalize<I: IntoIterator<Item = Permutation>>(patterns: I) -> CanonSet {
    let mut set = BTreeSet::new();
    for p in patterns {
        if p.is_empty() {
            return CanonSet::Zero;
        }
        if !auto_avoided(&p) {
            set.insert(p);
        }
    }
    CanonSet::Set(set.into_iter().collect())
}

fn key_of(patterns: &[Permutation]) -> String {
    let mut parts: Vec<String> = patterns.iter().map(|p| p.to_string()).collect();
    parts.sort();
    parts.join("|")
}

/// Precomputed recurrence data for one canonical set.
struct Node {
    /// Canonical set key of `beta` applied elementwise.
    beta_key: Option<String>,
    /// One entry per tuple of component indices: the suffix-set key (if the
    /// suffix set is nonzero) and the signed list of prefix-set keys.
    tuples: Vec<TupleTerm>,
}

struct TupleTerm {
    /// `None` encodes a suffix or prefix set that canonicalizes to zero.
    suffix: Option<String>,
    /// `(sign, key)` pairs of the alternating prefix sum; zero sets omitted.
    prefixes: Vec<(i64, Option<String>)>,
}

struct Solver {
    variant: SignVariant,
    order: usize,
    nodes: HashMap<String, Node>,
    estimates: HashMap<String, PowerSeries>,
}

impl Solver {
    fn new(variant: SignVariant, order: usize) -> Self {
        Solver {
            variant,
            order,
            nodes: HashMap::new(),
            estimates: HashMap::new(),
        }
    }

    /// Registers a canonical set, returning its key; `None` for zero sets.
    fn register(&mut self, canon: CanonSet) -> Option<String> {
        let patterns = match canon {
            CanonSet::Zero => return None,
            CanonSet::Set(ps) => ps,
        };
        let key = key_of(&patterns);
        // The estimates map doubles as the visited set; claiming the key
        // before building the node keeps cyclic references finite.
        if self.estimates.contains_key(&key) {
            return Some(key);
        }
        self.estimates
            .insert(key.clone(), PowerSeries::zero(self.order));
        let node = self.build_node(patterns);
        self.nodes.insert(key.clone(), node);
        Some(key)
    }

    fn build_node(&mut self, patterns: Vec<Permutation>) -> Node {
        let beta_key = self.register(canonicalize(patterns.iter().map(Permutation::beta)));

        // Per pattern: its indecomposable components, the overline of every
        // component prefix (index t covers the first t components), and
        // every component suffix.
        let mut comp_counts = Vec::new();
        let mut prefix_ov: Vec<Vec<Permutation>> = Vec::new();
        let mut suffixes: Vec<Vec<Permutation>> = Vec::new();
        for p in &patterns {
            let comps = p.indecomposable_decomposition();
            let k = comps.len();
            let mut ovs = Vec::with_capacity(k + 1);
            let mut acc = Permutation::empty();
            ovs.push(acc.overline());
            for c in &comps {
                acc = acc.direct_sum(c);
                ovs.push(acc.overline());
            }
            let mut sufs = Vec::with_capacity(k);
            for i in 0..k {
                let mut s = comps[i].clone();
                for c in &comps[i + 1..] {
                    s = s.direct_sum(c);
                }
                sufs.push(s);
            }
            comp_counts.push(k);
            prefix_ov.push(ovs);
            suffixes.push(sufs);
        }

        let m = patterns.len();
        let mut tuples = Vec::new();
        let mut idx = vec![1usize; m];
        loop {
            let suffix_set = canonicalize((0..m).map(|j| suffixes[j][idx[j] - 1].clone()));
            let suffix = self.register(suffix_set);
            let mut prefixes = Vec::with_capacity(1 << m);
            for y in 0u32..(1 << m) {
                let sign = if y.count_ones() % 2 == 0 { 1 } else { -1 };
                let set = canonicalize((0..m).map(|j| {
                    let t = if y & (1 << j) != 0 { idx[j] - 1 } else { idx[j] };
                    prefix_ov[j][t].clone()
                }));
                prefixes.push((sign, self.register(set)));
            }
            tuples.push(TupleTerm { suffix, prefixes });

            // Advance the mixed-radix tuple; an empty set has one tuple.
            let mut j = 0;
            loop {
                if j == m {
                    return Node { beta_key, tuples };
                }
                idx[j] += 1;
                if idx[j] <= comp_counts[j] {
                    break;
                }
                idx[j] = 1;
                j += 1;
            }
        }
    }

    fn series(&self, key: &Option<String>) -> PowerSeries {
        match key {
            None => PowerSeries::zero(self.order),
            Some(k) => self.estimates[k].clone(),
        }
    }

    fn rhs(&self, key: &str) -> PowerSeries {
        let node = &self.nodes[key];
        let mut out = PowerSeries::one(self.order);
        out = &out + &self.series(&node.beta_key).shift_up(1);
        let mut quad = PowerSeries::zero(self.order);
        for term in &node.tuples {
            let suffix = match &term.suffix {
                None => continue,
                Some(s) => &self.estimates[s],
            };
            let mut inner = PowerSeries::zero(self.order);
            for (sign, pkey) in &term.prefixes {
                let s = self.series(pkey);
                if *sign >= 0 {
                    inner = &inner + &s;
                } else {
                    inner = &inner - &s;
                }
            }
            quad = &quad + &(&inner * suffix);
        }
        let s = GaussianInt::from(self.variant.unit());
        &out + &quad.scale(&s).shift_up(2)
    }

    fn solve(&mut self, root: &str) -> Result<PowerSeries> {
        for _ in 0..=self.order + 2 {
            let keys: Vec<String> = self.nodes.keys().cloned().collect();
            let mut changed = false;
            for key in keys {
                let next = self.rhs(&key);
                if next != self.estimates[&key] {
                    self.estimates.insert(key, next);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        // The round bound is an argument, not a proof; demand a quiet pass.
        let keys: Vec<String> = self.nodes.keys().cloned().collect();
        for key in keys {
            if self.rhs(&key) != self.estimates[&key] {
                return Err(Error::ConvergenceFailure {
                    context: format!(
                        "avoidance system for {{{key}}} still moving after {} rounds",
                        self.order + 3
                    ),
                });
            }
        }
        Ok(self.estimates[root].clone())
    }
}

/// Series of involutions avoiding 3412 and every pattern in `patterns`,
/// expanded to order `n_max` inclusive.  An empty slice imposes only the
/// 3412 restriction; a slice containing the empty pattern yields zero.
#[allow(non_snake_case)]
pub fn F_series(
    patterns: &[Permutation],
    variant: SignVariant,
    n_max: usize,
) -> Result<PowerSeries> {
    let mut solver = Solver::new(variant, n_max);
    match solver.register(canonicalize(patterns.iter().cloned())) {
        None => Ok(PowerSeries::zero(n_max)),
        Some(root) => solver.solve(&root),
    }
}
