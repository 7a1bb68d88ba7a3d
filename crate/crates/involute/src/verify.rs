//! Cross-checking: every closed form and printed identity is compared
//! against an independently computed oracle, and the outcome is recorded
//! as data rather than silently trusted.

use crate::core::Permutation;
use crate::enumerate::{count_series, occurrence_series, stat_gf, RestrictionSpec, Statistic};
use crate::error::{Error, Result};
use crate::genfun::{
    p_series_or_oracle, q_series_printed_cap, r_occurrence_gf, ClosedFormId, F_series, Parity,
    Q_series, SignVariant,
};
use crate::series::{BivarSeries, GaussianInt, PowerSeries, StatCf};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// How a formula fared against its oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Identical through the compared order.
    Match,
    /// Identical after one global factor of -1.
    SignFlipMatch,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Match => "match",
            Verdict::SignFlipMatch => "sign-flip-match",
            Verdict::Mismatch => "mismatch",
        };
        f.write_str(s)
    }
}

/// One comparison of a formula against ground truth.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub subject: String,
    pub params: BTreeMap<String, String>,
    pub oracle: PowerSeries,
    pub formula: PowerSeries,
    pub verdict: Verdict,
    /// Lowest order where oracle and formula differ, if any.
    pub first_diff: Option<usize>,
    /// Fitted normalization or branch choice, when one was applied.
    pub fitted: Option<String>,
    /// A mismatch is explained when it reproduces a documented source
    /// discrepancy; unexplained mismatches are implementation bugs.
    pub explained: bool,
}

impl AuditReport {
    /// Compares through the shorter of the two orders and fills in the
    /// verdict; mismatches start out unexplained.
    pub fn compare(
        subject: impl Into<String>,
        params: BTreeMap<String, String>,
        oracle: PowerSeries,
        formula: PowerSeries,
    ) -> AuditReport {
        let order = oracle.order().min(formula.order());
        let minus_one = GaussianInt::from(-1i64);
        let first_diff = (0..=order).find(|&n| oracle.coeff(n) != formula.coeff(n));
        let (verdict, fitted) = if first_diff.is_none() {
            (Verdict::Match, None)
        } else if (0..=order).all(|n| oracle.coeff(n) == formula.coeff(n) * &minus_one) {
            (Verdict::SignFlipMatch, Some("global factor -1".to_string()))
        } else {
            (Verdict::Mismatch, None)
        };
        AuditReport {
            subject: subject.into(),
            params,
            oracle,
            formula,
            verdict,
            first_diff,
            fitted,
            explained: false,
        }
    }

    pub fn with_fitted(mut self, fitted: impl Into<String>) -> Self {
        self.fitted = Some(fitted.into());
        self
    }

    pub fn explained(mut self) -> Self {
        self.explained = true;
        self
    }

    /// True when the report needs no human attention: a clean match, or
    /// a deviation that is both fitted/branch-recorded and documented.
    pub fn is_acceptable(&self) -> bool {
        match self.verdict {
            Verdict::Match => true,
            Verdict::SignFlipMatch | Verdict::Mismatch => self.explained,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Renders reports as a markdown table, one row per subject.
pub fn reports_markdown(reports: &[AuditReport]) -> String {
    let mut out = String::from("| subject | params | verdict | first diff | fitted | explained |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let first = r
            .first_diff
            .map(|n| n.to_string())
            .unwrap_or_else(|| "-".into());
        let fitted = r.fitted.clone().unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            r.subject,
            params.join(", "),
            r.verdict,
            first,
            fitted,
            r.explained,
        ));
    }
    out
}

pub fn reports_json(reports: &[AuditReport]) -> serde_json::Value {
    serde_json::Value::Array(reports.iter().map(AuditReport::to_json).collect())
}

/// Helper for building the params map tersely.
pub(crate) fn params_of(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn pat_3412() -> Permutation {
    Permutation::from_raw(vec![3, 4, 1, 2])
}

/// What [`audit`] knows how to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditSubject {
    /// A catalog closed form against the engine computing the same series.
    Catalog(ClosedFormId),
    /// A statistic-refined continued fraction truncation against the
    /// distribution table computed by direct enumeration.
    StatRefinement(Statistic),
    /// The algebraic closed form for a refined statistic, under the recorded
    /// square-root branch (and, for left-to-right maxima, the corrected
    /// denominator).
    StatClosedForm(Statistic),
    /// The left-to-right-maxima closed form exactly as printed, kept as a
    /// regression witness for the documented typo in its denominator.  The
    /// fixed-point analogue is not a subject: its printed root branch has no
    /// series expansion at the origin, so there is nothing to compare.
    StatClosedFormPrinted(Statistic),
    /// A finite occurrence-sum formula against direct occurrence counts.
    Occurrence { r: u64, k: usize, parity: Parity },
    /// The doubly-restricted engine against enumeration; `wide_cap` swaps in
    /// the rejected longer middle-layer cap.
    DoublyOnce { k: usize, wide_cap: bool },
    /// A printed counting display against enumeration.
    Count(CountDisplay),
}

/// Counting displays with simple arithmetic right-hand sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountDisplay {
    /// Exactly one crossing pattern, 321 avoided: a Fibonacci combination,
    /// valid from length 4.
    OnceCrossingAvoid321,
    /// Exactly one crossing pattern, 4321 avoided: `2^(n-5) (3n-10)`, valid
    /// from length 5.
    OnceCrossingAvoid4321,
    /// Exactly one crossing pattern and exactly one 4321:
    /// `(3n^2 - 23n + 38) 2^(n-8)`, valid from length 6.
    DoublyOnce4321,
}

impl CountDisplay {
    fn tag(self) -> &'static str {
        match self {
            CountDisplay::OnceCrossingAvoid321 => "once-crossing-avoid-321",
            CountDisplay::OnceCrossingAvoid4321 => "once-crossing-avoid-4321",
            CountDisplay::DoublyOnce4321 => "doubly-once-4321",
        }
    }

    fn start(self) -> usize {
        match self {
            CountDisplay::OnceCrossingAvoid321 => 4,
            CountDisplay::OnceCrossingAvoid4321 => 5,
            CountDisplay::DoublyOnce4321 => 6,
        }
    }
}

/// Compares one formula subject against its oracle and records the outcome.
///
/// Mismatches are data, not errors: the only `Err` cases are unknown or
/// out-of-range subjects and oracle caps.  Bivariate subjects compare every
/// coefficient with `q`-degree at most `n_max`; when such a comparison
/// succeeds the stored series evaluate `q = 1` after that truncation, and
/// when it fails they hold the two `q`-coefficient rows at the first
/// differing order, so the disagreement itself is visible in the report.
pub fn audit(subject: &AuditSubject, n_max: usize) -> Result<AuditReport> {
    match subject {
        AuditSubject::Catalog(id) => {
            let formula = id.value()?.expand(n_max)?;
            let oracle = id.engine_series(n_max)?;
            Ok(AuditReport::compare(id.label(), id.params(), oracle, formula))
        }
        AuditSubject::StatRefinement(stat) => {
            let (cf, signed) = stat_cf_of(*stat);
            let formula = cf.expand(n_max, n_max)?;
            let params = params_of(&[
                ("statistic", stat.to_string()),
                ("signed", signed.to_string()),
            ]);
            bivar_report("stat-cf-truncation", params, *stat, signed, &formula, n_max)
        }
        AuditSubject::StatClosedForm(stat) => {
            let (formula, fitted) = match stat {
                Statistic::Lrmax | Statistic::Rlmin => (
                    lrmax_closed_series(n_max)?,
                    "plus root branch; denominator 2 - q - qx + q*sqrt(1 - 2x + 5x^2)",
                ),
                Statistic::Fix => (fix_closed_series(n_max)?, "plus root branch"),
                Statistic::Inv => {
                    return Err(Error::UnknownClosedForm {
                        id: "algebraic closed form for the inversion refinement".into(),
                    })
                }
            };
            let params = params_of(&[("statistic", stat.to_string()), ("signed", true.to_string())]);
            let report = bivar_report("stat-closed-form", params, *stat, true, &formula, n_max)?;
            Ok(report.with_fitted(fitted))
        }
        AuditSubject::StatClosedFormPrinted(stat) => {
            if !matches!(stat, Statistic::Lrmax | Statistic::Rlmin) {
                return Err(Error::UnknownClosedForm {
                    id: format!("printed closed form kept for comparison: {stat}"),
                });
            }
            let formula = lrmax_printed_series(n_max)?;
            let params = params_of(&[("statistic", stat.to_string()), ("signed", true.to_string())]);
            let report = bivar_report("stat-closed-form-printed", params, *stat, true, &formula, n_max)?;
            Ok(report
                .with_fitted(
                    "plus root branch; printed denominator (2 - q)(1 - x) - q*sqrt misses the q \
                     on the first-level x",
                )
                .explained())
        }
        AuditSubject::Occurrence { r, k, parity } => {
            let len = match parity {
                Parity::Even => 2 * k,
                Parity::Odd => 2 * k + 1,
            };
            let pattern = Permutation::decreasing(len);
            let formula = r_occurrence_gf(*r, *k, *parity, n_max)?;
            let sample = occurrence_series(&pattern, *r, n_max, true)?;
            let oracle = bigint_series(&sample.coeffs, n_max);
            let params = params_of(&[
                ("r", r.to_string()),
                ("k", k.to_string()),
                ("parity", parity.to_string()),
                ("pattern", pattern.to_string()),
            ]);
            let report = AuditReport::compare("occurrence-sum", params, oracle, formula);
            // A single global sign is the one permitted and documented fit.
            Ok(if report.verdict == Verdict::SignFlipMatch {
                report.explained()
            } else {
                report
            })
        }
        AuditSubject::DoublyOnce { k, wide_cap } => {
            let spec = RestrictionSpec {
                avoid: Default::default(),
                exactly_once: [pat_3412(), Permutation::decreasing(*k)].into(),
                exactly_r: None,
            };
            let sample = count_series(&spec, n_max, false)?;
            let oracle = bigint_series(&sample.coeffs, n_max);
            let formula = if *wide_cap {
                q_series_printed_cap(*k, n_max)?
            } else {
                Q_series(*k, n_max)?
            };
            let params = params_of(&[
                ("k", k.to_string()),
                (
                    "middle-cap",
                    if *wide_cap { "printed 2k-2" } else { "geometric k-2" }.to_string(),
                ),
            ]);
            let report = AuditReport::compare("doubly-once-cap", params, oracle, formula);
            Ok(if *wide_cap && report.verdict == Verdict::Mismatch {
                report
                    .with_fitted("geometric middle cap k-2 replaces the printed 2k-2")
                    .explained()
            } else {
                report
            })
        }
        AuditSubject::Count(display) => {
            let spec = match display {
                CountDisplay::OnceCrossingAvoid321 => RestrictionSpec {
                    avoid: [Permutation::decreasing(3)].into(),
                    exactly_once: [pat_3412()].into(),
                    exactly_r: None,
                },
                CountDisplay::OnceCrossingAvoid4321 => RestrictionSpec {
                    avoid: [Permutation::decreasing(4)].into(),
                    exactly_once: [pat_3412()].into(),
                    exactly_r: None,
                },
                CountDisplay::DoublyOnce4321 => RestrictionSpec {
                    avoid: Default::default(),
                    exactly_once: [pat_3412(), Permutation::decreasing(4)].into(),
                    exactly_r: None,
                },
            };
            let start = display.start();
            let sample = count_series(&spec, n_max, false)?;
            let oracle = PowerSeries::from_fn(n_max, |n| {
                if n < start {
                    GaussianInt::zero()
                } else {
                    sample
                        .coeffs
                        .get(n)
                        .cloned()
                        .map(GaussianInt::from_int)
                        .unwrap_or_default()
                }
            });
            let mut cells = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                cells.push(if n < start {
                    GaussianInt::zero()
                } else {
                    GaussianInt::from_int(count_display_coeff(*display, n)?)
                });
            }
            let formula = PowerSeries::new(cells);
            let params = params_of(&[
                ("display", display.tag().to_string()),
                ("n-min", start.to_string()),
            ]);
            Ok(AuditReport::compare("count-display", params, oracle, formula))
        }
    }
}

fn stat_cf_of(stat: Statistic) -> (StatCf, bool) {
    match stat {
        Statistic::Inv => (StatCf::Inv, false),
        Statistic::Lrmax | Statistic::Rlmin => (StatCf::Lrmax, true),
        Statistic::Fix => (StatCf::Fix, true),
    }
}

fn bigint_series(coeffs: &[BigInt], n_max: usize) -> PowerSeries {
    PowerSeries::from_fn(n_max, |n| {
        coeffs
            .get(n)
            .cloned()
            .map(GaussianInt::from_int)
            .unwrap_or_default()
    })
}

/// Builds a bivariate polynomial from `(coefficient, x-degree, q-degree)`
/// triples.
fn bivar_terms(terms: &[(i64, usize, usize)], order: usize, q_cap: usize) -> BivarSeries {
    let mut s = BivarSeries::zero(order, q_cap);
    for &(c, xd, qd) in terms {
        s.add_term(xd, qd, &GaussianInt::from(c));
    }
    s
}

fn lrmax_closed_series(n_max: usize) -> Result<BivarSeries> {
    let root = bivar_terms(&[(1, 0, 0), (-2, 1, 0), (5, 2, 0)], n_max, n_max).sqrt()?;
    let q = bivar_terms(&[(1, 0, 1)], n_max, n_max);
    let denom = bivar_terms(&[(2, 0, 0), (-1, 0, 1), (-1, 1, 1)], n_max, n_max).add(&q.mul(&root));
    bivar_terms(&[(2, 0, 0)], n_max, n_max).divide_exact(&denom)
}

fn lrmax_printed_series(n_max: usize) -> Result<BivarSeries> {
    let root = bivar_terms(&[(1, 0, 0), (-2, 1, 0), (5, 2, 0)], n_max, n_max).sqrt()?;
    let q = bivar_terms(&[(1, 0, 1)], n_max, n_max);
    // (2 - q)(1 - x) plus the q-weighted root; the leading q-polynomial
    // 2 - 2q is not constant, so halve the denominator first.
    let denom = bivar_terms(&[(2, 0, 0), (-1, 0, 1), (-2, 1, 0), (1, 1, 1)], n_max, n_max)
        .add(&q.mul(&root));
    let half = denom.divide_exact_const(&GaussianInt::from(2))?;
    half.invert()
}

fn fix_closed_series(n_max: usize) -> Result<BivarSeries> {
    let order = n_max + 2;
    let cap = n_max + 2;
    let root = bivar_terms(&[(1, 0, 0), (-2, 1, 1), (1, 2, 2), (4, 2, 0)], order, cap).sqrt()?;
    let num = bivar_terms(&[(-1, 0, 0), (1, 1, 1)], order, cap).add(&root);
    num.shift_down(2)?.divide_exact_const(&GaussianInt::from(2))
}

/// Compares a bivariate formula against the enumeration table for the same
/// statistic, coefficient by coefficient through `q`-degree `n_max`.
fn bivar_report(
    subject: &str,
    mut params: BTreeMap<String, String>,
    statistic: Statistic,
    signed: bool,
    formula: &BivarSeries,
    n_max: usize,
) -> Result<AuditReport> {
    let spec = RestrictionSpec::avoiding([pat_3412()]);
    let table = stat_gf(&spec, statistic, n_max, signed)?;
    let q_cap = n_max;
    params.insert("q-cap".into(), q_cap.to_string());
    let cell = |n: usize, s: usize| GaussianInt::from_int(table.coeff(n, s));
    let first_diff =
        (0..=n_max).find(|&n| (0..=q_cap).any(|s| cell(n, s) != formula.coeff(n, s)));
    let minus_one = GaussianInt::from(-1i64);
    let (verdict, fitted) = match first_diff {
        None => (Verdict::Match, None),
        Some(_) => {
            let flipped = (0..=n_max)
                .all(|n| (0..=q_cap).all(|s| cell(n, s) == formula.coeff(n, s) * &minus_one));
            if flipped {
                (Verdict::SignFlipMatch, Some("global factor -1".to_string()))
            } else {
                (Verdict::Mismatch, None)
            }
        }
    };
    let (oracle, formula) = match first_diff {
        Some(n0) if verdict == Verdict::Mismatch => {
            params.insert("series-content".into(), format!("q-coefficients at order {n0}"));
            (
                PowerSeries::from_fn(q_cap, |s| cell(n0, s)),
                PowerSeries::from_fn(q_cap, |s| formula.coeff(n0, s)),
            )
        }
        _ => {
            params.insert("series-content".into(), "totals at q = 1".to_string());
            (
                PowerSeries::from_fn(n_max, |n| {
                    let mut acc = GaussianInt::zero();
                    for s in 0..=q_cap {
                        acc = &acc + &cell(n, s);
                    }
                    acc
                }),
                PowerSeries::from_fn(n_max, |n| {
                    let mut acc = GaussianInt::zero();
                    for s in 0..=q_cap {
                        acc = &acc + &formula.coeff(n, s);
                    }
                    acc
                }),
            )
        }
    };
    Ok(AuditReport {
        subject: subject.to_string(),
        params,
        oracle,
        formula,
        verdict,
        first_diff,
        fitted,
        explained: false,
    })
}

fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::from(1));
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

fn exact_div(num: BigInt, den: i64, context: &str) -> Result<BigInt> {
    let den = BigInt::from(den);
    if (&num % &den).is_zero() {
        Ok(num / den)
    } else {
        Err(Error::NonIntegralDivision {
            context: format!("{context}: {num} / {den}"),
        })
    }
}

fn count_display_coeff(display: CountDisplay, n: usize) -> Result<BigInt> {
    match display {
        CountDisplay::OnceCrossingAvoid321 => {
            let num = BigInt::from(n as i64 - 3) * fibonacci(n - 1)
                + BigInt::from(n as i64 - 1) * fibonacci(n - 3);
            exact_div(num, 5, "Fibonacci combination display")
        }
        CountDisplay::OnceCrossingAvoid4321 => {
            Ok(BigInt::from(3 * n as i64 - 10) << (n - 5))
        }
        CountDisplay::DoublyOnce4321 => {
            let m = BigInt::from(3 * (n * n) as i64 - 23 * n as i64 + 38);
            if n >= 8 {
                Ok(m << (n - 8))
            } else {
                exact_div(m, 1i64 << (8 - n), "doubly-once display")
            }
        }
    }
}

/// The canonical desk-scale sweep: the full catalog grid plus every
/// corollary subject, merged in a deterministic order.  Catalog entries are
/// expanded through `grid_n`; subjects whose oracle is brute-force
/// enumeration run through `oracle_n`.
pub fn audit_suite(grid_n: usize, oracle_n: usize) -> Result<Vec<AuditReport>> {
    let mut reports = Vec::new();
    for id in ClosedFormId::grid(5, 5, 8) {
        reports.push(audit(&AuditSubject::Catalog(id), grid_n)?);
    }
    for stat in [Statistic::Inv, Statistic::Lrmax, Statistic::Rlmin, Statistic::Fix] {
        reports.push(audit(&AuditSubject::StatRefinement(stat), oracle_n)?);
    }
    for stat in [Statistic::Lrmax, Statistic::Rlmin, Statistic::Fix] {
        reports.push(audit(&AuditSubject::StatClosedForm(stat), oracle_n)?);
    }
    reports.push(audit(
        &AuditSubject::StatClosedFormPrinted(Statistic::Lrmax),
        oracle_n,
    )?);
    for r in 1..=3u64 {
        for k in 1..=2usize {
            for parity in [Parity::Even, Parity::Odd] {
                reports.push(audit(&AuditSubject::Occurrence { r, k, parity }, oracle_n)?);
            }
        }
    }
    for k in 3..=6usize {
        for wide_cap in [false, true] {
            reports.push(audit(&AuditSubject::DoublyOnce { k, wide_cap }, oracle_n)?);
        }
    }
    for display in [
        CountDisplay::OnceCrossingAvoid321,
        CountDisplay::OnceCrossingAvoid4321,
        CountDisplay::DoublyOnce4321,
    ] {
        reports.push(audit(&AuditSubject::Count(display), oracle_n)?);
    }
    reports.extend(equinumerosity_checks(oracle_n)?);
    reports.sort_by(|a, b| a.subject.cmp(&b.subject).then_with(|| a.params.cmp(&b.params)));
    Ok(reports)
}

/// Which restricted family a layered-symmetry sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayeredFamily {
    /// Unsigned avoidance counts.
    Plus,
    /// Sign-weighted avoidance counts.
    Minus,
    /// Avoidance counts over even involutions only.
    Even,
    /// Avoidance counts over odd involutions only.
    Odd,
    /// Unsigned counts with exactly one crossing pattern.
    OncePlus,
}

impl fmt::Display for LayeredFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LayeredFamily::Plus => "plus",
            LayeredFamily::Minus => "minus",
            LayeredFamily::Even => "even",
            LayeredFamily::Odd => "odd",
            LayeredFamily::OncePlus => "once-plus",
        };
        f.write_str(s)
    }
}

impl FromStr for LayeredFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plus" | "+" => Ok(LayeredFamily::Plus),
            "minus" | "-" => Ok(LayeredFamily::Minus),
            "even" => Ok(LayeredFamily::Even),
            "odd" => Ok(LayeredFamily::Odd),
            "once-plus" | "once" => Ok(LayeredFamily::OncePlus),
            other => Err(Error::ParameterRange {
                context: format!("unknown layered family {other:?}"),
            }),
        }
    }
}

/// One multiset of layer sizes with its series compared across orderings.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureCase {
    pub family: String,
    /// Canonical (non-increasing) representative of the multiset.
    pub layers: Vec<usize>,
    pub n_max: usize,
    /// Every distinct ordering whose series was computed.
    pub orderings: Vec<Vec<usize>>,
    pub verdict: Verdict,
    /// Two orderings and the order where their series first differ.
    pub first_diff: Option<(Vec<usize>, Vec<usize>, usize)>,
}

impl ConjectureCase {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("case serializes")
    }
}

/// Sweeps layer-size multisets of length `m` (entries `1..=layer_max`, total
/// at most `weight_max`) and compares the family's series across all
/// orderings of each multiset, pairwise.
pub fn conjecture_layered_symmetry(
    family: LayeredFamily,
    m: usize,
    layer_max: usize,
    weight_max: usize,
    n_max: usize,
) -> Result<Vec<ConjectureCase>> {
    if m < 2 {
        return Err(Error::ParameterRange {
            context: format!("layered symmetry needs at least two layers, got {m}"),
        });
    }
    let mut cases = Vec::new();
    for multiset in layer_multisets(m, layer_max, weight_max) {
        let orderings = distinct_orderings(&multiset);
        let series = orderings
            .iter()
            .map(|l| layered_series(family, l, n_max))
            .collect::<Result<Vec<_>>>()?;
        let mut verdict = Verdict::Match;
        let mut first_diff = None;
        'pairs: for i in 0..series.len() {
            for j in i + 1..series.len() {
                if let Some(n) =
                    (0..=n_max).find(|&n| series[i].coeff(n) != series[j].coeff(n))
                {
                    verdict = Verdict::Mismatch;
                    first_diff = Some((orderings[i].clone(), orderings[j].clone(), n));
                    break 'pairs;
                }
            }
        }
        cases.push(ConjectureCase {
            family: family.to_string(),
            layers: multiset,
            n_max,
            orderings,
            verdict,
            first_diff,
        });
    }
    Ok(cases)
}

fn layered_series(family: LayeredFamily, layers: &[usize], n_max: usize) -> Result<PowerSeries> {
    let p = Permutation::layered(layers)?;
    match family {
        LayeredFamily::Plus => F_series(&[p], SignVariant::Plus, n_max),
        LayeredFamily::Minus => F_series(&[p], SignVariant::Minus, n_max),
        LayeredFamily::Even | LayeredFamily::Odd => {
            let plus = F_series(std::slice::from_ref(&p), SignVariant::Plus, n_max)?;
            let minus = F_series(&[p], SignVariant::Minus, n_max)?;
            let combined = if family == LayeredFamily::Even {
                &plus + &minus
            } else {
                &plus - &minus
            };
            combined.divide_exact_const(&GaussianInt::from(2))
        }
        LayeredFamily::OncePlus => p_series_or_oracle(Some(&p), SignVariant::Plus, n_max),
    }
}

/// Non-increasing layer vectors of length `m` with entries in
/// `1..=layer_max` and total at most `weight_max`, lexicographically
/// largest first.
fn layer_multisets(m: usize, layer_max: usize, weight_max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(
        m: usize,
        bound: usize,
        budget: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        let remaining = m - current.len();
        for next in (1..=bound.min(budget.saturating_sub(remaining - 1))).rev() {
            current.push(next);
            rec(m, next, budget - next, current, out);
            current.pop();
        }
    }
    rec(m, layer_max, weight_max, &mut current, &mut out);
    out
}

/// All distinct orderings of a multiset, in lexicographic order.
fn distinct_orderings(multiset: &[usize]) -> Vec<Vec<usize>> {
    let mut values: Vec<usize> = multiset.to_vec();
    values.sort_unstable();
    values.dedup();
    let mut counts: Vec<usize> = values
        .iter()
        .map(|v| multiset.iter().filter(|x| *x == v).count())
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(multiset.len());
    fn rec(
        total: usize,
        values: &[usize],
        counts: &mut [usize],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == total {
            out.push(current.clone());
            return;
        }
        for i in 0..values.len() {
            if counts[i] == 0 {
                continue;
            }
            counts[i] -= 1;
            current.push(values[i]);
            rec(total, values, counts, current, out);
            current.pop();
            counts[i] += 1;
        }
    }
    rec(multiset.len(), &values, &mut counts, &mut current, &mut out);
    out
}

/// Per-sign-class counts (even or odd involutions) for one avoidance spec.
fn sign_class_series(pattern: &Permutation, even_class: bool, n_max: usize) -> Result<PowerSeries> {
    let spec = RestrictionSpec::avoiding([pat_3412(), pattern.clone()]);
    let total = count_series(&spec, n_max, false)?;
    let signed = count_series(&spec, n_max, true)?;
    let mut cells = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let t = total.coeff(n);
        let s = signed.coeff(n);
        let combined = if even_class { t + s } else { t - s };
        cells.push(GaussianInt::from_int(exact_div(
            combined,
            2,
            "sign-class split",
        )?));
    }
    Ok(PowerSeries::new(cells))
}

/// Compares even-involution and odd-involution counts between decreasing
/// restrictions and the skew restrictions claimed to align with them: the
/// length `2k` pattern against `[k-1]` over 231, and the length `2k+1`
/// pattern against `[k-1]` over 132, for `k <= 4`.
///
/// The odd-length pairing holds at desk scale.  The even-length pairing does
/// not (already at `k = 1`, order 4); those mismatches are the documented
/// refutation and come back explained.
pub fn equinumerosity_checks(n_max: usize) -> Result<Vec<AuditReport>> {
    let mut reports = Vec::new();
    for k in 1..=4usize {
        let cases = [
            (2 * k, vec![2u8, 3, 1], "even-length"),
            (2 * k + 1, vec![1u8, 3, 2], "odd-length"),
        ];
        for (len, tail, length_parity) in cases {
            let left = Permutation::decreasing(len);
            let right = Permutation::decreasing(k - 1)
                .skew_sum(&Permutation::new(tail).expect("valid pattern"));
            for (sign_class, even_class) in [("even", true), ("odd", false)] {
                let oracle = sign_class_series(&left, even_class, n_max)?;
                let formula = sign_class_series(&right, even_class, n_max)?;
                let params = params_of(&[
                    ("k", k.to_string()),
                    ("length-parity", length_parity.to_string()),
                    ("sign-class", sign_class.to_string()),
                    ("left", left.to_string()),
                    ("right", right.to_string()),
                ]);
                let report =
                    AuditReport::compare("sign-class-equinumerosity", params, oracle, formula);
                let report = if length_parity == "even-length"
                    && report.verdict == Verdict::Mismatch
                {
                    report.explained()
                } else {
                    report
                };
                reports.push(report);
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod verdict_tests {
    use super::*;
    use crate::series::Polynomial;

    fn series(ints: &[i64]) -> PowerSeries {
        PowerSeries::from_polynomial(&Polynomial::from_ints(ints), ints.len() - 1)
    }

    #[test]
    fn match_verdict() {
        let r = AuditReport::compare(
            "t",
            BTreeMap::new(),
            series(&[1, 2, 3]),
            series(&[1, 2, 3]),
        );
        assert_eq!(r.verdict, Verdict::Match);
        assert!(r.first_diff.is_none());
        assert!(r.is_acceptable());
    }

    #[test]
    fn sign_flip_verdict() {
        let r = AuditReport::compare(
            "t",
            BTreeMap::new(),
            series(&[0, -1, -2]),
            series(&[0, 1, 2]),
        );
        assert_eq!(r.verdict, Verdict::SignFlipMatch);
        assert_eq!(r.first_diff, Some(1));
        assert!(!r.is_acceptable());
        assert!(r.explained().is_acceptable());
    }

    #[test]
    fn mismatch_verdict() {
        let r = AuditReport::compare(
            "t",
            BTreeMap::new(),
            series(&[1, 2, 3]),
            series(&[1, 2, 4]),
        );
        assert_eq!(r.verdict, Verdict::Mismatch);
        assert_eq!(r.first_diff, Some(2));
    }

    #[test]
    fn markdown_rendering() {
        let r = AuditReport::compare("subj", BTreeMap::new(), series(&[1]), series(&[1]));
        let md = reports_markdown(&[r]);
        assert!(md.contains("| subj |"));
        assert!(md.contains("| match |"));
    }

    #[test]
    fn catalog_subjects_match_engines() {
        for id in [
            ClosedFormId::FSkew12 { variant: SignVariant::Plus, k: 1 },
            ClosedFormId::GSkew231 { variant: SignVariant::Minus, k: 2 },
            ClosedFormId::PEmpty { variant: SignVariant::Minus },
            ClosedFormId::QEvenDecreasing { k: 2 },
        ] {
            let r = audit(&AuditSubject::Catalog(id.clone()), 12).unwrap();
            assert_eq!(r.verdict, Verdict::Match, "{id:?}");
        }
    }

    #[test]
    fn stat_cf_truncations_match_tables() {
        for stat in [Statistic::Inv, Statistic::Lrmax, Statistic::Rlmin, Statistic::Fix] {
            let r = audit(&AuditSubject::StatRefinement(stat), 8).unwrap();
            assert_eq!(r.verdict, Verdict::Match, "{stat}");
            assert_eq!(r.params["series-content"], "totals at q = 1");
        }
    }

    #[test]
    fn stat_closed_forms_match_under_recorded_branch() {
        for stat in [Statistic::Lrmax, Statistic::Rlmin, Statistic::Fix] {
            let r = audit(&AuditSubject::StatClosedForm(stat), 8).unwrap();
            assert_eq!(r.verdict, Verdict::Match, "{stat}");
            assert!(r.fitted.as_deref().unwrap().contains("plus root branch"));
        }
        assert!(audit(&AuditSubject::StatClosedForm(Statistic::Inv), 6).is_err());
    }

    #[test]
    fn printed_lrmax_closed_form_diverges_in_the_refinement() {
        let r = audit(&AuditSubject::StatClosedFormPrinted(Statistic::Lrmax), 8).unwrap();
        assert_eq!(r.verdict, Verdict::Mismatch);
        // The totals agree; only the q-refinement is off, starting at order 2.
        assert_eq!(r.first_diff, Some(2));
        assert!(r.is_acceptable());
        assert!(r.params["series-content"].contains("order 2"));
        assert!(audit(&AuditSubject::StatClosedFormPrinted(Statistic::Fix), 6).is_err());
    }

    #[test]
    fn occurrence_sums_match_occurrence_counts() {
        for r in 1..=2u64 {
            for k in 1..=2usize {
                for parity in [Parity::Even, Parity::Odd] {
                    let report =
                        audit(&AuditSubject::Occurrence { r, k, parity }, 10).unwrap();
                    assert!(report.is_acceptable(), "r={r} k={k} {parity}");
                }
            }
        }
        let report = audit(
            &AuditSubject::Occurrence { r: 1, k: 1, parity: Parity::Even },
            10,
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Match);
    }

    #[test]
    fn doubly_once_caps_are_settled_by_enumeration() {
        let good = audit(&AuditSubject::DoublyOnce { k: 3, wide_cap: false }, 10).unwrap();
        assert_eq!(good.verdict, Verdict::Match);
        let wide = audit(&AuditSubject::DoublyOnce { k: 3, wide_cap: true }, 10).unwrap();
        assert_eq!(wide.verdict, Verdict::Mismatch);
        assert_eq!(wide.first_diff, Some(6));
        assert!(wide.is_acceptable());
    }

    #[test]
    fn count_displays_match_enumeration() {
        for display in [
            CountDisplay::OnceCrossingAvoid321,
            CountDisplay::OnceCrossingAvoid4321,
            CountDisplay::DoublyOnce4321,
        ] {
            let r = audit(&AuditSubject::Count(display), 11).unwrap();
            assert_eq!(r.verdict, Verdict::Match, "{display:?}");
        }
    }

    #[test]
    fn equinumerosity_split_by_length_parity() {
        let reports = equinumerosity_checks(10).unwrap();
        assert_eq!(reports.len(), 16);
        for r in &reports {
            assert!(r.is_acceptable(), "{:?}", r.params);
            match r.params["length-parity"].as_str() {
                "odd-length" => assert_eq!(r.verdict, Verdict::Match, "{:?}", r.params),
                "even-length" => {
                    assert_eq!(r.verdict, Verdict::Mismatch, "{:?}", r.params);
                    assert!(r.explained);
                }
                other => panic!("unexpected parity tag {other}"),
            }
        }
        // First divergence orders for the refuted even-length pairing.
        let firsts: Vec<Option<usize>> = reports
            .iter()
            .filter(|r| r.params["length-parity"] == "even-length")
            .map(|r| r.first_diff)
            .collect();
        assert_eq!(
            firsts,
            vec![Some(4), Some(2), Some(4), Some(4), Some(6), Some(6), Some(8), Some(8)]
        );
    }

    #[test]
    fn layered_symmetry_holds_for_signed_and_sign_class_families() {
        for family in [LayeredFamily::Minus, LayeredFamily::Even, LayeredFamily::Odd] {
            let cases = conjecture_layered_symmetry(family, 2, 3, 6, 12).unwrap();
            assert_eq!(cases.len(), 6);
            for c in &cases {
                assert_eq!(c.verdict, Verdict::Match, "{family} {:?}", c.layers);
            }
        }
    }

    #[test]
    fn layered_once_crossing_family_is_not_symmetric() {
        let cases = conjecture_layered_symmetry(LayeredFamily::OncePlus, 3, 2, 4, 10).unwrap();
        let broken = cases.iter().find(|c| c.layers == [2, 1, 1]).unwrap();
        assert_eq!(broken.verdict, Verdict::Mismatch);
        assert_eq!(broken.orderings.len(), 3);
        let (a, b, n) = broken.first_diff.clone().unwrap();
        assert_eq!((a, b, n), (vec![1, 1, 2], vec![1, 2, 1], 7));
        let trivial = cases.iter().find(|c| c.layers == [1, 1, 1]).unwrap();
        assert_eq!(trivial.verdict, Verdict::Match);
    }

    #[test]
    fn layer_multiset_generation() {
        assert_eq!(
            layer_multisets(2, 3, 4),
            vec![vec![3, 1], vec![2, 2], vec![2, 1], vec![1, 1]]
        );
        assert_eq!(
            distinct_orderings(&[2, 1, 1]),
            vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]
        );
    }

    #[test]
    fn audit_suite_is_clean_and_sorted() {
        let reports = audit_suite(12, 8).unwrap();
        assert!(reports.len() > 150);
        for r in &reports {
            assert!(r.is_acceptable(), "{} {:?}: {:?}", r.subject, r.params, r.verdict);
        }
        let mut keys: Vec<(&String, &BTreeMap<String, String>)> =
            reports.iter().map(|r| (&r.subject, &r.params)).collect();
        let sorted = {
            let mut s = keys.clone();
            s.sort();
            s
        };
        assert_eq!(keys, sorted);
        keys.dedup();
        assert_eq!(keys.len(), reports.len(), "subject ids must be unique");
    }
}
