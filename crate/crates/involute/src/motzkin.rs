//! Motzkin paths, the label-swapping bijection onto crossing-free
//! involutions, path statistics, and bounded-path generating functions
//! via tridiagonal transfer matrices.

use crate::core::Permutation;
use crate::error::{Error, Result};
use crate::series::{GaussianInt, Polynomial, PowerSeries};
use crate::verify::{params_of, AuditReport};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Up,
    Down,
    Level,
}

/// A lattice path of up/down/level steps that starts and ends at height 0
/// and never dips below it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MotzkinPath {
    steps: Vec<Step>,
}

impl TryFrom<String> for MotzkinPath {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MotzkinPath> for String {
    fn from(p: MotzkinPath) -> String {
        p.to_string()
    }
}

impl MotzkinPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            match s {
                Step::Up => height += 1,
                Step::Down => height -= 1,
                Step::Level => {}
            }
            if height < 0 {
                return Err(Error::InvalidPath(format!(
                    "height drops below 0 after step {}",
                    i + 1
                )));
            }
        }
        if height != 0 {
            return Err(Error::InvalidPath(format!("path ends at height {height}")));
        }
        Ok(MotzkinPath { steps })
    }

    pub fn empty() -> Self {
        MotzkinPath { steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Height of each step's left endpoint.
    pub fn heights(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.len());
        let mut h = 0u64;
        for s in &self.steps {
            out.push(h);
            match s {
                Step::Up => h += 1,
                Step::Down => h -= 1,
                Step::Level => {}
            }
        }
        out
    }

    pub fn up_count(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Up).count()
    }

    pub fn down_count(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Down).count()
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            let c = match s {
                Step::Up => 'U',
                Step::Down => 'D',
                Step::Level => 'L',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'U' => Ok(Step::Up),
                'D' => Ok(Step::Down),
                'L' => Ok(Step::Level),
                other => Err(Error::InvalidPath(format!("unknown step {other:?}"))),
            })
            .collect::<Result<Vec<Step>>>()?;
        MotzkinPath::new(steps)
    }
}

/// All Motzkin paths with exactly `n` steps.
pub fn motzkin_paths(n: usize) -> Vec<MotzkinPath> {
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n);
    fn go(remaining: usize, height: usize, steps: &mut Vec<Step>, out: &mut Vec<MotzkinPath>) {
        if remaining == 0 {
            if height == 0 {
                out.push(MotzkinPath { steps: steps.clone() });
            }
            return;
        }
        if height > remaining {
            return;
        }
        steps.push(Step::Up);
        go(remaining - 1, height + 1, steps, out);
        steps.pop();
        steps.push(Step::Level);
        go(remaining - 1, height, steps, out);
        steps.pop();
        if height > 0 {
            steps.push(Step::Down);
            go(remaining - 1, height - 1, steps, out);
            steps.pop();
        }
    }
    go(n, 0, &mut steps, &mut out);
    out
}

/// Number the steps 1..n; each up step trades labels with the down step
/// that first returns to its height. The final labels, read by position,
/// form an involution whose 2-cycles are exactly the matched pairs, so
/// the image is crossing-free.
pub fn phi(path: &MotzkinPath) -> Permutation {
    let n = path.len();
    let mut arr = vec![0u8; n];
    let mut open: Vec<usize> = Vec::new();
    for (idx, step) in path.steps.iter().enumerate() {
        match step {
            Step::Up => open.push(idx),
            Step::Level => arr[idx] = idx as u8 + 1,
            Step::Down => {
                let a = open.pop().expect("valid path has matching up step");
                arr[idx] = a as u8 + 1;
                arr[a] = idx as u8 + 1;
            }
        }
    }
    Permutation::from_raw(arr)
}

/// Inverse direction: fixed points become level steps, each 2-cycle
/// `a < b` becomes an up step at `a` and a down step at `b`. Defined
/// exactly on crossing-free involutions.
pub fn phi_inverse(p: &Permutation) -> Result<MotzkinPath> {
    if !p.is_involution() {
        return Err(Error::NotInvolution(p.to_string()));
    }
    if p.has_crossing() {
        return Err(Error::CrossingPresent(p.to_string()));
    }
    let steps = (1..=p.len())
        .map(|i| {
            let j = p.apply(i);
            if j == i {
                Step::Level
            } else if j > i {
                Step::Up
            } else {
                Step::Down
            }
        })
        .collect();
    MotzkinPath::new(steps)
}

/// Binomial coefficient with the conventions the path statistics need:
/// `C(a, 0) = 1`, negative lower index gives 0, `a < b` gives 0.
pub(crate) fn binomial(a: i64, b: i64) -> u64 {
    if b < 0 {
        return 0;
    }
    if b == 0 {
        return 1;
    }
    if a < b {
        return 0;
    }
    let mut acc: u128 = 1;
    let b = b.min(a - b);
    for t in 0..b {
        acc = acc * (a - t) as u128 / (t as u128 + 1);
    }
    u64::try_from(acc).expect("binomial fits u64 at tested sizes")
}

/// Path statistic transported by the bijection: up and level steps at
/// height `h` contribute `C(2h, k-1)`, down steps contribute `C(2h-1, k-1)`.
pub fn tau_path(path: &MotzkinPath, k: usize) -> u64 {
    assert!(k >= 1, "tau_path index starts at 1");
    let heights = path.heights();
    path.steps
        .iter()
        .zip(&heights)
        .map(|(s, &h)| match s {
            Step::Up | Step::Level => binomial(2 * h as i64, k as i64 - 1),
            Step::Down => binomial(2 * h as i64 - 1, k as i64 - 1),
        })
        .sum()
}

/// The three bounded-path flavors: `M` allows level steps everywhere,
/// `N` forbids them at the ceiling `k`, `O` forbids them at height 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathVariant {
    M,
    N,
    O,
}

impl PathVariant {
    fn level_allowed(self, height: usize, ceiling: usize) -> bool {
        match self {
            PathVariant::M => true,
            PathVariant::N => height != ceiling,
            PathVariant::O => height != 0,
        }
    }
}

impl FromStr for PathVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(PathVariant::M),
            "N" | "n" => Ok(PathVariant::N),
            "O" | "o" => Ok(PathVariant::O),
            other => Err(Error::ParameterRange {
                context: format!("unknown path variant {other:?} (expected M, N, O)"),
            }),
        }
    }
}

/// Paths from height `r` to height `s` confined to `0..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedPathQuery {
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub variant: PathVariant,
}

impl BoundedPathQuery {
    pub fn new(r: usize, s: usize, k: usize, variant: PathVariant) -> Result<Self> {
        if r > k || s > k {
            return Err(Error::ParameterRange {
                context: format!("endpoints r={r}, s={s} must lie in 0..={k}"),
            });
        }
        Ok(BoundedPathQuery { r, s, k, variant })
    }
}

/// Direct enumeration oracle. Unsigned counts paths; signed weights each
/// path by `i^(ups+downs)`.
pub fn bounded_paths(query: &BoundedPathQuery, n_max: usize, signed: bool) -> PowerSeries {
    let mut coeffs = vec![GaussianInt::zero(); n_max + 1];
    // Walks every path once per terminal length; a path is counted at
    // length n exactly when it has n steps, so recurse on remaining steps
    // and record hits at height s at every depth.
    fn go(
        height: usize,
        steps_taken: usize,
        ud: u64,
        query: &BoundedPathQuery,
        n_max: usize,
        signed: bool,
        coeffs: &mut [GaussianInt],
    ) {
        if height == query.s {
            let w = if signed {
                GaussianInt::i_pow(ud)
            } else {
                GaussianInt::one()
            };
            coeffs[steps_taken] += &w;
        }
        if steps_taken == n_max {
            return;
        }
        if height < query.k {
            go(height + 1, steps_taken + 1, ud + 1, query, n_max, signed, coeffs);
        }
        if query.variant.level_allowed(height, query.k) {
            go(height, steps_taken + 1, ud, query, n_max, signed, coeffs);
        }
        if height > 0 {
            go(height - 1, steps_taken + 1, ud + 1, query, n_max, signed, coeffs);
        }
    }
    go(query.r, 0, 0, query, n_max, signed, &mut coeffs);
    PowerSeries::new(coeffs)
}

/// Matrix flavors matching the path variants: `A` is the full tridiagonal
/// step matrix, `B` zeroes the level entry at the ceiling, `C` at the floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    A,
    B,
    C,
}

impl From<PathVariant> for MatrixKind {
    fn from(v: PathVariant) -> MatrixKind {
        match v {
            PathVariant::M => MatrixKind::A,
            PathVariant::N => MatrixKind::B,
            PathVariant::O => MatrixKind::C,
        }
    }
}

/// `(k+1) x (k+1)` one-step matrix: level steps mark `x` on the diagonal,
/// up/down steps mark `ix` off the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    pub kind: MatrixKind,
    pub k: usize,
    pub entries: Vec<Vec<Polynomial>>,
}

impl TransferMatrix {
    pub fn new(kind: MatrixKind, k: usize) -> Self {
        let x = Polynomial::x();
        let ix = Polynomial::monomial(GaussianInt::i(), 1);
        let size = k + 1;
        let mut entries = vec![vec![Polynomial::zero(); size]; size];
        for d in 0..size {
            entries[d][d] = x.clone();
            if d + 1 < size {
                entries[d][d + 1] = ix.clone();
                entries[d + 1][d] = ix.clone();
            }
        }
        match kind {
            MatrixKind::A => {}
            MatrixKind::B => entries[k][k] = Polynomial::zero(),
            MatrixKind::C => entries[0][0] = Polynomial::zero(),
        }
        TransferMatrix { kind, k, entries }
    }

    /// Diagonal of `I - M`; the off-diagonal of `I - M` is `-ix` throughout.
    fn complement_diagonal(&self) -> Vec<Polynomial> {
        (0..=self.k)
            .map(|d| &Polynomial::one() - &self.entries[d][d])
            .collect()
    }

    /// `det(I - M)` by the three-term recurrence for tridiagonal matrices.
    pub fn complement_det(&self) -> Polynomial {
        let diag = self.complement_diagonal();
        tridiagonal_det(&diag)
    }

    /// Determinant of `I - M` with row `s` and column `r` deleted. For a
    /// tridiagonal matrix this splits into a leading block, a run of
    /// off-diagonal entries, and a trailing block.
    pub fn complement_minor(&self, s: usize, r: usize) -> Polynomial {
        let diag = self.complement_diagonal();
        let (lo, hi) = if s <= r { (s, r) } else { (r, s) };
        let head = tridiagonal_det(&diag[..lo]);
        let tail = tridiagonal_det(&diag[hi + 1..]);
        // Each skipped row contributes one -ix factor.
        let neg_ix = Polynomial::monomial(-GaussianInt::i(), 1);
        let run = neg_ix.pow((hi - lo) as u32);
        &(&head * &run) * &tail
    }
}

/// Determinant of the tridiagonal matrix with the given diagonal and
/// constant off-diagonal `-ix`: `D_m = d_m D_{m-1} + x² D_{m-2}` since
/// `(-ix)² = -x²`.
fn tridiagonal_det(diag: &[Polynomial]) -> Polynomial {
    let x2 = Polynomial::from_ints(&[0, 0, 1]);
    let mut prev2 = Polynomial::one();
    let mut prev = Polynomial::one();
    for (m, d) in diag.iter().enumerate() {
        let next = if m == 0 {
            d.clone()
        } else {
            &(d * &prev) + &(&x2 * &prev2)
        };
        prev2 = prev;
        prev = next;
    }
    prev
}

/// Expansion of `(-1)^(r+s)·minor(s,r)/det` for the matching matrix; equals
/// the signed bounded-path series.
pub fn transfer_gf(query: &BoundedPathQuery, n_max: usize) -> PowerSeries {
    let m = TransferMatrix::new(MatrixKind::from(query.variant), query.k);
    let det = m.complement_det();
    assert!(
        m.entries.iter().flatten().all(|e| e.constant_term().is_zero()),
        "step matrices must have no constant term"
    );
    let minor = m.complement_minor(query.s, query.r);
    let num = if (query.r + query.s) % 2 == 0 {
        minor
    } else {
        minor.scale(&GaussianInt::from(-1i64))
    };
    PowerSeries::from_polynomial(&num, n_max)
        .divide(&PowerSeries::from_polynomial(&det, n_max))
        .expect("det has constant term 1")
}

/// Checks the printed closed forms for the three determinants against the
/// actual determinants: the full matrix against `wtilde(k+1)`, and both
/// truncated matrices against their printed form (which mixes in an `ix`
/// factor and fails) and the real-coefficient replacement `ztilde(k)`.
pub fn det_identity_audit(k: usize) -> Vec<AuditReport> {
    use crate::chebyshev::{wtilde, ztilde};
    let order = 2 * (k + 1) + 2;
    let expand = |p: &Polynomial| PowerSeries::from_polynomial(p, order);
    let ki = k as i64;
    let params = params_of(&[("k", k.to_string())]);

    let det_a = TransferMatrix::new(MatrixKind::A, k).complement_det();
    let det_b = TransferMatrix::new(MatrixKind::B, k).complement_det();
    let det_c = TransferMatrix::new(MatrixKind::C, k).complement_det();

    let full = AuditReport::compare(
        "transfer-det-full",
        params.clone(),
        expand(&det_a),
        expand(&wtilde(ki + 1)),
    );

    // Printed form for the truncated determinants, normalized the same
    // way as the full one: W_{k+1} + W_k picks up an extra ix on the
    // second term and cannot be real.
    let printed = &wtilde(ki + 1) + &wtilde(ki).scale(&GaussianInt::i()).shift_up(1);
    let top_printed = AuditReport::compare(
        "transfer-det-top-truncated-printed",
        params.clone(),
        expand(&det_b),
        expand(&printed),
    )
    .with_fitted(format!("replacement: wtilde({}) + x*wtilde({})", k + 1, ki))
    .explained();

    let top = AuditReport::compare(
        "transfer-det-top-truncated",
        params.clone(),
        expand(&det_b),
        expand(&ztilde(ki)),
    );
    let bottom = AuditReport::compare(
        "transfer-det-bottom-truncated",
        params,
        expand(&det_c),
        expand(&ztilde(ki)),
    );
    vec![full, top_printed, top, bottom]
}
