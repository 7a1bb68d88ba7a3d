//! Signed series for a fixed number of decreasing-pattern occurrences.
//!
//! Among 3412-avoiding involutions, the signed generating function for
//! those containing the decreasing pattern `[2k]` (even case) or `[2k+1]`
//! (odd case) exactly `r` times expands as a finite sum over integer
//! compositions of `r`: each composition records how many occurrences
//! arrive through each of a bounded window of structural positions, and
//! contributes a product of binomials times a monomial over a power of a
//! normalized Chebyshev polynomial.  The window size `b` is determined by
//! `r` alone; enlarging it only adds terms whose binomial factor vanishes.

use crate::chebyshev::{wtilde, ztilde};
use crate::error::{Error, Result};
use crate::motzkin::binomial;
use crate::series::{GaussianInt, PowerSeries, RationalFunction};
use std::fmt;
use std::str::FromStr;

/// Parity of the decreasing pattern: `Even` means `[2k]`, `Odd` means `[2k+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::ParameterRange {
                context: format!("unknown parity {other:?}; expected even or odd"),
            }),
        }
    }
}

/// One composition in the expansion: window size `b` and the occurrence
/// multiplicities `d_0..d_b`, `l_0..l_b` assigned to the two position kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeq {
    pub b: usize,
    pub d: Vec<u64>,
    pub l: Vec<u64>,
}

impl CompositionSeq {
    fn sum_d(&self) -> u64 {
        self.d.iter().sum()
    }

    fn sum_l(&self) -> u64 {
        self.l.iter().sum()
    }
}

/// Per-position weights: one occurrence at position `j` of the first kind
/// contributes `wd[j]` to `r`, of the second kind `wl[j]`.
fn weights(k: usize, parity: Parity, b: usize) -> (Vec<u64>, Vec<u64>) {
    let kk = 2 * k as i64;
    let mut wd = Vec::with_capacity(b + 1);
    let mut wl = Vec::with_capacity(b + 1);
    for j in 0..=b as i64 {
        match parity {
            Parity::Even => {
                wd.push(binomial(kk + 2 * j - 2, kk - 1) + binomial(kk + 2 * j - 1, kk - 1));
                wl.push(binomial(kk + 2 * j, kk - 1));
            }
            Parity::Odd => {
                wd.push(binomial(kk + 2 * j + 1, kk) + binomial(kk + 2 * j, kk));
                wl.push(binomial(kk + 2 * j, kk));
            }
        }
    }
    (wd, wl)
}

/// The canonical window size for multiplicity `r`.
fn window(r: u64, k: usize, parity: Parity) -> usize {
    let kk = 2 * k as i64;
    let mut b = 0usize;
    loop {
        let fits = match parity {
            Parity::Even => {
                let cap1 = binomial(kk + 2 * b as i64 + 2, kk - 1);
                let cap2 =
                    binomial(kk + 2 * b as i64, kk - 1) + binomial(kk + 2 * b as i64 + 1, kk - 1);
                r < cap1.min(cap2)
            }
            Parity::Odd => r < binomial(kk + 2 * b as i64 + 2, kk),
        };
        if fits {
            return b;
        }
        b += 1;
    }
}

fn solutions(weights: &[u64], r: u64) -> Vec<Vec<u64>> {
    fn go(weights: &[u64], r: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        match weights {
            [] => {
                if r == 0 {
                    out.push(acc.clone());
                }
            }
            [w, rest @ ..] => {
                debug_assert!(*w > 0, "composition weights are positive");
                let mut c = 0;
                while c * w <= r {
                    acc.push(c);
                    go(rest, r - c * w, acc, out);
                    acc.pop();
                    c += 1;
                }
            }
        }
    }
    let mut out = Vec::new();
    go(weights, r, &mut Vec::new(), &mut out);
    out
}

/// Enumerates the compositions of `r` for the given pattern, returning the
/// window size together with every solution (including those whose binomial
/// factor later vanishes).
pub fn compositions(r: u64, k: usize, parity: Parity) -> Result<(usize, Vec<CompositionSeq>)> {
    if r == 0 || k == 0 {
        return Err(Error::ParameterRange {
            context: format!("occurrence expansion needs r >= 1 and k >= 1, got r = {r}, k = {k}"),
        });
    }
    let b = window(r, k, parity);
    let (wd, wl) = weights(k, parity, b);
    let all: Vec<u64> = wd.iter().chain(wl.iter()).copied().collect();
    let sols = solutions(&all, r);
    if sols.is_empty() {
        return Err(Error::NoComposition { r: r as usize, k });
    }
    let seqs = sols
        .into_iter()
        .map(|v| CompositionSeq {
            b,
            d: v[..=b].to_vec(),
            l: v[b + 1..].to_vec(),
        })
        .collect();
    Ok((b, seqs))
}

/// The binomial factor of one composition; zero kills the whole term.
fn binomial_factor(seq: &CompositionSeq, parity: Parity) -> u64 {
    let b = seq.b;
    let d = |j: i64| -> i64 {
        match parity {
            // Beyond the window the first kind is empty; before it, the
            // odd case seeds one virtual occurrence.
            Parity::Even if j > b as i64 => 0,
            Parity::Odd if j < 0 => 1,
            _ => seq.d[j as usize] as i64,
        }
    };
    let mut product = 1u64;
    for s in 0..=b as i64 {
        let ls = seq.l[s as usize] as i64;
        let (first, second) = match parity {
            Parity::Even => (
                binomial(d(s) + d(s + 1) + ls - 1, d(s + 1) + ls),
                binomial(d(s + 1) + ls, ls),
            ),
            Parity::Odd => (
                binomial(d(s) + d(s - 1) + ls - 1, d(s) + ls),
                binomial(d(s) + ls, ls),
            ),
        };
        product *= first * second;
        if product == 0 {
            return 0;
        }
    }
    product
}

/// Signed series of 3412-avoiding involutions containing the decreasing
/// pattern of the given parity exactly `r` times, to order `n_max`.
pub fn r_occurrence_gf(r: u64, k: usize, parity: Parity, n_max: usize) -> Result<PowerSeries> {
    let (_, seqs) = compositions(r, k, parity)?;
    let kk = k as i64;
    let mut total = PowerSeries::zero(n_max);
    for seq in &seqs {
        let factor = binomial_factor(seq, parity);
        if factor == 0 {
            continue;
        }
        let sum_d = seq.sum_d() as usize;
        let sum_l = seq.sum_l() as usize;
        let (exponent, sign_flips, base_power, num_base, den_base) = match parity {
            Parity::Even => (
                2 * sum_d + sum_l + 2 * k - 2,
                sum_d + k - 1,
                seq.d[0] as i64 - 1,
                wtilde(kk - 1),
                wtilde(kk),
            ),
            Parity::Odd => (
                2 * sum_d + sum_l + 2 * k,
                sum_d + k,
                (seq.d[0] + seq.l[0]) as i64 - 1,
                wtilde(kk),
                ztilde(kk),
            ),
        };
        // A nonzero binomial factor forces at least one occurrence through
        // the innermost position, so the numerator exponent is nonnegative.
        let num_exp: u32 = base_power
            .try_into()
            .map_err(|_| Error::NoComposition { r: r as usize, k })?;
        let coeff = i64::try_from(factor)
            .map_err(|_| Error::ParameterRange {
                context: format!("binomial factor overflows for r = {r}, k = {k}"),
            })?
            * if sign_flips % 2 == 0 { 1 } else { -1 };
        let num = num_base
            .pow(num_exp)
            .shift_up(exponent)
            .scale(&GaussianInt::from(coeff));
        let den = den_base.pow(num_exp + 2);
        let term = RationalFunction::new(num, den)?.expand(n_max)?;
        total = &total + &term;
    }
    Ok(total)
}
