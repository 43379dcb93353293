//! Growth rates of Ext sequences: complexity of Verma and simple modules and
//! of n-cohomology.
//!
//! All sequences are read off block tables whose interval is chosen by the
//! z-window bounds in [`crate::engine`], then recomputed on an interval one
//! step larger; the result is accepted once two successive intervals agree.

use crate::engine::{column, lower_window, upper_window, Engine};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::super_kl::KlTable;
use crate::weights::{atypicality, is_dominant_regular, is_regular, Algebra, Weight};
use serde::Serialize;
use std::fmt;

pub const DEFAULT_J_MAX: u32 = 12;

/// How many enlargements to try before giving up on stability.
const MAX_ENLARGEMENTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rate {
    Value(u32),
    /// Only a lower bound is known (sequence cut short by the budget).
    AtLeast(u32),
}

impl Rate {
    pub fn value(&self) -> u32 {
        match self {
            Rate::Value(v) | Rate::AtLeast(v) => *v,
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Value(v) => write!(f, "{v}"),
            Rate::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthEstimate {
    pub rate: Rate,
    /// Tail matched a polynomial exactly.
    pub exact: bool,
    pub j_max: u32,
    pub interval: Interval,
    pub sequence: Vec<i64>,
}

/// Degree of the polynomial through `pts`, `-1` for all zeros, provided at
/// least two points are redundant and there are at least four in all.
fn tail_degree(pts: &[i64]) -> Option<i64> {
    if pts.len() >= 4 && pts.iter().all(|&c| c == 0) {
        return Some(-1);
    }
    let mut diff: Vec<i64> = pts.to_vec();
    for d in 0.. {
        if pts.len() < 4.max(d + 3) {
            return None;
        }
        let next: Vec<i64> = diff.windows(2).map(|p| p[1] - p[0]).collect();
        if next.iter().all(|&c| c == 0) {
            return Some(d as i64);
        }
        diff = next;
    }
    unreachable!()
}

/// Polynomial growth rate of a sequence.
///
/// Rate `k` means `c_j ~ C j^(k-1)`; an eventually zero sequence has rate 0.
/// Returns `(rate, exact)`. Exact when the last six terms are a polynomial,
/// or the last twelve a quasi-polynomial of period 2 (each parity class a
/// polynomial), in both cases with at least two redundant points and four
/// points per class.
pub fn growth_rate(seq: &[i64]) -> (u32, bool) {
    let tail = &seq[seq.len().saturating_sub(6)..];
    if tail.iter().all(|&c| c == 0) {
        return (0, tail.len() >= 4);
    }
    if let Some(d) = tail_degree(tail) {
        return ((d + 1) as u32, true);
    }
    let start = seq.len().saturating_sub(12);
    let classes: Vec<Option<i64>> = (0..2)
        .map(|r| {
            let pts: Vec<i64> = (start..seq.len()).filter(|j| j % 2 == r).map(|j| seq[j]).collect();
            tail_degree(&pts)
        })
        .collect();
    if let [Some(a), Some(b)] = classes[..] {
        return ((a.max(b) + 1) as u32, true);
    }
    // Not polynomial on the tail: slope of log c against log j.
    let pts: Vec<(f64, f64)> = tail
        .iter()
        .enumerate()
        .filter(|t| *t.1 > 0)
        .map(|(i, &c)| ((seq.len() - tail.len() + i).max(1) as f64, c as f64))
        .collect();
    let k = match (pts.first(), pts.last()) {
        (Some(a), Some(b)) if b.0 > a.0 => {
            let s = (b.1.ln() - a.1.ln()) / (b.0.ln() - a.0.ln());
            (s - 1e-9).ceil().max(0.0) as u32 + 1
        }
        _ => 1,
    };
    (k, false)
}

fn estimate(seq: Vec<i64>, j_max: u32, interval: Interval, truncated: bool) -> GrowthEstimate {
    let (k, exact) = growth_rate(&seq);
    let rate = if truncated { Rate::AtLeast(k) } else { Rate::Value(k) };
    GrowthEstimate { rate, exact: exact && !truncated, j_max, interval, sequence: seq }
}

/// Computes `f(table, j_max)` on `interval`, then on larger intervals
/// until two successive results agree.
fn stable<F>(engine: &Engine, alg: &Algebra, seed: &Weight, interval: Interval, f: F) -> Result<(Vec<i64>, Interval)>
where
    F: Fn(&KlTable) -> Result<Vec<i64>>,
{
    let mut cur = interval;
    let mut prev = f(&*engine.table(alg, seed, &cur)?)?;
    for _ in 0..MAX_ENLARGEMENTS {
        let next_i = cur.enlarged(1);
        let next = f(&*engine.table(alg, seed, &next_i)?)?;
        if next == prev {
            return Ok((prev, cur));
        }
        prev = next;
        cur = next_i;
    }
    Err(Error::Invariant(format!("sequence for {seed} did not stabilize by {cur}")))
}

/// A sequence, the interval it was read from, and the budget message when
/// only a prefix could be computed.
type Outcome = (Vec<i64>, Interval, Option<String>);

/// Runs `compute(j)` for `j_max`, falling back to shorter prefixes when the
/// table budget is hit.
fn with_budget<F>(j_max: u32, compute: F) -> Result<Outcome>
where
    F: Fn(u32) -> Result<(Vec<i64>, Interval)>,
{
    match compute(j_max) {
        Err(Error::BudgetExceeded { reason, .. }) => {
            for j in (0..j_max).rev() {
                if let Ok((seq, interval)) = compute(j) {
                    return Ok((seq, interval, Some(reason)));
                }
            }
            Err(Error::BudgetExceeded { reason, partial: Vec::new() })
        }
        r => r.map(|(s, i)| (s, i, None)),
    }
}

/// Public form: a truncated sequence becomes `BudgetExceeded` carrying it.
fn strict(r: Result<Outcome>) -> Result<(Vec<i64>, Interval)> {
    match r? {
        (seq, interval, None) => Ok((seq, interval)),
        (seq, _, Some(reason)) => Err(Error::BudgetExceeded { reason, partial: seq }),
    }
}

fn coeffs_upto(p: &crate::poly::LaurentPoly, out: &mut [i64]) {
    for &(e, c) in p.terms() {
        if e >= 0 && (e as usize) < out.len() {
            out[e as usize] += c;
        }
    }
}

/// `p_lambda^j = sum_nu dim Ext^j(M(lambda), L(nu))` for `j <= j_max`.
pub fn p_sequence(engine: &Engine, alg: &Algebra, lambda: &Weight, j_max: u32) -> Result<(Vec<i64>, Interval)> {
    strict(p_outcome(engine, alg, lambda, j_max))
}

fn p_outcome(engine: &Engine, alg: &Algebra, lambda: &Weight, j_max: u32) -> Result<Outcome> {
    alg.check(lambda)?;
    with_budget(j_max, |j_max| {
        let interval = upper_window(alg, lambda, j_max as u64 + alg.mn());
        stable(engine, alg, lambda, interval, |t| {
            let i = t.index_of(lambda).expect("window contains its centre");
            let mut out = vec![0i64; j_max as usize + 1];
            for (_, p) in t.p_row(i) {
                coeffs_upto(p, &mut out);
            }
            Ok(out)
        })
    })
}

/// `sum_kappa dim Ext^j(M(kappa), L(lambda))`, the n-cohomology count.
pub fn n_cohomology_sequence(
    engine: &Engine,
    alg: &Algebra,
    lambda: &Weight,
    j_max: u32,
) -> Result<(Vec<i64>, Interval)> {
    strict(n_outcome(engine, alg, lambda, j_max))
}

fn n_outcome(engine: &Engine, alg: &Algebra, lambda: &Weight, j_max: u32) -> Result<Outcome> {
    alg.check(lambda)?;
    with_budget(j_max, |j_max| {
        let interval = lower_window(alg, lambda, j_max as u64 + alg.mn());
        stable(engine, alg, lambda, interval, |t| {
            let mut out = vec![0i64; j_max as usize + 1];
            for (_, p) in column(t, lambda)? {
                coeffs_upto(&p, &mut out);
            }
            Ok(out)
        })
    })
}

/// `sum_mu dim Ext^j(L(lambda), L(mu))`.
pub fn simple_sequence(engine: &Engine, alg: &Algebra, lambda: &Weight, j_max: u32) -> Result<(Vec<i64>, Interval)> {
    strict(simple_outcome(engine, alg, lambda, j_max))
}

fn simple_outcome(engine: &Engine, alg: &Algebra, lambda: &Weight, j_max: u32) -> Result<Outcome> {
    alg.check(lambda)?;
    with_budget(j_max, |j_max| {
        let depth = j_max as u64 + alg.mn();
        let first = engine.table(alg, lambda, &lower_window(alg, lambda, depth))?;
        // every nu with p_{nu,lambda} nonzero in degree <= j_max, and how
        // much degree is left for the second factor
        let mut interval = first.interval;
        for (nu, p) in column(&first, lambda)? {
            let lo = p.min_exp().unwrap_or(0).max(0) as u32;
            if lo > j_max {
                continue;
            }
            let nu = &first.weights()[nu];
            interval = interval.hull(&upper_window(alg, nu, (j_max - lo) as u64 + alg.mn()));
        }
        stable(engine, alg, lambda, interval, |t| {
            let mut out = vec![0i64; j_max as usize + 1];
            for (nu, a) in column(t, lambda)? {
                let mut row = vec![0i64; j_max as usize + 1];
                for (_, b) in t.p_row(nu) {
                    coeffs_upto(b, &mut row);
                }
                for &(i, c) in a.terms() {
                    if i < 0 || i as u32 > j_max {
                        continue;
                    }
                    for k in 0..=(j_max - i as u32) as usize {
                        out[i as usize + k] += c * row[k];
                    }
                }
            }
            Ok(out)
        })
    })
}

fn to_estimate(r: Result<Outcome>, j_max: u32) -> Result<GrowthEstimate> {
    let (seq, interval, truncated) = r?;
    let j = if truncated.is_some() { seq.len() as u32 - 1 } else { j_max };
    Ok(estimate(seq, j, interval, truncated.is_some()))
}

#[derive(Clone, Debug, Serialize)]
pub struct VermaComplexity {
    pub estimate: GrowthEstimate,
    pub atypicality: u32,
    pub regular: bool,
    /// Regular weights must have rate equal to the atypicality, singular
    /// ones at most that.
    pub consistent: bool,
}

pub fn complexity_verma(engine: &Engine, alg: &Algebra, lambda: &Weight, j_max: u32) -> Result<VermaComplexity> {
    let estimate = to_estimate(p_outcome(engine, alg, lambda, j_max), j_max)?;
    let k = atypicality(lambda) as u32;
    let regular = is_regular(lambda);
    let r = estimate.rate.value();
    let consistent = match estimate.rate {
        Rate::Value(_) if regular => r == k,
        _ => r <= k,
    };
    Ok(VermaComplexity { estimate, atypicality: k, regular, consistent })
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleComplexity {
    pub estimate: GrowthEstimate,
    /// Value predicted by the open conjecture `2 * atypicality`.
    pub conjectured: u32,
    pub status: &'static str,
}

pub fn complexity_simple(engine: &Engine, alg: &Algebra, lambda: &Weight, j_max: u32) -> Result<SimpleComplexity> {
    let estimate = to_estimate(simple_outcome(engine, alg, lambda, j_max), j_max)?;
    Ok(SimpleComplexity { estimate, conjectured: 2 * atypicality(lambda) as u32, status: "experimental vs conjecture" })
}

pub fn c_n_simple(engine: &Engine, alg: &Algebra, lambda: &Weight, j_max: u32) -> Result<GrowthEstimate> {
    to_estimate(n_outcome(engine, alg, lambda, j_max), j_max)
}

/// `max{c(M), c_n} <= c(L) <= atypicality + c_n`.
pub fn sandwich_holds(c_verma: u32, c_n: u32, c_simple: u32, atypicality: u32) -> bool {
    c_verma.max(c_n) <= c_simple && c_simple <= atypicality + c_n
}

/// `sum over dominant regular nu of dim Ext^j(M(lambda), L(nu))`.
pub fn f_category_sum(engine: &Engine, alg: &Algebra, lambda: &Weight, j: u32) -> Result<u64> {
    alg.check(lambda)?;
    if !is_dominant_regular(lambda) {
        return Err(Error::Parse(format!("{lambda} is not dominant regular")));
    }
    let t = engine.table(alg, lambda, &upper_window(alg, lambda, j as u64 + alg.mn()))?;
    let i = t.index_of(lambda).expect("window contains its centre");
    Ok(t.p_row(i)
        .iter()
        .filter(|(nu, _)| is_dominant_regular(&t.weights()[*nu]))
        .map(|(_, p)| p.coeff(j as i32))
        .sum::<i64>()
        .max(0) as u64)
}

/// `binom(k + j - 1, k - 1)`, with the `k = 0` convention `[j == 0]`.
pub fn f_category_expected(k: u64, j: u64) -> u64 {
    if k == 0 {
        return (j == 0) as u64;
    }
    (1..k).fold(1u64, |acc, i| acc * (j + i) / i)
}
