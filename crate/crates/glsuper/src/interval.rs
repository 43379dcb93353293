//! Finite intervals of labels, the embedding `phi_I` into a sequence of
//! length `m + nN`, and the length function it induces.

use crate::error::{Error, Result};
use crate::perm::longest_with_image;
use crate::weights::{bruhat_leq, core, is_dominant_regular, Weight};
use serde::{Deserialize, Serialize};
use std::fmt;

/// `I = [a, b]`. Labels are allowed in `I+ = [a, b + 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub a: i64,
    pub b: i64,
}

impl Interval {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a > b {
            return Err(Error::Parse(format!("empty interval [{a}, {b}]")));
        }
        Ok(Interval { a, b })
    }

    /// Number of columns `N = b - a + 1`.
    pub fn width(&self) -> usize {
        (self.b - self.a + 1) as usize
    }

    pub fn contains_label(&self, x: i64) -> bool {
        self.a <= x && x <= self.b + 1
    }

    pub fn contains(&self, w: &Weight) -> bool {
        w.labels().all(|x| self.contains_label(x))
    }

    pub fn enlarged(&self, by: i64) -> Interval {
        Interval { a: self.a - by, b: self.b + by }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { a: self.a.min(other.a), b: self.b.max(other.b) }
    }

    /// Parses `a:b` or `[a,b]`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = t
            .split_once(',')
            .or_else(|| t.split_once(':'))
            .ok_or_else(|| Error::Parse(format!("bad interval {s:?}")))?;
        let p = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad interval {s:?}")));
        Interval::new(p(a)?, p(b)?)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// `[min - 1, max + 1]` over all labels of `ws`.
pub fn minimal_interval<'a, I: IntoIterator<Item = &'a Weight>>(ws: I) -> Result<Interval> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for w in ws {
        for x in w.labels() {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    if lo > hi {
        return Err(Error::Parse("minimal interval of an empty label set".into()));
    }
    Ok(Interval { a: lo - 1, b: hi + 1 })
}

/// Left labels, then for every right label `beta` the column
/// `b+1, b, .., a` with `beta` left out.
pub fn phi(w: &Weight, i: &Interval) -> Result<Vec<i64>> {
    if !i.contains(w) {
        return Err(Error::IntervalTooSmall { weight: w.to_string(), a: i.a, b: i.b });
    }
    let mut out = w.left.clone();
    for &beta in &w.right {
        out.extend((i.a..=i.b + 1).rev().filter(|&x| x != beta));
    }
    debug_assert!(levi_dominant(&out, w.left.len(), i.width()));
    Ok(out)
}

/// Every right column of a phi image is strictly decreasing.
pub fn levi_dominant(seq: &[i64], m: usize, width: usize) -> bool {
    seq[m..].chunks(width).all(|c| c.windows(2).all(|p| p[0] > p[1]))
}

/// Length of the longest permutation realizing `phi(w)`.
pub fn phi_length(w: &Weight, i: &Interval) -> Result<usize> {
    Ok(longest_with_image(&phi(w, i)?).length())
}

/// `l(hi, lo)` computed inside a given interval; no comparability check.
pub fn length_fn_in(hi: &Weight, lo: &Weight, i: &Interval) -> Result<i64> {
    Ok(phi_length(lo, i)? as i64 - phi_length(hi, i)? as i64)
}

/// The length function on comparable pairs `lo <= hi`.
pub fn length_fn(hi: &Weight, lo: &Weight) -> Result<u64> {
    if !bruhat_leq(lo, hi)? {
        return Err(Error::NotComparable { hi: hi.to_string(), lo: lo.to_string() });
    }
    let i = minimal_interval([hi, lo])?;
    let l = length_fn_in(hi, lo, &i)?;
    if l < 0 {
        return Err(Error::Invariant(format!("negative length between {hi} and {lo}")));
    }
    Ok(l as u64)
}

/// `l(hi, lo)` without building the long `phi` sequences.
pub fn length_fn_fast(hi: &Weight, lo: &Weight) -> i64 {
    inversion_statistic(lo) - inversion_statistic(hi)
}

/// `#{i<j : t_i <= t_j}` of `phi(w)` minus a constant that depends only on
/// `m`, `n` and the interval.
///
/// A left label `x` against the column of `beta` sees `(b+2-x) - [beta >= x]`
/// entries `>= x`. Two columns `t < u` contribute the full-column count,
/// minus `b+2-beta_t` and `beta_u-a+1` for the omitted entries, plus
/// `[beta_t <= beta_u]` for the pair removed twice.
pub fn inversion_statistic(w: &Weight) -> i64 {
    let (l, r) = (&w.left, &w.right);
    let mut s = 0i64;
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            s += (l[i] <= l[j]) as i64;
        }
    }
    for &x in l {
        for &beta in r {
            s -= x + (beta >= x) as i64;
        }
    }
    for t in 0..r.len() {
        for u in t + 1..r.len() {
            s += r[t] - r[u] + (r[t] <= r[u]) as i64;
        }
    }
    s
}

/// Chain distance between two dominant regular weights of one block,
/// counted along the weight line with core labels removed: the atypical
/// labels of each weight are sorted, and each pair contributes the number
/// of non-core integers it moves across. This is the length used for the
/// finite-dimensional category and generally differs from `length_fn`.
///
/// `None` unless both weights are dominant regular with equal cores.
pub fn dominant_length(hi: &Weight, lo: &Weight) -> Option<i64> {
    if !is_dominant_regular(hi) || !is_dominant_regular(lo) {
        return None;
    }
    let (ch, _) = core(hi);
    if ch != core(lo).0 {
        return None;
    }
    let cores: Vec<i64> = ch.labels().collect();
    let pos = |x: i64| x - cores.iter().filter(|&&c| c < x).count() as i64;
    let matched = |w: &Weight| {
        let mut v: Vec<i64> = w.left.iter().copied().filter(|x| w.right.contains(x)).collect();
        v.sort_unstable();
        v
    };
    let (a, b) = (matched(hi), matched(lo));
    Some(a.iter().zip(&b).map(|(&x, &y)| pos(x) - pos(y)).sum())
}
