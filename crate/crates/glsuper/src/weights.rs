//! Integral weights of gl(m|n) and sl(m|n) in label coordinates.
//!
//! A weight is stored as its shifted labels `mu_1..mu_m | mu_{m+1}..mu_{m+n}`.
//! The odd root `eps_i - delta_j` is atypical exactly when `mu_i == mu_{m+j}`,
//! and all of the order theory below is phrased on labels.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Gl,
    Sl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct Algebra {
    pub kind: AlgebraKind,
    pub m: usize,
    pub n: usize,
}

impl Algebra {
    pub fn new(kind: AlgebraKind, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidAlgebra(format!("need m, n >= 1, got ({m}|{n})")));
        }
        if kind == AlgebraKind::Sl && m == n {
            return Err(Error::InvalidAlgebra(format!("sl({m}|{n}) is excluded; use gl({m}|{n})")));
        }
        Ok(Algebra { kind, m, n })
    }

    pub fn gl(m: usize, n: usize) -> Result<Self> {
        Self::new(AlgebraKind::Gl, m, n)
    }

    pub fn sl(m: usize, n: usize) -> Result<Self> {
        Self::new(AlgebraKind::Sl, m, n)
    }

    /// Length of the longest element of the even Weyl group `S_m x S_n`.
    pub fn l_w0(&self) -> u64 {
        (self.m * (self.m - 1) / 2 + self.n * (self.n - 1) / 2) as u64
    }

    pub fn mn(&self) -> u64 {
        (self.m * self.n) as u64
    }

    /// Checks that `w` has `m` left labels and `n` right labels.
    pub fn check(&self, w: &Weight) -> Result<()> {
        if w.left.len() != self.m || w.right.len() != self.n {
            return Err(Error::ShapeMismatch { weight: w.to_string(), algebra: self.to_string() });
        }
        Ok(())
    }

    /// Parses `gl(2|1)` or `sl(3|1)`.
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            AlgebraKind::Gl => "gl",
            AlgebraKind::Sl => "sl",
        };
        write!(f, "{k}({}|{})", self.m, self.n)
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected gl(m|n) or sl(m|n), got {s:?}"));
        let (kind, rest) = if let Some(r) = s.strip_prefix("gl") {
            (AlgebraKind::Gl, r)
        } else if let Some(r) = s.strip_prefix("sl") {
            (AlgebraKind::Sl, r)
        } else {
            return Err(bad());
        };
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (a, b) = inner.split_once('|').ok_or_else(bad)?;
        let m = a.trim().parse().map_err(|_| bad())?;
        let n = b.trim().parse().map_err(|_| bad())?;
        Algebra::new(kind, m, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

impl Weight {
    pub fn new(left: Vec<i64>, right: Vec<i64>) -> Self {
        Weight { left, right }
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> + '_ {
        self.left.iter().chain(self.right.iter()).copied()
    }

    pub fn min_label(&self) -> Option<i64> {
        self.labels().min()
    }

    pub fn max_label(&self) -> Option<i64> {
        self.labels().max()
    }

    /// Adds `t` to every label; this is the identification used for sl.
    pub fn shifted(&self, t: i64) -> Weight {
        Weight { left: self.left.iter().map(|x| x + t).collect(), right: self.right.iter().map(|x| x + t).collect() }
    }

    /// The signed multiset `sum e_left - sum e_right`, zero counters dropped.
    pub fn signature(&self) -> BTreeMap<i64, i64> {
        let mut c = BTreeMap::new();
        for &x in &self.left {
            *c.entry(x).or_insert(0) += 1;
        }
        for &x in &self.right {
            *c.entry(x).or_insert(0) -= 1;
        }
        c.retain(|_, v| *v != 0);
        c
    }

    /// Atypical pairs `(i, j)` (0-based) with `left[i] == right[j]`.
    pub fn atypical_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &a) in self.left.iter().enumerate() {
            for (j, &b) in self.right.iter().enumerate() {
                if a == b {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", j(&self.left), j(&self.right))
    }
}

impl FromStr for Weight {
    type Err = Error;
    /// Accepts `a,b,c|d` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        let (l, r) = t.split_once('|').ok_or_else(|| Error::Parse(format!("missing '|' in weight {s:?}")))?;
        let side = |part: &str| -> Result<Vec<i64>> {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("non-integer label {x:?} in {s:?}"))))
                .collect()
        };
        Ok(Weight { left: side(l)?, right: side(r)? })
    }
}

/// Odd root `sign * (eps_i - delta_j)`, indices 1-based as in the usual notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OddRoot {
    pub i: usize,
    pub j: usize,
    pub sign: i8,
}

impl OddRoot {
    pub fn positive(i: usize, j: usize) -> Self {
        OddRoot { i, j, sign: 1 }
    }

    /// `(lambda + rho, eps_i - delta_j) = mu_i - mu_{m+j}` vanishes.
    pub fn is_atypical_for(&self, w: &Weight) -> bool {
        w.left[self.i - 1] == w.right[self.j - 1]
    }
}

impl fmt::Display for OddRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        write!(f, "{s}(e{}-d{})", self.i, self.j)
    }
}

/// A highest weight coefficient given as `numerator / denominator`.
pub type Rational = (i64, i64);

fn integral(r: Rational) -> Result<i64> {
    let (p, q) = r;
    if q == 0 || p % q != 0 {
        return Err(Error::NonIntegralWeight(format!("{p}/{q}")));
    }
    Ok(p / q)
}

/// Coefficients in the basis `eps_1..eps_m, delta_1..delta_n` to labels.
pub fn labels_from_highest_weight(coeffs: &[Rational], alg: &Algebra) -> Result<Weight> {
    if coeffs.len() != alg.m + alg.n {
        return Err(Error::Parse(format!("expected {} coefficients, got {}", alg.m + alg.n, coeffs.len())));
    }
    let m = alg.m as i64;
    let mut left = Vec::with_capacity(alg.m);
    for (k, &c) in coeffs[..alg.m].iter().enumerate() {
        left.push(integral(c)? - (k as i64 + 1));
    }
    let mut right = Vec::with_capacity(alg.n);
    for (k, &c) in coeffs[alg.m..].iter().enumerate() {
        let j = k as i64 + 1;
        right.push(-integral(c)? - (m - j + 1));
    }
    Ok(Weight { left, right })
}

/// Inverse of [`labels_from_highest_weight`].
pub fn highest_weight_from_labels(w: &Weight, alg: &Algebra) -> Result<Vec<i64>> {
    alg.check(w)?;
    let m = alg.m as i64;
    let mut out: Vec<i64> = w.left.iter().enumerate().map(|(k, &x)| x + k as i64 + 1).collect();
    out.extend(w.right.iter().enumerate().map(|(k, &x)| -x - (m - (k as i64 + 1) + 1)));
    Ok(out)
}

/// Size of a maximal matching of equal labels across the two sides.
pub fn atypicality(w: &Weight) -> usize {
    let mut left: BTreeMap<i64, usize> = BTreeMap::new();
    for &x in &w.left {
        *left.entry(x).or_insert(0) += 1;
    }
    let mut right: BTreeMap<i64, usize> = BTreeMap::new();
    for &x in &w.right {
        *right.entry(x).or_insert(0) += 1;
    }
    left.iter().map(|(c, &a)| a.min(right.get(c).copied().unwrap_or(0))).sum()
}

/// For sl, the unique shift of `w2` that makes it gl-linked to `w1`.
fn sl_alignment(w1: &Weight, w2: &Weight) -> Option<i64> {
    let s1 = w1.signature();
    let s2 = w2.signature();
    let (&k1, _) = s1.iter().next()?;
    let (&k2, _) = s2.iter().next()?;
    let t = k1 - k2;
    (w2.shifted(t).signature() == s1).then_some(t)
}

/// Brings `w2` to the gl representative in the block of `w1`, if any.
pub fn align(alg: &Algebra, w1: &Weight, w2: &Weight) -> Option<Weight> {
    match alg.kind {
        AlgebraKind::Gl => (w1.signature() == w2.signature()).then(|| w2.clone()),
        AlgebraKind::Sl => {
            if w1.signature() == w2.signature() {
                return Some(w2.clone());
            }
            sl_alignment(w1, w2).map(|t| w2.shifted(t))
        }
    }
}

/// Same block. For sl this is tested modulo the simultaneous shift.
pub fn linked(alg: &Algebra, w1: &Weight, w2: &Weight) -> bool {
    align(alg, w1, w2).is_some()
}

/// Removes a maximal matching; returns the core (both sides sorted
/// decreasing) and the number `k` of removed pairs.
pub fn core(w: &Weight) -> (Weight, usize) {
    let mut right = w.right.clone();
    let mut left = Vec::new();
    let mut k = 0;
    for &x in &w.left {
        if let Some(p) = right.iter().position(|&y| y == x) {
            right.remove(p);
            k += 1;
        } else {
            left.push(x);
        }
    }
    left.sort_unstable_by(|a, b| b.cmp(a));
    right.sort_unstable_by(|a, b| b.cmp(a));
    (Weight { left, right }, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominanceClass {
    DominantRegular,
    Antidominant,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dominance {
    /// Reported class; when both predicates hold (rank one on both sides)
    /// dominant_regular wins.
    pub class: DominanceClass,
    pub dominant_regular: bool,
    pub antidominant: bool,
    pub regular: bool,
}

/// No even move lowers the weight on the left: left weakly increasing.
fn left_antidominant(w: &Weight) -> bool {
    w.left.windows(2).all(|p| p[0] <= p[1])
}

fn right_antidominant(w: &Weight) -> bool {
    w.right.windows(2).all(|p| p[0] >= p[1])
}

pub fn is_dominant_regular(w: &Weight) -> bool {
    w.left.windows(2).all(|p| p[0] > p[1]) && w.right.windows(2).all(|p| p[0] < p[1])
}

pub fn is_antidominant(w: &Weight) -> bool {
    left_antidominant(w) && right_antidominant(w)
}

pub fn is_regular(w: &Weight) -> bool {
    let distinct = |v: &[i64]| v.iter().collect::<HashSet<_>>().len() == v.len();
    distinct(&w.left) && distinct(&w.right)
}

pub fn dominance_class(w: &Weight) -> Dominance {
    let dominant_regular = is_dominant_regular(w);
    let antidominant = is_antidominant(w);
    let class = if dominant_regular {
        DominanceClass::DominantRegular
    } else if antidominant {
        DominanceClass::Antidominant
    } else {
        DominanceClass::Neither
    };
    Dominance { class, dominant_regular, antidominant, regular: is_regular(w) }
}

/// Weights obtained from `w` by one even reflection that lowers it.
pub fn even_lowering_moves(w: &Weight) -> Vec<Weight> {
    let mut out = Vec::new();
    let m = w.left.len();
    for i in 0..m {
        for j in i + 1..m {
            if w.left[i] > w.left[j] {
                let mut v = w.clone();
                v.left.swap(i, j);
                out.push(v);
            }
        }
    }
    let n = w.right.len();
    for i in 0..n {
        for j in i + 1..n {
            if w.right[i] < w.right[j] {
                let mut v = w.clone();
                v.right.swap(i, j);
                out.push(v);
            }
        }
    }
    out
}

/// Weights obtained by subtracting an atypical odd root.
pub fn odd_lowering_moves(w: &Weight) -> Vec<Weight> {
    w.atypical_pairs()
        .into_iter()
        .map(|(i, j)| {
            let mut v = w.clone();
            v.left[i] -= 1;
            v.right[j] -= 1;
            v
        })
        .collect()
}

/// Generators of the Bruhat order below `w` (not only covers), deduplicated
/// and sorted.
pub fn bruhat_lower_moves(w: &Weight) -> Vec<Weight> {
    let set: BTreeSet<Weight> = even_lowering_moves(w).into_iter().chain(odd_lowering_moves(w)).collect();
    set.into_iter().collect()
}

/// The inverse generators: weights `v` with `w` among the lowering moves of `v`.
pub fn bruhat_raising_moves(w: &Weight) -> Vec<Weight> {
    let mut set = BTreeSet::new();
    let m = w.left.len();
    for i in 0..m {
        for j in i + 1..m {
            if w.left[i] < w.left[j] {
                let mut v = w.clone();
                v.left.swap(i, j);
                set.insert(v);
            }
        }
    }
    let n = w.right.len();
    for i in 0..n {
        for j in i + 1..n {
            if w.right[i] > w.right[j] {
                let mut v = w.clone();
                v.right.swap(i, j);
                set.insert(v);
            }
        }
    }
    for (i, j) in w.atypical_pairs() {
        let mut v = w.clone();
        v.left[i] += 1;
        v.right[j] += 1;
        set.insert(v);
    }
    set.into_iter().collect()
}

/// `lo <= hi` in the super Bruhat order, by pruned downward search.
///
/// Both weights are gl label vectors; callers working in sl should align
/// them first (see [`align`]). Errors with `NotLinked` across blocks.
pub fn bruhat_leq(lo: &Weight, hi: &Weight) -> Result<bool> {
    if lo.signature() != hi.signature() {
        return Err(Error::NotLinked(lo.to_string(), hi.to_string()));
    }
    Ok(bruhat_leq_linked(lo, hi))
}

/// Same as [`bruhat_leq`] for weights already known to be linked.
pub fn bruhat_leq_linked(lo: &Weight, hi: &Weight) -> bool {
    if lo == hi {
        return true;
    }
    let floor = match lo.min_label() {
        Some(x) => x,
        None => return false,
    };
    let target_z = z_grade(lo);
    if z_grade(hi) < target_z {
        return false;
    }
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut stack = vec![hi.clone()];
    seen.insert(hi.clone());
    while let Some(w) = stack.pop() {
        for v in bruhat_lower_moves(&w) {
            if v.min_label().is_some_and(|x| x < floor) || z_grade(&v) < target_z {
                continue;
            }
            if &v == lo {
                return true;
            }
            if seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    false
}

/// Elements of the lowering move set of `w` that are maximal among them,
/// i.e. the honest lower covers.
pub fn bruhat_lower_covers(w: &Weight) -> Vec<Weight> {
    let moves = bruhat_lower_moves(w);
    moves.iter().filter(|mu| !moves.iter().any(|nu| nu != *mu && bruhat_leq_linked(mu, nu))).cloned().collect()
}

/// Sum of the left labels.
pub fn z_grade(w: &Weight) -> i64 {
    w.left.iter().sum()
}
