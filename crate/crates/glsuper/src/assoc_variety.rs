//! Associated varieties of Verma modules through sets of odd roots.
//!
//! A point of the self-commuting cone is, up to the even Borel, of the form
//! `x_S` for a set `S` of mutually orthogonal linearly independent odd roots.
//! `S(M)` collects the sets whose `x_S` has nonzero homology on `M`. For a
//! Verma module only positive roots occur, and every test below reduces to
//! comparisons of labels: `(lambda + rho, eps_i - delta_j) = mu_i - mu_{m+j}`.
//!
//! Answers are exact for gl(1|n), gl(m|1), gl(2|2), and for any set whose
//! span restricts to one of those subalgebras. Elsewhere a set may come back
//! `Unknown`.

use crate::error::{Error, Result};
use crate::weights::{atypicality, is_dominant_regular, OddRoot, Weight};
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Mutually orthogonal odd roots: pairwise distinct left indices and
/// pairwise distinct right indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet(BTreeSet<OddRoot>);

impl RootSet {
    pub fn empty() -> Self {
        RootSet(BTreeSet::new())
    }

    pub fn new<I: IntoIterator<Item = OddRoot>>(roots: I) -> Result<Self> {
        let set: BTreeSet<OddRoot> = roots.into_iter().collect();
        let mut is = BTreeSet::new();
        let mut js = BTreeSet::new();
        for r in &set {
            if r.i == 0 || r.j == 0 || r.sign.abs() != 1 {
                return Err(Error::Parse(format!("malformed odd root {r}")));
            }
            if !is.insert(r.i) || !js.insert(r.j) {
                return Err(Error::Parse(format!("roots sharing an index are not orthogonal: {r}")));
            }
        }
        Ok(RootSet(set))
    }

    /// Positive roots given by 1-based index pairs.
    pub fn positive(pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(i, j)| OddRoot::positive(i, j)))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn roots(&self) -> impl Iterator<Item = &OddRoot> {
        self.0.iter()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|r| r.sign > 0)
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.0.is_subset(&other.0)
    }

    fn fits(&self, m: usize, n: usize) -> bool {
        self.0.iter().all(|r| r.i <= m && r.j <= n)
    }

    /// Parses `e1-d2,e2-d1`, with `-` prefixed roots such as `-(e1-d1)`
    /// for negative ones; `{}` or an empty string is the empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if t.is_empty() {
            return Ok(Self::empty());
        }
        let mut roots = Vec::new();
        for part in t.split(',') {
            let p = part.trim();
            let (sign, body) = match p.strip_prefix('-') {
                Some(rest) => (-1, rest.trim()),
                None => (1, p),
            };
            let body = body.trim_start_matches('(').trim_end_matches(')');
            let bad = || Error::Parse(format!("odd root {p:?}: expected e<i>-d<j>"));
            let (e, d) = body.split_once('-').ok_or_else(bad)?;
            let i = e.trim().strip_prefix('e').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
            let j = d.trim().strip_prefix('d').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
            roots.push(OddRoot { i, j, sign });
        }
        Self::new(roots)
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

/// A three-valued answer with the reason that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriBool {
    pub value: Truth,
    pub note: String,
}

impl TriBool {
    fn yes(note: impl Into<String>) -> Self {
        TriBool { value: Truth::Yes, note: note.into() }
    }

    fn no(note: impl Into<String>) -> Self {
        TriBool { value: Truth::No, note: note.into() }
    }

    fn unknown() -> Self {
        TriBool { value: Truth::Unknown, note: "no criterion applies".into() }
    }
}

/// All root sets of rank at most `max_rank` (clamped to `min(m, n)`),
/// ordered by rank and then lexicographically.
pub fn enumerate_s(m: usize, n: usize, max_rank: usize, positive_only: bool) -> Vec<RootSet> {
    let max_rank = max_rank.min(m.min(n));
    let signs: &[i8] = if positive_only { &[1] } else { &[1, -1] };
    let mut roots = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            for &sign in signs {
                roots.push(OddRoot { i, j, sign });
            }
        }
    }
    let mut out = vec![RootSet::empty()];
    let mut layer = vec![(RootSet::empty(), 0usize)];
    for _ in 0..max_rank {
        let mut next = Vec::new();
        for (s, from) in &layer {
            for (k, r) in roots.iter().enumerate().skip(*from) {
                if s.0.iter().all(|x| x.i != r.i && x.j != r.j) {
                    let mut t = s.clone();
                    t.0.insert(*r);
                    next.push((t, k + 1));
                }
            }
        }
        out.extend(next.iter().map(|(s, _)| s.clone()));
        layer = next;
    }
    out.sort_by(|a, b| a.rank().cmp(&b.rank()).then(a.cmp(b)));
    out
}

/// `x_S` as a pair of 0/1 blocks: `plus` (m x n) in the positive odd part and
/// `minus` (n x m) in the negative one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XRepresentative {
    pub plus: Vec<Vec<i64>>,
    pub minus: Vec<Vec<i64>>,
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..cols).map(|c| (0..inner).map(|k| row[k] * b[k][c]).sum()).collect()).collect()
}

impl XRepresentative {
    /// `plus * minus == 0` and `minus * plus == 0`, which together say
    /// `[x, x] = 0`.
    pub fn is_self_commuting(&self) -> bool {
        let zero = |mat: Vec<Vec<i64>>| mat.iter().flatten().all(|&v| v == 0);
        zero(matmul(&self.plus, &self.minus)) && zero(matmul(&self.minus, &self.plus))
    }
}

pub fn x_s_representative(m: usize, n: usize, s: &RootSet) -> Result<XRepresentative> {
    if !s.fits(m, n) {
        return Err(Error::Parse(format!("root set {s} does not fit gl({m}|{n})")));
    }
    let mut plus = vec![vec![0; n]; m];
    let mut minus = vec![vec![0; m]; n];
    for r in s.roots() {
        if r.sign > 0 {
            plus[r.i - 1][r.j - 1] = 1;
        } else {
            minus[r.j - 1][r.i - 1] = 1;
        }
    }
    Ok(XRepresentative { plus, minus })
}

/// Restriction to the subalgebra spanned by rows `a..=m` and columns
/// `1..=b`. Up to a common shift of all labels, which no criterion sees,
/// the labels of the restricted weight are the corresponding entries.
fn restrict(w: &Weight, s: &RootSet, a: usize, b: usize) -> (Weight, RootSet) {
    let w2 = Weight::new(w.left[a - 1..].to_vec(), w.right[..b].to_vec());
    let s2 = RootSet(s.roots().map(|r| OddRoot { i: r.i - a + 1, ..*r }).collect());
    (w2, s2)
}

/// Some atypical `(p, q)` with `i <= p`, `j >= q`, `mu_i >= mu_p` and
/// `mu_{m+q} <= mu_{m+j}`. With `(p, q) = (i, j)` this is plain atypicality.
fn shifted_atypical(w: &Weight, r: &OddRoot) -> Option<(usize, usize)> {
    let (i, j) = (r.i - 1, r.j - 1);
    w.atypical_pairs()
        .into_iter()
        .find(|&(p, q)| i <= p && j >= q && w.left[i] >= w.left[p] && w.right[q] <= w.right[j])
        .map(|(p, q)| (p + 1, q + 1))
}

/// gl(1|n): the root `e1-d_i` belongs iff some atypical index `p <= i`
/// exists and `mu_1 <= mu_{1+i}`.
fn one_row(w: &Weight, r: &OddRoot) -> TriBool {
    let atypical_before = w.right[..r.j].contains(&w.left[0]);
    if atypical_before && w.left[0] <= w.right[r.j - 1] {
        TriBool::yes("single even row: atypical column at or before the root, labels increase")
    } else {
        TriBool::no("single even row: criterion fails")
    }
}

/// gl(m|1): the root `e_i-d1` belongs iff some atypical index `p >= i`
/// exists and `mu_i >= mu_{m+1}`.
fn one_column(w: &Weight, r: &OddRoot) -> TriBool {
    let c = w.right[0];
    let atypical_after = w.left[r.i - 1..].contains(&c);
    if atypical_after && w.left[r.i - 1] >= c {
        TriBool::yes("single odd column: atypical row at or after the root, labels decrease")
    } else {
        TriBool::no("single odd column: criterion fails")
    }
}

const ALPHA: (usize, usize) = (2, 1);
const BETA: (usize, usize) = (1, 1);
const GAMMA: (usize, usize) = (2, 2);
const DELTA: (usize, usize) = (1, 2);

/// The complete gl(2|2) answer for a positive set.
fn two_by_two(w: &Weight, s: &RootSet) -> TriBool {
    let k = atypicality(w);
    if s.rank() > k {
        return TriBool::no("rank exceeds atypicality");
    }
    if k == 1 {
        let r = s.roots().next().expect("rank 1");
        return match shifted_atypical(w, r) {
            Some(_) => TriBool::yes("gl(2|2), atypicality 1: reachable from the atypical root"),
            None => TriBool::no("gl(2|2), atypicality 1: not reachable from the atypical root"),
        };
    }
    let pairs: BTreeSet<(usize, usize)> = s.roots().map(|r| (r.i, r.j)).collect();
    let allowed: &[(usize, usize)];
    let note;
    let (l, r) = (&w.left, &w.right);
    if l[0] == l[1] || is_dominant_regular(w) {
        return TriBool::yes("gl(2|2), atypicality 2: every orthogonal set occurs");
    } else if l == r {
        allowed = &[BETA, GAMMA, DELTA];
        note = "gl(2|2), atypicality 2, regular, neither dominant nor antidominant";
    } else {
        allowed = &[ALPHA, DELTA];
        note = "gl(2|2), atypicality 2, antidominant";
    }
    // the only orthogonal pair inside each allowed list is the listed one
    if pairs.iter().all(|p| allowed.contains(p)) {
        TriBool::yes(note)
    } else {
        TriBool::no(note)
    }
}

/// Some `h`, weakly decreasing on both sides, with `h_i - h'_j = +1` on the
/// roots of `plus` and `-1` on those of `minus`. Solved as a system of
/// difference constraints.
fn splitting_exists(m: usize, n: usize, plus: &[OddRoot], minus: &[OddRoot]) -> bool {
    // variables 0..m for the left side, m..m+n for the right side;
    // an edge (u, v, c) encodes x_v - x_u <= c
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for i in 0..m.saturating_sub(1) {
        edges.push((i, i + 1, 0));
    }
    for j in 0..n.saturating_sub(1) {
        edges.push((m + j, m + j + 1, 0));
    }
    for (roots, c) in [(plus, 1i64), (minus, -1)] {
        for r in roots {
            let (u, v) = (r.i - 1, m + r.j - 1);
            edges.push((v, u, c));
            edges.push((u, v, -c));
        }
    }
    let mut dist = vec![0i64; m + n];
    for _ in 0..=m + n {
        let mut changed = false;
        for &(u, v, c) in &edges {
            if dist[u] + c < dist[v] {
                dist[v] = dist[u] + c;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
    false
}

fn decide(w: &Weight, s: &RootSet, memo: &mut BTreeMap<(Weight, RootSet), TriBool>) -> TriBool {
    if let Some(t) = memo.get(&(w.clone(), s.clone())) {
        return t.clone();
    }
    let t = decide_uncached(w, s, memo);
    memo.insert((w.clone(), s.clone()), t.clone());
    t
}

fn decide_uncached(w: &Weight, s: &RootSet, memo: &mut BTreeMap<(Weight, RootSet), TriBool>) -> TriBool {
    let (m, n) = (w.left.len(), w.right.len());
    if s.is_empty() {
        return TriBool::yes("zero element");
    }
    if !s.is_positive() {
        return TriBool::no("Verma modules are free over the negative odd part");
    }
    let k = atypicality(w);
    if k == 0 {
        return TriBool::no("typical weight");
    }
    if s.rank() > k {
        return TriBool::no("rank exceeds atypicality");
    }
    if m == n && k == n && is_dominant_regular(w) {
        return TriBool::yes("dominant regular of maximal atypicality");
    }
    let a = s.roots().map(|r| r.i).min().expect("nonempty");
    let b = s.roots().map(|r| r.j).max().expect("nonempty");
    if (a, b) != (1, n) {
        let (w2, s2) = restrict(w, s, a, b);
        let inner = decide(&w2, &s2, memo);
        let note = if atypicality(&w2) == 0 {
            format!("restriction to gl({}|{b}) is typical", m - a + 1)
        } else {
            format!("restricted to gl({}|{b}): {}", m - a + 1, inner.note)
        };
        return TriBool { value: inner.value, note };
    }
    if m == 1 {
        return one_row(w, s.roots().next().expect("rank 1"));
    }
    if n == 1 {
        return one_column(w, s.roots().next().expect("rank 1"));
    }
    if (m, n) == (2, 2) {
        return two_by_two(w, s);
    }
    if s.rank() == 1 {
        let r = s.roots().next().expect("rank 1");
        match shifted_atypical(w, r) {
            Some((p, q)) if (p, q) == (r.i, r.j) => return TriBool::yes("atypical root"),
            Some((p, q)) => return TriBool::yes(format!("reachable from the atypical root e{p}-d{q}")),
            None => return TriBool::unknown(),
        }
    }
    // a split S = S_1 + S_{-1} graded by some h forces S_{-1} whenever S occurs
    let roots: Vec<OddRoot> = s.roots().copied().collect();
    for mask in 1..(1u32 << roots.len()) - 1 {
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        for (b, r) in roots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                minus.push(*r)
            } else {
                plus.push(*r)
            }
        }
        if !splitting_exists(m, n, &plus, &minus) {
            continue;
        }
        let sub = RootSet(minus.iter().copied().collect());
        if decide(w, &sub, memo).value == Truth::No {
            return TriBool::no(format!("graded split leaves {sub}, which does not occur"));
        }
    }
    TriBool::unknown()
}

/// Membership of an arbitrary root set for `M(lambda)`.
pub fn membership(w: &Weight, s: &RootSet) -> Result<TriBool> {
    if !s.fits(w.left.len(), w.right.len()) {
        return Err(Error::Parse(format!("root set {s} does not fit weight {w}")));
    }
    Ok(decide(w, s, &mut BTreeMap::new()))
}

/// Membership of the singleton `{alpha}` for `M(lambda)`.
pub fn singleton_membership(w: &Weight, alpha: &OddRoot) -> Result<TriBool> {
    membership(w, &RootSet::new([*alpha])?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "sets", rename_all = "snake_case")]
pub enum VarietyAnswer {
    Exact(Vec<RootSet>),
    Partial(Vec<(RootSet, TriBool)>),
}

impl VarietyAnswer {
    pub fn is_exact(&self) -> bool {
        matches!(self, VarietyAnswer::Exact(_))
    }

    /// The sets known to occur.
    pub fn members(&self) -> Vec<RootSet> {
        match self {
            VarietyAnswer::Exact(v) => v.clone(),
            VarietyAnswer::Partial(v) => {
                v.iter().filter(|(_, t)| t.value == Truth::Yes).map(|(s, _)| s.clone()).collect()
            }
        }
    }
}

/// `S(M(lambda))` over all positive root sets. Exact whenever every set is
/// decided, which always happens for gl(1|n), gl(m|1) and gl(2|2).
pub fn s_of_verma(w: &Weight) -> VarietyAnswer {
    let (m, n) = (w.left.len(), w.right.len());
    let mut memo = BTreeMap::new();
    let decided: Vec<(RootSet, TriBool)> = enumerate_s(m, n, m.min(n), true)
        .into_iter()
        .map(|s| {
            let t = decide(w, &s, &mut memo);
            (s, t)
        })
        .collect();
    if decided.iter().all(|(_, t)| t.value != Truth::Unknown) {
        VarietyAnswer::Exact(decided.into_iter().filter(|(_, t)| t.value == Truth::Yes).map(|(s, _)| s).collect())
    } else {
        VarietyAnswer::Partial(decided)
    }
}

/// `S(L(lambda))` where it is known: `{0}` for typical weights. Atypical
/// simples only get the rank bound.
pub fn s_of_simple(w: &Weight) -> VarietyAnswer {
    let (m, n) = (w.left.len(), w.right.len());
    let k = atypicality(w);
    if k == 0 {
        return VarietyAnswer::Exact(vec![RootSet::empty()]);
    }
    VarietyAnswer::Partial(
        enumerate_s(m, n, m.min(n), false)
            .into_iter()
            .map(|s| {
                let t = if s.is_empty() {
                    TriBool::yes("zero element")
                } else if s.rank() > k {
                    TriBool::no("rank exceeds atypicality")
                } else {
                    TriBool::unknown()
                };
                (s, t)
            })
            .collect(),
    )
}

/// The isomorphism gl(1|n) -> gl(n|1) on labels: `(a|b_1..b_n)` goes to
/// `(b_n..b_1|a)`, and `e1-d_i` to `e_{n+1-i}-d1`.
pub fn flip(w: &Weight) -> Weight {
    let mut left = w.right.clone();
    left.reverse();
    let mut right = w.left.clone();
    right.reverse();
    Weight::new(left, right)
}

pub fn flip_root(m: usize, n: usize, r: &OddRoot) -> OddRoot {
    OddRoot { i: n + 1 - r.j, j: m + 1 - r.i, sign: r.sign }
}

/// Pairs `(S, T)` with `T` a proper subset of an occurring `S` that does not
/// occur. Empty on every computed case so far; whether it is always empty is
/// open, so this is only ever reported, never used to decide membership.
pub fn subset_closure_scan(answer: &VarietyAnswer) -> Vec<(RootSet, RootSet)> {
    let VarietyAnswer::Exact(sets) = answer else {
        return Vec::new();
    };
    let present: BTreeSet<&RootSet> = sets.iter().collect();
    let mut out = Vec::new();
    for s in sets {
        let roots: Vec<OddRoot> = s.roots().copied().collect();
        for mask in 0..(1u32 << roots.len()) - 1 {
            let t = RootSet(roots.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, r)| *r).collect());
            if !present.contains(&t) {
                out.push((s.clone(), t));
            }
        }
    }
    out
}
