//! Kazhdan-Lusztig data of a block restricted to an interval.
//!
//! For a block `xi` and interval `I` the weights of `xi` with labels in `I+`
//! index the standard basis of a weight space of `V^m (x) W^n` for the
//! quantum group of `gl_{N+1}`; label `c` becomes index `c - a`. The
//! canonical basis `b_mu = v_mu + sum d_{mu,lambda} v_lambda` with
//! `d in qZ[q]` gives the matrix `D`, and `P(-q) = D^{-1}`.
//!
//! The same numbers are reachable through the embedding `phi_I` into the
//! antispherical module of `S_{m+Nn}`; [`d_via_antispherical`] implements
//! that route for small ranks and the test suite checks both agree.

use crate::error::{Error, Result};
use crate::interval::{phi, Interval};
use crate::kl::AntisphericalModule;
use crate::par::Exec;
use crate::perm::{dominant_sort, Permutation};
use crate::poly::LaurentPoly;
use crate::tensor::TensorSpace;
use crate::weights::{z_grade, Algebra, Weight};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Bumped whenever the numbers a table would contain could change.
pub const FORMAT_VERSION: u32 = 1;

/// One line describing the pinned conventions; stored in every table.
pub const CONVENTION: &str =
    "tensor V^m W^n, label c -> index c-a, d in qZ[q], P(-q)=D^-1, phi_I longest coset representative";

/// Default cap on the number of block weights in one table.
pub const DEFAULT_MAX_WEIGHTS: usize = 6000;

/// All weights linked to `seed` with every label in `I+`, in lexicographic
/// order.
pub fn block_weights(seed: &Weight, interval: &Interval) -> Vec<Weight> {
    let m = seed.left.len();
    let n = seed.right.len();
    let lo = interval.a;
    let hi = interval.b + 1;
    let chi = seed.signature();
    if chi.keys().any(|&c| c < lo || c > hi) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut left = vec![lo; m];
    loop {
        // right multiset = left multiset - chi
        let mut need: BTreeMap<i64, i64> = BTreeMap::new();
        for &x in &left {
            *need.entry(x).or_insert(0) += 1;
        }
        for (&c, &v) in &chi {
            *need.entry(c).or_insert(0) -= v;
        }
        if need.values().all(|&v| v >= 0) && need.values().sum::<i64>() == n as i64 {
            let mut counts: Vec<(i64, i64)> = need.into_iter().filter(|t| t.1 > 0).collect();
            let mut cur = Vec::with_capacity(n);
            arrangements(&mut counts, n, &mut cur, &mut |right| {
                out.push(Weight::new(left.clone(), right.to_vec()));
            });
        }
        // odometer
        let mut k = m;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if left[k] < hi {
                left[k] += 1;
                for x in left.iter_mut().skip(k + 1) {
                    *x = lo;
                }
                break;
            }
        }
    }
}

fn arrangements(counts: &mut Vec<(i64, i64)>, n: usize, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if cur.len() == n {
        f(cur);
        return;
    }
    for k in 0..counts.len() {
        if counts[k].1 > 0 {
            counts[k].1 -= 1;
            cur.push(counts[k].0);
            arrangements(counts, n, cur, f);
            cur.pop();
            counts[k].1 += 1;
        }
    }
}

/// Statistic that strictly drops along every even lowering move.
fn even_height(w: &Weight) -> i64 {
    let mut s = 0;
    for i in 0..w.left.len() {
        for j in i + 1..w.left.len() {
            s += (w.left[i] > w.left[j]) as i64;
        }
    }
    for i in 0..w.right.len() {
        for j in i + 1..w.right.len() {
            s += (w.right[i] < w.right[j]) as i64;
        }
    }
    s
}

/// Sort key giving a linear extension of the Bruhat order (lowest first).
pub fn height(w: &Weight) -> (i64, i64) {
    (z_grade(w), even_height(w))
}

/// Rows are `(position, coefficient)` lists in increasing position.
type Rows = Vec<Vec<(usize, LaurentPoly)>>;

/// Canonical basis from the bar involution written in positions of a
/// linear extension: `psi_rows[mu]` lists the off-diagonal part of
/// `psi(v_mu)`, which must live at positions `> mu`.
///
/// Returns `(d, pt)` where `d[mu]` is the off-diagonal part of `b_mu` and
/// `pt[mu]` the full row `mu` of `D^{-1}`.
fn solve_canonical(psi_rows: &Rows) -> Result<(Rows, Rows)> {
    let k = psi_rows.len();
    let mut d: Rows = Vec::with_capacity(k);
    for (mu, row) in psi_rows.iter().enumerate() {
        if row.iter().any(|&(l, _)| l <= mu) {
            return Err(Error::Invariant(format!("bar involution not triangular at position {mu}")));
        }
        // acc[lambda] = sum_{kappa < lambda} bar(d_{mu,kappa}) r_{lambda,kappa}
        let mut acc: BTreeMap<usize, LaurentPoly> = row.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((lam, a)) = acc.pop_first() {
            if a.is_zero() {
                continue;
            }
            if !a.is_bar_antisymmetric() {
                return Err(Error::Invariant(format!("non-antisymmetric correction {a} at ({mu},{lam})")));
            }
            let c = a.positive_part();
            let cb = c.bar();
            for (nu, r) in &psi_rows[lam] {
                acc.entry(*nu).or_default().add_product(&cb, r);
            }
            out.push((lam, c));
        }
        d.push(out);
    }
    let mut pt: Rows = vec![Vec::new(); k];
    for mu in (0..k).rev() {
        let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        acc.insert(mu, LaurentPoly::one());
        for (lam, c) in &d[mu] {
            let neg = -c;
            for (nu, p) in &pt[*lam] {
                acc.entry(*nu).or_default().add_product(&neg, p);
            }
        }
        pt[mu] = acc.into_iter().filter(|t| !t.1.is_zero()).collect();
    }
    Ok((d, pt))
}

/// `D` and `P` for one block inside one interval.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct KlTable {
    pub algebra: Algebra,
    pub interval: Interval,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    /// `d[mu]`: `(lambda, d_{mu,lambda})` including the diagonal.
    d: Rows,
    /// `p[lambda]`: `(nu, p_{lambda,nu})` including the diagonal.
    p: Rows,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    format_version: u32,
    convention: String,
    algebra: Algebra,
    interval: Interval,
    weights: Vec<Weight>,
    d: Vec<(usize, usize, LaurentPoly)>,
    p: Vec<(usize, usize, LaurentPoly)>,
}

impl From<KlTable> for TableRepr {
    fn from(t: KlTable) -> Self {
        let flat = |rows: &Rows| {
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().map(move |(j, p)| (i, *j, p.clone())))
                .collect::<Vec<_>>()
        };
        TableRepr {
            format_version: FORMAT_VERSION,
            convention: CONVENTION.to_string(),
            algebra: t.algebra,
            interval: t.interval,
            d: flat(&t.d),
            p: flat(&t.p),
            weights: t.weights,
        }
    }
}

impl TryFrom<TableRepr> for KlTable {
    type Error = String;
    fn try_from(r: TableRepr) -> std::result::Result<Self, String> {
        if r.format_version != FORMAT_VERSION || r.convention != CONVENTION {
            return Err("table written under a different format or convention".into());
        }
        let k = r.weights.len();
        let unflat = |entries: Vec<(usize, usize, LaurentPoly)>| -> std::result::Result<Rows, String> {
            let mut rows: Rows = vec![Vec::new(); k];
            for (i, j, p) in entries {
                if i >= k || j >= k {
                    return Err("table entry out of range".into());
                }
                rows[i].push((j, p));
            }
            for row in rows.iter_mut() {
                row.sort_by_key(|t| t.0);
            }
            Ok(rows)
        };
        let index = r.weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(KlTable {
            algebra: r.algebra,
            interval: r.interval,
            d: unflat(r.d)?,
            p: unflat(r.p)?,
            weights: r.weights,
            index,
        })
    }
}

fn lookup(rows: &Rows, i: usize, j: usize) -> LaurentPoly {
    match rows[i].binary_search_by_key(&j, |t| t.0) {
        Ok(k) => rows[i][k].1.clone(),
        Err(_) => LaurentPoly::zero(),
    }
}

impl KlTable {
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.index.contains_key(w)
    }

    fn idx(&self, w: &Weight) -> Result<usize> {
        self.index_of(w).ok_or_else(|| Error::IntervalTooSmall {
            weight: w.to_string(),
            a: self.interval.a,
            b: self.interval.b,
        })
    }

    /// `d_{mu,lambda}(q)`.
    pub fn d(&self, mu: &Weight, lambda: &Weight) -> Result<LaurentPoly> {
        Ok(lookup(&self.d, self.idx(mu)?, self.idx(lambda)?))
    }

    /// `p_{lambda,nu}(q)`.
    pub fn p(&self, lambda: &Weight, nu: &Weight) -> Result<LaurentPoly> {
        Ok(lookup(&self.p, self.idx(lambda)?, self.idx(nu)?))
    }

    /// Nonzero `d_{mu, .}` entries by index.
    pub fn d_row(&self, mu: usize) -> &[(usize, LaurentPoly)] {
        &self.d[mu]
    }

    /// Nonzero `p_{lambda, .}` entries by index.
    pub fn p_row(&self, lambda: usize) -> &[(usize, LaurentPoly)] {
        &self.p[lambda]
    }

    /// Nonzero `p_{., nu}` entries by index (column scan).
    pub fn p_column(&self, nu: usize) -> Vec<(usize, LaurentPoly)> {
        self.p
            .iter()
            .enumerate()
            .filter_map(|(l, row)| row.binary_search_by_key(&nu, |t| t.0).ok().map(|k| (l, row[k].1.clone())))
            .collect()
    }

    /// Nonzero `d_{., lambda}` entries by index (column scan).
    pub fn d_column(&self, lambda: usize) -> Vec<(usize, LaurentPoly)> {
        self.d
            .iter()
            .enumerate()
            .filter_map(|(m, row)| row.binary_search_by_key(&lambda, |t| t.0).ok().map(|k| (m, row[k].1.clone())))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Checks the structural invariants: unitriangular `D` with
    /// off-diagonal entries in `qZ[q]`, nonnegative `P`, and `P(-q) D = 1`.
    pub fn check_invariants(&self) -> Result<()> {
        let k = self.len();
        for mu in 0..k {
            for (lam, c) in &self.d[mu] {
                if *lam == mu {
                    if *c != LaurentPoly::one() {
                        return Err(Error::Invariant(format!("d diagonal {c} at {}", self.weights[mu])));
                    }
                } else if c.min_exp().is_some_and(|e| e < 1) {
                    return Err(Error::Invariant(format!("d entry {c} not in qZ[q]")));
                }
            }
            for (_, c) in &self.p[mu] {
                if !c.has_nonnegative_coefficients() || c.min_exp().is_some_and(|e| e < 0) {
                    return Err(Error::Invariant(format!("p entry {c} not in N[q]")));
                }
            }
        }
        // (P(-q) D)_{lambda,nu} = delta
        for lam in 0..k {
            let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
            for (mu, pp) in &self.p[lam] {
                let pm = pp.at_neg_q();
                for (nu, dd) in &self.d[*mu] {
                    acc.entry(*nu).or_default().add_product(&pm, dd);
                }
            }
            for (nu, c) in acc {
                let expect = if nu == lam { LaurentPoly::one() } else { LaurentPoly::zero() };
                if c != expect {
                    return Err(Error::Invariant(format!("P(-q)D not identity at ({lam},{nu})")));
                }
            }
        }
        Ok(())
    }
}

/// Builds the table of the block of `seed` inside `interval`.
pub fn build_kl_table(alg: &Algebra, seed: &Weight, interval: &Interval) -> Result<KlTable> {
    build_kl_table_capped(alg, seed, interval, DEFAULT_MAX_WEIGHTS)
}

pub fn build_kl_table_capped(alg: &Algebra, seed: &Weight, interval: &Interval, max_weights: usize) -> Result<KlTable> {
    build_kl_table_with(alg, seed, interval, max_weights, Exec::default())
}

/// As [`build_kl_table_capped`] with an explicit execution mode.
pub fn build_kl_table_with(
    alg: &Algebra,
    seed: &Weight,
    interval: &Interval,
    max_weights: usize,
    exec: Exec,
) -> Result<KlTable> {
    alg.check(seed)?;
    if !interval.contains(seed) {
        return Err(Error::IntervalTooSmall { weight: seed.to_string(), a: interval.a, b: interval.b });
    }
    let weights = block_weights(seed, interval);
    if weights.len() > max_weights {
        return Err(Error::BudgetExceeded {
            reason: format!("block has {} weights in {interval}, cap is {max_weights}", weights.len()),
            partial: Vec::new(),
        });
    }
    build_from_weights(alg, interval, weights, exec)
}

type SparseRow = Vec<(usize, LaurentPoly)>;

fn build_from_weights(alg: &Algebra, interval: &Interval, weights: Vec<Weight>, exec: Exec) -> Result<KlTable> {
    let k = weights.len();
    let index: HashMap<Weight, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| (height(&weights[x]), &weights[x]).cmp(&(height(&weights[y]), &weights[y])));
    let mut pos = vec![0; k];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }

    let space = TensorSpace::mixed(alg.m, alg.n, interval.width() + 1)?;
    let to_idx = |w: &Weight| -> Vec<usize> { w.labels().map(|c| (c - interval.a) as usize).collect() };
    let mut key_to_pos: HashMap<u64, usize> = HashMap::with_capacity(k);
    for (i, w) in weights.iter().enumerate() {
        key_to_pos.insert(space.encode(&to_idx(w)), pos[i]);
    }
    // Each worker keeps its own memo tables; rows are independent.
    let chunks = exec.map_chunks(k, |range| -> Result<Vec<(usize, SparseRow)>> {
        let mut engine = space.engine();
        let mut out = Vec::with_capacity(range.len());
        for i in range {
            let w = &weights[i];
            let key = space.encode(&to_idx(w));
            let image = engine.psi(key);
            let mut row = Vec::with_capacity(image.len());
            let mut diag_ok = false;
            for (kk, c) in image.iter() {
                let p = *key_to_pos
                    .get(kk)
                    .ok_or_else(|| Error::Invariant(format!("bar involution leaves the block at {w}")))?;
                if p == pos[i] {
                    diag_ok = *c == LaurentPoly::one();
                } else {
                    row.push((p, c.clone()));
                }
            }
            if !diag_ok {
                return Err(Error::Invariant(format!("bar involution not unitriangular at {w}")));
            }
            row.sort_by_key(|t| t.0);
            out.push((pos[i], row));
        }
        Ok(out)
    });
    let mut psi_rows: Rows = vec![Vec::new(); k];
    for chunk in chunks {
        for (p, row) in chunk? {
            psi_rows[p] = row;
        }
    }
    let (d_pos, pt_pos) = solve_canonical(&psi_rows)?;

    let mut d: Rows = vec![Vec::new(); k];
    let mut p: Rows = vec![Vec::new(); k];
    for i in 0..k {
        let pi = pos[i];
        let mut row: Vec<(usize, LaurentPoly)> = vec![(i, LaurentPoly::one())];
        row.extend(d_pos[pi].iter().map(|(q, c)| (order[*q], c.clone())));
        row.sort_by_key(|t| t.0);
        d[i] = row;
        let mut prow: Vec<(usize, LaurentPoly)> = pt_pos[pi].iter().map(|(q, c)| (order[*q], c.at_neg_q())).collect();
        prow.sort_by_key(|t| t.0);
        p[i] = prow;
    }
    Ok(KlTable { algebra: *alg, interval: *interval, weights, index, d, p })
}

/// `d_{mu,lambda}` for every pair in the block, through the embedding
/// `phi_I` and the antispherical module of `S_{m+Nn}` with `J` the
/// simple reflections inside each right column. Small ranks only.
pub fn d_via_antispherical(
    alg: &Algebra,
    seed: &Weight,
    interval: &Interval,
) -> Result<BTreeMap<(Weight, Weight), LaurentPoly>> {
    alg.check(seed)?;
    let width = interval.width();
    let rank = alg.m + width * alg.n;
    let mut j = Vec::new();
    for t in 0..alg.n {
        let start = alg.m + t * width;
        j.extend(start..start + width - 1);
    }
    let module = AntisphericalModule::new(rank, &j)?;
    let weights = block_weights(seed, interval);
    let mut rep: HashMap<Weight, Permutation> = HashMap::new();
    for w in &weights {
        let target = phi(w, interval)?;
        let d = dominant_sort(&target);
        let best = module
            .elements()
            .iter()
            .filter(|x| x.act(&d) == target)
            .max_by_key(|x| x.length())
            .ok_or_else(|| Error::Invariant(format!("no coset representative for {w}")))?;
        rep.insert(w.clone(), best.clone());
    }
    let mut out = BTreeMap::new();
    for mu in &weights {
        for lam in &weights {
            let c = module.canonical_coefficient(&rep[lam], &rep[mu])?;
            if !c.is_zero() {
                out.insert((mu.clone(), lam.clone()), c);
            }
        }
    }
    Ok(out)
}

/// Reproduces the gl(1|1) and gl(2|1) fixtures that pin every convention.
pub fn convention_self_test() -> Result<()> {
    let fail = |msg: String| Err(Error::SelfTest(msg));
    let g11 = Algebra::gl(1, 1)?;
    let t = build_kl_table(&g11, &Weight::new(vec![0], vec![0]), &Interval { a: -2, b: 3 })?;
    for mu in t.weights() {
        for lam in t.weights() {
            let d = t.d(mu, lam)?;
            let expect = if mu == lam {
                LaurentPoly::one()
            } else if lam.left[0] == mu.left[0] + 1 {
                LaurentPoly::monomial(1, 1)
            } else {
                LaurentPoly::zero()
            };
            if d != expect {
                return fail(format!("gl(1|1) d_{{{mu},{lam}}} = {d}, expected {expect}"));
            }
        }
    }
    let g21 = Algebra::gl(2, 1)?;
    let seed = Weight::new(vec![0, 0], vec![0]);
    let t = build_kl_table(&g21, &seed, &Interval { a: -2, b: 3 })?;
    let wt = |l0: i64, l1: i64, r: i64| Weight::new(vec![l0, l1], vec![r]);
    for k in 1..=3 {
        let got = t.p(&wt(1, 0, 1), &wt(k, 0, k))?;
        if got != LaurentPoly::monomial(k as i32 - 1, 1) {
            return fail(format!("gl(2|1) p_{{(1,0|1),({k},0|{k})}} = {got}"));
        }
    }
    for k in 0..=3 {
        let got = t.p(&wt(0, 0, 0), &wt(0, k, k))?;
        if got != LaurentPoly::monomial(k as i32, 1) {
            return fail(format!("gl(2|1) p_{{(0,0|0),(0,{k}|{k})}} = {got}"));
        }
    }
    Ok(())
}
