//! Category O of the even part `gl(m) + gl(n)` on a single Weyl group orbit.
//!
//! Each side is classical: on the left the labels themselves, on the right
//! the negated labels, so that "dominant" means weakly decreasing on both.
//! For an orbit with decreasing representative `D` and longest coset
//! representatives `x, y` (`lambda = x(D)`, `mu = y(D)`), the decomposition
//! numbers are graded classical KL polynomials
//! `d_{mu,lambda} = q^{l(y)-l(x)} P_{x,y}(q^{-2})`,
//! and `p` is obtained from `P(-q) = D^{-1}` exactly as for the super
//! tables. Super data on one orbit of `S_m x S_n` is the product of the two
//! sides.

use crate::error::{Error, Result};
use crate::kl::KlEngine;
use crate::perm::{dominant_sort, longest_with_image, Permutation};
use crate::poly::LaurentPoly;
use crate::weights::Weight;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Largest side rank handled (orbits of size up to 5! per side).
pub const MAX_SIDE_RANK: usize = 5;

/// `D` and `P` on one orbit of a symmetric group.
#[derive(Debug)]
pub struct SideTable {
    elems: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    d: Vec<BTreeMap<usize, LaurentPoly>>,
    p: Vec<BTreeMap<usize, LaurentPoly>>,
}

impl SideTable {
    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elems
    }

    fn get(rows: &[BTreeMap<usize, LaurentPoly>], a: usize, b: usize) -> LaurentPoly {
        rows[a].get(&b).cloned().unwrap_or_default()
    }

    pub fn d(&self, mu: &[i64], lambda: &[i64]) -> Option<LaurentPoly> {
        Some(Self::get(&self.d, *self.index.get(mu)?, *self.index.get(lambda)?))
    }

    pub fn p(&self, lambda: &[i64], nu: &[i64]) -> Option<LaurentPoly> {
        Some(Self::get(&self.p, *self.index.get(lambda)?, *self.index.get(nu)?))
    }
}

fn arrangements(sorted: &[i64]) -> Vec<Vec<i64>> {
    // permutations of a multiset in lexicographic order
    let mut cur: Vec<i64> = sorted.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn build_side(labels: &[i64], kl: &mut KlEngine) -> SideTable {
    let dom = dominant_sort(labels);
    let mut elems = arrangements(&dom);
    let reps: HashMap<Vec<i64>, Permutation> = elems.iter().map(|t| (t.clone(), longest_with_image(t))).collect();
    // lowest first: longer representatives are lower
    elems.sort_by(|a, b| reps[b].length().cmp(&reps[a].length()).then(a.cmp(b)));
    let index: HashMap<Vec<i64>, usize> = elems.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let k = elems.len();
    let mut d: Vec<BTreeMap<usize, LaurentPoly>> = vec![BTreeMap::new(); k];
    for (a, mu) in elems.iter().enumerate() {
        let y = &reps[mu];
        d[a].insert(a, LaurentPoly::one());
        for (b, lam) in elems.iter().enumerate().skip(a + 1) {
            let x = &reps[lam];
            if !x.bruhat_leq(y) {
                continue;
            }
            let shift = y.length() as i32 - x.length() as i32;
            let c = kl.p(x, y).substitute_power(-2).shift(shift);
            if !c.is_zero() {
                d[a].insert(b, c);
            }
        }
    }
    // E = D^{-1}, upper unitriangular in this order
    let mut e: Vec<BTreeMap<usize, LaurentPoly>> = vec![BTreeMap::new(); k];
    for a in (0..k).rev() {
        let mut row: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        row.insert(a, LaurentPoly::one());
        for (&c, dc) in d[a].iter().filter(|t| *t.0 != a) {
            let neg = -dc;
            for (&b, ecb) in &e[c] {
                row.entry(b).or_default().add_product(&neg, ecb);
            }
        }
        row.retain(|_, v| !v.is_zero());
        e[a] = row;
    }
    let p = e.into_iter().map(|row| row.into_iter().map(|(b, c)| (b, c.at_neg_q())).collect()).collect();
    SideTable { elems, index, d, p }
}

/// Memoized orbit tables for both sides.
#[derive(Default)]
pub struct G0Engine {
    sides: HashMap<Vec<i64>, Arc<SideTable>>,
    kl: HashMap<usize, KlEngine>,
}

fn right_side(w: &Weight) -> Vec<i64> {
    w.right.iter().map(|x| -x).collect()
}

impl G0Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// The orbit table containing the arrangement `labels`.
    pub fn side(&mut self, labels: &[i64]) -> Result<Arc<SideTable>> {
        if labels.len() > MAX_SIDE_RANK {
            return Err(Error::BudgetExceeded {
                reason: format!("even Weyl group side of rank {} exceeds {MAX_SIDE_RANK}", labels.len()),
                partial: Vec::new(),
            });
        }
        let key = dominant_sort(labels);
        if let Some(t) = self.sides.get(&key) {
            return Ok(t.clone());
        }
        let n = labels.len();
        let kl = match self.kl.entry(n) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(v) => v.insert(KlEngine::new(n)?),
        };
        let t = Arc::new(build_side(&key, kl));
        self.sides.insert(key, t.clone());
        Ok(t)
    }

    /// True when `a` and `b` lie in one orbit of `S_m x S_n`.
    pub fn same_orbit(a: &Weight, b: &Weight) -> bool {
        a.left.len() == b.left.len()
            && a.right.len() == b.right.len()
            && dominant_sort(&a.left) == dominant_sort(&b.left)
            && dominant_sort(&a.right) == dominant_sort(&b.right)
    }

    /// All weights of the orbit of `w`, lexicographically sorted.
    pub fn orbit(&mut self, w: &Weight) -> Result<Vec<Weight>> {
        let l = self.side(&w.left)?;
        let r = self.side(&right_side(w))?;
        let mut out = Vec::new();
        for a in l.elements() {
            for b in r.elements() {
                out.push(Weight::new(a.clone(), b.iter().map(|x| -x).collect()));
            }
        }
        out.sort();
        Ok(out)
    }

    /// `d_{mu,lambda}` of the even part; zero across orbits.
    pub fn d_poly(&mut self, mu: &Weight, lambda: &Weight) -> Result<LaurentPoly> {
        if !Self::same_orbit(mu, lambda) {
            return Ok(LaurentPoly::zero());
        }
        let l = self.side(&mu.left)?;
        let r = self.side(&right_side(mu))?;
        let dl = l.d(&mu.left, &lambda.left).unwrap_or_default();
        let dr = r.d(&right_side(mu), &right_side(lambda)).unwrap_or_default();
        Ok(&dl * &dr)
    }

    /// `p_{lambda,nu}` of the even part; zero across orbits.
    pub fn p_poly(&mut self, lambda: &Weight, nu: &Weight) -> Result<LaurentPoly> {
        if !Self::same_orbit(lambda, nu) {
            return Ok(LaurentPoly::zero());
        }
        let l = self.side(&lambda.left)?;
        let r = self.side(&right_side(lambda))?;
        let pl = l.p(&lambda.left, &nu.left).unwrap_or_default();
        let pr = r.p(&right_side(lambda), &right_side(nu)).unwrap_or_default();
        Ok(&pl * &pr)
    }

    /// `dim Ext^j(M_0(lambda), L_0(nu))`.
    pub fn ext_verma_simple(&mut self, lambda: &Weight, nu: &Weight, j: u32) -> Result<u64> {
        Ok(self.p_poly(lambda, nu)?.coeff(j as i32).max(0) as u64)
    }

    /// `dim Ext^j(L_0(lambda), L_0(mu))` from the Verma resolution data.
    pub fn ext_simple_simple(&mut self, lambda: &Weight, mu: &Weight, j: u32) -> Result<u64> {
        if !Self::same_orbit(lambda, mu) {
            return Ok(0);
        }
        let mut total = 0i64;
        for nu in self.orbit(lambda)? {
            let a = self.p_poly(&nu, lambda)?;
            if a.is_zero() {
                continue;
            }
            let b = self.p_poly(&nu, mu)?;
            for i in 0..=j as i32 {
                total += a.coeff(i) * b.coeff(j as i32 - i);
            }
        }
        Ok(total as u64)
    }

    /// Largest `j` with `Ext^j(M_0(lambda), L_0(nu)) != 0` for some `nu`.
    pub fn max_verma_degree(&mut self, lambda: &Weight) -> Result<u64> {
        let mut best = 0;
        for nu in self.orbit(lambda)? {
            if let Some(e) = self.p_poly(lambda, &nu)?.max_exp() {
                best = best.max(e as u64);
            }
        }
        Ok(best)
    }

    /// Largest `j` with `Ext^j(L_0(lambda), L_0(mu)) != 0` for some `mu`.
    pub fn max_simple_degree(&mut self, lambda: &Weight) -> Result<u64> {
        let orbit = self.orbit(lambda)?;
        let mut best = 0u64;
        for nu in &orbit {
            let Some(a) = self.p_poly(nu, lambda)?.max_exp() else {
                continue;
            };
            for mu in &orbit {
                if let Some(b) = self.p_poly(nu, mu)?.max_exp() {
                    best = best.max((a + b) as u64);
                }
            }
        }
        Ok(best)
    }
}
