//! Kazhdan-Lusztig polynomials of symmetric groups and the antispherical
//! (sign-induced parabolic) variant.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::LaurentPoly;
use std::collections::{BTreeMap, HashMap};

/// Largest rank for which whole-group enumeration is allowed.
pub const MAX_RANK: usize = 8;

/// Memoized `P_{x,y}` for one symmetric group.
pub struct KlEngine {
    n: usize,
    by_length: Vec<Permutation>,
    memo: HashMap<(Permutation, Permutation), LaurentPoly>,
}

impl KlEngine {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_RANK {
            return Err(Error::BudgetExceeded {
                reason: format!("symmetric group S_{n} exceeds rank {MAX_RANK}"),
                partial: Vec::new(),
            });
        }
        let mut by_length = Permutation::all(n);
        by_length.sort_by_key(|p| p.length());
        Ok(KlEngine { n, by_length, memo: HashMap::new() })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Classical `P_{x,y}(q)`; zero unless `x <= y`.
    pub fn p(&mut self, x: &Permutation, y: &Permutation) -> LaurentPoly {
        if x == y {
            return LaurentPoly::one();
        }
        if !x.bruhat_leq(y) {
            return LaurentPoly::zero();
        }
        if let Some(p) = self.memo.get(&(x.clone(), y.clone())) {
            return p.clone();
        }
        let i = (0..self.n - 1).find(|&i| y.has_right_descent(i)).expect("y above x is not the identity");
        let v = y.mul_simple_right(i);
        let xs = x.mul_simple_right(i);
        let mut r = if x.has_right_descent(i) {
            &self.p(&xs, &v) + &self.p(x, &v).shift(1)
        } else {
            &self.p(&xs, &v).shift(1) + &self.p(x, &v)
        };
        let (lv, ly) = (v.length() as i32, y.length() as i32);
        let candidates: Vec<Permutation> = self
            .by_length
            .iter()
            .filter(|z| {
                let lz = z.length() as i32;
                lz < lv && (lv - lz) % 2 == 1 && z.has_right_descent(i) && x.bruhat_leq(z) && z.bruhat_leq(&v)
            })
            .cloned()
            .collect();
        for z in candidates {
            let lz = z.length() as i32;
            let mu = self.p(&z, &v).coeff((lv - lz - 1) / 2);
            if mu != 0 {
                let pxz = self.p(x, &z);
                r -= &pxz.shift((ly - lz) / 2).scale(mu);
            }
        }
        self.memo.insert((x.clone(), y.clone()), r.clone());
        r
    }

    /// Leading coefficient `mu(x,y)` of degree `(l(y)-l(x)-1)/2`.
    pub fn mu(&mut self, x: &Permutation, y: &Permutation) -> i64 {
        let d = y.length() as i32 - x.length() as i32;
        if d <= 0 || d % 2 == 0 {
            return 0;
        }
        self.p(x, y).coeff((d - 1) / 2)
    }
}

/// Convenience wrapper building a throwaway engine.
pub fn kl_polynomial(x: &Permutation, y: &Permutation) -> Result<LaurentPoly> {
    if x.n() != y.n() {
        return Err(Error::Permutation("permutations of different size".into()));
    }
    Ok(KlEngine::new(x.n())?.p(x, y))
}

/// The antispherical right module `sgn (x)_{H_J} H` of `S_n` with its
/// canonical basis, in the normalization where `H_s` has eigenvalues
/// `v^{-1}, -v` and canonical coefficients off the diagonal lie in `vZ[v]`.
pub struct AntisphericalModule {
    n: usize,
    /// 0-based simple reflections generating the parabolic subgroup.
    j: Vec<usize>,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    /// `canon[x]` maps `y` to `n_{y,x}(v)`.
    canon: Vec<BTreeMap<usize, LaurentPoly>>,
}

impl AntisphericalModule {
    /// `j` holds 0-based indices of simple reflections `s_i = (i, i+1)`.
    pub fn new(n: usize, j: &[usize]) -> Result<Self> {
        if n > MAX_RANK {
            return Err(Error::BudgetExceeded {
                reason: format!("symmetric group S_{n} exceeds rank {MAX_RANK}"),
                partial: Vec::new(),
            });
        }
        if let Some(&bad) = j.iter().find(|&&i| i + 1 >= n) {
            return Err(Error::Permutation(format!("simple reflection index {} out of range", bad + 1)));
        }
        let mut elems: Vec<Permutation> = Permutation::all(n).into_iter().filter(|w| is_min_coset_rep(j, w)).collect();
        elems.sort_by_key(|w| (w.length(), w.clone()));
        let index: HashMap<Permutation, usize> = elems.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let mut module = AntisphericalModule { n, j: j.to_vec(), elems, index, canon: Vec::new() };
        module.build();
        Ok(module)
    }

    /// Elements of `^J W`, sorted by length.
    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        self.index.contains_key(w)
    }

    fn act(&self, vec: &BTreeMap<usize, LaurentPoly>, s: usize) -> BTreeMap<usize, LaurentPoly> {
        let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (&y, c) in vec {
            let ys = self.elems[y].mul_simple_right(s);
            let Some(&k) = self.index.get(&ys) else {
                continue;
            };
            *out.entry(k).or_default() += c;
            let up = !self.elems[y].has_right_descent(s);
            *out.entry(y).or_default() += &c.shift(if up { 1 } else { -1 });
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn build(&mut self) {
        let mut canon: Vec<BTreeMap<usize, LaurentPoly>> = Vec::with_capacity(self.elems.len());
        for x in 0..self.elems.len() {
            let w = &self.elems[x];
            let Some(s) = (0..self.n.saturating_sub(1)).find(|&s| w.has_right_descent(s)) else {
                canon.push(BTreeMap::from([(x, LaurentPoly::one())]));
                continue;
            };
            let xs = self.index[&w.mul_simple_right(s)];
            let mut c = self.act(&canon[xs], s);
            let below: Vec<usize> = c.keys().copied().filter(|&y| y != x).rev().collect();
            for y in below {
                let a = c.get(&y).map(|p| p.coeff(0)).unwrap_or(0);
                if a != 0 {
                    for (&z, p) in &canon[y] {
                        *c.entry(z).or_default() -= &p.scale(a);
                    }
                }
            }
            c.retain(|_, p| !p.is_zero());
            canon.push(c);
        }
        self.canon = canon;
    }

    fn idx(&self, w: &Permutation) -> Result<usize> {
        if w.n() != self.n {
            return Err(Error::Permutation(format!("{w} is not in S_{}", self.n)));
        }
        self.index.get(w).copied().ok_or_else(|| Error::NotCosetRepresentative(w.to_string()))
    }

    /// Coefficient of `N_y` in the canonical element indexed by `x`, in `v`.
    pub fn canonical_coefficient(&self, y: &Permutation, x: &Permutation) -> Result<LaurentPoly> {
        let (yi, xi) = (self.idx(y)?, self.idx(x)?);
        Ok(self.canon[xi].get(&yi).cloned().unwrap_or_default())
    }

    /// The same coefficient in the classical normalization, as a polynomial
    /// in `q = v^{-2}`; reduces to `P_{y,x}` for empty `J`.
    pub fn kl(&self, y: &Permutation, x: &Permutation) -> Result<LaurentPoly> {
        let nv = self.canonical_coefficient(y, x)?;
        let d = x.length() as i32 - y.length() as i32;
        Ok(LaurentPoly::from_terms(nv.terms().iter().map(|&(k, c)| ((d - k) / 2, c))))
    }

    pub fn parabolic(&self) -> &[usize] {
        &self.j
    }
}

/// Minimal length in its coset `W_J w`: no left descent in `J`.
pub fn is_min_coset_rep(j: &[usize], w: &Permutation) -> bool {
    j.iter().all(|&s| !w.has_left_descent(s))
}

/// `n_{x,y}` for `x, y` in `^J W`, classical normalization. `j` is 1-based
/// (`s_1 .. s_{n-1}`).
pub fn antispherical_kl(j: &[usize], x: &Permutation, y: &Permutation) -> Result<LaurentPoly> {
    if j.contains(&0) {
        return Err(Error::Permutation("simple reflections are numbered from 1".into()));
    }
    let j0: Vec<usize> = j.iter().map(|s| s - 1).collect();
    for w in [x, y] {
        if !is_min_coset_rep(&j0, w) {
            return Err(Error::NotCosetRepresentative(w.to_string()));
        }
    }
    AntisphericalModule::new(x.n(), &j0)?.kl(x, y)
}
