//! Bar involution on mixed tensor space `V^{(x)m} (x) W^{(x)n}` of the
//! quantum group of `gl_L`, where `V` is the natural module and `W` its dual.
//!
//! Conventions (all pinned by the self-test in `super_kl`):
//! * `F_i v_i = v_{i+1}` on `V`, `F_i w_{i+1} = w_i` on `W`;
//! * `F` on a tensor acts on factor `t` times `q^{sum_{s>t} (alpha_i, wt_s)}`;
//! * `psi(x (x) y_b) = sum_a Xi_{ab}(psi(x)) (x) y_a` with the quasi-R-matrix
//!   components built from the q-commutator recursion below.
//!
//! Basis vectors are packed into a `u64`, eight bits per factor.

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use std::collections::HashMap;
use std::rc::Rc;

pub type Key = u64;
pub type SparseVec = Vec<(Key, LaurentPoly)>;

pub const MAX_FACTORS: usize = 8;
pub const MAX_DIM: usize = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    V,
    W,
}

#[derive(Clone, Debug)]
pub struct TensorSpace {
    factors: Vec<Factor>,
    dim: usize,
}

#[inline]
fn get(key: Key, t: usize) -> usize {
    ((key >> (8 * t)) & 0xff) as usize
}

#[inline]
fn set(key: Key, t: usize, v: usize) -> Key {
    (key & !(0xffu64 << (8 * t))) | ((v as u64) << (8 * t))
}

impl TensorSpace {
    pub fn new(factors: Vec<Factor>, dim: usize) -> Result<Self> {
        if factors.is_empty() || factors.len() > MAX_FACTORS {
            return Err(Error::BudgetExceeded {
                reason: format!("tensor space needs 1..={MAX_FACTORS} factors, got {}", factors.len()),
                partial: Vec::new(),
            });
        }
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::BudgetExceeded {
                reason: format!("tensor factor dimension {dim} outside 2..={MAX_DIM}"),
                partial: Vec::new(),
            });
        }
        Ok(TensorSpace { factors, dim })
    }

    /// `V^m (x) W^n`.
    pub fn mixed(m: usize, n: usize, dim: usize) -> Result<Self> {
        let mut f = vec![Factor::V; m];
        f.extend(std::iter::repeat_n(Factor::W, n));
        Self::new(f, dim)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn encode(&self, idx: &[usize]) -> Key {
        debug_assert_eq!(idx.len(), self.factors.len());
        idx.iter().enumerate().fold(0, |k, (t, &v)| set(k, t, v))
    }

    pub fn decode(&self, key: Key) -> Vec<usize> {
        (0..self.factors.len()).map(|t| get(key, t)).collect()
    }

    /// `(alpha_i, wt)` of the basis vector with index `c` in factor type `ty`.
    #[inline]
    fn pairing(i: usize, ty: Factor, c: usize) -> i32 {
        let v = (c == i) as i32 - (c == i + 1) as i32;
        match ty {
            Factor::V => v,
            Factor::W => -v,
        }
    }

    /// `F_i` on a basis vector of the first `k` factors: list of
    /// `(key, exponent)`, every coefficient being a power of `q`.
    fn f_basis(&self, i: usize, k: usize, key: Key, out: &mut Vec<(Key, i32)>) {
        out.clear();
        // Exponent for factor t is the sum over later factors; walk backwards.
        let mut tail = 0i32;
        for t in (0..k).rev() {
            let ty = self.factors[t];
            let c = get(key, t);
            let target = match ty {
                Factor::V if c == i => Some(i + 1),
                Factor::W if c == i + 1 => Some(i),
                _ => None,
            };
            if let Some(nc) = target {
                out.push((set(key, t, nc), tail));
            }
            tail += Self::pairing(i, ty, c);
        }
    }

    pub fn engine(&self) -> PsiEngine<'_> {
        PsiEngine {
            space: self,
            psi_memo: vec![HashMap::new(); self.factors.len() + 1],
            xi_memo: HashMap::new(),
            scratch: Vec::new(),
        }
    }
}

/// Accumulator for sparse vectors.
#[derive(Default)]
struct Acc(HashMap<Key, LaurentPoly>);

impl Acc {
    fn add(&mut self, key: Key, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.0.entry(key).or_default();
        *e += p;
    }

    fn add_monomial_times(&mut self, key: Key, exp: i32, p: &LaurentPoly) {
        self.add(key, &p.shift(exp));
    }

    fn finish(self) -> SparseVec {
        let mut v: SparseVec = self.0.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        v.sort_unstable_by_key(|t| t.0);
        v
    }
}

type XiKey = (u8, u8, u8, u8, Key);

/// Memoized evaluator of the bar involution on basis vectors.
pub struct PsiEngine<'a> {
    space: &'a TensorSpace,
    psi_memo: Vec<HashMap<Key, Rc<SparseVec>>>,
    xi_memo: HashMap<XiKey, Rc<SparseVec>>,
    scratch: Vec<(Key, i32)>,
}

impl<'a> PsiEngine<'a> {
    fn f_vec(&mut self, i: usize, k: usize, v: &SparseVec) -> Acc {
        let mut acc = Acc::default();
        let mut buf = std::mem::take(&mut self.scratch);
        for (key, p) in v {
            self.space.f_basis(i, k, *key, &mut buf);
            for &(nk, e) in buf.iter() {
                acc.add_monomial_times(nk, e, p);
            }
        }
        self.scratch = buf;
        acc
    }

    /// `Xi_{ab}` on a basis vector of the first `k` factors, for the factor
    /// type `ty` that will be appended.
    fn xi(&mut self, ty: Factor, a: usize, b: usize, k: usize, key: Key) -> Rc<SparseVec> {
        if a == b {
            return Rc::new(vec![(key, LaurentPoly::one())]);
        }
        let mk: XiKey = (ty as u8, a as u8, b as u8, k as u8, key);
        if let Some(r) = self.xi_memo.get(&mk) {
            return r.clone();
        }
        let single = vec![(key, LaurentPoly::one())];
        // (j, next): Xi_{a,b} = Xi_{next,b} F_j - q^{-1} F_j Xi_{next,b}
        let (base, j, next) = match ty {
            Factor::V => {
                debug_assert!(a < b);
                (a + 1 == b, a, a + 1)
            }
            Factor::W => {
                debug_assert!(a > b);
                (a == b + 1, if a == b + 1 { b } else { a - 1 }, a - 1)
            }
        };
        let r = if base {
            let f = self.f_vec(j, k, &single).finish();
            let c = LaurentPoly::q_minus_qinv();
            f.into_iter().map(|(kk, p)| (kk, &p * &c)).filter(|t| !t.1.is_zero()).collect()
        } else {
            let mut acc = Acc::default();
            let mut buf = std::mem::take(&mut self.scratch);
            self.space.f_basis(j, k, key, &mut buf);
            let fk = buf.clone();
            self.scratch = buf;
            for (nk, e) in fk {
                let inner = self.xi(ty, next, b, k, nk);
                for (kk, p) in inner.iter() {
                    acc.add_monomial_times(*kk, e, p);
                }
            }
            let inner = self.xi(ty, next, b, k, key);
            let second = self.f_vec(j, k, &inner);
            for (kk, p) in second.0 {
                acc.add(kk, &p.shift(-1).scale(-1));
            }
            acc.finish()
        };
        let r = Rc::new(r);
        self.xi_memo.insert(mk, r.clone());
        r
    }

    /// `psi` of the basis vector `key` of the first `k` factors.
    pub fn psi_prefix(&mut self, k: usize, key: Key) -> Rc<SparseVec> {
        let key = if k >= 8 { key } else { key & ((1u64 << (8 * k)) - 1) };
        if let Some(r) = self.psi_memo[k].get(&key) {
            return r.clone();
        }
        let r = if k == 1 {
            Rc::new(vec![(key, LaurentPoly::one())])
        } else {
            let ty = self.space.factors[k - 1];
            let yb = get(key, k - 1);
            let px = self.psi_prefix(k - 1, key);
            let range: Vec<usize> = match ty {
                Factor::V => (0..=yb).collect(),
                Factor::W => (yb..self.space.dim).collect(),
            };
            let mut acc = Acc::default();
            for a in range {
                for (bx, p) in px.iter() {
                    let xi = self.xi(ty, a, yb, k - 1, *bx);
                    for (kk, pp) in xi.iter() {
                        acc.add(set(*kk, k - 1, a), &(p * pp));
                    }
                }
            }
            Rc::new(acc.finish())
        };
        self.psi_memo[k].insert(key, r.clone());
        r
    }

    /// `psi` of a full basis vector.
    pub fn psi(&mut self, key: Key) -> Rc<SparseVec> {
        let k = self.space.factors.len();
        self.psi_prefix(k, key)
    }

    /// `psi` extended antilinearly to a vector.
    pub fn psi_vec(&mut self, v: &SparseVec) -> SparseVec {
        let mut acc = Acc::default();
        for (key, p) in v {
            let pb = p.bar();
            for (kk, pp) in self.psi(*key).iter() {
                acc.add(*kk, &(&pb * pp));
            }
        }
        acc.finish()
    }
}
