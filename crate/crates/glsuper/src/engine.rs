//! Cached query layer over block tables.
//!
//! Every query picks an interval large enough to make its answer exact,
//! reuses any cached table of the same block whose interval covers it, and
//! otherwise builds (or loads from disk) a new one.
//!
//! Interval choice rests on two facts about the Bruhat order on labels:
//! lowering moves never raise the largest label and raising moves never
//! lower the smallest, and `p_{lambda,nu}` has nonzero degree `j` only if
//! `z(nu) - z(lambda) <= j + mn`. Together with `z` being the sum of the
//! left labels these bound every label that can contribute.

use crate::cache::DiskCache;
use crate::error::{Error, Result};
use crate::g0::G0Engine;
use crate::interval::{length_fn_fast, minimal_interval, Interval};
use crate::par::Exec;
use crate::poly::LaurentPoly;
use crate::super_kl::{block_weights, build_kl_table_with, convention_self_test, KlTable, DEFAULT_MAX_WEIGHTS};
use crate::weights::{align, bruhat_leq_linked, z_grade, Algebra, Weight};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

/// Interval covering every `nu <= w` with `z(w) - z(nu) <= depth`.
pub fn lower_window(alg: &Algebra, w: &Weight, depth: u64) -> Interval {
    let m = alg.m as i64;
    let (lo, hi) = (w.min_label().unwrap_or(0), w.max_label().unwrap_or(0));
    let a = (z_grade(w) - depth as i64 - (m - 1) * hi).min(lo);
    Interval { a: a - 1, b: hi + 1 }
}

/// Interval covering every `nu >= w` with `z(nu) - z(w) <= depth`.
pub fn upper_window(alg: &Algebra, w: &Weight, depth: u64) -> Interval {
    let m = alg.m as i64;
    let (lo, hi) = (w.min_label().unwrap_or(0), w.max_label().unwrap_or(0));
    let b = (z_grade(w) + depth as i64 - (m - 1) * lo).max(hi);
    Interval { a: lo - 1, b: b + 1 }
}

/// A number together with the interval of the table it was read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Windowed<T> {
    pub value: T,
    pub interval: Interval,
}

/// `Ext^1` quiver on a set of weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub nodes: Vec<Weight>,
    /// `(i, j, dim Ext^1(L_i, L_j))` for `i < j` with nonzero dimension.
    pub edges: Vec<(usize, usize, u64)>,
    pub interval: Interval,
}

type BlockKey = (Algebra, BTreeMap<i64, i64>);

pub struct Engine {
    max_weights: usize,
    exec: Exec,
    disk: Option<DiskCache>,
    tables: Mutex<HashMap<BlockKey, Vec<Arc<KlTable>>>>,
    g0: Mutex<G0Engine>,
    warnings: Mutex<Vec<String>>,
    self_test: OnceLock<std::result::Result<(), String>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            max_weights: DEFAULT_MAX_WEIGHTS,
            exec: Exec::default(),
            disk: None,
            tables: Mutex::new(HashMap::new()),
            g0: Mutex::new(G0Engine::new()),
            warnings: Mutex::new(Vec::new()),
            self_test: OnceLock::new(),
        }
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_max_weights(mut self, max_weights: usize) -> Self {
        self.max_weights = max_weights;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_cache_dir<P: AsRef<Path>>(mut self, dir: P) -> Result<Self> {
        self.disk = Some(DiskCache::new(dir)?);
        Ok(self)
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn max_weights(&self) -> usize {
        self.max_weights
    }

    /// Cache problems seen so far; they never change an answer.
    pub fn take_warnings(&self) -> Vec<String> {
        std::mem::take(&mut *self.warnings.lock().unwrap())
    }

    /// Runs the convention self-test once per engine.
    pub fn self_test(&self) -> Result<()> {
        self.self_test
            .get_or_init(|| convention_self_test().map_err(|e| e.to_string()))
            .clone()
            .map_err(Error::SelfTest)
    }

    /// Table of the block of `seed` over an interval containing `interval`.
    pub fn table(&self, alg: &Algebra, seed: &Weight, interval: &Interval) -> Result<Arc<KlTable>> {
        alg.check(seed)?;
        let sig = seed.signature();
        let key = (*alg, sig.clone());
        if let Some(list) = self.tables.lock().unwrap().get(&key) {
            if let Some(t) = list.iter().find(|t| t.interval.a <= interval.a && t.interval.b >= interval.b) {
                return Ok(t.clone());
            }
        }
        self.self_test()?;
        let table = match self.disk.as_ref().and_then(|d| d.get(alg, &sig, interval)) {
            Some(t) => t,
            None => {
                let count = block_weights(seed, interval).len();
                if count > self.max_weights {
                    return Err(Error::BudgetExceeded {
                        reason: format!(
                            "block of {seed} has {count} weights in {interval}, cap is {}",
                            self.max_weights
                        ),
                        partial: Vec::new(),
                    });
                }
                let t = build_kl_table_with(alg, seed, interval, self.max_weights, self.exec)?;
                if let Some(d) = &self.disk {
                    if let Err(e) = d.put(&t, &sig) {
                        self.warnings.lock().unwrap().push(format!("cache write failed: {e}"));
                    }
                }
                t
            }
        };
        let t = Arc::new(table);
        self.tables.lock().unwrap().entry(key).or_default().push(t.clone());
        Ok(t)
    }

    /// `b` moved into the gl block of `a`, if the two are linked.
    pub fn align(&self, alg: &Algebra, a: &Weight, b: &Weight) -> Result<Option<Weight>> {
        alg.check(a)?;
        alg.check(b)?;
        Ok(align(alg, a, b))
    }

    /// `p_{lambda,nu}(q)`; zero unless linked and `lambda <= nu`.
    pub fn p_poly(&self, alg: &Algebra, lambda: &Weight, nu: &Weight) -> Result<Windowed<LaurentPoly>> {
        let Some(nu) = self.align(alg, lambda, nu)? else {
            return Ok(Windowed { value: LaurentPoly::zero(), interval: minimal_interval([lambda])? });
        };
        let interval = minimal_interval([lambda, &nu])?;
        if !bruhat_leq_linked(lambda, &nu) {
            return Ok(Windowed { value: LaurentPoly::zero(), interval });
        }
        let t = self.table(alg, lambda, &interval)?;
        Ok(Windowed { value: t.p(lambda, &nu)?, interval: t.interval })
    }

    /// `d_{mu,lambda}(q)`; zero unless linked and `mu <= lambda`.
    pub fn d_poly(&self, alg: &Algebra, mu: &Weight, lambda: &Weight) -> Result<Windowed<LaurentPoly>> {
        let Some(lambda) = self.align(alg, mu, lambda)? else {
            return Ok(Windowed { value: LaurentPoly::zero(), interval: minimal_interval([mu])? });
        };
        let interval = minimal_interval([mu, &lambda])?;
        if !bruhat_leq_linked(mu, &lambda) {
            return Ok(Windowed { value: LaurentPoly::zero(), interval });
        }
        let t = self.table(alg, mu, &interval)?;
        Ok(Windowed { value: t.d(mu, &lambda)?, interval: t.interval })
    }

    /// `dim Ext^j(M(lambda), L(nu))`.
    pub fn ext_verma_simple(&self, alg: &Algebra, lambda: &Weight, nu: &Weight, j: u32) -> Result<u64> {
        let Some(nu) = self.align(alg, lambda, nu)? else {
            return Ok(0);
        };
        if !bruhat_leq_linked(lambda, &nu) {
            return Ok(0);
        }
        let l = length_fn_fast(&nu, lambda);
        if j as i64 > l || (l - j as i64) % 2 != 0 {
            return Ok(0);
        }
        let p = self.p_poly(alg, lambda, &nu)?.value;
        Ok(p.coeff(j as i32).max(0) as u64)
    }

    /// `dim Ext^j(L(lambda), L(mu))` through the Verma resolutions of both.
    pub fn ext_simple_simple(&self, alg: &Algebra, lambda: &Weight, mu: &Weight, j: u32) -> Result<Windowed<u64>> {
        let Some(mu) = self.align(alg, lambda, mu)? else {
            return Ok(Windowed { value: 0, interval: minimal_interval([lambda])? });
        };
        let depth = j as u64 + alg.mn();
        let (wl, wm) = (lower_window(alg, lambda, depth), lower_window(alg, &mu, depth));
        // candidates lie below both, so the tighter lower bound applies
        let base = minimal_interval([lambda, &mu])?;
        let interval = Interval { a: wl.a.max(wm.a).min(base.a), b: base.b };
        let t = self.table(alg, lambda, &interval)?;
        let cl = column(&t, lambda)?;
        let cm = column(&t, &mu)?;
        Ok(Windowed { value: convolve(&cl, &cm, j), interval: t.interval })
    }

    /// Nodes and `Ext^1` dimensions between the simples of `ws`.
    pub fn ext1_quiver(&self, alg: &Algebra, ws: &[Weight]) -> Result<Quiver> {
        let Some(first) = ws.first() else {
            return Ok(Quiver { nodes: Vec::new(), edges: Vec::new(), interval: Interval { a: 0, b: 0 } });
        };
        let mut nodes = Vec::with_capacity(ws.len());
        for w in ws {
            nodes.push(self.align(alg, first, w)?.ok_or_else(|| Error::NotLinked(first.to_string(), w.to_string()))?);
        }
        let depth = 1 + alg.mn();
        let mut interval = minimal_interval(nodes.iter())?;
        for w in &nodes {
            interval = interval.hull(&lower_window(alg, w, depth));
        }
        let t = self.table(alg, first, &interval)?;
        let cols: Vec<BTreeMap<usize, LaurentPoly>> =
            self.exec.map(&nodes, |w| column(&t, w)).into_iter().collect::<Result<_>>()?;
        let mut edges = Vec::new();
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                let e = convolve(&cols[a], &cols[b], 1);
                if e != 0 {
                    edges.push((a, b, e));
                }
            }
        }
        Ok(Quiver { nodes, edges, interval: t.interval })
    }

    /// Access to the even-part engine.
    pub fn with_g0<R>(&self, f: impl FnOnce(&mut G0Engine) -> R) -> R {
        f(&mut self.g0.lock().unwrap())
    }
}

/// Column `nu -> p_{nu,w}` of a table, by table index.
pub fn column(t: &KlTable, w: &Weight) -> Result<BTreeMap<usize, LaurentPoly>> {
    let i = t.index_of(w).ok_or_else(|| Error::IntervalTooSmall {
        weight: w.to_string(),
        a: t.interval.a,
        b: t.interval.b,
    })?;
    Ok(t.p_column(i).into_iter().collect())
}

/// `sum_nu sum_i a_nu[i] b_nu[j-i]`.
pub fn convolve(a: &BTreeMap<usize, LaurentPoly>, b: &BTreeMap<usize, LaurentPoly>, j: u32) -> u64 {
    let mut total = 0i64;
    for (nu, pa) in a {
        if let Some(pb) = b.get(nu) {
            for i in 0..=j as i32 {
                total += pa.coeff(i) * pb.coeff(j as i32 - i);
            }
        }
    }
    total.max(0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn fixtures_through_engine() {
        let e = Engine::new();
        let g = Algebra::gl(2, 1).unwrap();
        for k in 1..=4u32 {
            let nu = Weight::new(vec![k as i64, 0], vec![k as i64]);
            for j in 0..=5 {
                let expect = (j + 1 == k) as u64;
                assert_eq!(e.ext_verma_simple(&g, &w("1,0|1"), &nu, j).unwrap(), expect, "k={k} j={j}");
            }
        }
        assert_eq!(e.ext_verma_simple(&g, &w("1,0|1"), &w("5,0|2"), 0).unwrap(), 0);
    }

    #[test]
    fn hom_between_simples() {
        let e = Engine::new();
        let g = Algebra::gl(2, 1).unwrap();
        let a = w("1,0|1");
        let b = w("0,1|1");
        assert_eq!(e.ext_simple_simple(&g, &a, &a, 0).unwrap().value, 1);
        assert_eq!(e.ext_simple_simple(&g, &a, &b, 0).unwrap().value, 0);
        assert_eq!(e.ext_simple_simple(&g, &a, &b, 1).unwrap().value, 1);
    }

    #[test]
    fn covering_tables_are_reused() {
        let e = Engine::new();
        let g = Algebra::gl(2, 1).unwrap();
        let seed = w("0,0|0");
        let big = e.table(&g, &seed, &Interval { a: -3, b: 3 }).unwrap();
        let small = e.table(&g, &seed, &Interval { a: -1, b: 1 }).unwrap();
        assert!(Arc::ptr_eq(&big, &small));
    }

    #[test]
    fn budget_is_enforced() {
        let e = Engine::new().with_max_weights(5);
        let g = Algebra::gl(2, 1).unwrap();
        let r = e.table(&g, &w("0,0|0"), &Interval { a: -3, b: 3 });
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn windows_contain_the_weight() {
        let g = Algebra::gl(2, 2).unwrap();
        let x = w("3,-1|2,0");
        assert!(lower_window(&g, &x, 0).contains(&x));
        assert!(upper_window(&g, &x, 0).contains(&x));
    }
}
