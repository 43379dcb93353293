//! Invariants separating the atypical integral blocks of sl(3|1).
//!
//! The block `xi^p` (p >= 2) is the 1-atypical block whose core has labels
//! `{p, 1}`. Its dominant regular weights form a path `lambda^p_i`, and the
//! flat invariant `2 sum_nu d_{lambda,nu}(1)`, the length of a Verma flag of
//! the projective cover doubled, labels the nodes. Away from the one or two
//! exceptional nodes the label is 4, so the position and labels of the
//! exceptional nodes tell the blocks apart.
//!
//! Weights are handled through their gl(3|1) labels; for sl these are
//! defined up to a common shift, which none of the invariants sees.

use crate::engine::{lower_window, upper_window, Engine, Windowed};
use crate::error::{Error, Result};
use crate::weights::{atypicality, is_antidominant, is_dominant_regular, Algebra, Weight};
use serde::Serialize;
use std::fmt;

/// The generic node label.
pub const GENERIC_FLAT: u64 = 4;

fn sl31() -> Algebra {
    Algebra::sl(3, 1).expect("sl(3|1) is valid")
}

/// `lambda^p_i`, the dominant regular weights of `xi^p` in path order.
pub fn lambda_p_i(p: i64, i: i64) -> Result<Weight> {
    if p < 2 {
        return Err(Error::Parse(format!("block index p must be at least 2, got {p}")));
    }
    let w = if i <= 0 {
        Weight::new(vec![p, 1, i], vec![i])
    } else if i < p - 1 {
        Weight::new(vec![p, i + 1, 1], vec![i + 1])
    } else {
        Weight::new(vec![i + 2, p, 1], vec![i + 2])
    };
    Ok(w)
}

fn check_flat_input(w: &Weight) -> Result<()> {
    if w.left.len() != 3 || w.right.len() != 1 {
        return Err(Error::ShapeMismatch { weight: w.to_string(), algebra: sl31().to_string() });
    }
    if atypicality(w) != 1 || !is_dominant_regular(w) {
        return Err(Error::Parse(format!("{w} is not a dominant regular atypical weight")));
    }
    Ok(())
}

/// `2 (1 + t)` with `t > 0` minimal such that moving the matched pair up `t`
/// times gives a regular weight again.
pub fn flat_shortcut(w: &Weight) -> Result<u64> {
    check_flat_input(w)?;
    let c = w.right[0];
    let k = w.left.iter().position(|&x| x == c).expect("atypical");
    let others: Vec<i64> = w.left.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
    let t = (1..).find(|t| !others.contains(&(c + t))).expect("finitely many collisions");
    Ok(2 * (1 + t as u64))
}

/// `2 sum_nu d_{lambda,nu}(1)` read from a block table.
pub fn flat_table(engine: &Engine, w: &Weight) -> Result<Windowed<u64>> {
    flat_table_at_depth(engine, w, sl31().mn())
}

/// As [`flat_table`] with a chosen window depth; deeper windows must not
/// change the value.
pub fn flat_table_at_depth(engine: &Engine, w: &Weight, depth: u64) -> Result<Windowed<u64>> {
    check_flat_input(w)?;
    let alg = sl31();
    let t = engine.table(&alg, w, &upper_window(&alg, w, depth))?;
    let i = t.index_of(w).expect("window contains the weight");
    let s: i64 = t.d_row(i).iter().map(|(_, d)| d.eval_one()).sum();
    Ok(Windowed { value: 2 * s as u64, interval: t.interval })
}

/// `[P(lambda) : L(lambda)]` and whether the standard flag of `P(lambda)` is
/// multiplicity free.
pub fn projective_self_multiplicity(engine: &Engine, w: &Weight) -> Result<(u64, bool)> {
    check_flat_input(w)?;
    let alg = sl31();
    let t = engine.table(&alg, w, &upper_window(&alg, w, alg.mn()))?;
    let i = t.index_of(w).expect("window contains the weight");
    let ds: Vec<i64> = t.d_row(i).iter().map(|(_, d)| d.eval_one()).collect();
    Ok((ds.iter().map(|d| (d * d) as u64).sum(), ds.iter().all(|&d| d <= 1)))
}

/// `sum over antidominant nu of [M(lambda) : L(nu)]`.
pub fn verma_antidominant_count(engine: &Engine, alg: &Algebra, w: &Weight) -> Result<Windowed<u64>> {
    let t = engine.table(alg, w, &lower_window(alg, w, alg.mn()))?;
    let i = t.index_of(w).expect("window contains the weight");
    let ws = t.weights();
    let s: i64 = t.d_column(i).iter().filter(|(mu, _)| is_antidominant(&ws[*mu])).map(|(_, d)| d.eval_one()).sum();
    Ok(Windowed { value: s as u64, interval: t.interval })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintNode {
    pub index: i64,
    pub weight: Weight,
    pub flat: u64,
}

/// Exceptional part of a fingerprint: distance between the first and last
/// exceptional node, and the exceptional labels in path order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalFingerprint {
    pub span: i64,
    pub labels: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockFingerprint {
    pub p: i64,
    pub nodes: Vec<FingerprintNode>,
    /// Path edges between consecutive node indices.
    pub edges: Vec<(i64, i64)>,
    pub canonical: CanonicalFingerprint,
}

impl BlockFingerprint {
    pub fn labels(&self) -> Vec<u64> {
        self.nodes.iter().map(|n| n.flat).collect()
    }

    /// Two fingerprints are equivalent iff their canonical parts agree.
    pub fn equivalent(&self, other: &BlockFingerprint) -> bool {
        self.canonical == other.canonical
    }
}

impl fmt::Display for BlockFingerprint {
    /// Plain adjacency list: one line per node, `index weight flat: neighbours`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.nodes {
            let nb: Vec<String> = self
                .edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == n.index {
                        Some(b)
                    } else if b == n.index {
                        Some(a)
                    } else {
                        None
                    }
                })
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "{} {} {}: {}", n.index, n.weight, n.flat, nb.join(" "))?;
        }
        Ok(())
    }
}

fn canonical(nodes: &[FingerprintNode]) -> CanonicalFingerprint {
    let ex: Vec<&FingerprintNode> = nodes.iter().filter(|n| n.flat != GENERIC_FLAT).collect();
    let span = match (ex.first(), ex.last()) {
        (Some(a), Some(b)) => b.index - a.index,
        _ => 0,
    };
    CanonicalFingerprint { span, labels: ex.iter().map(|n| n.flat).collect() }
}

/// Labeled path of `xi^p` over `i` in `[-window, p - 1 + window]`. Labels come
/// from the shortcut; pass an engine to also read every label from a table
/// and fail on any disagreement.
pub fn block_fingerprint(p: i64, window: i64, engine: Option<&Engine>) -> Result<BlockFingerprint> {
    if window < p + 2 {
        return Err(Error::Parse(format!("window {window} must be at least p + 2 = {}", p + 2)));
    }
    let mut nodes = Vec::new();
    for i in -window..=p - 1 + window {
        let w = lambda_p_i(p, i)?;
        let flat = flat_shortcut(&w)?;
        if let Some(e) = engine {
            let t = flat_table(e, &w)?;
            if t.value != flat {
                return Err(Error::InconsistentEmbedding {
                    formula: format!("flat {w} = {flat}"),
                    observed: t.value.to_string(),
                });
            }
        }
        nodes.push(FingerprintNode { index: i, weight: w, flat });
    }
    let edges = nodes.windows(2).map(|x| (x[0].index, x[1].index)).collect();
    let canonical = canonical(&nodes);
    Ok(BlockFingerprint { p, nodes, edges, canonical })
}

/// Compares the `Ext^1` quiver on `lambda^p_i`, `i` in `lo..=hi`, with the
/// path `i -- i+1`. Returns the offending pairs, empty when they agree.
pub fn quiver_spot_check(engine: &Engine, p: i64, lo: i64, hi: i64) -> Result<Vec<(i64, i64, u64)>> {
    let ws: Vec<Weight> = (lo..=hi).map(|i| lambda_p_i(p, i)).collect::<Result<_>>()?;
    let q = engine.ext1_quiver(&sl31(), &ws)?;
    let mut bad = Vec::new();
    for a in 0..ws.len() {
        for b in a + 1..ws.len() {
            let dim = q.edges.iter().find(|e| e.0 == a && e.1 == b).map_or(0, |e| e.2);
            if dim != (b == a + 1) as u64 {
                bad.push((lo + a as i64, lo + b as i64, dim));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn path_weights() {
        assert_eq!(lambda_p_i(2, 0).unwrap(), w("2,1,0|0"));
        assert_eq!(lambda_p_i(4, 1).unwrap(), w("4,2,1|2"));
        assert_eq!(lambda_p_i(4, 3).unwrap(), w("5,4,1|5"));
        for p in 2..6 {
            for i in -4..p + 4 {
                let x = lambda_p_i(p, i).unwrap();
                assert!(is_dominant_regular(&x) && atypicality(&x) == 1, "{x}");
                assert_eq!(x.signature(), lambda_p_i(p, 0).unwrap().signature());
            }
        }
        assert!(lambda_p_i(1, 0).is_err());
    }

    #[test]
    fn shortcut_values() {
        assert_eq!(flat_shortcut(&lambda_p_i(2, 0).unwrap()).unwrap(), 8);
        assert_eq!(flat_shortcut(&lambda_p_i(3, 0).unwrap()).unwrap(), 6);
        assert_eq!(flat_shortcut(&lambda_p_i(3, -1).unwrap()).unwrap(), 4);
        assert_eq!(flat_shortcut(&lambda_p_i(5, -2).unwrap()).unwrap(), 4);
        assert!(flat_shortcut(&w("2,1,0|7")).is_err());
    }

    #[test]
    fn shortcut_matches_table_for_p2() {
        let e = Engine::new();
        for i in -2..=2 {
            let x = lambda_p_i(2, i).unwrap();
            assert_eq!(flat_table(&e, &x).unwrap().value, flat_shortcut(&x).unwrap(), "{x}");
        }
        let (pl, free) = projective_self_multiplicity(&e, &lambda_p_i(2, 0).unwrap()).unwrap();
        assert!(free);
        assert_eq!(2 * pl, 8);
    }

    #[test]
    fn fingerprints() {
        let f2 = block_fingerprint(2, 4, None).unwrap();
        assert_eq!(f2.canonical, CanonicalFingerprint { span: 0, labels: vec![8] });
        let f4 = block_fingerprint(4, 6, None).unwrap();
        assert_eq!(f4.canonical, CanonicalFingerprint { span: 2, labels: vec![6, 6] });
        assert!(!f2.equivalent(&f4));
        assert!(f4.equivalent(&f4));
        assert!(block_fingerprint(4, 5, None).is_err());
        assert_eq!(f2.to_string().lines().count(), f2.nodes.len());
    }

    #[test]
    fn antidominant_counts() {
        let e = Engine::new();
        let s = sl31();
        assert_eq!(verma_antidominant_count(&e, &s, &lambda_p_i(2, 0).unwrap()).unwrap().value, 2);
        assert_eq!(verma_antidominant_count(&e, &s, &w("0,2,1|2")).unwrap().value, 2);
        assert_eq!(verma_antidominant_count(&e, &s, &w("2,1,0|7")).unwrap().value, 1);
        let g11 = Algebra::gl(1, 1).unwrap();
        assert_eq!(verma_antidominant_count(&e, &g11, &w("3|3")).unwrap().value, 2);
    }
}
