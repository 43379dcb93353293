//! Projective dimensions of injectives, structural modules and the
//! finitistic dimension of a block.
//!
//! `pd I(lambda) = 2 a(w0 x_lambda)` where `a` is Lusztig's a-function and
//! `x_lambda` the longest Weyl group element sending the dominant
//! rearrangement to `lambda`, taken side by side. The factor 2 makes the
//! two extreme cases come out right: 0 exactly on antidominant weights and
//! `2 l(w0)` exactly on dominant regular ones.

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::{longest_with_image, Permutation};
use crate::super_kl::block_weights;
use crate::weights::{atypicality, core, is_regular, Weight};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PdValue {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    Verma,
    Simple,
}

fn negated(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn a_of_w0_times(x: &Permutation) -> u64 {
    Permutation::longest(x.n()).compose(x).a_value() as u64
}

/// Reported with every projective dimension: the normalization of `a`.
pub const A_CONVENTION: &str = "pd I(lambda) = 2 a(w0 x_lambda), a = Lusztig's a-function with a(w0) = l(w0)";

/// `pd I(lambda)`.
pub fn pd_injective(w: &Weight) -> u64 {
    let xl = longest_with_image(&w.left);
    let xr = longest_with_image(&negated(&w.right));
    2 * (a_of_w0_times(&xl) + a_of_w0_times(&xr))
}

/// Longest element of the stabilizer of `sorted`, acting on its positions.
fn stabilizer_longest(n: usize, sorted: &[i64]) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        v[i..j].reverse();
        i = j;
    }
    Permutation::from_zero_based(v).expect("block reversal is a permutation")
}

/// `2 a(w0 w0^xi)` from the core alone.
pub fn fin_dim_formula(seed: &Weight) -> u64 {
    let (c, _) = core(seed);
    let (m, n) = (seed.left.len(), seed.right.len());
    // dominant order: left decreasing, right increasing
    let mut right = c.right.clone();
    right.reverse();
    let l = stabilizer_longest(m, &c.left);
    let r = stabilizer_longest(n, &right);
    2 * (a_of_w0_times(&l) + a_of_w0_times(&r))
}

/// Largest `pd I(lambda)` over the block weights inside a window of width
/// `m + n` around the seed's labels; every arrangement pattern of the block
/// occurs there.
pub fn max_pd_injective_in_block(seed: &Weight) -> u64 {
    let pad = (seed.left.len() + seed.right.len()) as i64;
    let (lo, hi) = (seed.min_label().unwrap_or(0), seed.max_label().unwrap_or(0));
    let window = Interval { a: lo - pad, b: hi + pad };
    block_weights(seed, &window).iter().map(pd_injective).max().unwrap_or(0)
}

/// Finitistic dimension of the block of `seed`, cross-checked against the
/// largest projective dimension of an injective.
pub fn fin_dim_block(seed: &Weight) -> Result<u64> {
    let formula = fin_dim_formula(seed);
    let observed = max_pd_injective_in_block(seed);
    if formula != observed {
        return Err(Error::InconsistentEmbedding { formula: formula.to_string(), observed: observed.to_string() });
    }
    Ok(formula)
}

pub fn has_finite_pd_verma(w: &Weight) -> bool {
    atypicality(w) == 0
}

pub fn has_finite_pd_simple(w: &Weight) -> bool {
    atypicality(w) == 0
}

/// Inversions relative to the dominant arrangement.
fn dominance_length(w: &Weight) -> u64 {
    let mut s = 0;
    for i in 0..w.left.len() {
        for j in i + 1..w.left.len() {
            s += (w.left[i] < w.left[j]) as u64;
        }
    }
    for i in 0..w.right.len() {
        for j in i + 1..w.right.len() {
            s += (w.right[i] > w.right[j]) as u64;
        }
    }
    s
}

/// Projective dimension of `M(lambda)` or `L(lambda)`.
///
/// Atypical weights give `Infinite`. Regular typical weights are exact.
/// Singular typical weights return `SingularTypicalUnsupported` carrying
/// the degree found by the even-part engine as lower bound and the global
/// bound `2 l(w0)` as upper bound.
pub fn pd_typical(engine: &Engine, w: &Weight, kind: ModuleKind) -> Result<PdValue> {
    if atypicality(w) > 0 {
        return Ok(PdValue::Infinite);
    }
    let m = w.left.len();
    let n = w.right.len();
    let l_w0 = (m * (m - 1) / 2 + n * (n - 1) / 2) as u64;
    let from_g0 = engine.with_g0(|g| match kind {
        ModuleKind::Verma => g.max_verma_degree(w),
        ModuleKind::Simple => g.max_simple_degree(w),
    })?;
    if !is_regular(w) {
        return Err(Error::SingularTypicalUnsupported { lower: from_g0, upper: 2 * l_w0 });
    }
    let value = match kind {
        ModuleKind::Verma => {
            let l = dominance_length(w);
            if l != from_g0 {
                return Err(Error::Invariant(format!("pd M({w}): length {l}, even part {from_g0}")));
            }
            l
        }
        ModuleKind::Simple => from_g0,
    };
    Ok(PdValue::Finite(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{is_antidominant, is_dominant_regular};
    use proptest::prelude::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn injective_examples() {
        assert_eq!(pd_injective(&w("-1,0|-1")), 0);
        assert_eq!(pd_injective(&w("1,0|1")), 2);
        assert_eq!(pd_injective(&w("0,0|0")), 0);
        assert_eq!(pd_injective(&w("1,0|0,1")), 4);
    }

    #[test]
    fn block_dimensions() {
        assert_eq!(fin_dim_block(&w("0,0|0")).unwrap(), 2);
        assert_eq!(fin_dim_block(&w("0,0|5")).unwrap(), 0);
        assert_eq!(fin_dim_block(&w("1,0|5")).unwrap(), 2);
        assert_eq!(fin_dim_block(&w("1,0|0,1")).unwrap(), 4);
        assert_eq!(fin_dim_block(&w("1,1,0|0")).unwrap(), fin_dim_formula(&w("1,1,0|0")));
    }

    #[test]
    fn typical_examples() {
        let e = Engine::new();
        assert_eq!(pd_typical(&e, &w("1,0|5"), ModuleKind::Verma).unwrap(), PdValue::Finite(0));
        assert_eq!(pd_typical(&e, &w("0,1|5"), ModuleKind::Verma).unwrap(), PdValue::Finite(1));
        assert_eq!(pd_typical(&e, &w("1,0|5"), ModuleKind::Simple).unwrap(), PdValue::Finite(2));
        assert_eq!(pd_typical(&e, &w("0,0|0"), ModuleKind::Simple).unwrap(), PdValue::Infinite);
        assert!(matches!(
            pd_typical(&e, &w("2,2|0"), ModuleKind::Verma),
            Err(Error::SingularTypicalUnsupported { upper: 2, .. })
        ));
        assert!(has_finite_pd_verma(&w("5,0|1")));
        assert!(!has_finite_pd_simple(&w("0,0|0")));
    }

    proptest! {
        #[test]
        fn extremes(l in prop::collection::vec(-3i64..4, 3), r in prop::collection::vec(-3i64..4, 2)) {
            let x = Weight::new(l, r);
            let v = pd_injective(&x);
            let top = 2 * (3 + 1);
            prop_assert!(v <= top);
            prop_assert_eq!(v == 0, is_antidominant(&x));
            prop_assert_eq!(v == top, is_dominant_regular(&x));
        }
    }
}
