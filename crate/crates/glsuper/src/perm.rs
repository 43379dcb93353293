//! Permutations in one-line notation, Coxeter length, Bruhat comparison,
//! Robinson-Schensted shapes and the Lusztig a-function.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of `{0..n-1}` stored in one-line notation `w(0) .. w(n-1)`.
/// Display and parsing use the 1-based convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The longest element `w0`.
    pub fn longest(n: usize) -> Self {
        Permutation((0..n).rev().collect())
    }

    /// The simple transposition `s_i` swapping `i` and `i+1` (0-based).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, i + 1);
        Permutation(v)
    }

    /// Builds from a 0-based one-line vector, checking it is a permutation.
    pub fn from_zero_based(v: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; v.len()];
        for &x in &v {
            if x >= v.len() || seen[x] {
                return Err(Error::Permutation(format!("{v:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(v))
    }

    /// Builds from a 1-based one-line vector.
    pub fn from_one_line(v: &[usize]) -> Result<Self> {
        if v.contains(&0) {
            return Err(Error::Permutation(format!("{v:?} must be 1-based")));
        }
        Self::from_zero_based(v.iter().map(|x| x - 1).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let v: std::result::Result<Vec<usize>, _> = s
            .trim()
            .trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<usize>())
            .collect();
        Self::from_one_line(&v.map_err(|_| Error::Parse(format!("bad permutation {s:?}")))?)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut l = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    l += 1;
                }
            }
        }
        l
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Composition `self * other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n(), "composing permutations of different size");
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// `self * s_i`: swaps the entries in positions `i` and `i+1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        Permutation(v)
    }

    /// `s_i * self`: swaps the values `i` and `i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&x| {
                    if x == i {
                        i + 1
                    } else if x == i + 1 {
                        i
                    } else {
                        x
                    }
                })
                .collect(),
        )
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i] > self.0[i + 1]
    }

    /// `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// Place permutation action on sequences: `(w(D))_i = D_{w^{-1}(i)}`.
    pub fn act<T: Clone>(&self, d: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (0..self.n()).map(|i| d[inv.0[i]].clone()).collect()
    }

    /// Bruhat order by the tableau criterion.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        let n = self.n();
        assert_eq!(n, other.n());
        for k in 1..n {
            let mut a: Vec<usize> = self.0[..k].to_vec();
            let mut b: Vec<usize> = other.0[..k].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// Shape of the Robinson-Schensted insertion tableau of the one-line word.
    pub fn rsk_shape(&self) -> Vec<usize> {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for &x in &self.0 {
            let mut carry = x;
            let mut placed = false;
            for row in rows.iter_mut() {
                match row.iter().position(|&y| y > carry) {
                    Some(p) => carry = std::mem::replace(&mut row[p], carry),
                    None => {
                        row.push(carry);
                        placed = true;
                        break;
                    }
                }
            }
            if !placed {
                rows.push(vec![carry]);
            }
        }
        rows.iter().map(|r| r.len()).collect()
    }

    /// Lusztig's a-function, `n(shape) = sum (i-1) lambda_i`.
    pub fn a_value(&self) -> usize {
        a_of_shape(&self.rsk_shape())
    }

    /// All permutations of `n` letters in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(v.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| v[i - 1] < v[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| v[j] > v[i - 1]).unwrap();
            v.swap(i - 1, j);
            v[i..].reverse();
        }
        out
    }
}

pub fn a_of_shape(shape: &[usize]) -> usize {
    shape.iter().enumerate().map(|(i, &l)| i * l).sum()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Element of `S_m x S_n`, the even Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermPair {
    pub left: Permutation,
    pub right: Permutation,
}

impl PermPair {
    pub fn length(&self) -> usize {
        self.left.length() + self.right.length()
    }

    pub fn a_value(&self) -> usize {
        self.left.a_value() + self.right.a_value()
    }
}

/// Decreasing sort of `target`.
pub fn dominant_sort(target: &[i64]) -> Vec<i64> {
    let mut d = target.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// The longest `w` with `w(D) = target`, where `D` is the decreasing sort.
///
/// Equal values are placed in reverse order, which maximizes the number of
/// inversions; the length equals `#{i<j : t_i <= t_j}`.
pub fn longest_with_image(target: &[i64]) -> Permutation {
    let n = target.len();
    let d = dominant_sort(target);
    let mut winv = vec![0; n];
    let mut i = 0;
    while i < n {
        let v = d[i];
        let mut j = i;
        while j < n && d[j] == v {
            j += 1;
        }
        // D indices i..j hold value v; assign them reversed to target slots.
        let slots: Vec<usize> = (0..n).filter(|&p| target[p] == v).collect();
        for (k, &p) in slots.iter().enumerate() {
            winv[p] = j - 1 - k;
        }
        i = j;
    }
    Permutation(winv).inverse()
}

/// The shortest `w` with `w(D) = target`.
pub fn shortest_with_image(target: &[i64]) -> Permutation {
    let n = target.len();
    let d = dominant_sort(target);
    let mut winv = vec![0; n];
    let mut i = 0;
    while i < n {
        let v = d[i];
        let mut j = i;
        while j < n && d[j] == v {
            j += 1;
        }
        let slots: Vec<usize> = (0..n).filter(|&p| target[p] == v).collect();
        for (k, &p) in slots.iter().enumerate() {
            winv[p] = i + k;
        }
        i = j;
    }
    Permutation(winv).inverse()
}
