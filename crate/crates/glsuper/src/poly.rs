//! Sparse Laurent polynomials in `q` with exact integer coefficients.
//!
//! Terms are kept sorted by exponent with no zero coefficients, so structural
//! equality is mathematical equality. The serialized form is the list of
//! `[exponent, coefficient]` pairs in ascending exponent order.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<(i32, i64)>", into = "Vec<(i32, i64)>")]
pub struct LaurentPoly {
    terms: Vec<(i32, i64)>,
}

impl From<Vec<(i32, i64)>> for LaurentPoly {
    fn from(terms: Vec<(i32, i64)>) -> Self {
        LaurentPoly::from_terms(terms)
    }
}

impl From<LaurentPoly> for Vec<(i32, i64)> {
    fn from(p: LaurentPoly) -> Self {
        p.terms
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coef: i64) -> Self {
        if coef == 0 {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(exp, coef)] }
        }
    }

    /// `q - q^{-1}`, which shows up in every quantum commutator.
    pub fn q_minus_qinv() -> Self {
        LaurentPoly { terms: vec![(-1, -1), (1, 1)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut t: Vec<(i32, i64)> = terms.into_iter().collect();
        t.sort_unstable_by_key(|&(e, _)| e);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(t.len());
        for (e, c) in t {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        LaurentPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        match self.terms.binary_search_by_key(&exp, |&(e, _)| e) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.iter().map(|t| t.1).sum()
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().rev().map(|&(e, c)| (-e, c)).collect() }
    }

    /// Substitution `q -> -q`.
    pub fn at_neg_q(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|&(e, c)| (e, if e % 2 == 0 { c } else { -c })).collect() }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect() }
    }

    /// Substitution `q -> q^k` for `k != 0`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0, "substitute_power needs a nonzero exponent");
        Self::from_terms(self.terms.iter().map(|&(e, c)| (e * k, c)))
    }

    /// Terms of strictly positive degree.
    pub fn positive_part(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().copied().filter(|t| t.0 > 0).collect() }
    }

    pub fn is_bar_antisymmetric(&self) -> bool {
        (self + &self.bar()).is_zero()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.iter().all(|t| t.1 >= 0)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|&(e, x)| (e, x * c)).collect() }
    }

    /// `self += a * b`, the hot loop of every triangular solve here.
    pub fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a * b;
        *self += &prod;
    }

    fn merge(&self, other: &LaurentPoly, sign: i64) -> LaurentPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1 + sign * b[j].1;
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(e, c)| (e, sign * c)));
        LaurentPoly { terms: out }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, 1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, -1)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            self.terms = rhs.terms.clone();
            return;
        }
        *self = self.merge(rhs, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, -1);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = rhs.terms[0];
            return LaurentPoly { terms: self.terms.iter().map(|&(x, y)| (x + e, y * c)).collect() };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        LaurentPoly::from_terms(
            self.terms.iter().flat_map(|&(e1, c1)| rhs.terms.iter().map(move |&(e2, c2)| (e1 + e2, c1 * c2))),
        )
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, &(e, c)) in self.terms.iter().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, a) => write!(f, "{a}q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, a) => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}
