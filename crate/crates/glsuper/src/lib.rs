//! Kazhdan-Lusztig combinatorics for the BGG category O of the general linear
//! Lie superalgebra gl(m|n) and of sl(m|n), m != n, with integral weights.
//!
//! The modules build on each other in this order: [`weights`] (labels,
//! linkage, Bruhat order), [`perm`] and [`kl`] (symmetric groups), [`interval`]
//! (truncation to finite intervals), [`tensor`] and [`super_kl`] (block tables),
//! [`engine`] (cached queries), then the invariants in [`homology`],
//! [`complexity`], [`assoc_variety`] and [`atlas`].

pub mod assoc_variety;
pub mod atlas;
pub mod cache;
pub mod complexity;
pub mod engine;
pub mod error;
pub mod g0;
pub mod homology;
pub mod interval;
pub mod kl;
pub mod par;
pub mod perm;
pub mod poly;
pub mod super_kl;
pub mod tensor;
pub mod weights;

pub use engine::Engine;
pub use error::{Error, Result};
pub use interval::Interval;
pub use poly::LaurentPoly;
pub use weights::{Algebra, AlgebraKind, Weight};
