//! Exact arithmetic in `S_d` and `B_d`.
//!
//! Convention for the whole crate: products read left to right, so
//! `a.then(b)` means "a, then b" and the monodromy of a concatenated loop
//! `ℓℓ'` is `ρ(ℓ).then(ρ(ℓ'))`.

pub mod braid;
pub mod free;
pub mod perm;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

pub use braid::{simple_certificate, BraidWord, Canonical, SimpleCheck, DEFAULT_CONJUGATOR_BOUND};
pub use free::FreeWord;
pub use perm::Permutation;

use crate::error::Result;

/// Which group a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Permutation,
    Braid,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Permutation => "permutation",
            Flavor::Braid => "braid",
        }
    }
}

/// Three-valued answer of the simplicity test for a single element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    NotSimple,
    Undetermined,
}

/// The group operations shared by [`Permutation`] and [`BraidWord`].
///
/// `Eq` and `Hash` are group equality.
pub trait GroupElement: Clone + Eq + Hash + Debug + Display + Send + Sync {
    const FLAVOR: Flavor;

    fn identity(d: usize) -> Self;
    fn degree(&self) -> usize;
    /// `self` first, then `other`.
    fn then(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// Standard generator `τ_i` or `σ_i^sign`.
    fn standard_generator(d: usize, i: usize, sign: i8) -> Self;
    /// Projection to `S_d` (identity on permutations).
    fn to_permutation(&self) -> Permutation;
    fn parse_element(text: &str, d: usize) -> Result<Self>;
    /// Transposition test in `S_d`; bounded conjugacy test in `B_d`.
    fn simplicity(&self, bound: usize) -> Simplicity;
    /// Image in `Z` under the abelianization (always 0 for permutations).
    fn exponent_sum(&self) -> i64;

    /// `g⁻¹ · self · g`.
    fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().then(self).then(g)
    }
}

impl GroupElement for Permutation {
    const FLAVOR: Flavor = Flavor::Permutation;

    fn identity(d: usize) -> Self {
        Permutation::identity(d)
    }
    fn degree(&self) -> usize {
        Permutation::degree(self)
    }
    fn then(&self, other: &Self) -> Self {
        Permutation::then(self, other)
    }
    fn inverse(&self) -> Self {
        Permutation::inverse(self)
    }
    fn is_identity(&self) -> bool {
        Permutation::is_identity(self)
    }
    fn standard_generator(d: usize, i: usize, _sign: i8) -> Self {
        Permutation::tau(d, i).expect("generator index in range")
    }
    fn to_permutation(&self) -> Permutation {
        *self
    }
    fn parse_element(text: &str, d: usize) -> Result<Self> {
        Permutation::parse(text, d)
    }
    fn simplicity(&self, _bound: usize) -> Simplicity {
        if self.is_transposition() {
            Simplicity::Simple
        } else {
            Simplicity::NotSimple
        }
    }
    fn exponent_sum(&self) -> i64 {
        0
    }
    fn conjugate_by(&self, g: &Self) -> Self {
        Permutation::conjugate_by(self, g)
    }
}

impl GroupElement for BraidWord {
    const FLAVOR: Flavor = Flavor::Braid;

    fn identity(d: usize) -> Self {
        BraidWord::identity(d)
    }
    fn degree(&self) -> usize {
        BraidWord::degree(self)
    }
    fn then(&self, other: &Self) -> Self {
        BraidWord::then(self, other)
    }
    fn inverse(&self) -> Self {
        BraidWord::inverse(self)
    }
    fn is_identity(&self) -> bool {
        BraidWord::is_identity(self)
    }
    fn standard_generator(d: usize, i: usize, sign: i8) -> Self {
        BraidWord::generator(d, i, sign).expect("generator index in range")
    }
    fn to_permutation(&self) -> Permutation {
        self.project()
    }
    fn parse_element(text: &str, d: usize) -> Result<Self> {
        BraidWord::parse(text, d)
    }
    fn simplicity(&self, bound: usize) -> Simplicity {
        match simple_certificate(self, bound) {
            SimpleCheck::Simple { .. } => Simplicity::Simple,
            SimpleCheck::NotSimple => Simplicity::NotSimple,
            SimpleCheck::Undetermined => Simplicity::Undetermined,
        }
    }
    fn exponent_sum(&self) -> i64 {
        BraidWord::exponent_sum(self)
    }
}
