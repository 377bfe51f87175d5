//! Combinatorics of simple branched coverings of the 2-sphere and their
//! braided lifts.
//!
//! * [`algebra`]: permutations, braid words, the braid word problem.
//! * [`hurwitz`]: Hurwitz systems, Hurwitz moves, HC-equivalence, normal forms.
//! * [`covering`]: Euler characteristic and genus of the covering surface.
//! * [`chart`]: slice-encoded permutation and braid charts.
//! * [`link`]: PD diagrams, simple colorings, tangle replacement, braid lifts.
//! * [`quandle`]: finite quandles, `T_d`, the lazy quandle `A_d`, lifting.
//!
//! Products are read left to right everywhere: `a.then(b)` applies `a` first.

// `BraidWord` hashes its canonical form, which is computed once and then fixed.
#![allow(clippy::mutable_key_type)]

pub mod algebra;
pub mod chart;
pub mod covering;
mod dsu;
pub mod error;
pub mod hurwitz;
pub mod link;
pub mod quandle;

pub use algebra::{BraidWord, Flavor, FreeWord, GroupElement, Permutation, Simplicity};
pub use error::{Error, Result};
pub use hurwitz::{Direction, Equivalence, HurwitzSystem, Move};

/// Largest supported degree `d`.
pub const MAX_DEGREE: usize = 16;
