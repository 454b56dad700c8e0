//! Exact computations for the extension property of linear codes over
//! finite Frobenius bimodules: finite rings and their character modules,
//! cyclotomic arithmetic, the semigroup-ring calculus, Möbius functions of
//! cyclic submodule posets, the recursive certificate `w ⊛ γ = w_Hom`, and
//! brute-force isometry checks at small scale.

// Ring and semigroup tables are indexed by element; explicit index loops read
// more naturally than iterator chains there.
#![allow(clippy::needless_range_loop)]

pub mod codes;
pub mod cyclo;
pub mod dualmod;
pub mod error;
pub mod extension;
pub mod finring;
mod lattice;
mod linalg;
pub mod mobius;
pub mod sgring;

pub mod cli;

pub use cyclo::Cyclo;
pub use dualmod::{generating_character_search, Character, FrobeniusBimodule};
pub use error::{Error, Result};
pub use finring::{FiniteRing, RingSpec, Side, Submodule};
