//! Finite inverse semigroups, additively idempotent semirings, and
//! exhaustive identity checking over their Cayley tables.
//!
//! The crate is organised bottom-up: [`algebra`] holds the dense table
//! representation, [`families`] builds the concrete algebras, [`order`]
//! adds the natural order and its semiring, [`terms`] the identity
//! families, [`checker`] the substitution search and [`structure`] the
//! ideal theory.

pub mod algebra;
pub mod checker;
pub mod error;
pub mod families;
pub mod order;
pub mod structure;
pub mod terms;

pub use algebra::FiniteSemigroup;
pub use error::{Error, Result};
pub use order::AiSemiring;
