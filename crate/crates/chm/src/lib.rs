//! Exact-arithmetic toolkit for complex Hadamard matrices: construction,
//! verification, monomial equivalence, real-entry censuses, exhaustive
//! small-order sweeps, and screening against membership in a set of four
//! mutually unbiased bases in dimension six.
//!
//! Matrices carry unit-modulus entries stored as exact rational turns
//! wherever possible, so orthogonality and entry classification are decided
//! in cyclotomic fields with no floating-point tolerance. See the
//! `examples/` directory for runnable tours of each capability.

pub mod cli;
pub mod constructions;
pub mod cyclotomic;
pub mod equivalence;
pub mod io;
pub mod matrix;
pub mod mubscreen;
pub mod phase;
pub mod search;

pub use equivalence::{are_equivalent, dephase, random_orbit, MonomialTransform};
pub use matrix::{Census, OrthoCheck, RowBlock, UnitMatrix};
pub use phase::{EntryClass, Phase};
