//! Exact scalars and dense linear algebra over ℚ and F_p.
//!
//! Every construction in this crate bottoms out in the canonical forms here:
//! RREF bases for subspaces, non-pivot coordinates for quotients, and
//! free-variables-zero solutions for linear systems. All of them are
//! deterministic, so downstream output is reproducible bit for bit.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{rref, solve, Matrix};
pub use scalar::{axpy, is_zero_vector, Field, Scalar};
pub use subspace::{kernel, quotient, QuotientSpace, Subspace};
