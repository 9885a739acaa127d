//! Exact computations with modulated categories.
//!
//! A modulation assigns algebras to the objects of a finite category, bimodules
//! to its morphisms and invertible compositors to composable pairs. This crate
//! validates such data, builds the associated category algebra, converts between
//! representations and modules over that algebra, and decides the geometric
//! finite-type condition for modules over a presheaf of algebras.
//!
//! All arithmetic is exact (ℚ or F_p) and every canonical form is deterministic.

pub mod algebra;
pub mod corpus;
pub mod equivalence;
pub mod error;
pub mod fincat;
pub mod finiteness;
pub mod linalg;
pub mod mcalgebra;
pub mod modulation;
pub mod par;

pub use error::{Error, Result};
