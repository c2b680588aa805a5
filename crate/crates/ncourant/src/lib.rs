//! Exact computer algebra for graded quiver path algebras: non-commutative
//! forms, double derivations, double Poisson and Schouten–Nijenhuis brackets,
//! bi-symplectic structures and derived double Courant brackets.
//!
//! Coefficients are exact rationals. Every operation is pure; elements carry
//! a shared handle to their quiver.

pub mod algebra;
pub mod bisymplectic;
pub mod courant;
pub mod doubleder;
pub mod error;
pub mod forms;
pub mod frontend;
pub mod polyvec;
pub mod quiver;
pub mod report;

pub use algebra::{AlgElem, Elem, FormElem, Letter, PolyVec, Tensor, Word, Q};
pub use error::{Error, Result};
pub use quiver::{Arrow, GradedQuiver};
pub use report::CheckReport;
