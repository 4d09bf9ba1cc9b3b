//! Exact-arithmetic workbench for invariant geometry on homogeneous spaces:
//! Lie algebras with parametric structure constants, Chevalley–Eilenberg
//! cohomology, bracket extension problems, and the para-complex geometry of
//! six-dimensional isotropy modules.
//!
//! All computation is over exact rationals (arbitrary precision, no
//! floating point), so every reported invariant — a cohomology dimension, a
//! constraint ideal, a curvature tensor — is a certificate, not an estimate.

pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod exact;
pub mod extend;
pub mod geometry;
pub mod liealg;
pub mod repthy;
pub mod sample;

pub use error::{Error, Result};
