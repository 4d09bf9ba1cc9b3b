//! Exact arithmetic: rational scalars, multivariate and univariate
//! polynomials, matrices, linear algebra, and Gröbner bases. Nothing in this
//! module (or anywhere downstream) touches floating point.

pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod unipoly;

pub use groebner::{compress_generators, ideals_equal, GroebnerBasis, GroebnerCaps};
pub use matrix::Matrix;
pub use poly::{MonomialOrder, OrderKind, Poly};
pub use scalar::Scalar;
pub use unipoly::UniPoly;
