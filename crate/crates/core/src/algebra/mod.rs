//! Exact linear algebra and polynomial arithmetic over GF(p) and ℚ.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;

pub use factor::{factor, factor_gfp, factor_q, is_irreducible, DEFAULT_DEGREE_CAP};
pub use field::{Field, Scalar};
pub use matrix::{Matrix, Rref, SpanBuilder, Vector};
pub use poly::{min_poly, squarefree_decomposition, Factorization, Poly};
