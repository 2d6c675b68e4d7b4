//! Closed-form determinants and inverses of small square matrices.
//!
//! Every entry of an inverse is written as an explicit sum of products of
//! the original elements. The row and column indices inside those products
//! come from discrete index functions (Kronecker delta, discrete Heaviside
//! step) and their encodings through gamma, Bessel, cosine and Hermite
//! functions. Independent brute-force oracles and a Monte-Carlo harness
//! check the formulas.
//!
//! Indices are 1-based at every public boundary.

#![forbid(unsafe_code)]

pub mod apps;
pub mod error;
pub mod gfn;
pub mod harness;
pub mod idx;
pub mod inv;
pub mod mat;
pub mod oracle;

pub use error::{Error, Result};
pub use gfn::ReprKind;
pub use mat::{Complex64, Matrix};
