//! Exact scalar rings and quaternion arithmetic.
//!
//! Quaternions are stored as `a + j·b` with complex `a, b` and the rule
//! `jc = c̄j`. The `a` slot is the part commuting with `i`; `j·b` is the part
//! anticommuting with it. Every formula in the workspace is written against
//! this one convention.

pub mod linalg;
pub mod par;
pub mod poly;
pub mod quat;
pub mod ring;
pub mod scalar;

pub use num_complex::Complex64;
pub use quat::{isplit, qinv, qmul, Quaternion, Q64};
pub use ring::{ComplexRing, ConjRing, Field};
pub use scalar::{rat, GaussRat, Rat, Scalar, ScalarKind};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QError {
    #[error("mixed scalar rings: {0} and {1}")]
    MixedRings(ScalarKind, ScalarKind),
    #[error("inverse of zero")]
    ZeroInverse,
}

/// Shorthand for a complex double.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
