//! A finite-rank model of the Grassmannian of `H = L²(S¹, ℂ²)`.
//!
//! A point `W` is described on a Laurent window: `W ⊇ ζⁿH₊` and `W` is
//! spanned modulo `ζⁿH₊` by `n` Laurent polynomials with exponents in
//! `[lo, n)`. Pairs `(u, v)` are interleaved as `u(ζ²) + ζv(ζ²)`, so every
//! determinant is taken in the scalar picture. The quaternionic structure is
//! `j(u, v) = (−v̄, ū)` with coefficientwise conjugation.

pub mod baker;
pub mod fixtures;
pub mod frame;
pub mod index;
pub mod laurent;
pub mod report;
pub mod tau;

pub use baker::{baker_at_origin, baker_from_frame, ExactCondition};
pub use frame::{plucker, plucker_support, support_law_violations, FiniteRankFrame};
pub use index::IndexSet;
pub use laurent::{deinterleave, exp_series, interleave, Laurent};
pub use report::frame_report;
pub use tau::{
    big_cell_rank, diagonal_lead, diagonal_poly, factorization_sign, lowest_term, schur_tau,
    tau, tau_hat, tau_w, z1_poly, DiagonalLead, Flow,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TauError {
    #[error("outside the window: {0}")]
    OutsideWindow(String),
    #[error("expected {expected} frame vectors, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("frame vectors are linearly dependent")]
    Dependent,
    #[error("frame is not closed under j")]
    NotQuaternionic,
    #[error("frame is not a window of pairs (even bounds required)")]
    NotPaired,
    #[error("index set has virtual cardinal {0}, expected 0")]
    NonzeroCardinal(i64),
    #[error("translate is outside the big cell")]
    Singular,
    #[error("bad condition {index}: {reason}")]
    BadCondition { index: usize, reason: String },
}
