//! Baker functions of finite type defined by evaluation conditions, the
//! Dirac potential read off from them, and the Darboux transform
//! `ψ ↦ [(∂_z − v)ψ]·(ζ − κ)⁻¹`.
//!
//! Every Baker function is handled through its tail `ψ·e^{−zζ}`, which stays
//! bounded where `ψ` itself overflows.

pub mod conditions;
pub mod darboux;
pub mod source;

pub use conditions::{scan_big_cell, BigCellScan, Condition, ConditionSystem, NodalBaker};
pub use darboux::{darboux_periodicity_check, tildef_residual, Darboux, MonodromyReport};
pub use source::{
    dirac_residual, fd_tail_dz, leading_coefficient, potential_field, BakerSource, GenusZero,
    TailJet, Vacuum, FD_STEP,
};

use qcore::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NodalError {
    #[error("condition {index}: {reason}")]
    BadCondition { index: usize, reason: String },
    #[error("singular condition system at z = {z} (condition number {cond:e})")]
    Singular { z: Complex64, cond: f64 },
    #[error("ψ(z, κ) vanishes at z = {0}: the transform leaves the big cell")]
    SingularTransform(Complex64),
    #[error("|κ| = {0} must exceed 1")]
    KappaInside(f64),
    #[error("ζ = κ is the removable point of the transformed Baker function")]
    AtKappa,
    #[error("κ = {0} is a divisor point")]
    KappaAtDivisor(Complex64),
    #[error(transparent)]
    Geom(#[from] geomzero::GeomError),
}
