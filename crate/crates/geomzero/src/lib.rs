//! The genus-zero spectral data: closed-form Baker functions with constant
//! Dirac potential `U = jε`, the lattices on which they become doubly
//! periodic, the divisor `S`, and the resulting tori in `HPⁿ`.

pub mod dirac;
pub mod lattice;
pub mod spectral;
pub mod torus;

pub use dirac::{dirac_apply, dirac_residual, Grid, Jet, Potential};
pub use lattice::{
    enumerate_s, lattice_from_pair, lattice_from_pair_exact, DivisorPoint, DivisorS, LatticePair,
};
pub use spectral::SpectralDataG0;
pub use torus::{multiplier_map, multiplier_quaternion, torus_csv, torus_map, torus_metadata, willmore_energy};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("|ε| = {0} must lie strictly between 0 and 1")]
    EpsilonOutOfRange(f64),
    #[error("η = 0 is the puncture ρP")]
    AtPuncture,
    #[error("|q₁| = {0} is not 1")]
    NotUnimodular(f64),
    #[error("β₀ and β₁ are linearly dependent over ℝ")]
    DegenerateLattice,
    #[error("(β₁ − β₀)/2 is not in the dual lattice")]
    HalfCondition,
    #[error("grid too coarse: need at least {need} points per axis, got {got}")]
    GridTooCoarse { need: usize, got: usize },
    #[error("field length {got} does not match the grid ({need})")]
    FieldShape { need: usize, got: usize },
    #[error("divisor is empty")]
    EmptyDivisor,
    #[error("all homogeneous coordinates vanish at z = {0}")]
    IllPositioned(String),
}
