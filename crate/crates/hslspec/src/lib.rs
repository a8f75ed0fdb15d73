//! The Hamiltonian-stationary Dirac operator `𝒟 = ∂_z̄ + (π/2)β₀j`: its
//! logarithmic multiplier spectrum `∪_α {F_α = 0}`, the singularities of the
//! quotient by `Λ*`, the multiplier Baker function, and a numeric scan that
//! cross-checks the spectrum from the per-`α` 2×2 systems.

pub mod baker;
pub mod data;
pub mod spectrum;

pub use baker::{log_spectrum, min_f_alpha, multiplier_baker, multiplier_jet};
pub use data::HslData;
pub use qcore::poly::BiPoly;
pub use spectrum::{
    classify_exact, f_alpha_exact, f_alpha_poly, hsl_matrix, hsl_matrix_poly, identification_roots,
    numeric_spectrum, spectrum_json, Singularity, SpectrumPoint, SpectrumScan,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HslError {
    #[error("β₀ must be non-zero")]
    ZeroBeta0,
    #[error("β₀ is not in the dual lattice: ⟨β₀, λ⟩ = {0}")]
    BetaNotDual(String),
    #[error("lattice generators are linearly dependent over ℝ")]
    DegenerateLattice,
    #[error("cutoff must be at least 1")]
    CutoffTooSmall,
    #[error("ζ = 0 is not allowed")]
    ZeroZeta,
}
