//! Formal dressing `K⁻¹LK = i∂_y` and the commuting flows it generates.
//!
//! `L = i∂_y + U₀ + Σ_{α≥1} U_α ∂_y^{-α}` with `U₀ = j(u₀₃ + iu₀₄)` and
//! `U_α = u_{α1} + iu_{α2} + j(u_{α3} + iu_{α4})`. Each flow `P = KP₀K⁻¹`
//! acts on the generators through `∂_P L = [L, P₊]`.

mod dress;
mod flows;

pub use dress::{dress, symbolic_l, DressedPair, NonLocal};
pub use flows::{
    flow_generator, flow_p0, flow_table_json, lax_rhs, velocity_tables,
    zero_curvature_residual, Direction, Flow, FlowDerivation,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DressError {
    #[error("window lo_valid = {lo} is too shallow for depth {depth}")]
    WindowTooShallow { lo: i32, depth: usize },
    #[error("L must be i∂_y + lower order terms")]
    BadShape,
    #[error("antiderivative symbols survive in the flow generator at exponent {0}")]
    NonLocalGenerator(i32),
    #[error("Lax equation inconsistent at exponent {0}")]
    CoefficientMismatch(i32),
    #[error("no velocity known for generator u{0}{1}")]
    MissingVelocity(u32, u8),
    #[error("unknown flow name {0:?}")]
    UnknownFlow(String),
    #[error(transparent)]
    Operator(#[from] psdo::PsdError),
}
