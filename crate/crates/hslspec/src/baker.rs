//! The multiplier Baker function
//! `ψ(z, ζ) = (1 − jπβ̄₀/2·ζ⁻¹)exp(−π²|β₀|²z̄/(4ζ))e^{zζ}` and the
//! logarithmic multipliers `(η, ξ)` read off from lattice characters.

use std::f64::consts::PI;

use geomzero::Jet;
use qcore::{c64, Complex64, Q64};

use crate::data::HslData;
use crate::HslError;

/// `ψ` with analytic first derivatives.
pub fn multiplier_jet(h: &HslData, z: Complex64, zeta: Complex64) -> Result<Jet, HslError> {
    if zeta.norm() == 0.0 {
        return Err(HslError::ZeroZeta);
    }
    let k = PI * PI * h.beta0.norm_sqr() / 4.0;
    let e = (z * zeta - z.conj() * k / zeta).exp();
    let b = -h.dirac_u() / zeta * e;
    let (lz, lzb) = (zeta, -k / zeta);
    Ok(Jet { a: e, b, a_z: lz * e, a_zb: lzb * e, b_z: lz * b, b_zb: lzb * b })
}

pub fn multiplier_baker(h: &HslData, z: Complex64, zeta: Complex64) -> Result<Q64, HslError> {
    Ok(multiplier_jet(h, z, zeta)?.value())
}

/// `(η, ξ)` with `χ(λ_k) = exp(πi(ξλ_k + ηλ̄_k))`, principal logarithms.
/// Other branches differ by a translation `(η, ξ) ↦ (η + α, ξ + ᾱ)`, `α ∈ Λ*`.
pub fn log_spectrum(gens: [Complex64; 2], chi: [Complex64; 2]) -> (Complex64, Complex64) {
    let pi_i = c64(0.0, PI);
    let (r1, r2) = (chi[0].ln() / pi_i, chi[1].ln() / pi_i);
    // [λ₁ λ̄₁; λ₂ λ̄₂]·(ξ, η) = (r₁, r₂)
    let det = gens[0] * gens[1].conj() - gens[0].conj() * gens[1];
    let xi = (r1 * gens[1].conj() - gens[0].conj() * r2) / det;
    let eta = (gens[0] * r2 - r1 * gens[1]) / det;
    (eta, xi)
}

/// `min |F_α(η, ξ)|` over the dual box, with the minimising coefficients.
pub fn min_f_alpha(h: &HslData, eta: Complex64, xi: Complex64, cutoff: i64) -> (f64, (i64, i64)) {
    h.dual_box(cutoff)
        .into_iter()
        .map(|(m, n)| (h.f_alpha(h.dual_point(m, n), eta, xi).norm(), (m, n)))
        .fold((f64::INFINITY, (0, 0)), |best, x| if x.0 < best.0 { x } else { best })
}
