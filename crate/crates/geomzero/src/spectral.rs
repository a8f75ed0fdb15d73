//! Spectral data `(ℂ∞, ρ, P, ε)` and its closed-form Baker function
//!
//! `ψ(z, η) = (1 − jη⁻¹)·exp(zεη − z̄ε̄η⁻¹)`, normalised so that `q₀ = i`.
//! In the spectral parameter `ζ = εη` this reads
//! `ψ = (1 − jεζ⁻¹)·exp(zζ − z̄|ε|²ζ⁻¹)`.

use std::f64::consts::PI;

use qcore::{Complex64, Quaternion, Q64};

use crate::dirac::Jet;
use crate::GeomError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralDataG0 {
    pub epsilon: Complex64,
}

impl SpectralDataG0 {
    pub fn new(epsilon: Complex64) -> Result<Self, GeomError> {
        let r = epsilon.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(GeomError::EpsilonOutOfRange(r));
        }
        Ok(SpectralDataG0 { epsilon })
    }

    pub fn r(&self) -> f64 {
        self.epsilon.norm()
    }

    /// `β₀ = 2ε̄/π`, from `εq₀ = πiβ̄₀/2` with `q₀ = i`.
    pub fn beta0(&self) -> Complex64 {
        self.epsilon.conj() * (2.0 / PI)
    }

    /// The potential `u` with `U = ju`.
    pub fn dirac_u(&self) -> Complex64 {
        self.epsilon
    }

    /// The fixed-point free involution `η ↦ −1/η̄`.
    pub fn rho(eta: Complex64) -> Complex64 {
        -1.0 / eta.conj()
    }

    /// The same involution in the `ζ` coordinate: `ζ ↦ −|ε|²/ζ̄`.
    pub fn rho_zeta(&self, zeta: Complex64) -> Complex64 {
        -self.epsilon.norm_sqr() / zeta.conj()
    }

    /// `E(z, η) = exp(zεη − z̄ε̄η⁻¹)`.
    pub fn exponential(&self, z: Complex64, eta: Complex64) -> Complex64 {
        (z * self.epsilon * eta - z.conj() * self.epsilon.conj() / eta).exp()
    }

    pub fn baker(&self, z: Complex64, eta: Complex64) -> Result<Q64, GeomError> {
        Ok(self.jet(z, eta)?.value())
    }

    /// `ψ` together with its analytic first derivatives.
    pub fn jet(&self, z: Complex64, eta: Complex64) -> Result<Jet, GeomError> {
        if eta == Complex64::new(0.0, 0.0) {
            return Err(GeomError::AtPuncture);
        }
        let e = self.exponential(z, eta);
        let inv = 1.0 / eta;
        let ez = self.epsilon * eta; // ∂_z log E
        let ezb = -self.epsilon.conj() * inv; // ∂_z̄ log E
        let b = -inv * e;
        Ok(Jet { a: e, b, a_z: ez * e, a_zb: ezb * e, b_z: ez * b, b_zb: ezb * b })
    }

    /// `ψ(z, η)·e^{−zεη} = (1 − jη⁻¹)·exp(−z̄ε̄η⁻¹)`, finite as `η → ∞`.
    pub fn tail(&self, z: Complex64, eta: Complex64) -> Result<Q64, GeomError> {
        if eta == Complex64::new(0.0, 0.0) {
            return Err(GeomError::AtPuncture);
        }
        let e = (-z.conj() * self.epsilon.conj() / eta).exp();
        Ok(Quaternion::new(e, -e / eta))
    }

    /// `ψ` in the spectral parameter `ζ = εη`.
    pub fn baker_zeta(&self, z: Complex64, zeta: Complex64) -> Result<Q64, GeomError> {
        self.baker(z, zeta / self.epsilon)
    }

    /// Data of the `t₀`-translate: `ψ_{W(t₀)} = e^{−it₀}ψ_W e^{it₀}` pointwise in `ζ`,
    /// which amounts to `ε ↦ e^{2it₀}ε`.
    pub fn t0_action(&self, t0: f64) -> SpectralDataG0 {
        SpectralDataG0 { epsilon: self.epsilon * Complex64::from_polar(1.0, 2.0 * t0) }
    }

    /// `ψ(0, η) = 1 − jη⁻¹`.
    pub fn initial_value(eta: Complex64) -> Q64 {
        Quaternion::new(Complex64::new(1.0, 0.0), -1.0 / eta)
    }
}
