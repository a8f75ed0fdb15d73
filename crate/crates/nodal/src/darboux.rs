//! The Darboux transform `ψ^κ = [(∂_z − v)ψ]·(ζ − κ)⁻¹`, `v = ∂_zφ·φ⁻¹`,
//! `φ = ψ(·, κ)`.
//!
//! `ψ^κ` is the Baker function of `W′ = W(1 − λζ)⁻¹` with `λ = 1/κ`. The pair
//! `(W′, W = W′(1 − λζ))` satisfies `∂_zψ_W = bψ_W − λ⁻¹ψ^κ(1 − λζ)` with
//! `b = ∂_zψ_W(κ)·ψ_W(κ)⁻¹`.

use geomzero::{DivisorS, LatticePair};
use qcore::{Complex64, Q64};

use crate::source::{fd_tail_dz, BakerSource, GenusZero, FD_STEP};
use crate::NodalError;

/// Relative size below which `φ = ψ(z, κ)` counts as zero.
const SINGULAR_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Darboux<S> {
    pub source: S,
    pub kappa: Complex64,
}

impl<S: BakerSource> Darboux<S> {
    pub fn new(source: S, kappa: Complex64) -> Result<Self, NodalError> {
        if kappa.norm().is_nan() || kappa.norm() <= 1.0 {
            return Err(NodalError::KappaInside(kappa.norm()));
        }
        Ok(Darboux { source, kappa })
    }

    /// `v = ∂_zφ·φ⁻¹`; the exponential factors cancel, so tails suffice.
    pub fn v(&self, z: Complex64) -> Result<Q64, NodalError> {
        let phi = self.source.tail(z, self.kappa)?;
        let dphi = self.source.tail_dz(z, self.kappa)?;
        if phi.norm() <= SINGULAR_TOL * dphi.norm().max(1.0) {
            return Err(NodalError::SingularTransform(z));
        }
        let inv = phi.inv().ok_or(NodalError::SingularTransform(z))?;
        Ok(dphi.mul(&inv))
    }
}

impl<S: BakerSource> BakerSource for Darboux<S> {
    fn tail(&self, z: Complex64, zeta: Complex64) -> Result<Q64, NodalError> {
        if (zeta - self.kappa).norm() < 1e-12 * self.kappa.norm() {
            return Err(NodalError::AtKappa);
        }
        let v = self.v(z)?;
        let num = self.source.tail_dz(z, zeta)?.sub(&v.mul(&self.source.tail(z, zeta)?));
        Ok(num.mul_complex_right(&(1.0 / (zeta - self.kappa))))
    }
    fn contour_radius(&self) -> f64 {
        self.source.contour_radius().max(2.0 * self.kappa.norm())
    }
}

/// Relative residual of `∂_zψ_W = bψ_W − λ⁻¹ψ^κ(1 − λζ)` at `(z, ζ)`.
///
/// `∂_zψ_W` and `b` come from finite differences, independently of the
/// derivative the transform itself uses.
pub fn tildef_residual<S: BakerSource + Clone>(
    source: &S,
    kappa: Complex64,
    z: Complex64,
    zeta: Complex64,
) -> Result<f64, NodalError> {
    let dt = Darboux::new(source.clone(), kappa)?;
    let lambda = 1.0 / kappa;
    let d_w = fd_tail_dz(source, z, zeta, FD_STEP)?;
    let d_k = fd_tail_dz(source, z, kappa, FD_STEP)?;
    let phi = source.tail(z, kappa)?;
    let b = d_k.mul(&phi.inv().ok_or(NodalError::SingularTransform(z))?);
    let rhs = b
        .mul(&source.tail(z, zeta)?)
        .sub(&dt.tail(z, zeta)?.mul_complex_right(&((1.0 - lambda * zeta) / lambda)));
    Ok(d_w.sub(&rhs).norm() / d_w.norm().max(1.0))
}

/// Largest relative defect `|ψ^κ(z+λ_g, Q) − μ(λ_g)⁻¹ψ^κ(z, Q)|` over the
/// divisor and the sample points, per lattice generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonodromyReport {
    pub defects: [f64; 2],
}

/// Periodicity of the genus-zero Darboux transform on the divisor `S`.
pub fn darboux_periodicity_check(
    g0: &GenusZero,
    lp: &LatticePair,
    s: &DivisorS,
    kappa: Complex64,
    zs: &[Complex64],
) -> Result<MonodromyReport, NodalError> {
    let zetas: Vec<Complex64> = s.points.iter().map(|p| g0.epsilon * p.eta).collect();
    if let Some(bad) = zetas.iter().find(|&&w| (w - kappa).norm() < 1e-9) {
        return Err(NodalError::KappaAtDivisor(*bad));
    }
    let dt = Darboux::new(*g0, kappa)?;
    let mut defects = [0.0f64; 2];
    for (g, defect) in defects.iter_mut().enumerate() {
        let lambda = lp.gens[g];
        let mu_inv = 1.0 / f64::from(lp.mu[g]);
        for &zeta in &zetas {
            for &z in zs {
                // divide both sides by e^{zζ}
                let shifted = dt.tail(z + lambda, zeta)?.mul_complex_right(&(lambda * zeta).exp());
                let base = dt.tail(z, zeta)?;
                let d = shifted.sub(&base.mul_complex_right(&Complex64::new(mu_inv, 0.0)));
                *defect = defect.max(d.norm() / base.norm());
            }
        }
    }
    Ok(MonodromyReport { defects })
}
