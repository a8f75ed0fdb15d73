//! Period lattices from a pair of evaluation points, and the divisor `S`.
//!
//! A point `q` with `|q| = 1` gives `β` with `zεq − z̄ε̄q⁻¹ = πi⟨β, z⟩`, i.e.
//! `β = 2iε̄q̄/π`. `ψ(·, q₀)` and `ψ(·, q₁)` share the monodromy `μ` exactly
//! when `(β₁ − β₀)/2` lies in the dual lattice, so the smallest admissible
//! dual lattice is `Λ* = ℤβ₀ ⊕ ℤγ` with `γ = (β₁ − β₀)/2`.

use std::f64::consts::PI;

use qcore::{rat, Complex64, GaussRat, Rat};

use crate::spectral::SpectralDataG0;
use crate::GeomError;

/// Default tolerance for floating-point lattice membership.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `⟨w, z⟩ = (wz̄ + w̄z)/2`.
pub fn inner(w: Complex64, z: Complex64) -> f64 {
    w.re * z.re + w.im * z.im
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticePair {
    pub beta0: Complex64,
    pub beta1: Complex64,
    /// Basis `(β₀, γ)` of `Λ*`.
    pub dual_gens: [Complex64; 2],
    /// The dual basis `(λ₁, λ₂)` of `Λ`.
    pub gens: [Complex64; 2],
    /// `μ(λ_j) = exp(πi⟨β₀, λ_j⟩) ∈ {±1}`.
    pub mu: [i8; 2],
    /// `γ/β₀ = (iq̄₁ − 1)/2`, kept exactly when `q₁` was given exactly.
    pub ratio_exact: Option<GaussRat>,
    pub tol: f64,
}

fn solve2(m: [[f64; 2]; 2], r: [f64; 2]) -> Option<[f64; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det == 0.0 {
        return None;
    }
    Some([(r[0] * m[1][1] - m[0][1] * r[1]) / det, (m[0][0] * r[1] - r[0] * m[1][0]) / det])
}

/// `λ₁, λ₂` with `⟨d_i, λ_j⟩ = δ_ij`.
fn dual_basis(d: [Complex64; 2]) -> Option<[Complex64; 2]> {
    let m = [[d[0].re, d[0].im], [d[1].re, d[1].im]];
    let l1 = solve2(m, [1.0, 0.0])?;
    let l2 = solve2(m, [0.0, 1.0])?;
    Some([Complex64::new(l1[0], l1[1]), Complex64::new(l2[0], l2[1])])
}

fn build(
    d: &SpectralDataG0,
    q1: Complex64,
    ratio_exact: Option<GaussRat>,
) -> Result<LatticePair, GeomError> {
    let tol = DEFAULT_TOL;
    if (q1.norm() - 1.0).abs() > tol {
        return Err(GeomError::NotUnimodular(q1.norm()));
    }
    let i = Complex64::new(0.0, 1.0);
    let beta0 = d.beta0();
    let beta1 = i * d.epsilon.conj() * q1.conj() * (2.0 / PI);
    let cross = (beta0.conj() * beta1).im;
    if cross.abs() <= tol * beta0.norm() * beta1.norm() {
        return Err(GeomError::DegenerateLattice);
    }
    let gamma = (beta1 - beta0) * 0.5;
    let dual_gens = [beta0, gamma];
    let gens = dual_basis(dual_gens).ok_or(GeomError::DegenerateLattice)?;
    let mu = gens.map(|l| {
        let k = inner(beta0, l).round() as i64;
        if k.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    });
    let lp = LatticePair { beta0, beta1, dual_gens, gens, mu, ratio_exact, tol };
    if !lp.contains_dual((beta1 - beta0) * 0.5) {
        return Err(GeomError::HalfCondition);
    }
    Ok(lp)
}

/// The lattice determined by `Q₀` (with `q₀ = i`) and `Q₁`.
pub fn lattice_from_pair(d: &SpectralDataG0, q1: Complex64) -> Result<LatticePair, GeomError> {
    build(d, q1, None)
}

/// As [`lattice_from_pair`], with `q₁` a Gaussian rational on the unit
/// circle; circle membership in [`enumerate_s`] is then decided exactly.
pub fn lattice_from_pair_exact(
    d: &SpectralDataG0,
    q1: &GaussRat,
) -> Result<LatticePair, GeomError> {
    if q1.norm_sqr() != rat(1, 1) {
        return Err(GeomError::NotUnimodular(q1.to_complex64().norm()));
    }
    // γ/β₀ = (β₁/β₀ − 1)/2 and β₁/β₀ = iq̄₁
    let ratio = (&(&GaussRat::i() * &q1.conj()) - &GaussRat::one()).scale(&rat(1, 2));
    build(d, q1.to_complex64(), Some(ratio))
}

impl LatticePair {
    /// Real coordinates of `α` in the basis `(β₀, γ)`.
    pub fn dual_coords(&self, alpha: Complex64) -> [f64; 2] {
        // ⟨α, λ_j⟩ reads off the coefficients
        [inner(alpha, self.gens[0]), inner(alpha, self.gens[1])]
    }

    pub fn contains_dual(&self, alpha: Complex64) -> bool {
        self.dual_coords(alpha).iter().all(|c| (c - c.round()).abs() < self.tol)
    }

    pub fn dual_point(&self, m: i64, n: i64) -> Complex64 {
        self.dual_gens[0] * m as f64 + self.dual_gens[1] * n as f64
    }

    pub fn lattice_point(&self, m: i64, n: i64) -> Complex64 {
        self.gens[0] * m as f64 + self.gens[1] * n as f64
    }

    /// `μ(λ) = exp(πi⟨β₀, λ⟩)`.
    pub fn mu_of(&self, lambda: Complex64) -> Complex64 {
        (Complex64::new(0.0, PI * inner(self.beta0, lambda))).exp()
    }

    pub fn area(&self) -> f64 {
        (self.gens[0].conj() * self.gens[1]).im.abs()
    }

    /// Is `mβ₀ + nγ` on the circle `|α| = |β₀|`?
    fn on_circle(&self, m: i64, n: i64) -> bool {
        match &self.ratio_exact {
            Some(w) => {
                let c = &GaussRat::from_int(m) + &w.scale(&Rat::from_integer(n.into()));
                c.norm_sqr() == rat(1, 1)
            }
            None => {
                let w = self.dual_gens[1] / self.dual_gens[0];
                ((Complex64::new(m as f64, 0.0) + w * n as f64).norm_sqr() - 1.0).abs() < self.tol
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorPoint {
    pub m: i64,
    pub n: i64,
    pub alpha: Complex64,
    /// `η = iᾱ/β̄₀`.
    pub eta: Complex64,
}

/// The set `S`; it is closed under `α ↦ −α`, which is `ρ` on `η`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorS {
    pub points: Vec<DivisorPoint>,
    pub bound: i64,
}

impl DivisorS {
    /// One point from each `ρ`-orbit, starting with `α = β₀`. These index the
    /// homogeneous coordinates of the torus.
    pub fn representatives(&self) -> Vec<&DivisorPoint> {
        let mut reps: Vec<&DivisorPoint> =
            self.points.iter().filter(|p| p.n > 0 || (p.n == 0 && p.m > 0)).collect();
        reps.sort_by_key(|p| (p.n != 0 || p.m != 1, p.n, p.m));
        reps
    }

    /// Only `±β₀`: the map lands in `HP⁰`.
    pub fn is_degenerate(&self) -> bool {
        self.points.len() <= 2
    }
}

/// Lattice points `α = mβ₀ + nγ` with `|α| = |β₀|` and `(α − β₀)/2 ∈ Λ*`,
/// searched in the box `|m|, |n| ≤ bound`.
///
/// In the basis `(β₀, γ)` the half-condition says `m` is odd and `n` even.
pub fn enumerate_s(lp: &LatticePair, bound: i64) -> DivisorS {
    let i = Complex64::new(0.0, 1.0);
    let mut points = Vec::new();
    for n in (-bound..=bound).filter(|n| n.rem_euclid(2) == 0) {
        for m in (-bound..=bound).filter(|m| m.rem_euclid(2) == 1) {
            if lp.on_circle(m, n) {
                let alpha = lp.dual_point(m, n);
                let eta = i * alpha.conj() / lp.beta0.conj();
                points.push(DivisorPoint { m, n, alpha, eta });
            }
        }
    }
    DivisorS { points, bound }
}
