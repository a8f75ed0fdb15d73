//! Doubly periodic maps `f = [ψ(z, Q₀), …, ψ(z, Q_n)] : ℂ/Λ → HPⁿ`, their
//! multipliers and Willmore energy.

use std::fmt::Write;

use qcore::par::{map_indexed, Exec};
use qcore::{Complex64, Q64};
use serde_json::{json, Value};

use crate::lattice::{DivisorS, LatticePair};
use crate::spectral::SpectralDataG0;
use crate::GeomError;

/// Homogeneous coordinates of the torus at `z`, one per `ρ`-orbit in `S`.
pub fn torus_map(
    d: &SpectralDataG0,
    s: &DivisorS,
    z: Complex64,
) -> Result<Vec<Q64>, GeomError> {
    let reps = s.representatives();
    if reps.is_empty() {
        return Err(GeomError::EmptyDivisor);
    }
    let coords = reps.iter().map(|p| d.baker(z, p.eta)).collect::<Result<Vec<_>, _>>()?;
    if coords.iter().all(|q| q.norm() == 0.0) {
        return Err(GeomError::IllPositioned(format!("{z}")));
    }
    Ok(coords)
}

/// `χ(λ_j, Q) = ψ(0,Q)⁻¹ μ(λ_j) ψ(λ_j, Q)` as a quaternion.
pub fn multiplier_quaternion(
    d: &SpectralDataG0,
    lp: &LatticePair,
    eta: Complex64,
    generator: usize,
) -> Result<Q64, GeomError> {
    if !eta.is_finite() {
        return Err(GeomError::AtPuncture);
    }
    let lambda = lp.gens[generator];
    let psi0 = d.baker(Complex64::new(0.0, 0.0), eta)?;
    let psil = d.baker(lambda, eta)?;
    let mu = f64::from(lp.mu[generator]);
    let inv = psi0.inv().ok_or(GeomError::AtPuncture)?;
    Ok(inv.mul(&psil).map(|c| c * mu))
}

/// The multiplier `χ(λ_j, Q)`; at genus zero it is complex,
/// `μ(λ)exp(λεη − λ̄ε̄η⁻¹)`.
pub fn multiplier_map(
    d: &SpectralDataG0,
    lp: &LatticePair,
    eta: Complex64,
    generator: usize,
) -> Result<Complex64, GeomError> {
    Ok(multiplier_quaternion(d, lp, eta, generator)?.a)
}

/// `∫_{ℂ/Λ} |U|² = |ε|²·area(ℂ/Λ)`.
pub fn willmore_energy(d: &SpectralDataG0, lp: &LatticePair) -> f64 {
    d.epsilon.norm_sqr() * lp.area()
}

/// CSV samples of every coordinate at `z = (s/G)λ₁ + (t/G)λ₂`.
///
/// Header `x,y,m,re_a,im_a,re_b,im_b`; rows ordered by `t`, `s`, `m`.
pub fn torus_csv(
    d: &SpectralDataG0,
    lp: &LatticePair,
    s: &DivisorS,
    g: usize,
    exec: Exec,
) -> Result<String, GeomError> {
    let rows = map_indexed(g * g, exec, |k| {
        let (t, sx) = (k / g, k % g);
        let z = lp.gens[0] * (sx as f64 / g as f64) + lp.gens[1] * (t as f64 / g as f64);
        torus_map(d, s, z).map(|c| (z, c))
    });
    let mut out = String::from("x,y,m,re_a,im_a,re_b,im_b\n");
    for row in rows {
        let (z, coords) = row?;
        for (m, q) in coords.iter().enumerate() {
            writeln!(out, "{},{},{},{},{},{},{}", z.re, z.im, m, q.a.re, q.a.im, q.b.re, q.b.im)
                .expect("writing to a String");
        }
    }
    Ok(out)
}

fn pair(c: Complex64) -> Value {
    json!([c.re, c.im])
}

/// JSON metadata for a torus export.
pub fn torus_metadata(d: &SpectralDataG0, lp: &LatticePair, s: &DivisorS) -> Value {
    json!({
        "epsilon": pair(d.epsilon),
        "beta0": pair(lp.beta0),
        "lattice": [pair(lp.gens[0]), pair(lp.gens[1])],
        "S": s.points.iter().map(|p| pair(p.eta)).collect::<Vec<_>>(),
        "degenerate": s.is_degenerate(),
        "willmore": willmore_energy(d, lp),
    })
}
