//! The components `C_α = {F_α = 0}`, their identifications under `Λ*`, and a
//! numeric determinant scan of the per-`α` systems.
//!
//! The Fourier mode `α` of a solution solves
//! `[[α + η − β₀/2, iβ₀/2], [−iβ̄₀/2, ᾱ + ξ − β̄₀/2]]·φ_α = 0`, whose
//! determinant is `F_α(η, ξ) = (α + η − β₀/2)(ᾱ + ξ − β̄₀/2) − |β₀|²/4`.

use std::fmt::Write;

use geomzero::Grid;
use qcore::par::{map_indexed, Exec};
use qcore::{c64, Complex64, ConjRing, GaussRat};
use serde_json::{json, Value};

use crate::data::HslData;
use qcore::poly::BiPoly;
use crate::HslError;

/// Singularity created by identifying `C₀` with its translate by `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Singularity {
    DoublePoint,
    Cusp,
    None,
}

impl Singularity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Singularity::DoublePoint => "double",
            Singularity::Cusp => "cusp",
            Singularity::None => "none",
        }
    }
}

/// The 2×2 matrix of the mode `α` at `(η, ξ)`.
pub fn hsl_matrix(
    beta0: Complex64,
    alpha: Complex64,
    eta: Complex64,
    xi: Complex64,
) -> [[Complex64; 2]; 2] {
    let i = c64(0.0, 1.0);
    [
        [alpha + eta - beta0 / 2.0, i * beta0 / 2.0],
        [-i * beta0.conj() / 2.0, alpha.conj() + xi - beta0.conj() / 2.0],
    ]
}

/// The same matrix with polynomial entries in `(x, y) = (η, ξ)`.
pub fn hsl_matrix_poly(alpha: &GaussRat, beta0: &GaussRat) -> [[BiPoly; 2]; 2] {
    let half = GaussRat::from_ratio(1, 2);
    let b2 = beta0.mul(&half);
    [
        [
            BiPoly::x().add(&BiPoly::constant(alpha.sub(&b2))),
            BiPoly::constant(b2.times_i()),
        ],
        [
            BiPoly::constant(b2.conj().times_i().neg()),
            BiPoly::y().add(&BiPoly::constant(alpha.conj().sub(&b2.conj()))),
        ],
    ]
}

/// `F_α` by its monomial coefficients:
/// `ηξ + (α − β₀/2)ξ + (ᾱ − β̄₀/2)η + |α − β₀/2|² − |β₀|²/4`.
pub fn f_alpha_poly(alpha: &GaussRat, beta0: &GaussRat) -> BiPoly {
    let half = GaussRat::from_ratio(1, 2);
    let s = alpha.sub(&beta0.mul(&half));
    let c0 = GaussRat::from_rat(s.norm_sqr()).sub(&GaussRat::from_rat(beta0.norm_sqr()).mul(&GaussRat::from_ratio(1, 4)));
    BiPoly::monomial(GaussRat::one(), 1, 1)
        .add(&BiPoly::monomial(s.clone(), 0, 1))
        .add(&BiPoly::monomial(s.conj(), 1, 0))
        .add(&BiPoly::constant(c0))
}

pub fn f_alpha_exact(alpha: &GaussRat, beta0: &GaussRat, eta: &GaussRat, xi: &GaussRat) -> GaussRat {
    let half = GaussRat::from_ratio(1, 2);
    let b2 = beta0.mul(&half);
    let l = alpha.add(eta).sub(&b2);
    let r = alpha.conj().add(xi).sub(&b2.conj());
    l.mul(&r).sub(&b2.mul(&b2.conj()))
}

/// Exact classification: `Cusp` iff `|α| = |β₀|`, `None` only for `α = 0`.
pub fn classify_exact(alpha: &GaussRat, beta0: &GaussRat) -> Singularity {
    if alpha.is_zero() {
        Singularity::None
    } else if alpha.norm_sqr() == beta0.norm_sqr() {
        Singularity::Cusp
    } else {
        Singularity::DoublePoint
    }
}

/// Roots `Z = ξ − β̄₀/2` of `(α/ᾱ)Z² + αZ + |β₀|²/4 = 0`; `None` for `α = 0`.
pub fn identification_roots(alpha: Complex64, beta0: Complex64) -> Option<[Complex64; 2]> {
    if alpha.norm() == 0.0 {
        return None;
    }
    let a = alpha / alpha.conj();
    let b = alpha;
    let c = c64(beta0.norm_sqr() / 4.0, 0.0);
    let s = (b * b - 4.0 * a * c).sqrt();
    // pick the cancellation-free root first
    let q = if (b.conj() * s).re >= 0.0 { -(b + s) / 2.0 } else { -(b - s) / 2.0 };
    Some([q / a, c / q])
}

impl HslData {
    pub fn f_alpha(&self, alpha: Complex64, eta: Complex64, xi: Complex64) -> Complex64 {
        let b2 = self.beta0 / 2.0;
        (alpha + eta - b2) * (alpha.conj() + xi - b2.conj()) - self.beta0.norm_sqr() / 4.0
    }

    /// A point of `C_α` over `ξ`: `η = β₀/2 − α + (|β₀|²/4)/(ᾱ + ξ − β̄₀/2)`.
    pub fn component_eta(&self, alpha: Complex64, xi: Complex64) -> Complex64 {
        let b2 = self.beta0 / 2.0;
        b2 - alpha + self.beta0.norm_sqr() / 4.0 / (alpha.conj() + xi - b2.conj())
    }

    /// A point of `C_α` over `η`.
    pub fn component_xi(&self, alpha: Complex64, eta: Complex64) -> Complex64 {
        let b2 = self.beta0 / 2.0;
        b2.conj() - alpha.conj() + self.beta0.norm_sqr() / 4.0 / (alpha + eta - b2)
    }

    /// Classification of the dual point `(m, n)`, exact when the data are.
    pub fn classify(&self, m: i64, n: i64) -> Singularity {
        if let (Some(e), Some(alpha)) = (&self.exact, self.dual_point_exact(m, n)) {
            return classify_exact(&alpha, &e.beta0);
        }
        let alpha = self.dual_point(m, n);
        let scale = self.beta0.norm_sqr();
        if alpha.norm() == 0.0 {
            Singularity::None
        } else if (alpha.norm_sqr() - scale).abs() <= self.tol * scale {
            Singularity::Cusp
        } else {
            Singularity::DoublePoint
        }
    }

    /// Dual points in the box on the circle `|α| = |β₀|`.
    pub fn cusps(&self, cutoff: i64) -> Vec<(i64, i64)> {
        self.dual_box(cutoff)
            .into_iter()
            .filter(|&(m, n)| self.classify(m, n) == Singularity::Cusp)
            .collect()
    }

    /// Dual points in the box on the circle `|α − β₀/2| = |β₀/2|`, the points
    /// identified with `(0, 0)`.
    pub fn singular_set(&self, cutoff: i64) -> Vec<(i64, i64)> {
        self.dual_box(cutoff)
            .into_iter()
            .filter(|&(m, n)| match (&self.exact, self.dual_point_exact(m, n)) {
                (Some(e), Some(alpha)) => {
                    let half = GaussRat::from_ratio(1, 2);
                    let b2 = e.beta0.mul(&half);
                    alpha.sub(&b2).norm_sqr() == b2.norm_sqr()
                }
                _ => {
                    let alpha = self.dual_point(m, n);
                    let r = (self.beta0 / 2.0).norm();
                    ((alpha - self.beta0 / 2.0).norm() - r).abs() <= self.tol * r
                }
            })
            .collect()
    }
}

/// One root `ξ` of the mode `(m, n)` over a grid point `η`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumPoint {
    pub eta: Complex64,
    pub xi: Complex64,
    pub m: i64,
    pub n: i64,
    /// `|det|` at the root relative to the size of its two products.
    pub residual: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumScan {
    pub cutoff: i64,
    pub tol: f64,
    pub points: Vec<SpectrumPoint>,
}

fn det2(m: &[[Complex64; 2]; 2]) -> (Complex64, f64) {
    let (p, q) = (m[0][0] * m[1][1], m[0][1] * m[1][0]);
    (p - q, p.norm() + q.norm())
}

/// For every `η` on the grid and every `α` in the box, locate the root in `ξ`
/// of the determinant from two evaluations (it is affine in `ξ`) and flag it
/// when a third evaluation confirms a kernel.
pub fn numeric_spectrum(
    h: &HslData,
    grid: &Grid,
    cutoff: i64,
    tol: f64,
    exec: Exec,
) -> Result<SpectrumScan, HslError> {
    if cutoff < 1 {
        return Err(HslError::CutoffTooSmall);
    }
    let modes = h.dual_box(cutoff);
    let per_eta = map_indexed(grid.len(), exec, |k| {
        let eta = grid.point(k % grid.nx, k / grid.nx);
        let mut out = Vec::new();
        for &(m, n) in &modes {
            let alpha = h.dual_point(m, n);
            let (d0, _) = det2(&hsl_matrix(h.beta0, alpha, eta, c64(0.0, 0.0)));
            let (d1, _) = det2(&hsl_matrix(h.beta0, alpha, eta, c64(1.0, 0.0)));
            let slope = d1 - d0;
            if slope.norm() == 0.0 {
                continue;
            }
            let xi = -d0 / slope;
            let (d, scale) = det2(&hsl_matrix(h.beta0, alpha, eta, xi));
            let residual = d.norm() / scale.max(f64::MIN_POSITIVE);
            out.push(SpectrumPoint { eta, xi, m, n, residual, flagged: residual < tol });
        }
        out
    });
    Ok(SpectrumScan { cutoff, tol, points: per_eta.into_iter().flatten().collect() })
}

impl SpectrumScan {
    /// Header `re_eta,im_eta,re_xi,im_xi,m,n`; flagged points only.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re_eta,im_eta,re_xi,im_xi,m,n\n");
        for p in self.points.iter().filter(|p| p.flagged) {
            writeln!(out, "{},{},{},{},{},{}", p.eta.re, p.eta.im, p.xi.re, p.xi.im, p.m, p.n)
                .expect("writing to a String");
        }
        out
    }
}

/// `{"beta0", "components": [{"alpha", "type"}], "cloud"}`; `α = 0` is listed
/// with type `none`.
pub fn spectrum_json(h: &HslData, cutoff: i64, cloud: &str) -> Value {
    let components: Vec<Value> = h
        .dual_box(cutoff)
        .into_iter()
        .map(|(m, n)| {
            let a = h.dual_point(m, n);
            json!({"alpha": [a.re, a.im], "m": m, "n": n, "type": h.classify(m, n).as_str()})
        })
        .collect();
    json!({
        "beta0": [h.beta0.re, h.beta0.im],
        "components": components,
        "cloud": cloud,
    })
}
