//! The lattice `Λ`, its dual `Λ* = {α : ⟨α, λ⟩ ∈ ℤ}` with
//! `⟨w, z⟩ = Re(w z̄)`, and the Maslov class `β₀ ∈ Λ*`.

use qcore::linalg::Matrix;
use qcore::{c64, Complex64, ConjRing, GaussRat};

use crate::HslError;

/// Float tolerance for membership tests on non-exact data.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Exact {
    pub gens: [GaussRat; 2],
    pub beta0: GaussRat,
    pub dual_gens: [GaussRat; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct HslData {
    pub gens: [Complex64; 2],
    pub beta0: Complex64,
    /// `⟨α_k, λ_l⟩ = δ_kl`.
    pub dual_gens: [Complex64; 2],
    pub exact: Option<Exact>,
    pub tol: f64,
}

fn inner(w: Complex64, z: Complex64) -> f64 {
    (w * z.conj()).re
}

fn inner_exact(w: &GaussRat, z: &GaussRat) -> GaussRat {
    GaussRat::from_rat(w.mul(&z.conj()).re)
}

impl HslData {
    pub fn new(gens: [Complex64; 2], beta0: Complex64) -> Result<Self, HslError> {
        if beta0.norm() == 0.0 {
            return Err(HslError::ZeroBeta0);
        }
        let det = gens[0].re * gens[1].im - gens[0].im * gens[1].re;
        if det.abs() <= DEFAULT_TOL * gens[0].norm() * gens[1].norm() {
            return Err(HslError::DegenerateLattice);
        }
        // rows of the inverse of [[λ₁.re, λ₁.im], [λ₂.re, λ₂.im]]
        let a1 = c64(gens[1].im / det, -gens[1].re / det);
        let a2 = c64(-gens[0].im / det, gens[0].re / det);
        for l in gens {
            let v = inner(beta0, l);
            if (v - v.round()).abs() > DEFAULT_TOL {
                return Err(HslError::BetaNotDual(format!("{v}")));
            }
        }
        Ok(HslData { gens, beta0, dual_gens: [a1, a2], exact: None, tol: DEFAULT_TOL })
    }

    /// Gaussian-rational data; every membership and classification is exact.
    pub fn exact(gens: [GaussRat; 2], beta0: GaussRat) -> Result<Self, HslError> {
        if beta0.is_zero() {
            return Err(HslError::ZeroBeta0);
        }
        let rows = gens
            .iter()
            .map(|l| vec![GaussRat::from_rat(l.re.clone()), GaussRat::from_rat(l.im.clone())])
            .collect();
        let inv = Matrix::from_rows(rows).inverse().ok_or(HslError::DegenerateLattice)?;
        let dual = |k: usize| {
            GaussRat::new(inv.get(0, k).re.clone(), inv.get(1, k).re.clone())
        };
        for l in &gens {
            let v = inner_exact(&beta0, l);
            if !v.re.is_integer() {
                return Err(HslError::BetaNotDual(v.to_string()));
            }
        }
        let dual_gens = [dual(0), dual(1)];
        Ok(HslData {
            gens: [gens[0].to_complex64(), gens[1].to_complex64()],
            beta0: beta0.to_complex64(),
            dual_gens: [dual_gens[0].to_complex64(), dual_gens[1].to_complex64()],
            exact: Some(Exact { gens, beta0, dual_gens }),
            tol: DEFAULT_TOL,
        })
    }

    /// The square lattice `ℤ ⊕ iℤ`, which is self-dual.
    pub fn square(beta0: GaussRat) -> Result<Self, HslError> {
        Self::exact([GaussRat::from_int(1), GaussRat::i()], beta0)
    }

    pub fn dual_point(&self, m: i64, n: i64) -> Complex64 {
        self.dual_gens[0] * m as f64 + self.dual_gens[1] * n as f64
    }

    pub fn dual_point_exact(&self, m: i64, n: i64) -> Option<GaussRat> {
        let e = self.exact.as_ref()?;
        Some(e.dual_gens[0].scale_i64(m).add(&e.dual_gens[1].scale_i64(n)))
    }

    /// Dual coefficients `(m, n)` with `|m|, |n| ≤ cutoff`, row by row.
    pub fn dual_box(&self, cutoff: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for n in -cutoff..=cutoff {
            for m in -cutoff..=cutoff {
                out.push((m, n));
            }
        }
        out
    }

    /// `(π/2)β₀j = j·u` with `u = πβ̄₀/2`.
    pub fn dirac_u(&self) -> Complex64 {
        self.beta0.conj() * (std::f64::consts::PI / 2.0)
    }

    /// `μ(λ) = e^{πi⟨β₀, λ⟩} = ±1`.
    pub fn mu(&self, lambda: Complex64) -> f64 {
        if inner(self.beta0, lambda).round() as i64 % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_basis_is_dual() {
        let h = HslData::exact(
            [GaussRat::from_ints(2, 0), GaussRat::from_ints(1, 3)],
            GaussRat::new(qcore::rat(1, 2), qcore::rat(1, 6)),
        )
        .unwrap();
        let e = h.exact.as_ref().unwrap();
        for k in 0..2 {
            for l in 0..2 {
                let v = inner_exact(&e.dual_gens[k], &e.gens[l]);
                assert_eq!(v, GaussRat::from_int(i64::from(k == l)));
                assert!((inner(h.dual_gens[k], h.gens[l]) - f64::from(k == l)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn membership_is_checked() {
        assert_eq!(
            HslData::square(GaussRat::new(qcore::rat(1, 2), qcore::rat(0, 1))),
            Err(HslError::BetaNotDual("1/2".into()))
        );
        assert_eq!(HslData::square(GaussRat::zero()), Err(HslError::ZeroBeta0));
        assert!(HslData::new([c64(1.0, 0.0), c64(2.0, 0.0)], c64(1.0, 0.0)).is_err());
    }
}
