//! Baker functions seen through their tails `T = ψ·e^{−zζ}`.
//!
//! With `ψ = T·e^{zζ}` and `i` acting from the left, only the `a`-slot of
//! `T` picks up the factor `ζ` under `∂_z`:
//! `(∂_zψ)e^{−zζ} = ∂_zT + ζ·T.a`, and
//! `(𝒟ψ)e^{−zζ} = (∂_z̄T.a − ū·T.b) + j(∂_zT.b + ζ·T.b + u·T.a)`.

use std::f64::consts::PI;

use geomzero::Grid;
use qcore::par::{map_indexed, Exec};
use qcore::{Complex64, Quaternion, Q64};

use crate::NodalError;

/// Default step of the finite-difference derivatives in `z`.
pub const FD_STEP: f64 = 2e-3;

/// Eighth-order central weights for the first derivative.
const FD8: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];

/// Points on the contour used to read off `a₁`.
const CONTOUR_POINTS: usize = 64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A Baker function `ψ(z, ζ) = (1 + a₁(z)ζ⁻¹ + …)e^{zζ}`.
pub trait BakerSource: Sync {
    /// `ψ(z, ζ)·e^{−zζ}`.
    fn tail(&self, z: Complex64, zeta: Complex64) -> Result<Q64, NodalError>;

    /// `(∂_zψ)(z, ζ)·e^{−zζ}`; by default from finite differences of the tail.
    fn tail_dz(&self, z: Complex64, zeta: Complex64) -> Result<Q64, NodalError> {
        fd_tail_dz(self, z, zeta, FD_STEP)
    }

    /// Radius of a circle enclosing every singularity of the tail except `ζ = 0`.
    fn contour_radius(&self) -> f64 {
        4.0
    }

    /// The coefficient `a₁(z)`, by default a trapezoid contour integral.
    fn a1(&self, z: Complex64) -> Result<Q64, NodalError> {
        let r = self.contour_radius();
        let mut acc = Q64::zero();
        for k in 0..CONTOUR_POINTS {
            let zeta = Complex64::from_polar(r, 2.0 * PI * k as f64 / CONTOUR_POINTS as f64);
            let t = self.tail(z, zeta)?.sub(&Q64::one());
            acc = acc.add(&t.mul_complex_right(&zeta));
        }
        Ok(acc.mul_complex_right(&c(1.0 / CONTOUR_POINTS as f64)))
    }

    /// `u` in `U = ju = −(a₁ + ia₁i)/2`.
    fn potential(&self, z: Complex64) -> Result<Complex64, NodalError> {
        Ok(self.a1(z)?.dirac_part().b)
    }
}

/// The tail and its `x`, `y` partials at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct TailJet {
    pub t: Q64,
    pub tx: Q64,
    pub ty: Q64,
}

impl TailJet {
    pub fn new<S: BakerSource + ?Sized>(
        src: &S,
        z: Complex64,
        zeta: Complex64,
        h: f64,
    ) -> Result<Self, NodalError> {
        let t = src.tail(z, zeta)?;
        let mut tx = Q64::zero();
        let mut ty = Q64::zero();
        for (k, w) in FD8.iter().enumerate() {
            let s = h * (k + 1) as f64;
            let dx = src.tail(z + s, zeta)?.sub(&src.tail(z - s, zeta)?);
            let dy = src.tail(z + Complex64::new(0.0, s), zeta)?
                .sub(&src.tail(z - Complex64::new(0.0, s), zeta)?);
            tx = tx.add(&dx.mul_complex_right(&c(*w)));
            ty = ty.add(&dy.mul_complex_right(&c(*w)));
        }
        let inv = c(1.0 / h);
        Ok(TailJet { t, tx: tx.mul_complex_right(&inv), ty: ty.mul_complex_right(&inv) })
    }

    /// `∂_z` and `∂_z̄` of the complex slots: `(a_z, a_z̄, b_z, b_z̄)`.
    fn slots(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        let i = Complex64::new(0.0, 1.0);
        let (ax, ay, bx, by) = (self.tx.a, self.ty.a, self.tx.b, self.ty.b);
        ((ax - i * ay) * 0.5, (ax + i * ay) * 0.5, (bx - i * by) * 0.5, (bx + i * by) * 0.5)
    }

    /// `(∂_zψ)e^{−zζ} = (∂_z T.a + ζT.a) + j∂_z̄ T.b`.
    pub fn dz(&self, zeta: Complex64) -> Q64 {
        let (a_z, _, _, b_zb) = self.slots();
        Quaternion::new(a_z + zeta * self.t.a, b_zb)
    }

    /// `(𝒟ψ)e^{−zζ}` for `U = ju`.
    pub fn dirac(&self, zeta: Complex64, u: Complex64) -> Q64 {
        let (_, a_zb, b_z, _) = self.slots();
        Quaternion::new(a_zb - u.conj() * self.t.b, b_z + zeta * self.t.b + u * self.t.a)
    }
}

/// `(∂_zψ)e^{−zζ}` from eighth-order differences of the tail.
pub fn fd_tail_dz<S: BakerSource + ?Sized>(
    src: &S,
    z: Complex64,
    zeta: Complex64,
    h: f64,
) -> Result<Q64, NodalError> {
    Ok(TailJet::new(src, z, zeta, h)?.dz(zeta))
}

/// `|𝒟ψ|/|ψ|` at `(z, ζ)` for the potential `u`, derivatives by finite differences.
pub fn dirac_residual<S: BakerSource + ?Sized>(
    src: &S,
    z: Complex64,
    zeta: Complex64,
    u: Complex64,
) -> Result<f64, NodalError> {
    let jet = TailJet::new(src, z, zeta, FD_STEP)?;
    Ok(jet.dirac(zeta, u).norm() / jet.t.norm())
}

/// The potential `u(z)` at every grid node.
pub fn potential_field<S: BakerSource>(
    src: &S,
    grid: &Grid,
    exec: Exec,
) -> Result<Vec<Complex64>, NodalError> {
    map_indexed(grid.len(), exec, |k| src.potential(grid.point(k % grid.nx, k / grid.nx)))
        .into_iter()
        .collect()
}

/// Leading coefficient of the tail at `ζ → ∞` along `dir`, Richardson
/// extrapolated from `|ζ| = 10³` and `10⁴`.
pub fn leading_coefficient<S: BakerSource + ?Sized>(
    src: &S,
    z: Complex64,
    dir: Complex64,
) -> Result<Q64, NodalError> {
    let d = dir / dir.norm();
    let (z1, z2) = (d * 1e3, d * 1e4);
    let t1 = src.tail(z, z1)?.mul_complex_right(&z1);
    let t2 = src.tail(z, z2)?.mul_complex_right(&z2);
    Ok(t2.sub(&t1).mul_complex_right(&(1.0 / (z2 - z1))))
}

/// The vacuum `ψ = e^{zζ}`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vacuum;

impl BakerSource for Vacuum {
    fn tail(&self, _z: Complex64, _zeta: Complex64) -> Result<Q64, NodalError> {
        Ok(Q64::one())
    }
    fn tail_dz(&self, _z: Complex64, zeta: Complex64) -> Result<Q64, NodalError> {
        Ok(Q64::complex(zeta))
    }
    fn a1(&self, _z: Complex64) -> Result<Q64, NodalError> {
        Ok(Q64::zero())
    }
}

/// The genus-zero Baker function in the coordinate `ζ = εη`:
/// `T = (1 − jεζ⁻¹)·exp(−z̄|ε|²ζ⁻¹)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenusZero {
    pub epsilon: Complex64,
}

impl GenusZero {
    pub fn new(d: &geomzero::SpectralDataG0) -> Self {
        GenusZero { epsilon: d.epsilon }
    }
    fn scalar(&self, z: Complex64, zeta: Complex64) -> Result<Complex64, NodalError> {
        if zeta == c(0.0) {
            return Err(geomzero::GeomError::AtPuncture.into());
        }
        Ok((-z.conj() * self.epsilon.norm_sqr() / zeta).exp())
    }
}

impl BakerSource for GenusZero {
    fn tail(&self, z: Complex64, zeta: Complex64) -> Result<Q64, NodalError> {
        let e = self.scalar(z, zeta)?;
        Ok(Quaternion::new(e, -self.epsilon / zeta * e))
    }
    /// `ζE + j·ε|ε|²ζ⁻²E` with `E = exp(−z̄|ε|²ζ⁻¹)`.
    fn tail_dz(&self, z: Complex64, zeta: Complex64) -> Result<Q64, NodalError> {
        let e = self.scalar(z, zeta)?;
        let b = self.epsilon * self.epsilon.norm_sqr() / (zeta * zeta) * e;
        Ok(Quaternion::new(zeta * e, b))
    }
    fn a1(&self, z: Complex64) -> Result<Q64, NodalError> {
        Ok(Quaternion::new(-z.conj() * self.epsilon.norm_sqr(), -self.epsilon))
    }
}
