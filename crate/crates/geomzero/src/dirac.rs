//! The Dirac operator `𝒟 = ∂_z̄ + U` with `U = ju`, acting on `ψ = a + jb`.
//!
//! Because `i` acts on `ℍ` from the left, `∂_z̄(jb) = j∂_z b`, so
//! `𝒟ψ = (∂_z̄a − ūb) + j(∂_z b + ua)`.

use qcore::{Complex64, Quaternion, Q64};

use crate::GeomError;

/// Values and first derivatives of `ψ = a + jb` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub a: Complex64,
    pub b: Complex64,
    pub a_z: Complex64,
    pub a_zb: Complex64,
    pub b_z: Complex64,
    pub b_zb: Complex64,
}

impl Jet {
    pub fn value(&self) -> Q64 {
        Quaternion::new(self.a, self.b)
    }
    /// `∂_zψ = ∂_z a + j∂_z̄ b`.
    pub fn dz(&self) -> Q64 {
        Quaternion::new(self.a_z, self.b_zb)
    }
    /// `∂_z̄ψ = ∂_z̄ a + j∂_z b`.
    pub fn dzbar(&self) -> Q64 {
        Quaternion::new(self.a_zb, self.b_z)
    }
}

/// `𝒟ψ` from a jet, for the potential `U = ju`.
pub fn dirac_residual(u: Complex64, jet: &Jet) -> Q64 {
    Quaternion::new(jet.a_zb - u.conj() * jet.b, jet.b_z + u * jet.a)
}

/// Uniform grid `x0 + ih`, `y0 + kh`, stored row-major with `x` fastest.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub x0: f64,
    pub y0: f64,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn point(&self, ix: usize, iy: usize) -> Complex64 {
        Complex64::new(self.x0 + ix as f64 * self.h, self.y0 + iy as f64 * self.h)
    }
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }
    /// Sample a function at every node.
    pub fn sample<T>(&self, f: impl Fn(Complex64) -> T) -> Vec<T> {
        let mut out = Vec::with_capacity(self.len());
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                out.push(f(self.point(ix, iy)));
            }
        }
        out
    }
}

/// Dirac potential `u` in `U = ju`: constant or sampled on the grid.
#[derive(Clone, Copy, Debug)]
pub enum Potential<'a> {
    Constant(Complex64),
    Sampled(&'a [Complex64]),
}

impl Potential<'_> {
    fn at(&self, k: usize) -> Complex64 {
        match self {
            Potential::Constant(c) => *c,
            Potential::Sampled(v) => v[k],
        }
    }
}

/// Fourth-order central difference weights for the first derivative.
const STENCIL: [(isize, f64); 4] = [(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)];
const MARGIN: usize = 2;

fn partials(f: &[Complex64], g: &Grid, ix: usize, iy: usize) -> (Complex64, Complex64) {
    let mut fx = Complex64::new(0.0, 0.0);
    let mut fy = Complex64::new(0.0, 0.0);
    for (o, w) in STENCIL {
        let jx = (ix as isize + o) as usize;
        let jy = (iy as isize + o) as usize;
        fx += f[g.index(jx, iy)] * w;
        fy += f[g.index(ix, jy)] * w;
    }
    let s = 1.0 / (12.0 * g.h);
    (fx * s, fy * s)
}

/// Pointwise `|𝒟ψ|` on the grid interior, using fourth-order differences.
///
/// The result has `(nx − 4)·(ny − 4)` entries in row-major order.
pub fn dirac_apply(
    u: Potential<'_>,
    a: &[Complex64],
    b: &[Complex64],
    grid: &Grid,
) -> Result<Vec<f64>, GeomError> {
    let need = 2 * MARGIN + 1;
    let small = grid.nx.min(grid.ny);
    if small < need {
        return Err(GeomError::GridTooCoarse { need, got: small });
    }
    let mut lens = vec![a.len(), b.len()];
    if let Potential::Sampled(v) = u {
        lens.push(v.len());
    }
    if let Some(&bad) = lens.iter().find(|&&l| l != grid.len()) {
        return Err(GeomError::FieldShape { need: grid.len(), got: bad });
    }
    let i = Complex64::new(0.0, 1.0);
    let mut out = Vec::with_capacity((grid.nx - 2 * MARGIN) * (grid.ny - 2 * MARGIN));
    for iy in MARGIN..grid.ny - MARGIN {
        for ix in MARGIN..grid.nx - MARGIN {
            let k = grid.index(ix, iy);
            let (ax, ay) = partials(a, grid, ix, iy);
            let (bx, by) = partials(b, grid, ix, iy);
            let jet = Jet {
                a: a[k],
                b: b[k],
                a_z: (ax - i * ay) * 0.5,
                a_zb: (ax + i * ay) * 0.5,
                b_z: (bx - i * by) * 0.5,
                b_zb: (bx + i * by) * 0.5,
            };
            out.push(dirac_residual(u.at(k), &jet).norm());
        }
    }
    Ok(out)
}
