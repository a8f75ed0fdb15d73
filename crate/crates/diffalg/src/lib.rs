//! The real differential algebra `B = ℝ[u^{(k)}_{αβ}]` with derivation `∂_y`,
//! extended by formal antiderivative symbols.
//!
//! Coefficients are Gaussian rationals so that complex constants such as
//! `i` can be carried without leaving the algebra; generators are real.

pub mod integrate;
pub mod poly;
pub mod ypoly;

pub use integrate::{antiderivative_of, formal_integrate, integrate_with, registry_len, Integral};
pub use poly::{Antiderivative, DiffPoly, Generator, Label, Monomial};
pub use ypoly::{specialize, YPoly};

use qcore::{ComplexRing, GaussRat};

/// A complex differential ring with a chosen antiderivative.
///
/// Pseudo-differential operators and the dressing construction are written
/// against this trait, so the same code runs on symbolic polynomials and on
/// concrete functions of `y`.
pub trait DiffRing: ComplexRing {
    fn d_y(&self) -> Self;
    /// Some `q` with `∂_y q = self`, integration constant zero.
    fn integrate(&self) -> Self;
    fn render(&self) -> String;
    fn from_gauss(c: &GaussRat) -> Self;

    fn d_y_n(&self, k: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.d_y();
        }
        p
    }
}

impl DiffRing for DiffPoly {
    fn d_y(&self) -> Self {
        DiffPoly::d_y(self)
    }
    fn integrate(&self) -> Self {
        formal_integrate(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn from_gauss(c: &GaussRat) -> Self {
        DiffPoly::constant(c.clone())
    }
}
