//! Ring abstractions shared by the exact and floating-point scalar types.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{GaussRat, Rat};

/// A commutative ring with a conjugation involution.
///
/// Everything that can sit in the `a` or `b` slot of a quaternion implements
/// this. Conjugation is the identity on real rings.
pub trait ConjRing: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    /// The rational number `n/d`; every ring used here contains ℚ.
    fn from_ratio(n: i64, d: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn scale_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }
}

/// Rings containing the imaginary unit.
pub trait ComplexRing: ConjRing {
    fn imag_unit() -> Self;
}

/// Fields: rings where nonzero elements invert. `pivot_weight` drives
/// partial pivoting in [`crate::linalg`]; exact fields only need it nonzero.
pub trait Field: ConjRing {
    fn inv(&self) -> Option<Self>;
    fn pivot_weight(&self) -> f64;
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|x| self.mul(&x))
    }
}

impl ConjRing for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn pivot_weight(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
}

impl ConjRing for GaussRat {
    fn zero() -> Self {
        GaussRat::zero()
    }
    fn one() -> Self {
        GaussRat::one()
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        GaussRat::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        GaussRat::from_int(n)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        GaussRat::from_rat(crate::scalar::rat(n, d))
    }
}

impl ComplexRing for GaussRat {
    fn imag_unit() -> Self {
        GaussRat::i()
    }
}

impl Field for GaussRat {
    fn inv(&self) -> Option<Self> {
        GaussRat::inv(self)
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl ConjRing for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Complex64::new(n as f64 / d as f64, 0.0)
    }
}

impl ComplexRing for Complex64 {
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Option<Self> {
        if ConjRing::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}
