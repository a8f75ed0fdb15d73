//! Quaternions `a + j·b` with `a, b` drawn from a complex ring and `jc = c̄j`.

use std::fmt;

use num_complex::Complex64;

use crate::ring::{ComplexRing, ConjRing, Field};
use crate::scalar::Scalar;
use crate::QError;

/// The value `a + j·b`. `a` is the part commuting with `i`, `j·b` the part
/// anticommuting with it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quaternion<T> {
    pub a: T,
    pub b: T,
}

pub type Q64 = Quaternion<Complex64>;

impl<T: ConjRing> Quaternion<T> {
    pub fn new(a: T, b: T) -> Self {
        Quaternion { a, b }
    }
    pub fn zero() -> Self {
        Quaternion::new(T::zero(), T::zero())
    }
    pub fn one() -> Self {
        Quaternion::new(T::one(), T::zero())
    }
    pub fn j() -> Self {
        Quaternion::new(T::zero(), T::one())
    }
    /// The complex number `c` as a quaternion.
    pub fn complex(c: T) -> Self {
        Quaternion::new(c, T::zero())
    }
    /// `j·b`.
    pub fn jpart(b: T) -> Self {
        Quaternion::new(T::zero(), b)
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Quaternion::new(self.a.add(&o.a), self.b.add(&o.b))
    }
    pub fn sub(&self, o: &Self) -> Self {
        Quaternion::new(self.a.sub(&o.a), self.b.sub(&o.b))
    }
    pub fn neg(&self) -> Self {
        Quaternion::new(self.a.neg(), self.b.neg())
    }

    /// `(a+jb)(c+jd) = (ac − b̄d) + j(ād + bc)`.
    pub fn mul(&self, o: &Self) -> Self {
        let a = self.a.mul(&o.a).sub(&self.b.conj().mul(&o.b));
        let b = self.a.conj().mul(&o.b).add(&self.b.mul(&o.a));
        Quaternion::new(a, b)
    }

    /// `q·c` for a complex scalar `c`: acts componentwise.
    pub fn mul_complex_right(&self, c: &T) -> Self {
        Quaternion::new(self.a.mul(c), self.b.mul(c))
    }

    /// `c·q` for a complex scalar `c`: `c·j·b = j·c̄·b`.
    pub fn mul_complex_left(&self, c: &T) -> Self {
        Quaternion::new(c.mul(&self.a), c.conj().mul(&self.b))
    }

    /// Quaternionic conjugate `(ā, −b)`.
    pub fn conj(&self) -> Self {
        Quaternion::new(self.a.conj(), self.b.neg())
    }

    /// Conjugate both complex slots: the action of the real structure on
    /// coefficients, not the quaternionic conjugate.
    pub fn coeff_conj(&self) -> Self {
        Quaternion::new(self.a.conj(), self.b.conj())
    }

    /// `|a|² + |b|²`, stored in the ring (real-valued).
    pub fn norm2(&self) -> T {
        self.a.mul(&self.a.conj()).add(&self.b.mul(&self.b.conj()))
    }

    /// The pair `(a + j0, 0 + jb)`.
    pub fn isplit(&self) -> (Self, Self) {
        (self.commuting(), self.anticommuting())
    }
    pub fn commuting(&self) -> Self {
        Quaternion::new(self.a.clone(), T::zero())
    }
    pub fn anticommuting(&self) -> Self {
        Quaternion::new(T::zero(), self.b.clone())
    }

    pub fn map<U: ConjRing>(&self, f: impl Fn(&T) -> U) -> Quaternion<U> {
        Quaternion::new(f(&self.a), f(&self.b))
    }
}

impl<T: ComplexRing> Quaternion<T> {
    pub fn i() -> Self {
        Quaternion::new(T::imag_unit(), T::zero())
    }
    pub fn k() -> Self {
        Self::i().mul(&Self::j())
    }
    /// `i·q`.
    pub fn left_i(&self) -> Self {
        self.mul_complex_left(&T::imag_unit())
    }
    /// `q·i`.
    pub fn right_i(&self) -> Self {
        self.mul_complex_right(&T::imag_unit())
    }
    /// `−(q + iqi)/2` computed literally from products; for `q = a + jb`
    /// this is `−jb`, the negated anticommuting part.
    pub fn dirac_part(&self) -> Self {
        let i = Self::i();
        let iqi = i.mul(self).mul(&i);
        let s = self.add(&iqi);
        s.neg().mul_complex_right(&T::from_ratio(1, 2))
    }
}

impl<T: Field> Quaternion<T> {
    /// `q̄ / N(q)`.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm2();
        let ninv = n.inv()?;
        Some(self.conj().mul_complex_right(&ninv))
    }
    /// Right quotient `self · o⁻¹`.
    pub fn div_right(&self, o: &Self) -> Option<Self> {
        o.inv().map(|x| self.mul(&x))
    }
}

impl Q64 {
    pub fn norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr()).sqrt()
    }
    pub fn from_parts(a: Complex64, b: Complex64) -> Self {
        Quaternion::new(a, b)
    }
}

impl<T: ConjRing + fmt::Display> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+j({})", self.a, self.b)
    }
}

/// `p·q` over the tagged scalar type; mixed rings are an error.
pub fn qmul(p: &Quaternion<Scalar>, q: &Quaternion<Scalar>) -> Result<Quaternion<Scalar>, QError> {
    let a = p.a.try_mul(&q.a)?.try_sub(&p.b.conj().try_mul(&q.b)?)?;
    let b = p.a.conj().try_mul(&q.b)?.try_add(&p.b.try_mul(&q.a)?)?;
    Ok(Quaternion { a, b })
}

/// `q̄ / N(q)` over the tagged scalar type.
pub fn qinv(q: &Quaternion<Scalar>) -> Result<Quaternion<Scalar>, QError> {
    let n = q.a.norm_sqr().try_add(&q.b.norm_sqr())?;
    if n.is_zero() {
        return Err(QError::ZeroInverse);
    }
    let ninv = n.try_inv()?;
    Ok(Quaternion {
        a: q.a.conj().try_mul(&ninv)?,
        b: q.b.neg().try_mul(&ninv)?,
    })
}

/// Split into the `i`-commuting and `i`-anticommuting parts.
pub fn isplit(q: &Quaternion<Scalar>) -> (Quaternion<Scalar>, Quaternion<Scalar>) {
    let kind = q.a.kind();
    (
        Quaternion { a: q.a.clone(), b: Scalar::zero_of(kind) },
        Quaternion { a: Scalar::zero_of(q.b.kind()), b: q.b.clone() },
    )
}
