//! Scalar rings: rationals, Gaussian rationals and complex doubles.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::QError;

pub type Rat = BigRational;

/// Build a rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }
    pub fn from_int(n: i64) -> Self {
        GaussRat::new(rat(n, 1), Rat::zero())
    }
    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(rat(re, 1), rat(im, 1))
    }
    pub fn from_rat(r: Rat) -> Self {
        GaussRat::new(r, Rat::zero())
    }
    pub fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }
    pub fn one() -> Self {
        GaussRat::from_int(1)
    }
    pub fn i() -> Self {
        GaussRat::from_ints(0, 1)
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }
    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat::new(&self.re * r, &self.im * r)
    }
    /// Multiply by `i`.
    pub fn times_i(&self) -> Self {
        GaussRat::new(-&self.im, self.re.clone())
    }
    /// Explicit lossy conversion; never applied implicitly.
    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        let add = |x: &Rat, y: &Rat| {
            if y.is_zero() {
                x.clone()
            } else if x.is_zero() {
                y.clone()
            } else {
                x + y
            }
        };
        GaussRat::new(add(&self.re, &o.re), add(&self.im, &o.im))
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        // skip products with a vanishing factor; most values are real or imaginary
        let prod = |x: &Rat, y: &Rat| {
            if x.is_zero() || y.is_zero() {
                None
            } else {
                Some(x * y)
            }
        };
        let join = |p: Option<Rat>, q: Option<Rat>, minus: bool| match (p, q) {
            (None, None) => Rat::zero(),
            (Some(p), None) => p,
            (None, Some(q)) => {
                if minus {
                    -q
                } else {
                    q
                }
            }
            (Some(p), Some(q)) => {
                if minus {
                    p - q
                } else {
                    p + q
                }
            }
        };
        GaussRat::new(
            join(prod(&self.re, &o.re), prod(&self.im, &o.im), true),
            join(prod(&self.re, &o.im), prod(&self.im, &o.re), false),
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Canonical text: `3/2`, `-i`, `1/2+3i`, `-2/3i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = &self.re;
        let im = &self.im;
        if im.is_zero() {
            return write!(f, "{}", fmt_rat(re));
        }
        let imag = if im.abs().is_one() {
            if im.is_negative() { "-i".to_string() } else { "i".to_string() }
        } else {
            format!("{}i", fmt_rat(im))
        };
        if re.is_zero() {
            write!(f, "{imag}")
        } else if im.is_negative() {
            write!(f, "{}{}", fmt_rat(re), imag)
        } else {
            write!(f, "{}+{}", fmt_rat(re), imag)
        }
    }
}

/// The tagged scalar type. Arithmetic across different variants is an error;
/// exact values never degrade to floating point behind the caller's back.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Rational(Rat),
    Gaussian(GaussRat),
    Complex(Complex64),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarKind {
    Rational,
    Gaussian,
    Complex,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Gaussian => "gaussian",
            ScalarKind::Complex => "complex64",
        };
        f.write_str(s)
    }
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Gaussian(_) => ScalarKind::Gaussian,
            Scalar::Complex(_) => ScalarKind::Complex,
        }
    }

    pub fn zero_of(kind: ScalarKind) -> Scalar {
        match kind {
            ScalarKind::Rational => Scalar::Rational(Rat::zero()),
            ScalarKind::Gaussian => Scalar::Gaussian(GaussRat::zero()),
            ScalarKind::Complex => Scalar::Complex(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one_of(kind: ScalarKind) -> Scalar {
        match kind {
            ScalarKind::Rational => Scalar::Rational(Rat::one()),
            ScalarKind::Gaussian => Scalar::Gaussian(GaussRat::one()),
            ScalarKind::Complex => Scalar::Complex(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian(g) => g.is_zero(),
            Scalar::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.clone()),
            Scalar::Gaussian(g) => Scalar::Gaussian(g.conj()),
            Scalar::Complex(c) => Scalar::Complex(c.conj()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Gaussian(g) => Scalar::Gaussian(-g),
            Scalar::Complex(c) => Scalar::Complex(-c),
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, QError> {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Ok(Scalar::Gaussian(a + b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a + b)),
            _ => Err(QError::MixedRings(self.kind(), o.kind())),
        }
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, QError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, QError> {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Ok(Scalar::Gaussian(a * b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a * b)),
            _ => Err(QError::MixedRings(self.kind(), o.kind())),
        }
    }

    /// `|s|²` as a scalar of the same kind.
    pub fn norm_sqr(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r * r),
            Scalar::Gaussian(g) => Scalar::Gaussian(GaussRat::from_rat(g.norm_sqr())),
            Scalar::Complex(c) => Scalar::Complex(Complex64::new(c.norm_sqr(), 0.0)),
        }
    }

    pub fn try_inv(&self) -> Result<Scalar, QError> {
        if self.is_zero() {
            return Err(QError::ZeroInverse);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Gaussian(g) => Scalar::Gaussian(g.inv().expect("nonzero")),
            Scalar::Complex(c) => Scalar::Complex(Complex64::new(1.0, 0.0) / c),
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&fmt_rat(r)),
            Scalar::Gaussian(g) => write!(f, "{g}"),
            Scalar::Complex(c) => write!(f, "{}{:+}i", c.re, c.im),
        }
    }
}
