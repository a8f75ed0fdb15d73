//! Polynomials in `y` with Gaussian-rational coefficients.
//!
//! This is a concrete differential ring: `∂_y` is the usual derivative and
//! integration is `∫₀^y`. Substituting polynomial functions for the `u`
//! generators gives an independent model of the symbolic algebra, used by
//! the tests as an oracle.

use std::collections::BTreeMap;
use std::fmt;

use qcore::{ComplexRing, ConjRing, GaussRat, Rat};

use crate::poly::{DiffPoly, Generator, Label};
use crate::DiffRing;

/// Dense coefficients, index = power of `y`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct YPoly(Vec<GaussRat>);

impl YPoly {
    pub fn new(mut c: Vec<GaussRat>) -> Self {
        while c.last().is_some_and(GaussRat::is_zero) {
            c.pop();
        }
        YPoly(c)
    }
    pub fn coeffs(&self) -> &[GaussRat] {
        &self.0
    }
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    pub fn eval(&self, y: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * y) + c;
        }
        acc
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})y^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl ConjRing for YPoly {
    fn zero() -> Self {
        YPoly(Vec::new())
    }
    fn one() -> Self {
        YPoly(vec![GaussRat::one()])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = GaussRat::zero();
        YPoly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&z) + o.0.get(k).unwrap_or(&z))
                .collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return YPoly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        YPoly::new(out)
    }
    fn neg(&self) -> Self {
        YPoly(self.0.iter().map(|c| -c).collect())
    }
    fn conj(&self) -> Self {
        YPoly(self.0.iter().map(GaussRat::conj).collect())
    }
    fn from_i64(n: i64) -> Self {
        YPoly::new(vec![GaussRat::from_int(n)])
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        YPoly::new(vec![GaussRat::from_rat(qcore::rat(n, d))])
    }
}

impl ComplexRing for YPoly {
    fn imag_unit() -> Self {
        YPoly(vec![GaussRat::i()])
    }
}

impl DiffRing for YPoly {
    fn d_y(&self) -> Self {
        YPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&qcore::rat(k as i64, 1)))
                .collect(),
        )
    }
    fn integrate(&self) -> Self {
        let mut out = vec![GaussRat::zero()];
        for (k, c) in self.0.iter().enumerate() {
            out.push(c.scale(&Rat::new((1).into(), ((k + 1) as i64).into())));
        }
        YPoly::new(out)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn from_gauss(c: &GaussRat) -> Self {
        YPoly::new(vec![c.clone()])
    }
}

/// Substitute polynomial functions of `y` for the `u` generators.
///
/// `u^{(k)}_{αβ}` becomes the `k`-th derivative of `assign[(α,β)]` (zero if
/// unassigned) and `I[m]` becomes `∫₀^y` of the substituted `m`.
pub fn specialize(p: &DiffPoly, assign: &BTreeMap<Label, YPoly>) -> YPoly {
    let embed = |c: &GaussRat| YPoly::new(vec![c.clone()]);
    let gen = |g: &Generator| specialize_generator(g, assign);
    p.eval(&embed, &gen)
}

fn specialize_generator(g: &Generator, assign: &BTreeMap<Label, YPoly>) -> YPoly {
    match g {
        Generator::U { alpha, beta, order } => {
            let mut f = assign.get(&(*alpha, *beta)).cloned().unwrap_or_default();
            for _ in 0..*order {
                f = f.d_y();
            }
            f
        }
        Generator::A(a) => specialize(&a.derivative, assign).integrate(),
    }
}
