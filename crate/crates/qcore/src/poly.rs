//! Exact polynomials in two variables `(x, y)` over the Gaussian rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::{ConjRing, GaussRat};

/// `Σ c_{ab} x^a y^b`, zero coefficients never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), GaussRat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }
    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(c, 0, 0)
    }
    pub fn monomial(c: GaussRat, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BiPoly { terms }
    }
    pub fn x() -> Self {
        Self::monomial(GaussRat::one(), 1, 0)
    }
    pub fn y() -> Self {
        Self::monomial(GaussRat::one(), 0, 1)
    }
    pub fn coeff(&self, a: u32, b: u32) -> GaussRat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(GaussRat::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn accumulate(&mut self, key: (u32, u32), c: GaussRat) {
        let v = self.coeff(key.0, key.1).add(&c);
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }
    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = BiPoly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                out.accumulate((a1 + a2, b1 + b2), c1.mul(c2));
            }
        }
        out
    }
    /// Evaluate at exact `(x, y)`.
    pub fn eval(&self, x: &GaussRat, y: &GaussRat) -> GaussRat {
        let pow = |x: &GaussRat, e: u32| (0..e).fold(GaussRat::one(), |acc, _| acc.mul(x));
        self.terms
            .iter()
            .fold(GaussRat::zero(), |acc, ((a, b), c)| acc.add(&c.mul(&pow(x, *a)).mul(&pow(y, *b))))
    }
    /// Terms `((a, b), c)` in increasing order of `(a, b)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussRat)> {
        self.terms.iter()
    }

    /// Lowest total degree among the terms, `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    /// Determinant of a square matrix by expansion along rows, memoised on
    /// the set of used columns.
    pub fn det(m: &[Vec<BiPoly>]) -> BiPoly {
        let n = m.len();
        assert!(n < 32 && m.iter().all(|r| r.len() == n), "square matrix of size < 32");
        let mut memo: HashMap<u32, BiPoly> = HashMap::new();
        memo.insert((1u32 << n) - 1, BiPoly::constant(GaussRat::one()));
        fn rec(m: &[Vec<BiPoly>], used: u32, memo: &mut HashMap<u32, BiPoly>) -> BiPoly {
            if let Some(v) = memo.get(&used) {
                return v.clone();
            }
            let row = used.count_ones() as usize;
            let mut acc = BiPoly::zero();
            let mut sign_neg = false;
            for col in 0..m.len() {
                if used & (1 << col) != 0 {
                    continue;
                }
                if !m[row][col].is_zero() {
                    let term = m[row][col].mul(&rec(m, used | (1 << col), memo));
                    acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
                }
                sign_neg = !sign_neg;
            }
            memo.insert(used, acc.clone());
            acc
        }
        rec(m, 0, &mut memo)
    }
}


impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().rev().map(|((a, b), c)| format!("({c})·x^{a}y^{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
