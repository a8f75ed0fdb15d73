//! Generators, monomials and differential polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use qcore::{ComplexRing, ConjRing, GaussRat};

/// Label of a `u` generator: the pair `(α, β)`.
pub type Label = (u32, u8);

/// An antiderivative symbol `A` with `∂_y A = derivative`.
///
/// Symbols are content-addressed: two `A`s are equal exactly when their
/// defining derivatives are equal, so no shared counter is needed to name
/// them and results are reproducible across threads and runs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Antiderivative {
    pub derivative: DiffPoly,
    pub(crate) weight: i64,
    pub(crate) labels: Vec<Label>,
}

impl Antiderivative {
    pub fn weight(&self) -> i64 {
        self.weight
    }
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }
}

/// A generator of the algebra.
///
/// `U` is `u^{(order)}_{αβ}`; `A` is a formal antiderivative. The derived
/// ordering is family first (`U < A`), then `(α, β, order)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    U { alpha: u32, beta: u8, order: u32 },
    A(Arc<Antiderivative>),
}

impl Generator {
    pub fn u(alpha: u32, beta: u8, order: u32) -> Self {
        Generator::U { alpha, beta, order }
    }

    /// Grading: `u^{(k)}_{αβ}` has weight `α + k + 1`; `∂_y` raises weight by one.
    pub fn weight(&self) -> i64 {
        match self {
            Generator::U { alpha, order, .. } => *alpha as i64 + *order as i64 + 1,
            Generator::A(a) => a.weight,
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        match self {
            Generator::U { alpha, beta, .. } => vec![(*alpha, *beta)],
            Generator::A(a) => a.labels.clone(),
        }
    }

    pub fn is_antiderivative(&self) -> bool {
        matches!(self, Generator::A(_))
    }

    pub fn d_y(&self) -> DiffPoly {
        match self {
            Generator::U { alpha, beta, order } => {
                DiffPoly::generator(Generator::u(*alpha, *beta, order + 1))
            }
            Generator::A(a) => a.derivative.clone(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::U { alpha, beta, order } => {
                write!(f, "u{alpha}{beta}")?;
                if *order > 0 {
                    write!(f, "_{}", "y".repeat(*order as usize))?;
                }
                Ok(())
            }
            Generator::A(a) => write!(f, "I[{}]", a.derivative),
        }
    }
}

/// A monomial: sorted `(generator, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
    pub fn of(g: Generator) -> Self {
        Monomial(vec![(g, 1)])
    }
    pub fn from_factors(mut f: Vec<(Generator, u32)>) -> Self {
        f.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Generator, u32)> = Vec::with_capacity(f.len());
        for (g, e) in f {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, k)) if *h == g => *k += e,
                _ => out.push((g, e)),
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|(g, e)| g.weight() * *e as i64).sum()
    }

    /// Sorted multiset of labels.
    pub fn labels(&self) -> Vec<Label> {
        let mut l: Vec<Label> = Vec::new();
        for (g, e) in &self.0 {
            for _ in 0..*e {
                l.extend(g.labels());
            }
        }
        l.sort();
        l
    }

    pub fn has_antiderivative(&self) -> bool {
        self.0.iter().any(|(g, _)| g.is_antiderivative())
    }

    /// Highest derivative order among `U` factors.
    pub fn max_order(&self) -> u32 {
        self.0
            .iter()
            .map(|(g, _)| match g {
                Generator::U { order, .. } => *order,
                Generator::A(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Leibniz rule.
    pub fn d_y(&self) -> DiffPoly {
        self.derive_by(&Generator::d_y)
    }

    /// The derivation taking each generator `g` to `f(g)`, applied here.
    pub fn derive_by(&self, f: &impl Fn(&Generator) -> DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (k, (g, e)) in self.0.iter().enumerate() {
            let mut rest = self.0.clone();
            if *e == 1 {
                rest.remove(k);
            } else {
                rest[k].1 -= 1;
            }
            let dg = f(g);
            if dg.is_empty() {
                continue;
            }
            let rest = DiffPoly::from_monomial(Monomial(rest), GaussRat::from_int(*e as i64));
            for (m, c) in &rest.mul(&dg).terms {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the differential algebra: sparse map from monomials to
/// Gaussian-rational coefficients. Generators are real, so complex
/// conjugation acts on coefficients only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: BTreeMap::new() }
    }
    pub fn constant(c: GaussRat) -> Self {
        Self::from_monomial(Monomial::one(), c)
    }
    pub fn from_monomial(m: Monomial, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }
    pub fn generator(g: Generator) -> Self {
        Self::from_monomial(Monomial::of(g), GaussRat::one())
    }
    /// `u^{(order)}_{αβ}`.
    pub fn u(alpha: u32, beta: u8, order: u32) -> Self {
        Self::generator(Generator::u(alpha, beta, order))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Derivation `∂_y`, extended by the Leibniz rule.
    pub fn d_y(&self) -> Self {
        self.derive_by(&Generator::d_y)
    }

    /// Apply the derivation determined by its values on generators.
    pub fn derive_by(&self, f: &impl Fn(&Generator) -> DiffPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (mm, x) in &m.derive_by(f).terms {
                out.add_term(mm.clone(), x * c);
            }
        }
        out
    }

    /// `k`-fold derivative.
    pub fn d_y_n(&self, k: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.d_y();
        }
        p
    }

    pub fn has_antiderivatives(&self) -> bool {
        self.terms.keys().any(Monomial::has_antiderivative)
    }

    /// All antiderivative symbols occurring at top level.
    pub fn antiderivatives(&self) -> Vec<Arc<Antiderivative>> {
        let mut out: Vec<Arc<Antiderivative>> = Vec::new();
        for m in self.terms.keys() {
            for (g, _) in &m.0 {
                if let Generator::A(a) = g {
                    if !out.contains(a) {
                        out.push(a.clone());
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Split into homogeneous components keyed by (labels, weight).
    pub fn components(&self) -> BTreeMap<(Vec<Label>, i64), DiffPoly> {
        let mut out: BTreeMap<(Vec<Label>, i64), DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.labels(), m.weight()))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Real and imaginary parts (both with rational coefficients).
    pub fn re_im(&self) -> (DiffPoly, DiffPoly) {
        let mut re = Self::zero();
        let mut im = Self::zero();
        for (m, c) in &self.terms {
            re.add_term(m.clone(), GaussRat::from_rat(c.re.clone()));
            im.add_term(m.clone(), GaussRat::from_rat(c.im.clone()));
        }
        (re, im)
    }

    /// Evaluate with a generator assignment in any ring containing ℚ(i).
    pub fn eval<R: ConjRing>(
        &self,
        embed: &impl Fn(&GaussRat) -> R,
        assign: &impl Fn(&Generator) -> R,
    ) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (g, e) in &m.0 {
                let v = assign(g);
                for _ in 0..*e {
                    t = t.mul(&v);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl fmt::Display for DiffPoly {
    /// Deterministic rendering: terms in ascending monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (neg, mag) = if c.im.is_zero() && c.re < qcore::rat(0, 1) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if mag.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let body = if m.is_one() {
                coeff
            } else if mag == GaussRat::one() {
                m.to_string()
            } else {
                format!("{coeff}*{m}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl ConjRing for DiffPoly {
    fn zero() -> Self {
        DiffPoly::zero()
    }
    fn one() -> Self {
        DiffPoly::constant(GaussRat::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        DiffPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        DiffPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        DiffPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        DiffPoly::neg(self)
    }
    fn conj(&self) -> Self {
        DiffPoly::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        DiffPoly::constant(GaussRat::from_int(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        DiffPoly::constant(GaussRat::from_rat(qcore::rat(n, d)))
    }
}

impl ComplexRing for DiffPoly {
    fn imag_unit() -> Self {
        DiffPoly::constant(GaussRat::i())
    }
}
