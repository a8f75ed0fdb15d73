//! Truncated pseudo-differential operators in `∂_y` with quaternionic
//! coefficients.
//!
//! An operator is a finite map `exponent → coefficient`, written with the
//! coefficient on the left: `Σ a_e ∂_y^e`. Negative powers make the true
//! operator an infinite series, so every operator with a negative exponent
//! carries a window `lo_valid`: coefficients at exponents below it are
//! unknown, and asking for one is an error rather than a silent zero.

use std::collections::BTreeMap;
use std::fmt;

use diffalg::DiffRing;
use qcore::{GaussRat, Quaternion};
use serde_json::{json, Value};
use thiserror::Error;

/// Default lowest valid exponent for desk-scale computations.
pub const DEFAULT_LO: i32 = -8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsdError {
    #[error("exponent {exp} lies below the validity window (lo_valid = {lo})")]
    OutsideWindow { exp: i32, lo: i32 },
    #[error("negative exponent {0} needs a validity window")]
    MissingWindow(i32),
    #[error("cannot widen a window from {from} down to {to}")]
    WidenWindow { from: i32, to: i32 },
    #[error("differential part undetermined: window starts at {0} > 0")]
    PlusPartUnknown(i32),
    #[error("phase is not unimodular")]
    NonUnimodularPhase,
    #[error("operator is not of the form 1 + lower order terms")]
    NotUnipotent,
}

/// `Σ coeffs[e]·∂_y^e`, exact at every exponent `≥ lo_valid`.
///
/// `lo_valid == None` means the operator is known exactly; that is only
/// allowed for differential operators (no negative exponents).
#[derive(Clone, Debug, PartialEq)]
pub struct PsdOp<C: DiffRing> {
    coeffs: BTreeMap<i32, Quaternion<C>>,
    lo_valid: Option<i32>,
}

/// Generalised binomial coefficient `binom(e, l)` for any integer `e`.
fn binom(e: i32, l: u32) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for k in 0..l as i128 {
        num *= e as i128 - k;
        den *= k + 1;
    }
    i64::try_from(num / den).expect("binomial coefficient overflows i64")
}

fn d_y_q<C: DiffRing>(q: &Quaternion<C>) -> Quaternion<C> {
    q.map(|x| x.d_y())
}

impl<C: DiffRing> PsdOp<C> {
    /// The exact zero operator.
    pub fn zero() -> Self {
        PsdOp { coeffs: BTreeMap::new(), lo_valid: None }
    }

    /// The exact identity.
    pub fn identity() -> Self {
        Self::term(Quaternion::one(), 0, None).expect("exact constant term")
    }

    /// Build from explicit coefficients; zero entries are dropped.
    pub fn new(
        coeffs: impl IntoIterator<Item = (i32, Quaternion<C>)>,
        lo_valid: Option<i32>,
    ) -> Result<Self, PsdError> {
        let mut out = PsdOp { coeffs: BTreeMap::new(), lo_valid };
        for (e, c) in coeffs {
            match lo_valid {
                None if e < 0 => return Err(PsdError::MissingWindow(e)),
                Some(lo) if e < lo => return Err(PsdError::OutsideWindow { exp: e, lo }),
                _ => {}
            }
            out.add_at(e, &c);
        }
        Ok(out)
    }

    /// `c·∂_y^e`.
    pub fn term(c: Quaternion<C>, e: i32, lo_valid: Option<i32>) -> Result<Self, PsdError> {
        Self::new([(e, c)], lo_valid)
    }

    /// `∂_y^e`; negative powers use the given window.
    pub fn del(e: i32, lo_valid: Option<i32>) -> Result<Self, PsdError> {
        Self::term(Quaternion::one(), e, lo_valid)
    }

    /// Multiplication by a function, as an exact order-zero operator.
    pub fn scalar(c: Quaternion<C>) -> Self {
        Self::term(c, 0, None).expect("order zero is exact")
    }

    fn add_at(&mut self, e: i32, c: &Quaternion<C>) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.get(&e) {
            Some(x) => x.add(c),
            None => c.clone(),
        };
        if v.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, v);
        }
    }

    pub fn lo_valid(&self) -> Option<i32> {
        self.lo_valid
    }

    pub fn is_exact(&self) -> bool {
        self.lo_valid.is_none()
    }

    /// Highest stored exponent (`None` for a zero operator).
    pub fn hi(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Stored terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Quaternion<C>)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient at exponent `e`, refusing exponents outside the window.
    pub fn coeff(&self, e: i32) -> Result<Quaternion<C>, PsdError> {
        if let Some(lo) = self.lo_valid {
            if e < lo {
                return Err(PsdError::OutsideWindow { exp: e, lo });
            }
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(Quaternion::zero))
    }

    /// Forget everything below `lo`. Only narrowing is permitted.
    pub fn truncate(&self, lo: i32) -> Result<Self, PsdError> {
        if let Some(cur) = self.lo_valid {
            if lo < cur {
                return Err(PsdError::WidenWindow { from: cur, to: lo });
            }
        }
        Ok(PsdOp {
            coeffs: self.coeffs.range(lo..).map(|(e, c)| (*e, c.clone())).collect(),
            lo_valid: Some(lo),
        })
    }

    /// Largest exponent that any term, known or not, can occupy.
    fn top(&self) -> Option<i32> {
        match self.lo_valid {
            None => self.hi(),
            Some(lo) => Some(self.hi().map_or(lo - 1, |h| h.max(lo - 1))),
        }
    }

    fn combine_lo(a: Option<i32>, b: Option<i32>) -> Option<i32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) | (None, x) => x,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let lo = Self::combine_lo(self.lo_valid, o.lo_valid);
        let mut out = PsdOp { coeffs: BTreeMap::new(), lo_valid: lo };
        for (e, c) in self.terms().chain(o.terms()) {
            if lo.is_none_or(|l| e >= l) {
                out.add_at(e, c);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        PsdOp {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
            lo_valid: self.lo_valid,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `q·A`, multiplying every coefficient on the left.
    pub fn scale_left(&self, q: &Quaternion<C>) -> Self {
        self.map_coeffs(|c| q.mul(c))
    }

    /// `A·q` for a constant quaternion `q` (constants commute with `∂_y`).
    pub fn scale_right_const(&self, q: &Quaternion<C>) -> Self {
        self.map_coeffs(|c| c.mul(q))
    }

    fn map_coeffs(&self, f: impl Fn(&Quaternion<C>) -> Quaternion<C>) -> Self {
        let mut out = PsdOp { coeffs: BTreeMap::new(), lo_valid: self.lo_valid };
        for (e, c) in self.terms() {
            out.add_at(e, &f(c));
        }
        out
    }

    /// Validity window of a product, from the operands' windows.
    fn product_lo(&self, o: &Self) -> Option<i32> {
        let from_a = self.lo_valid.and_then(|lo| o.top().map(|t| lo + t));
        let from_b = o.lo_valid.and_then(|lo| self.top().map(|t| lo + t));
        // both windows are `None` only when both operands are exact
        match (from_a, from_b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) | (None, x) => x,
        }
    }

    /// Operator product `self ∘ o`, using `∂_y^e b = Σ_l binom(e,l) b^{(l)} ∂_y^{e−l}`.
    pub fn compose(&self, o: &Self) -> Self {
        if (self.is_exact() && self.is_zero()) || (o.is_exact() && o.is_zero()) {
            return Self::zero();
        }
        let lo = self.product_lo(o);
        let mut out = PsdOp { coeffs: BTreeMap::new(), lo_valid: lo };
        for (ea, a) in self.terms() {
            for (eb, b) in o.terms() {
                let mut deriv = b.clone();
                let mut l: u32 = 0;
                loop {
                    let e = ea + eb - l as i32;
                    if lo.is_some_and(|lo| e < lo) || deriv.is_zero() {
                        break;
                    }
                    let k = binom(ea, l);
                    if k == 0 {
                        break;
                    }
                    out.add_at(e, &a.mul(&deriv).map(|x| x.scale_i64(k)));
                    deriv = d_y_q(&deriv);
                    l += 1;
                }
            }
        }
        out
    }

    /// Contribution of the stored terms alone to exponent `e` of `self ∘ o`.
    ///
    /// Windows are ignored: this is the tool for order-by-order solving,
    /// where the caller knows which unknown terms are missing.
    pub fn product_coeff(&self, o: &Self, e: i32) -> Quaternion<C> {
        let mut acc = Quaternion::zero();
        for (ea, a) in self.terms() {
            for (eb, b) in o.terms() {
                let shift = ea + eb - e;
                if shift < 0 {
                    continue;
                }
                let k = binom(ea, shift as u32);
                if k == 0 {
                    continue;
                }
                let mut deriv = b.clone();
                for _ in 0..shift {
                    deriv = d_y_q(&deriv);
                }
                acc = acc.add(&a.mul(&deriv).map(|x| x.scale_i64(k)));
            }
        }
        acc
    }

    /// `[A, B] = A∘B − B∘A`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.compose(o).sub(&o.compose(self))
    }

    /// Differential part (exponents `≥ 0`); exact whenever it is determined.
    pub fn plus_part(&self) -> Result<Self, PsdError> {
        if let Some(lo) = self.lo_valid {
            if lo > 0 {
                return Err(PsdError::PlusPartUnknown(lo));
            }
        }
        Ok(PsdOp {
            coeffs: self.coeffs.range(0..).map(|(e, c)| (*e, c.clone())).collect(),
            lo_valid: None,
        })
    }

    /// Integral part (exponents `< 0`), keeping the window.
    pub fn minus_part(&self) -> Self {
        PsdOp {
            coeffs: self.coeffs.range(..0).map(|(e, c)| (*e, c.clone())).collect(),
            lo_valid: self.lo_valid,
        }
    }

    /// `w̄·A·w` for a unimodular constant `w = e^{it₀}`.
    ///
    /// Writing a coefficient as `a + jb`, this fixes `a` and sends `b` to `w²b`.
    pub fn conjugate_by_phase(&self, w: &GaussRat) -> Result<Self, PsdError> {
        if w.norm_sqr() != qcore::rat(1, 1) {
            return Err(PsdError::NonUnimodularPhase);
        }
        let w2 = C::from_gauss(&(w * w));
        Ok(self.map_coeffs(|c| Quaternion::new(c.a.clone(), w2.mul(&c.b))))
    }

    /// Apply `∂_y` to every coefficient (not the operator commutator).
    pub fn map_d_y(&self) -> Self {
        self.map_coeffs(d_y_q)
    }

    /// Apply `f` to every coefficient, keeping exponents and the window.
    pub fn map<F: Fn(&Quaternion<C>) -> Quaternion<C>>(&self, f: F) -> Self {
        self.map_coeffs(f)
    }

    /// Inverse of `1 + N` with `N` strictly negative.
    ///
    /// `X = 1 − N·X` determines the coefficients of `X` one exponent at a
    /// time, since `N·X` at `∂_y^{-m}` only involves `X` above `-m`. The
    /// result is valid on the operand's window (`DEFAULT_LO` if exact).
    pub fn inverse_unipotent(&self) -> Result<Self, PsdError> {
        if self.coeff(0)? != Quaternion::one() || self.hi().is_some_and(|h| h > 0) {
            return Err(PsdError::NotUnipotent);
        }
        let lo = self.lo_valid.unwrap_or(DEFAULT_LO);
        let n = self.sub(&Self::identity()).truncate(lo)?;
        let mut x = Self::identity().truncate(lo)?;
        for m in 1..=-lo {
            let c = n.product_coeff(&x, -m).neg();
            x.add_at(-m, &c);
        }
        Ok(x)
    }

    /// Equality on the common window of both operators.
    pub fn eq_within(&self, o: &Self) -> bool {
        let lo = Self::combine_lo(self.lo_valid, o.lo_valid);
        let d = self.sub(o);
        let ok = d.terms().all(|(e, _)| lo.is_some_and(|l| e < l));
        ok
    }

    /// Terms in exponent-descending order as `(e, a, b)` strings.
    pub fn rendered_terms(&self) -> Vec<(i32, String, String)> {
        self.terms()
            .rev()
            .map(|(e, c)| (e, c.a.render(), c.b.render()))
            .collect()
    }

    /// Deterministic JSON form: terms in exponent-descending order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .rendered_terms()
            .into_iter()
            .map(|(e, a, b)| json!({"exp": e, "a": a, "b": b}))
            .collect();
        json!({"lo_valid": self.lo_valid, "terms": terms})
    }
}

impl<C: DiffRing> fmt::Display for PsdOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rendered_terms()
            .into_iter()
            .map(|(e, a, b)| {
                let coeff = match (a.as_str(), b.as_str()) {
                    (_, "0") => format!("({a})"),
                    ("0", _) => format!("j({b})"),
                    _ => format!("({a} + j({b}))"),
                };
                if e == 0 {
                    coeff
                } else {
                    format!("{coeff}∂^{e}")
                }
            })
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        match self.lo_valid {
            Some(lo) => write!(f, "{body} + O(∂^{})", lo - 1),
            None => write!(f, "{body}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(3, 2), 3);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(-1, 3), -1);
        assert_eq!(binom(-2, 2), 3);
        assert_eq!(binom(5, 0), 1);
    }
}
