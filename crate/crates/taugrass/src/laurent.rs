//! Laurent polynomials over the Gaussian rationals and the interleaving
//! `(u, v) ↦ u(ζ²) + ζv(ζ²)`.

use std::collections::BTreeMap;

use qcore::{ConjRing, GaussRat};

/// `Σ c_k ζ^k`, zero coefficients never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    coeffs: BTreeMap<i64, GaussRat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }
    pub fn monomial(c: GaussRat, k: i64) -> Self {
        let mut l = Laurent::zero();
        l.set(k, c);
        l
    }
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, GaussRat)>) -> Self {
        let mut l = Laurent::zero();
        for (k, c) in terms {
            l.set(k, l.coeff(k).add(&c));
        }
        l
    }
    pub fn coeff(&self, k: i64) -> GaussRat {
        self.coeffs.get(&k).cloned().unwrap_or_else(GaussRat::zero)
    }
    pub fn set(&mut self, k: i64, c: GaussRat) {
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRat)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }
    pub fn add(&self, o: &Self) -> Self {
        Laurent::from_terms(self.terms().chain(o.terms()).map(|(k, c)| (k, c.clone())))
    }
    pub fn scale(&self, s: &GaussRat) -> Self {
        Laurent::from_terms(self.terms().map(|(k, c)| (k, c.mul(s))))
    }
    pub fn neg(&self) -> Self {
        self.scale(&GaussRat::from_int(-1))
    }
    /// `v̄(ζ) = conj(v(ζ̄))`: conjugate every coefficient.
    pub fn conj(&self) -> Self {
        Laurent::from_terms(self.terms().map(|(k, c)| (k, c.conj())))
    }
    /// Product with the power series `Σ_{m≥0} s_m ζ^m`, keeping exponents `< cap`.
    pub fn mul_series(&self, s: &[GaussRat], cap: i64) -> Self {
        let mut out = Laurent::zero();
        for (k, c) in self.terms() {
            for (m, sm) in s.iter().enumerate() {
                let e = k + m as i64;
                if e >= cap {
                    break;
                }
                out.set(e, out.coeff(e).add(&c.mul(sm)));
            }
        }
        out
    }
}

/// `u(ζ²) + ζv(ζ²)`: `u_n ↦ 2n`, `v_n ↦ 2n + 1`.
pub fn interleave(u: &Laurent, v: &Laurent) -> Laurent {
    Laurent::from_terms(
        u.terms().map(|(k, c)| (2 * k, c.clone())).chain(v.terms().map(|(k, c)| (2 * k + 1, c.clone()))),
    )
}

pub fn deinterleave(w: &Laurent) -> (Laurent, Laurent) {
    let pick = |r: i64| {
        Laurent::from_terms(
            w.terms().filter(|(k, _)| k.rem_euclid(2) == r).map(|(k, c)| (k.div_euclid(2), c.clone())),
        )
    };
    (pick(0), pick(1))
}

/// The first `len` coefficients of `exp(Σ_k t_k ζ^k)`, with `t[0] = t₁`,
/// from `n·h_n = Σ_k k·t_k·h_{n−k}`.
pub fn exp_series(t: &[GaussRat], len: usize) -> Vec<GaussRat> {
    let mut h = Vec::with_capacity(len);
    if len == 0 {
        return h;
    }
    h.push(GaussRat::one());
    for n in 1..len {
        let mut acc = GaussRat::zero();
        for k in 1..=n.min(t.len()) {
            acc = acc.add(&t[k - 1].scale_i64(k as i64).mul(&h[n - k]));
        }
        h.push(acc.mul(&GaussRat::from_ratio(1, n as i64)));
    }
    h
}
