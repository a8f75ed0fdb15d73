//! Tau functions `τ_W(γ) = det(w₊ + a⁻¹b·w₋)` of the window model.
//!
//! `γ ∈ Γ₊` acts by multiplication; on `H₊ ⊕ H₋` it is `[[a, b], [0, d]]`
//! with `a` unipotent Toeplitz, so `τ_W(γ)` also equals the determinant of the
//! plus-projection of `γ·w`. The code evaluates the displayed formula and
//! keeps the plus-projection for the independent rank test.

use qcore::linalg::Matrix;
use qcore::poly::BiPoly;
use qcore::{ConjRing, GaussRat};

use crate::frame::FiniteRankFrame;
use crate::index::IndexSet;
use crate::laurent::{deinterleave, exp_series, interleave, Laurent};
use crate::TauError;

/// `γ = exp(Σ t_k ζ^k)` on scalar frames, or `(γ₀, γ₁)` acting on the two
/// components of a frame of pairs.
#[derive(Clone, Debug, PartialEq)]
pub enum Flow {
    Scalar(Vec<GaussRat>),
    Pair(Vec<GaussRat>, Vec<GaussRat>),
}

struct Series {
    even: Vec<GaussRat>,
    odd: Vec<GaussRat>,
    paired: bool,
}

impl Series {
    fn new(flow: &Flow, len: usize) -> Self {
        match flow {
            Flow::Scalar(t) => {
                let s = exp_series(t, len);
                Series { even: s.clone(), odd: s, paired: false }
            }
            Flow::Pair(t0, t1) => {
                Series { even: exp_series(t0, len), odd: exp_series(t1, len), paired: true }
            }
        }
    }

    /// Coefficient of `ζ^i` in `γ·ζ^k` (interleaved for pairs).
    fn entry(&self, i: i64, k: i64) -> GaussRat {
        let get = |s: &[GaussRat], d: i64| {
            if d < 0 {
                GaussRat::zero()
            } else {
                s.get(d as usize).cloned().unwrap_or_else(GaussRat::zero)
            }
        };
        if !self.paired {
            return get(&self.even, i - k);
        }
        if (i - k).rem_euclid(2) != 0 {
            return GaussRat::zero();
        }
        let s = if k.rem_euclid(2) == 0 { &self.even } else { &self.odd };
        get(s, (i - k) / 2)
    }
}

fn check_flow(w: &FiniteRankFrame, flow: &Flow) -> Result<(), TauError> {
    if matches!(flow, Flow::Pair(..)) && !w.is_paired() {
        return Err(TauError::NotPaired);
    }
    Ok(())
}

/// `det(w₊ + a⁻¹b·w₋)` over the window.
pub fn tau(w: &FiniteRankFrame, flow: &Flow) -> Result<GaussRat, TauError> {
    check_flow(w, flow)?;
    let (lo, n) = (w.lo(), w.n());
    let nu = n as usize;
    let series = Series::new(flow, (n - lo).max(1) as usize);
    let a = Matrix::from_rows((0..n).map(|i| (0..n).map(|k| series.entry(i, k)).collect()).collect());
    let b = Matrix::from_rows((0..n).map(|i| (lo..0).map(|k| series.entry(i, k)).collect()).collect());
    let wp = Matrix::from_rows((0..n).map(|i| w.cols().iter().map(|c| c.coeff(i)).collect()).collect());
    let wm = Matrix::from_rows((lo..0).map(|i| w.cols().iter().map(|c| c.coeff(i)).collect()).collect());
    if nu == 0 {
        return Ok(GaussRat::one());
    }
    let a_inv = a.inverse().expect("a is unipotent");
    let correction = if lo < 0 { a_inv.mul(&b.mul(&wm)) } else { Matrix::zeros(nu, nu) };
    let mut x = wp;
    for (v, c) in x.data.iter_mut().zip(&correction.data) {
        *v = v.add(c);
    }
    Ok(x.det())
}

/// `τ_W(γ)` for a scalar frame.
pub fn tau_w(w: &FiniteRankFrame, t: &[GaussRat]) -> Result<GaussRat, TauError> {
    tau(w, &Flow::Scalar(t.to_vec()))
}

/// `τ̂_W(γ₀, γ₁)` for a frame of pairs.
pub fn tau_hat(w: &FiniteRankFrame, t0: &[GaussRat], t1: &[GaussRat]) -> Result<GaussRat, TauError> {
    tau(w, &Flow::Pair(t0.to_vec(), t1.to_vec()))
}

/// Whether the plus-projection of `γW` is onto, by exact rank of the
/// translated frame vectors.
pub fn big_cell_rank(w: &FiniteRankFrame, flow: &Flow) -> Result<bool, TauError> {
    check_flow(w, flow)?;
    let n = w.n();
    let len = (n - w.lo()).max(1) as usize;
    let moved: Vec<Laurent> = match flow {
        Flow::Scalar(t) => {
            let s = exp_series(t, len);
            w.cols().iter().map(|c| c.mul_series(&s, n)).collect()
        }
        Flow::Pair(t0, t1) => {
            let (s0, s1) = (exp_series(t0, len), exp_series(t1, len));
            w.cols()
                .iter()
                .map(|c| {
                    let (u, v) = deinterleave(c);
                    interleave(&u.mul_series(&s0, n / 2), &v.mul_series(&s1, n / 2))
                })
                .collect()
        }
    };
    let m: Matrix<GaussRat> =
        Matrix::from_rows((0..n).map(|i| moved.iter().map(|c| c.coeff(i)).collect()).collect());
    Ok(m.rank() == n as usize)
}

/// `τ_S(γ) = det(h_{i − s_j})` for `S` of virtual cardinal zero.
pub fn schur_tau(s: &IndexSet, t: &[GaussRat]) -> Result<GaussRat, TauError> {
    if s.virtual_cardinal() != 0 {
        return Err(TauError::NonzeroCardinal(s.virtual_cardinal()));
    }
    let n = s.stable_start();
    let elems = s.elements_below(n);
    let len = elems.first().map_or(1, |&m| (n - m).max(1) as usize);
    let h = exp_series(t, len);
    let entry = |d: i64| if d < 0 { GaussRat::zero() } else { h[d as usize].clone() };
    let m = Matrix::from_rows((0..n).map(|i| elems.iter().map(|&sj| entry(i - sj)).collect()).collect());
    Ok(if n == 0 { GaussRat::one() } else { m.det() })
}

fn parity(seq: &[i64]) -> i64 {
    let mut inversions = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The sign in `τ̂_S = ±τ_{S₀}τ_{S₁}`: parity of sorting rows and columns of
/// the interleaved matrix into the `(even, odd)` block order. `None` unless
/// both halves have virtual cardinal zero.
pub fn factorization_sign(s: &IndexSet) -> Option<i64> {
    let (s0, s1) = s.split();
    if s0.virtual_cardinal() != 0 || s1.virtual_cardinal() != 0 {
        return None;
    }
    let n = s.stable_start() + s.stable_start().rem_euclid(2);
    let blocked = |v: Vec<i64>| -> Vec<i64> {
        let (e, o): (Vec<i64>, Vec<i64>) = v.into_iter().partition(|k| k.rem_euclid(2) == 0);
        e.into_iter().chain(o).collect()
    };
    let rows = blocked((0..n).collect());
    let cols = blocked(s.elements_below(n));
    Some(parity(&rows) * parity(&cols))
}

fn factorial_inv(m: i64) -> GaussRat {
    let f: i64 = (1..=m).product();
    GaussRat::from_ratio(1, f)
}

/// Matrix of the plus-projection of `γ·w` with `γ = e^{xζ}` (and `e^{yζ}` on
/// the second component of pairs) as polynomials in `(x, y)`.
fn poly_matrix(w: &FiniteRankFrame, paired: bool) -> Vec<Vec<BiPoly>> {
    let n = w.n();
    let term = |c: &GaussRat, d: i64, second: bool| {
        let (a, b) = if second { (0, d as u32) } else { (d as u32, 0) };
        BiPoly::monomial(c.mul(&factorial_inv(d)), a, b)
    };
    (0..n)
        .map(|i| {
            w.cols()
                .iter()
                .map(|col| {
                    let mut acc = BiPoly::zero();
                    if paired {
                        let (u, v) = deinterleave(col);
                        let (r, second) = (i.div_euclid(2), i.rem_euclid(2) == 1);
                        let comp = if second { &v } else { &u };
                        for (e, c) in comp.terms().filter(|(e, _)| *e <= r) {
                            acc = acc.add(&term(c, r - e, second));
                        }
                    } else {
                        for (e, c) in col.terms().filter(|(e, _)| *e <= i) {
                            acc = acc.add(&term(c, i - e, false));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `τ̂_W(z, 0, …; z̄, 0, …)` as a polynomial in `(x, y) = (z, z̄)`.
pub fn diagonal_poly(w: &FiniteRankFrame) -> Result<BiPoly, TauError> {
    if !w.is_paired() {
        return Err(TauError::NotPaired);
    }
    Ok(BiPoly::det(&poly_matrix(w, true)))
}

/// `τ_W(z₁, 0, …)` as a polynomial in `x = z₁`.
pub fn z1_poly(w: &FiniteRankFrame) -> BiPoly {
    BiPoly::det(&poly_matrix(w, false))
}

/// A term `c·x^a y^b` as `((a, b), c)`.
pub type Term = ((u32, u32), GaussRat);

/// Lowest total degree and the terms of that degree.
pub fn lowest_term(p: &BiPoly) -> Option<(u32, Vec<Term>)> {
    let d = p.min_degree()?;
    Some((d, p.terms().filter(|((a, b), _)| a + b == d).map(|(k, c)| (*k, c.clone())).collect()))
}

/// `c|z|^{2m}` as the lowest-order part of the diagonal restriction.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalLead {
    pub m: u32,
    pub c: GaussRat,
}

/// `Some` exactly when the lowest-order part is a single real multiple of
/// `|z|^{2m}`.
pub fn diagonal_lead(w: &FiniteRankFrame) -> Result<Option<DiagonalLead>, TauError> {
    let p = diagonal_poly(w)?;
    Ok(lowest_term(&p).and_then(|(_, terms)| match terms.as_slice() {
        [((a, b), c)] if a == b && c.is_real() => Some(DiagonalLead { m: *a, c: c.clone() }),
        _ => None,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_counts_inversions() {
        assert_eq!(parity(&[0, 1, 2]), 1);
        assert_eq!(parity(&[1, 0, 2]), -1);
        assert_eq!(parity(&[2, 0, 1]), 1);
    }

    #[test]
    fn vacuum_tau_is_one() {
        let t = [GaussRat::from_ints(2, 1), GaussRat::from_int(-3)];
        assert_eq!(schur_tau(&IndexSet::naturals(), &t).unwrap(), GaussRat::one());
    }
}
