//! Exact Baker coefficients `ψ = (1 + Σ a_k ζ^{−k})e^{zζ}`.
//!
//! For a window frame of pairs, `ψ·γ⁻¹` is the element of `Wγ⁻¹` whose
//! plus-projection is `1 = (1, 0)`; with `γ = (e^{zζ}, e^{z̄ζ})` and
//! `(u, v) ↔ u + jv̄`, the coefficient is `a_k = u_{−k} + j·conj(v_{−k})`.

use qcore::linalg::{solve_left_quaternionic, Matrix};
use qcore::{ConjRing, GaussRat, Quaternion};

use crate::frame::FiniteRankFrame;
use crate::laurent::{deinterleave, exp_series, interleave, Laurent};
use crate::TauError;

type QRat = Quaternion<GaussRat>;

/// `a_1 … a_{−lo/2}` of the Baker function of a frame of pairs at `z`.
pub fn baker_from_frame(w: &FiniteRankFrame, z: &GaussRat) -> Result<Vec<QRat>, TauError> {
    if !w.is_paired() {
        return Err(TauError::NotPaired);
    }
    let (lo, n) = (w.lo(), w.n());
    let len = (n - lo).max(1) as usize;
    let s0 = exp_series(&[z.neg()], len);
    let s1 = exp_series(&[z.conj().neg()], len);
    let moved: Vec<Laurent> = w
        .cols()
        .iter()
        .map(|c| {
            let (u, v) = deinterleave(c);
            interleave(&u.mul_series(&s0, n / 2), &v.mul_series(&s1, n / 2))
        })
        .collect();
    let m = Matrix::from_rows((0..n).map(|i| moved.iter().map(|c| c.coeff(i)).collect()).collect());
    let rhs: Vec<GaussRat> = (0..n).map(|i| if i == 0 { GaussRat::one() } else { GaussRat::zero() }).collect();
    let coeffs = if n == 0 { Vec::new() } else { m.solve(&rhs).ok_or(TauError::Singular)? };
    let mut tail = Laurent::zero();
    for (c, col) in coeffs.iter().zip(&moved) {
        tail = tail.add(&col.scale(c));
    }
    let (u, v) = deinterleave(&tail);
    Ok((1..=-lo / 2).map(|k| Quaternion::new(u.coeff(-k), v.coeff(-k).conj())).collect())
}

/// `ψ(p) = ψ(q)·h` with Gaussian-rational data.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCondition {
    pub p: GaussRat,
    pub q: GaussRat,
    pub h: QRat,
}

/// The nodal coefficients at `z = 0`, where `e^{zζ} = 1` keeps everything
/// exact: `Σ_k a_k(p^{−k} − q^{−k}h) = h − 1`.
pub fn baker_at_origin(conditions: &[ExactCondition]) -> Result<Vec<QRat>, TauError> {
    let n = conditions.len();
    let mut coeffs = vec![Vec::with_capacity(n); n];
    let mut rhs = Vec::with_capacity(n);
    for (index, c) in conditions.iter().enumerate() {
        let bad = |reason: &str| TauError::BadCondition { index, reason: reason.into() };
        let pi = c.p.inv().ok_or_else(|| bad("p is zero"))?;
        let qi = c.q.inv().ok_or_else(|| bad("q is zero"))?;
        if c.p == c.q {
            return Err(bad("p and q coincide"));
        }
        if c.h.a.is_zero() && c.h.b.is_zero() {
            return Err(bad("the weight h is zero"));
        }
        let (mut pk, mut qk) = (GaussRat::one(), GaussRat::one());
        for row in coeffs.iter_mut() {
            pk = pk.mul(&pi);
            qk = qk.mul(&qi);
            row.push(Quaternion::complex(pk.clone()).sub(&Quaternion::complex(qk.clone()).mul(&c.h)));
        }
        rhs.push(c.h.sub(&Quaternion::one()));
    }
    solve_left_quaternionic(&coeffs, &rhs).ok_or(TauError::Singular)
}
