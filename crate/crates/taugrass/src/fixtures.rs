//! Random and hand-built frames shared by tests, the acceptance suite and
//! the command line.

use rand::Rng;

use qcore::{ConjRing, GaussRat};

use crate::frame::FiniteRankFrame;
use crate::laurent::Laurent;

/// `a + bi` with integers in `[−r, r]`.
pub fn random_gauss<R: Rng>(rng: &mut R, r: i64) -> GaussRat {
    GaussRat::from_ints(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// Coefficients in `[lo, hi)`; nonnegative exponents are dropped with
/// probability `zero_prob`, which pushes frames off the big cell at `γ = 1`.
pub fn random_laurent<R: Rng>(rng: &mut R, lo: i64, hi: i64, zero_prob: f64) -> Laurent {
    let mut terms = Vec::new();
    for k in lo..hi {
        if k < 0 || rng.gen::<f64>() >= zero_prob {
            terms.push((k, random_gauss(rng, 3)));
        }
    }
    Laurent::from_terms(terms)
}

/// `span{x_k, j·x_k}` for `n_half` random pairs on `[lo_half, n_half)`.
pub fn random_quaternionic_frame<R: Rng>(
    rng: &mut R,
    lo_half: i64,
    n_half: i64,
    zero_prob: f64,
) -> FiniteRankFrame {
    loop {
        let pairs: Vec<(Laurent, Laurent)> = (0..n_half)
            .map(|_| {
                (random_laurent(rng, lo_half, n_half, zero_prob), random_laurent(rng, lo_half, n_half, zero_prob))
            })
            .collect();
        if let Ok(f) = FiniteRankFrame::quaternionic(lo_half, n_half, &pairs) {
            return f;
        }
    }
}

pub fn random_scalar_frame<R: Rng>(rng: &mut R, lo: i64, n: i64, zero_prob: f64) -> FiniteRankFrame {
    loop {
        let cols = (0..n).map(|_| random_laurent(rng, lo, n, zero_prob)).collect();
        if let Ok(f) = FiniteRankFrame::new(lo, n, cols) {
            return f;
        }
    }
}

fn mono(re: i64, im: i64, k: i64) -> Laurent {
    Laurent::monomial(GaussRat::from_ints(re, im), k)
}

/// `span{(ζ⁻¹, 1), (−1, ζ⁻¹)} ⊕ ζH₊²`: `jW = W`, yet the coordinate at
/// `S = {−2, 0} ∪ [2, ∞)`, where `S₀ ≠ S₁`, equals `−1`.
pub fn support_counterexample() -> FiniteRankFrame {
    FiniteRankFrame::quaternionic(-1, 1, &[(mono(1, 0, -1), mono(1, 0, 0))]).expect("fixture is a frame")
}

/// A scalar frame `V` on `[−2, 2)` in the big cell, for `V ⊕ V̄`.
pub fn kp_base() -> FiniteRankFrame {
    FiniteRankFrame::new(
        -2,
        2,
        vec![mono(1, 0, 0).add(&mono(2, -1, -1)), mono(1, 0, 1).add(&mono(0, 1, -2)).add(&mono(-1, 0, -1))],
    )
    .expect("fixture is a frame")
}

/// A quaternionic frame whose Baker function has `a₁` with nonzero `j`-part.
pub fn quaternionic_fixture() -> FiniteRankFrame {
    FiniteRankFrame::quaternionic(-1, 1, &[(mono(1, 0, 0).add(&mono(2, 0, -1)), mono(0, 1, -1))])
        .expect("fixture is a frame")
}

/// `span{(ζ⁻¹ − z₀, 0), j·(…)}`: `τ̂ = |z − z₀|²` on the diagonal, so the
/// translate leaves the big cell exactly at `z = z₀`.
pub fn root_fixture(z0: &GaussRat) -> FiniteRankFrame {
    let u = Laurent::monomial(GaussRat::one(), -1).add(&Laurent::monomial(z0.neg(), 0));
    FiniteRankFrame::quaternionic(-1, 1, &[(u, Laurent::zero())]).expect("fixture is a frame")
}
