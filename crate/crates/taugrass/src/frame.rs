//! Finite-rank frames and their Plücker coordinates `w^S = det(w_{s_i, j})`.

use qcore::linalg::Matrix;
use qcore::par::{map_indexed, Exec};
use qcore::GaussRat;

use crate::index::IndexSet;
use crate::laurent::{deinterleave, interleave, Laurent};
use crate::TauError;

/// `W = span(cols) ⊕ ζⁿH₊` with every column supported in `[lo, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteRankFrame {
    lo: i64,
    n: i64,
    cols: Vec<Laurent>,
    quaternionic: bool,
}

fn check_pairs_window(lo_half: i64, n_half: i64) -> Result<(), TauError> {
    if lo_half > 0 || n_half < 0 {
        return Err(TauError::OutsideWindow(format!("[{lo_half}, {n_half})")));
    }
    Ok(())
}

impl FiniteRankFrame {
    /// A scalar frame; needs exactly `n` independent columns in `[lo, n)`.
    pub fn new(lo: i64, n: i64, cols: Vec<Laurent>) -> Result<Self, TauError> {
        if lo > 0 || n < 0 {
            return Err(TauError::OutsideWindow(format!("[{lo}, {n})")));
        }
        if cols.len() != n as usize {
            return Err(TauError::WrongCount { expected: n as usize, got: cols.len() });
        }
        for c in &cols {
            if let (Some(a), Some(b)) = (c.min_exp(), c.max_exp()) {
                if a < lo || b >= n {
                    return Err(TauError::OutsideWindow(format!("exponents [{a}, {b}] not in [{lo}, {n})")));
                }
            }
        }
        let f = FiniteRankFrame { lo, n, cols, quaternionic: false };
        if f.coefficient_matrix().rank() < n as usize {
            return Err(TauError::Dependent);
        }
        Ok(f)
    }

    /// A frame of pairs: both components contain `ζ^{n_half}H₊` and are
    /// supported in `[lo_half, n_half)`.
    pub fn from_pairs(lo_half: i64, n_half: i64, pairs: &[(Laurent, Laurent)]) -> Result<Self, TauError> {
        check_pairs_window(lo_half, n_half)?;
        let cols = pairs.iter().map(|(u, v)| interleave(u, v)).collect();
        Self::new(2 * lo_half, 2 * n_half, cols)
    }

    /// The span of `pairs` and their `j`-images, flagged quaternionic.
    pub fn quaternionic(lo_half: i64, n_half: i64, pairs: &[(Laurent, Laurent)]) -> Result<Self, TauError> {
        let all: Vec<(Laurent, Laurent)> =
            pairs.iter().flat_map(|(u, v)| [(u.clone(), v.clone()), (v.conj().neg(), u.conj())]).collect();
        Self::from_pairs(lo_half, n_half, &all)?.into_quaternionic()
    }

    /// `V ⊕ V̄ = {(u, w̄) : u, w ∈ V}` for a scalar frame `V`.
    pub fn kp(v: &FiniteRankFrame) -> Result<Self, TauError> {
        let zero = Laurent::zero();
        // columns alternate like the rows, so that τ̂ = τ_V·τ_V̄ without a sign
        let pairs: Vec<(Laurent, Laurent)> = v
            .cols
            .iter()
            .flat_map(|c| [(c.clone(), zero.clone()), (zero.clone(), c.conj())])
            .collect();
        Self::from_pairs(v.lo, v.n, &pairs)?.into_quaternionic()
    }

    /// `H_S` on the window `[lo, n)`.
    pub fn basis(s: &IndexSet, lo: i64, n: i64) -> Result<Self, TauError> {
        if s.virtual_cardinal() != 0 {
            return Err(TauError::NonzeroCardinal(s.virtual_cardinal()));
        }
        if s.min() < lo || s.stable_start() > n {
            return Err(TauError::OutsideWindow(format!("{s} on [{lo}, {n})")));
        }
        let cols = s.elements_below(n).into_iter().map(|k| Laurent::monomial(GaussRat::one(), k)).collect();
        Self::new(lo, n, cols)
    }

    /// Verify `jW = W` and set the flag.
    pub fn into_quaternionic(mut self) -> Result<Self, TauError> {
        if !self.is_paired() || !self.is_closed_under(j_image) {
            return Err(TauError::NotQuaternionic);
        }
        self.quaternionic = true;
        Ok(self)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn n(&self) -> i64 {
        self.n
    }
    pub fn cols(&self) -> &[Laurent] {
        &self.cols
    }
    pub fn is_quaternionic(&self) -> bool {
        self.quaternionic
    }
    pub fn is_paired(&self) -> bool {
        self.lo % 2 == 0 && self.n % 2 == 0
    }

    /// `Wi = W`: right multiplication by `i` is `(u, v) ↦ (iu, −iv)`, so by
    /// complex linearity this is closure under `(u, v) ↦ (u, −v)`.
    pub fn is_kp_type(&self) -> bool {
        self.is_paired()
            && self.is_closed_under(|c| {
                let (u, v) = deinterleave(c);
                interleave(&u, &v.neg())
            })
    }

    fn is_closed_under(&self, f: impl Fn(&Laurent) -> Laurent) -> bool {
        let mut cols = self.cols.clone();
        cols.extend(self.cols.iter().map(f));
        self.matrix_of(&cols).rank() == self.n as usize
    }

    /// Rows are the exponents `lo..n`, columns the frame vectors.
    pub fn coefficient_matrix(&self) -> Matrix<GaussRat> {
        self.matrix_of(&self.cols)
    }

    fn matrix_of(&self, cols: &[Laurent]) -> Matrix<GaussRat> {
        Matrix::from_rows((self.lo..self.n).map(|k| cols.iter().map(|c| c.coeff(k)).collect()).collect())
    }

    /// Whether `w` lies in `W` modulo `ζⁿH₊`.
    pub fn contains(&self, w: &Laurent) -> bool {
        if w.min_exp().is_some_and(|k| k < self.lo) {
            return false;
        }
        let mut cols = self.cols.clone();
        cols.push(w.clone());
        self.matrix_of(&cols).rank() == self.n as usize
    }
}

/// `j(u, v) = (−v̄, ū)` on an interleaved vector.
pub fn j_image(w: &Laurent) -> Laurent {
    let (u, v) = deinterleave(w);
    interleave(&v.conj().neg(), &u.conj())
}

/// `w^S`; `S` must have virtual cardinal zero and lie in the window.
pub fn plucker(w: &FiniteRankFrame, s: &IndexSet) -> Result<GaussRat, TauError> {
    if s.virtual_cardinal() != 0 {
        return Err(TauError::NonzeroCardinal(s.virtual_cardinal()));
    }
    if s.min() < w.lo || s.stable_start() > w.n {
        return Err(TauError::OutsideWindow(format!("{s} on [{}, {})", w.lo, w.n)));
    }
    let rows: Vec<i64> = s.elements_below(w.n);
    Ok(minor(w, &rows))
}

fn minor(w: &FiniteRankFrame, rows: &[i64]) -> GaussRat {
    Matrix::from_rows(rows.iter().map(|&k| w.cols.iter().map(|c| c.coeff(k)).collect()).collect()).det()
}

fn subsets(range: std::ops::Range<i64>, size: usize) -> Vec<Vec<i64>> {
    fn rec(start: i64, end: i64, size: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = (size - cur.len()) as i64;
        for k in start..=end - need {
            cur.push(k);
            rec(k + 1, end, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(range.start, range.end, size, &mut Vec::new(), &mut out);
    out
}

/// Every nonzero `w^S` with `S` in the window.
pub fn plucker_support(w: &FiniteRankFrame, exec: Exec) -> Vec<(IndexSet, GaussRat)> {
    let rows = subsets(w.lo..w.n, w.n as usize);
    map_indexed(rows.len(), exec, |k| {
        let d = minor(w, &rows[k]);
        (!d.is_zero()).then(|| (IndexSet::from_window(&rows[k], w.n), d))
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Nonzero Plücker coordinates with `S₀ ≠ S₁`.
pub fn support_law_violations(w: &FiniteRankFrame, exec: Exec) -> Vec<(IndexSet, GaussRat)> {
    plucker_support(w, exec)
        .into_iter()
        .filter(|(s, _)| {
            let (s0, s1) = s.split();
            s0 != s1
        })
        .collect()
}
