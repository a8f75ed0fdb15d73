//! Dense linear algebra over any [`Field`], plus the quaternionic
//! left-linear solve used by the nodal and tau modules.

use num_complex::Complex64;

use crate::quat::Quaternion;
use crate::ring::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, T::one());
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<T> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged matrix");
        Matrix { rows: r, cols: c, data }
    }
    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j).add(&x.mul(o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Choose the pivot row in column `col` at or below `start`.
    fn pivot_row(&self, col: usize, start: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in start..self.rows {
            let w = self.get(r, col).pivot_weight();
            if w > 0.0 && best.is_none_or(|(_, bw)| w > bw) {
                best = Some((r, w));
            }
        }
        best.map(|(r, _)| r)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = self.pivot_row(col, row) else { continue };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c).sub(&f.mul(self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Determinant by elimination with row swaps tracked.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = m.pivot_row(col, col) else { return T::zero() };
            if p != col {
                m.swap_rows(p, col);
                det = det.neg();
            }
            let piv = m.get(col, col).clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let f = m.get(r, col).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).sub(&f.mul(m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Solve `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some((0..n).map(|i| aug.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, T::one());
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }
}

impl Matrix<Complex64> {
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
    /// 1-norm condition number; infinite for singular matrices.
    pub fn condition_number(&self) -> f64 {
        match self.inverse() {
            Some(inv) => self.norm1() * inv.norm1(),
            None => f64::INFINITY,
        }
    }
}

/// Realify the left-linear quaternionic system `Σ_k x_k·C[k][i] = r_i`.
///
/// With `x = α + jβ` and `γ = β̄`, the pair `(a-part, conj(b-part))` of
/// `x·(c + jd)` equals `(α, γ)·[[c, d̄], [−d, c̄]]`, which is complex linear.
/// Returns the transposed system `M·(α₀, γ₀, α₁, γ₁, …) = rhs`.
pub fn realify_left_system<T: Field>(
    coeffs: &[Vec<Quaternion<T>>],
    rhs: &[Quaternion<T>],
) -> (Matrix<T>, Vec<T>) {
    let n = coeffs.len();
    let m = rhs.len();
    let mut mat = Matrix::zeros(2 * m, 2 * n);
    let mut b = Vec::with_capacity(2 * m);
    for i in 0..m {
        for k in 0..n {
            let c = &coeffs[k][i].a;
            let d = &coeffs[k][i].b;
            // equation 2i: a-part; equation 2i+1: conj of b-part
            mat.set(2 * i, 2 * k, c.clone());
            mat.set(2 * i, 2 * k + 1, d.neg());
            mat.set(2 * i + 1, 2 * k, d.conj());
            mat.set(2 * i + 1, 2 * k + 1, c.conj());
        }
        b.push(rhs[i].a.clone());
        b.push(rhs[i].b.conj());
    }
    (mat, b)
}

/// Solve the left-linear system of [`realify_left_system`].
pub fn solve_left_quaternionic<T: Field>(
    coeffs: &[Vec<Quaternion<T>>],
    rhs: &[Quaternion<T>],
) -> Option<Vec<Quaternion<T>>> {
    let (mat, b) = realify_left_system(coeffs, rhs);
    let sol = mat.solve(&b)?;
    Some(
        sol.chunks(2)
            .map(|ch| Quaternion::new(ch[0].clone(), ch[1].conj()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ConjRing;
    use crate::scalar::GaussRat;

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::from_ints(re, im)
    }

    #[test]
    fn exact_det_and_solve() {
        let m = Matrix::from_rows(vec![vec![g(1, 1), g(2, 0)], vec![g(0, 3), g(1, -1)]]);
        let d = m.det();
        assert_eq!(d, g(1, 1).mul(&g(1, -1)).sub(&g(2, 0).mul(&g(0, 3))));
        let x = m.solve(&[g(1, 0), g(0, 0)]).unwrap();
        assert_eq!(m.get(0, 0).mul(&x[0]).add(&m.get(0, 1).mul(&x[1])), g(1, 0));
        assert_eq!(m.get(1, 0).mul(&x[0]).add(&m.get(1, 1).mul(&x[1])), g(0, 0));
    }

    #[test]
    fn singular_is_detected() {
        let m = Matrix::from_rows(vec![vec![g(1, 0), g(2, 0)], vec![g(2, 0), g(4, 0)]]);
        assert!(m.det().is_zero());
        assert!(m.solve(&[g(1, 0), g(1, 0)]).is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn quaternionic_left_solve() {
        let c = vec![
            vec![Quaternion::new(g(1, 2), g(0, 1)), Quaternion::new(g(3, 0), g(1, 1))],
            vec![Quaternion::new(g(0, -1), g(2, 0)), Quaternion::new(g(1, 0), g(0, 0))],
        ];
        let x = vec![Quaternion::new(g(1, -1), g(2, 3)), Quaternion::new(g(0, 1), g(-1, 0))];
        let rhs: Vec<_> = (0..2)
            .map(|i| x[0].mul(&c[0][i]).add(&x[1].mul(&c[1][i])))
            .collect();
        let sol = solve_left_quaternionic(&c, &rhs).unwrap();
        assert_eq!(sol, x);
    }
}
