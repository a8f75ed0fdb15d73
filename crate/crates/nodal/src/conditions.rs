//! Evaluation conditions `ψ(z, p) = ψ(z, q)·h` and the Baker function
//! `(1 + Σ_{k≤N} a_k ζ^{−k})e^{zζ}` they determine.
//!
//! Conditions are left `ℍ`-linear, so the space of functions satisfying them
//! is automatically closed under left multiplication by `j`. In the complex
//! picture `f = u + jv̄` one quaternionic condition at `p` pairs a condition on
//! `u` at `p` with one on `v` at `p̄`.

use geomzero::Grid;
use qcore::linalg::{realify_left_system, solve_left_quaternionic};
use qcore::par::{map_indexed, Exec};
use qcore::{Complex64, Quaternion, Q64};
use serde_json::{json, Value};

use crate::source::BakerSource;
use crate::NodalError;

/// Solves with a larger condition number are reported as singular.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub p: Complex64,
    pub q: Complex64,
    pub h: Q64,
}

impl Condition {
    pub fn new(p: Complex64, q: Complex64, h: Q64) -> Self {
        Condition { p, q, h }
    }
}

/// A square system of `N` conditions for the `N` coefficients `a_1 … a_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionSystem {
    conditions: Vec<Condition>,
}

/// `c·h·d` for complex `c = e^{x}` and `d = e^{y}`, without forming `e^{x}`:
/// `c h d = e^{x+y}h_a + j·e^{x̄+y}h_b`.
fn sandwich(x: Complex64, h: &Q64, y: Complex64) -> Q64 {
    Quaternion::new((x + y).exp() * h.a, (x.conj() + y).exp() * h.b)
}

impl ConditionSystem {
    pub fn new(conditions: Vec<Condition>) -> Result<Self, NodalError> {
        for (index, c) in conditions.iter().enumerate() {
            let bad = |reason: &str| NodalError::BadCondition { index, reason: reason.into() };
            if !(c.p.norm() > 1.0 && c.q.norm() > 1.0) {
                return Err(bad("evaluation points must satisfy |p|, |q| > 1"));
            }
            if c.p == c.q {
                return Err(bad("p and q coincide"));
            }
            if c.h.norm() == 0.0 {
                return Err(bad("the weight h is zero"));
            }
        }
        Ok(ConditionSystem { conditions })
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conditions
    }

    pub fn depth(&self) -> usize {
        self.conditions.len()
    }

    /// Coefficients `C[k][i]` and right-hand sides of
    /// `Σ_k a_k·C[k][i] = r_i`, each equation scaled by `e^{−w_i}` where `w_i`
    /// is the larger of `zp`, `zq` in real part.
    fn system(&self, z: Complex64) -> (Vec<Vec<Q64>>, Vec<Q64>) {
        let n = self.depth();
        let mut coeffs = vec![Vec::with_capacity(n); n];
        let mut rhs = Vec::with_capacity(n);
        for c in &self.conditions {
            let (zp, zq) = (z * c.p, z * c.q);
            let w = if zp.re >= zq.re { zp } else { zq };
            for (k, row) in coeffs.iter_mut().enumerate() {
                let e = (k + 1) as i32;
                let left = Q64::complex(c.p.powi(-e) * (zp - w).exp());
                let right = sandwich(zq - e as f64 * c.q.ln(), &c.h, -w);
                row.push(left.sub(&right));
            }
            rhs.push(sandwich(zq, &c.h, -w).sub(&Q64::complex((zp - w).exp())));
        }
        (coeffs, rhs)
    }

    /// Solve for `a_1 … a_N` at `z`, reporting the condition number of the
    /// realified system.
    pub fn solve(&self, z: Complex64) -> Result<NodalBaker, NodalError> {
        if self.conditions.is_empty() {
            return Ok(NodalBaker { z, coeffs: Vec::new(), condition_number: 1.0 });
        }
        let (coeffs, rhs) = self.system(z);
        let (mat, _) = realify_left_system(&coeffs, &rhs);
        let cond = mat.condition_number();
        if cond.is_nan() || cond >= MAX_CONDITION {
            return Err(NodalError::Singular { z, cond });
        }
        let sol = solve_left_quaternionic(&coeffs, &rhs)
            .ok_or(NodalError::Singular { z, cond: f64::INFINITY })?;
        Ok(NodalBaker { z, coeffs: sol, condition_number: cond })
    }

    /// Largest defect `|f(p) − f(q)h|` over the conditions, for `f = ψ` and
    /// for `f = jψ`, each scaled like the solve.
    pub fn closure_defect(&self, nb: &NodalBaker) -> f64 {
        let j = Q64::j();
        let mut worst: f64 = 0.0;
        for c in &self.conditions {
            let (zp, zq) = (nb.z * c.p, nb.z * c.q);
            let w = if zp.re >= zq.re { zp } else { zq };
            let fp = nb.tail(c.p).mul_complex_right(&(zp - w).exp());
            let tq = nb.tail(c.q);
            // ψ(q)h e^{−w} = T(q)·(e^{zq} h e^{−w})
            let fq = tq.mul(&sandwich(zq, &c.h, -w));
            let d = fp.sub(&fq);
            worst = worst.max(d.norm()).max(j.mul(&d).norm());
        }
        worst
    }
}

/// The solved coefficients at one `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalBaker {
    pub z: Complex64,
    pub coeffs: Vec<Q64>,
    pub condition_number: f64,
}

impl NodalBaker {
    /// `1 + Σ a_k ζ^{−k}`.
    pub fn tail(&self, zeta: Complex64) -> Q64 {
        let inv = 1.0 / zeta;
        let mut acc = Q64::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.add(a).mul_complex_right(&inv);
        }
        acc.add(&Q64::one())
    }

    /// `ψ(z, ζ)`.
    pub fn value(&self, zeta: Complex64) -> Q64 {
        self.tail(zeta).mul_complex_right(&(self.z * zeta).exp())
    }

    pub fn a1(&self) -> Q64 {
        self.coeffs.first().cloned().unwrap_or_else(Q64::zero)
    }
}

impl BakerSource for ConditionSystem {
    fn tail(&self, z: Complex64, zeta: Complex64) -> Result<Q64, NodalError> {
        Ok(self.solve(z)?.tail(zeta))
    }
    fn a1(&self, z: Complex64) -> Result<Q64, NodalError> {
        Ok(self.solve(z)?.a1())
    }
}

/// Condition numbers over a grid and the nodes where the solve is singular.
#[derive(Clone, Debug, PartialEq)]
pub struct BigCellScan {
    pub condition_number: Vec<f64>,
    pub singular_z: Vec<Complex64>,
}

impl BigCellScan {
    pub fn to_json(&self) -> Value {
        json!({
            "condition_number": self.condition_number,
            "singular_z": self.singular_z.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
        })
    }
}

/// Solve at every grid node, recording where the orbit leaves the big cell.
pub fn scan_big_cell(cs: &ConditionSystem, grid: &Grid, exec: Exec) -> BigCellScan {
    let results = map_indexed(grid.len(), exec, |k| {
        let z = grid.point(k % grid.nx, k / grid.nx);
        (z, cs.solve(z))
    });
    let mut scan = BigCellScan { condition_number: Vec::new(), singular_z: Vec::new() };
    for (z, r) in results {
        match r {
            Ok(nb) => scan.condition_number.push(nb.condition_number),
            Err(NodalError::Singular { cond, .. }) => {
                scan.condition_number.push(cond);
                scan.singular_z.push(z);
            }
            Err(_) => unreachable!("solve only fails on singular systems"),
        }
    }
    scan
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcore::c64;

    #[test]
    fn sandwich_matches_explicit_products() {
        let h = Quaternion::new(c64(0.3, -1.0), c64(2.0, 0.5));
        let (x, y) = (c64(0.4, 1.1), c64(-0.2, 0.7));
        let explicit = Q64::complex(x.exp()).mul(&h).mul(&Q64::complex(y.exp()));
        assert!(sandwich(x, &h, y).sub(&explicit).norm() < 1e-14);
    }

    #[test]
    fn tail_is_a_polynomial_in_the_inverse() {
        let nb = NodalBaker {
            z: c64(0.0, 0.0),
            coeffs: vec![Q64::j(), Q64::complex(c64(2.0, 0.0))],
            condition_number: 1.0,
        };
        let zeta = c64(2.0, 0.0);
        assert_eq!(nb.tail(zeta), Quaternion::new(c64(1.5, 0.0), c64(0.5, 0.0)));
    }
}
