//! Criteria on the symbolic dressing and its flows.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use diffalg::{DiffPoly, Label};
use dressing::{dress, flow_generator, flow_p0, lax_rhs, symbolic_l, zero_curvature_residual, DressedPair, Flow};
use psdo::PsdOp;
use qcore::par::{map_slice, Exec};
use qcore::{ComplexRing, ConjRing, GaussRat, Quaternion};

use crate::Outcome;

/// The symbolic window shared by the dressing criteria.
pub const LO: i32 = -8;
pub const DEPTH: usize = 6;

fn dressed() -> &'static Result<DressedPair<DiffPoly>, String> {
    static PAIR: OnceLock<Result<DressedPair<DiffPoly>, String>> = OnceLock::new();
    PAIR.get_or_init(|| dress(&symbolic_l(LO), DEPTH).map_err(|e| e.to_string()))
}

fn with_pair(id: &str, f: impl FnOnce(&DressedPair<DiffPoly>) -> Outcome) -> Outcome {
    match dressed() {
        Ok(d) => f(d),
        Err(e) => Outcome::new(id, false, format!("dressing failed: {e}")),
    }
}

/// `K⁻¹LK − i∂` vanishes exactly at every exponent `≥ −2`.
pub fn ac1(_exec: Exec) -> Vec<Outcome> {
    vec![with_pair("AC1", |d| {
        let r = d.residual();
        let lo = r.lo_valid();
        let nonzero: Vec<i32> = r.terms().filter(|(e, q)| *e >= -2 && !q.is_zero()).map(|(e, _)| e).collect();
        let covered = lo.is_some_and(|l| l <= -2);
        let pass = covered && nonzero.is_empty();
        Outcome::new("AC1", pass, format!("lo={LO} depth={DEPTH}: residual valid down to {lo:?}, nonzero exponents ≥ −2: {nonzero:?}"))
    })]
}

/// `(K P₀ K⁻¹)₊` for `k = 2, 3` carries no antiderivative symbols.
pub fn ac2(exec: Exec) -> Vec<Outcome> {
    vec![with_pair("AC2", |d| {
        let flows = [Flow::s(2), Flow::t(2), Flow::s(3), Flow::t(3)];
        let bad: Vec<String> = map_slice(&flows, exec, |&f| {
            let p = d.k.compose(&flow_p0(f)).compose(&d.k_inv);
            match p.plus_part() {
                Ok(plus) => plus
                    .terms()
                    .filter(|(_, c)| c.a.has_antiderivatives() || c.b.has_antiderivatives())
                    .map(|(e, _)| format!("{f}@{e}"))
                    .collect::<Vec<_>>(),
                Err(e) => vec![format!("{f}: {e}")],
            }
        })
        .into_iter()
        .flatten()
        .collect();
        Outcome::new("AC2", bad.is_empty(), format!("s2,t2,s3,t3 generators; nonlocal terms: {bad:?}"))
    })]
}

/// Zero curvature for every pair among `s₁, s₂, t₂, s₃, t₃`.
pub fn ac3(exec: Exec) -> Vec<Outcome> {
    vec![with_pair("AC3", |d| {
        let flows = [Flow::s(1), Flow::s(2), Flow::t(2), Flow::s(3), Flow::t(3)];
        let pairs: Vec<(Flow, Flow)> =
            flows.iter().enumerate().flat_map(|(k, p)| flows[k + 1..].iter().map(move |q| (*p, *q))).collect();
        let bad: Vec<String> = map_slice(&pairs, exec, |&(p, q)| match zero_curvature_residual(d, p, q) {
            Ok(r) if r.is_zero() => None,
            Ok(_) => Some(format!("{p},{q}")),
            Err(e) => Some(format!("{p},{q}: {e}")),
        })
        .into_iter()
        .flatten()
        .collect();
        Outcome::new("AC3", bad.is_empty(), format!("{} pairs; nonzero: {bad:?}", pairs.len()))
    })]
}

/// `C(a, k) = a(a−1)…(a−k+1)/k!` for any integer `a`.
fn binomial(a: i32, k: u32) -> GaussRat {
    (0..k).fold(GaussRat::one(), |acc, i| acc.mul(&GaussRat::from_ratio(i64::from(a) - i64::from(i), i64::from(i) + 1)))
}

/// Coefficient of `∂^e` in `A∘B` from the Leibniz rule
/// `(a∂^p)(b∂^q) = Σ_k C(p, k)·a·b^{(k)}∂^{p+q−k}`.
fn leibniz_coeff(a: &PsdOp<DiffPoly>, b: &PsdOp<DiffPoly>, e: i32) -> Quaternion<DiffPoly> {
    let mut acc = Quaternion::zero();
    for (p, ca) in a.terms() {
        for (q, cb) in b.terms() {
            let k = p + q - e;
            if k < 0 {
                continue;
            }
            let k = k as u32;
            let db = cb.map(|x| x.d_y_n(k));
            let c = ca.mul(&db).map(|x| x.scale(&binomial(p, k)));
            acc = acc.add(&c);
        }
    }
    acc
}

/// Velocities of the `t₂` flow by brute-force coefficient matching.
///
/// `[L, P₊]` is expanded with a local Leibniz rule, and each generator
/// `u_{αβ}` of `L` gets the unknown velocity `v_{αβ}`. Matching `∂_P L_{−α}
/// = Σ_β v_{αβ}·∂L_{−α}/∂u_{αβ}` against the expansion, component by real
/// component, solves for the unknowns. Only exponents fully determined by
/// the window of `L` are used. Returns `None` when the expansion has a
/// nonzero coefficient that no velocity can match.
pub fn velocity_oracle(l: &PsdOp<DiffPoly>, p: &PsdOp<DiffPoly>) -> Option<BTreeMap<Label, DiffPoly>> {
    let lo = l.lo_valid()?;
    let top = p.hi()?;
    // L_a with a ≥ e − top is needed at exponent e
    let deepest = lo + top;
    let hi = l.hi()? + top;
    let mut out = BTreeMap::new();
    for e in (deepest..=hi).rev() {
        let c = leibniz_coeff(l, p, e).sub(&leibniz_coeff(p, l, e));
        let alpha = -e;
        // the partials ∂L_{−α}/∂u_{αβ}: one quaternion unit per β
        let basis: Vec<(u8, Quaternion<DiffPoly>)> = match alpha {
            a if a < 0 => vec![],
            0 => vec![(3, Quaternion::j()), (4, Quaternion::jpart(DiffPoly::imag_unit()))],
            _ => vec![
                (1, Quaternion::one()),
                (2, Quaternion::complex(DiffPoly::imag_unit())),
                (3, Quaternion::j()),
                (4, Quaternion::jpart(DiffPoly::imag_unit())),
            ],
        };
        let mut rest = c.clone();
        for (beta, unit) in &basis {
            // the units are orthonormal over ℝ: read off v_β as ⟨c, unit⟩
            let slot = if unit.a.is_zero() { &c.b } else { &c.a };
            let phase = if unit.a.is_zero() { &unit.b } else { &unit.a };
            let (re, _) = slot.mul(&phase.conj()).re_im();
            rest = rest.sub(&unit.map(|x| x.mul(&re)));
            out.insert((alpha as u32, *beta), re);
        }
        if !rest.is_zero() {
            return None;
        }
    }
    Some(out)
}

/// The `t₂` velocity table agrees with the coefficient-matching oracle.
pub fn ac4(_exec: Exec) -> Vec<Outcome> {
    vec![with_pair("AC4", |d| {
        let p = match flow_generator(d, Flow::t(2)) {
            Ok(p) => p,
            Err(e) => return Outcome::new("AC4", false, format!("generator: {e}")),
        };
        let table = match lax_rhs(d, &p, "t2") {
            Ok(t) => t,
            Err(e) => return Outcome::new("AC4", false, format!("velocity table: {e}")),
        };
        let Some(oracle) = velocity_oracle(&d.l, &p) else {
            return Outcome::new("AC4", false, "oracle found an unmatched coefficient");
        };
        let mismatched: Vec<String> = oracle
            .iter()
            .filter(|(k, v)| table.velocities.get(k) != Some(v))
            .map(|((a, b), _)| format!("u{a}{b}"))
            .collect();
        let pass = mismatched.is_empty() && !oracle.is_empty();
        Outcome::new("AC4", pass, format!("{} velocities compared exactly; mismatched: {mismatched:?}", oracle.len()))
    })]
}
