//! Flow generators `P₊ = (K P₀ K⁻¹)₊` and the derivations `∂_P L = [L, P₊]`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use diffalg::{formal_integrate, DiffPoly, DiffRing, Generator, Label};
use psdo::PsdOp;
use qcore::par::{map_slice, Exec};
use qcore::{ConjRing, Quaternion};
use serde_json::{json, Map, Value};

use crate::dress::{DressedPair, NonLocal};
use crate::DressError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    S,
    T,
}

/// The flow of the time `s_k` or `t_k` in `γ = exp(it₀ + Σ (s_k + it_k)ζ^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flow {
    pub index: u32,
    pub dir: Direction,
}

impl Flow {
    pub fn s(index: u32) -> Flow {
        Flow { index, dir: Direction::S }
    }
    pub fn t(index: u32) -> Flow {
        Flow { index, dir: Direction::T }
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Direction::S => 's',
            Direction::T => 't',
        };
        write!(f, "{d}{}", self.index)
    }
}

impl FromStr for Flow {
    type Err = DressError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DressError::UnknownFlow(s.to_string());
        let (d, rest) = s.split_at_checked(1).ok_or_else(bad)?;
        let index: u32 = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        match d {
            "s" => Ok(Flow::s(index)),
            "t" => Ok(Flow::t(index)),
            _ => Err(bad()),
        }
    }
}

/// `P₀ = (−1)^{k+1}(i∂_y)^k` for `s_k` and `(−1)^{k+1} i(i∂_y)^k` for `t_k`.
///
/// With these signs `s₁` is the x-flow (`P₊ = L₊`) and `t₁` is `∂_y`.
pub fn flow_p0<C: DiffRing>(flow: Flow) -> PsdOp<C> {
    let k = flow.index;
    let powers = k + u32::from(flow.dir == Direction::T);
    let mut c = C::one();
    for _ in 0..powers {
        c = c.mul(&C::imag_unit());
    }
    if k.is_multiple_of(2) {
        c = c.neg();
    }
    PsdOp::term(Quaternion::complex(c), k as i32, None).expect("exact")
}

/// `(K P₀ K⁻¹)₊`, refusing results that still contain nonlocal symbols.
pub fn flow_generator<C: DiffRing + NonLocal>(
    d: &DressedPair<C>,
    flow: Flow,
) -> Result<PsdOp<C>, DressError> {
    let p = d.k.compose(&flow_p0(flow)).compose(&d.k_inv);
    let plus = p.plus_part().map_err(|_| DressError::WindowTooShallow {
        lo: p.lo_valid().unwrap_or(0),
        depth: d.depth,
    })?;
    for (e, c) in plus.terms() {
        if c.a.has_nonlocal() || c.b.has_nonlocal() {
            return Err(DressError::NonLocalGenerator(e));
        }
    }
    Ok(plus)
}

/// Velocities of the generators `u_{αβ}` under one flow.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowDerivation {
    pub name: String,
    pub velocities: BTreeMap<Label, DiffPoly>,
}

impl FlowDerivation {
    pub fn velocity(&self, alpha: u32, beta: u8) -> Result<&DiffPoly, DressError> {
        self.velocities.get(&(alpha, beta)).ok_or(DressError::MissingVelocity(alpha, beta))
    }

    /// Apply the derivation, extended to all orders by commuting with `∂_y`.
    ///
    /// An antiderivative symbol `I[m]` is sent to `∫ ∂_P m`.
    pub fn apply(&self, p: &DiffPoly) -> Result<DiffPoly, DressError> {
        let err: RefCell<Option<DressError>> = RefCell::new(None);
        let out = p.derive_by(&|g: &Generator| match g {
            Generator::U { alpha, beta, order } => match self.velocity(*alpha, *beta) {
                Ok(v) => v.d_y_n(*order),
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    DiffPoly::zero()
                }
            },
            Generator::A(a) => match self.apply(&a.derivative) {
                Ok(v) => formal_integrate(&v),
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    DiffPoly::zero()
                }
            },
        });
        match err.into_inner() {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Apply the derivation to every coefficient of an operator.
    pub fn apply_op(&self, op: &PsdOp<DiffPoly>) -> Result<PsdOp<DiffPoly>, DressError> {
        let mut terms = Vec::new();
        for (e, c) in op.terms() {
            terms.push((e, Quaternion::new(self.apply(&c.a)?, self.apply(&c.b)?)));
        }
        Ok(PsdOp::new(terms, op.lo_valid())?)
    }
}

fn split_real(p: &DiffPoly) -> (DiffPoly, DiffPoly) {
    p.re_im()
}

/// Read the velocities off `[L, P₊]`.
///
/// Exponents `≥ 1` must vanish, as must the commuting part at exponent 0;
/// any other outcome means the flow is inconsistent with the shape of `L`.
pub fn lax_rhs(
    d: &DressedPair<DiffPoly>,
    p_plus: &PsdOp<DiffPoly>,
    name: &str,
) -> Result<FlowDerivation, DressError> {
    let c = d.l.commutator(p_plus);
    for (e, q) in c.terms() {
        if e >= 1 && !q.is_zero() {
            return Err(DressError::CoefficientMismatch(e));
        }
    }
    let mut velocities = BTreeMap::new();
    let c0 = c.coeff(0)?;
    if !c0.a.is_zero() {
        return Err(DressError::CoefficientMismatch(0));
    }
    let (v3, v4) = split_real(&c0.b);
    velocities.insert((0, 3), v3);
    velocities.insert((0, 4), v4);
    let lo = c.lo_valid().unwrap_or(0);
    let top_alpha = d.l.lo_valid().map_or(0, |l| -l);
    for alpha in 1..=top_alpha {
        if -alpha < lo {
            break;
        }
        let q = c.coeff(-alpha)?;
        let (v1, v2) = split_real(&q.a);
        let (v3, v4) = split_real(&q.b);
        let a = alpha as u32;
        velocities.insert((a, 1), v1);
        velocities.insert((a, 2), v2);
        velocities.insert((a, 3), v3);
        velocities.insert((a, 4), v4);
    }
    Ok(FlowDerivation { name: name.to_string(), velocities })
}

/// Generators and derivations for several flows at once.
pub fn velocity_tables(
    d: &DressedPair<DiffPoly>,
    flows: &[Flow],
    exec: Exec,
) -> Result<Vec<(Flow, PsdOp<DiffPoly>, FlowDerivation)>, DressError> {
    map_slice(flows, exec, |&f| {
        let p = flow_generator(d, f)?;
        let v = lax_rhs(d, &p, &f.to_string())?;
        Ok((f, p, v))
    })
    .into_iter()
    .collect()
}

/// `∂_P Q₊ − ∂_Q P₊ − [Q₊, P₊]`, identically zero for commuting flows.
pub fn zero_curvature_residual(
    d: &DressedPair<DiffPoly>,
    p: Flow,
    q: Flow,
) -> Result<PsdOp<DiffPoly>, DressError> {
    let pp = flow_generator(d, p)?;
    let qp = flow_generator(d, q)?;
    let dp = lax_rhs(d, &pp, &p.to_string())?;
    let dq = lax_rhs(d, &qp, &q.to_string())?;
    Ok(dp.apply_op(&qp)?.sub(&dq.apply_op(&pp)?).sub(&qp.commutator(&pp)))
}

/// `{"flow": name, "velocities": {"u03": "<poly>", …}}`.
pub fn flow_table_json(v: &FlowDerivation) -> Value {
    let mut m = Map::new();
    for ((a, b), p) in &v.velocities {
        m.insert(format!("u{a}{b}"), Value::String(p.to_string()));
    }
    json!({"flow": v.name, "velocities": Value::Object(m)})
}
