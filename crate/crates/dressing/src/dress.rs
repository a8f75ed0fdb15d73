//! Order-by-order solution of `L·K = K·i∂_y`.
//!
//! Writing `K = Σ b_n ∂_y^{-n}` with `b₀ = 1`, the coefficient of
//! `∂_y^{1-n}` in `LK − K·i∂_y` reads `i b_n − b_n i + R_n = 0`, where `R_n`
//! only involves `b₀ … b_{n-1}`. With `b_n = c_n + j d_n` the first two
//! terms equal `−2j(i d_n)`, so the anticommuting part of `R_n` fixes `d_n`
//! algebraically. The commuting part of `R_n` contains `i c′_{n-1}` and is
//! solved by integration.

use diffalg::{DiffPoly, DiffRing, YPoly};
use psdo::PsdOp;
use qcore::{ComplexRing, Quaternion};

use crate::DressError;

/// Rings that may contain nonlocal (antiderivative) symbols.
pub trait NonLocal {
    fn has_nonlocal(&self) -> bool;
}

impl NonLocal for DiffPoly {
    fn has_nonlocal(&self) -> bool {
        self.has_antiderivatives()
    }
}

impl NonLocal for YPoly {
    fn has_nonlocal(&self) -> bool {
        false
    }
}

/// `L` with fully symbolic potentials `U₀ … U_{-lo}`, valid down to `lo`.
pub fn symbolic_l(lo: i32) -> PsdOp<DiffPoly> {
    assert!(lo < 0, "symbolic L needs a negative window");
    let u = |a: u32, b: u8| DiffPoly::u(a, b, 0);
    let i = DiffPoly::imag_unit();
    let mut terms = vec![
        (1, Quaternion::i()),
        (0, Quaternion::jpart(u(0, 3).add(&i.mul(&u(0, 4))))),
    ];
    for alpha in 1..=(-lo) as u32 {
        let a = u(alpha, 1).add(&i.mul(&u(alpha, 2)));
        let b = u(alpha, 3).add(&i.mul(&u(alpha, 4)));
        terms.push((-(alpha as i32), Quaternion::new(a, b)));
    }
    PsdOp::new(terms, Some(lo)).expect("terms lie in the window")
}

/// `L` together with its dressing operator `K`, exact down to `∂_y^{-depth}`.
#[derive(Clone, Debug)]
pub struct DressedPair<C: DiffRing> {
    pub l: PsdOp<C>,
    pub k: PsdOp<C>,
    pub k_inv: PsdOp<C>,
    pub depth: usize,
}

fn i_del<C: DiffRing>() -> PsdOp<C> {
    PsdOp::term(Quaternion::i(), 1, None).expect("exact")
}

fn partial_k<C: DiffRing>(b: &[Quaternion<C>]) -> PsdOp<C> {
    let lo = 1 - b.len() as i32;
    let terms = b.iter().enumerate().map(|(n, q)| (-(n as i32), q.clone()));
    PsdOp::new(terms, Some(lo.min(0))).expect("terms lie in the window")
}

/// Coefficient of `∂_y^{1-n}` in `L·K − K·i∂_y` from the known `b`'s.
fn remainder<C: DiffRing>(l: &PsdOp<C>, b: &[Quaternion<C>], n: i32) -> Quaternion<C> {
    let k = partial_k(b);
    l.product_coeff(&k, 1 - n).sub(&k.product_coeff(&i_del(), 1 - n))
}

/// Solve `K⁻¹LK = i∂_y` with all integration constants zero.
pub fn dress<C: DiffRing>(l: &PsdOp<C>, depth: usize) -> Result<DressedPair<C>, DressError> {
    if l.hi() != Some(1) || l.coeff(1)? != Quaternion::i() {
        return Err(DressError::BadShape);
    }
    if let Some(lo) = l.lo_valid() {
        if lo > -(depth as i32) {
            return Err(DressError::WindowTooShallow { lo, depth });
        }
    }
    let half = C::from_ratio(1, 2);
    let mut b: Vec<Quaternion<C>> = vec![Quaternion::one()];
    for n in 1..=depth as i32 + 1 {
        if n >= 2 {
            // commuting part: i c′_{n-1} + X = 0
            let x = remainder(l, &b, n).a;
            let c = C::imag_unit().mul(&x).integrate();
            let last = b.last_mut().expect("b₀ is present");
            last.a = last.a.add(&c);
            debug_assert!(remainder(l, &b, n).a.is_zero());
        }
        if n as usize <= depth {
            // anticommuting part: −2j(i d_n) + j r = 0
            let r = remainder(l, &b, n).b;
            let d = C::imag_unit().mul(&r).mul(&half).neg();
            b.push(Quaternion::jpart(d));
        }
    }
    let k = PsdOp::new(
        b.into_iter().enumerate().map(|(n, q)| (-(n as i32), q)),
        Some(-(depth as i32)),
    )?;
    let k_inv = k.inverse_unipotent()?;
    Ok(DressedPair { l: l.clone(), k, k_inv, depth })
}

impl<C: DiffRing> DressedPair<C> {
    /// `b_n`, the coefficient of `∂_y^{-n}` in `K`.
    pub fn b(&self, n: usize) -> Result<Quaternion<C>, DressError> {
        Ok(self.k.coeff(-(n as i32))?)
    }

    /// `a_n` in `K = 1 + Σ a_n (i∂_y^{-1})^n`, i.e. `b_n = a_n iⁿ`.
    pub fn a(&self, n: usize) -> Result<Quaternion<C>, DressError> {
        let mut q = self.b(n)?;
        for _ in 0..n {
            q = q.right_i().neg();
        }
        Ok(q)
    }

    /// `K⁻¹∘L∘K − i∂_y`; zero throughout its window for a correct dressing.
    pub fn residual(&self) -> PsdOp<C> {
        self.k_inv.compose(&self.l.compose(&self.k)).sub(&i_del())
    }

    /// `−(a₁ + i a₁ i)/2`, the anticommuting part of `a₁`.
    pub fn dirac_potential(&self) -> Result<Quaternion<C>, DressError> {
        Ok(self.a(1)?.dirac_part())
    }
}
