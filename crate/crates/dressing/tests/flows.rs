use std::collections::BTreeMap;

use diffalg::{specialize, DiffPoly, YPoly};
use dressing::{
    dress, flow_generator, flow_p0, flow_table_json, lax_rhs, symbolic_l, velocity_tables,
    zero_curvature_residual, DressError, Flow,
};
use proptest::prelude::*;
use psdo::PsdOp;
use qcore::par::Exec;
use qcore::{rat, ComplexRing, GaussRat, Quaternion};

fn u(a: u32, b: u8) -> DiffPoly {
    DiffPoly::u(a, b, 0)
}

fn u0() -> Quaternion<DiffPoly> {
    Quaternion::jpart(u(0, 3).add(&DiffPoly::imag_unit().mul(&u(0, 4))))
}

fn i_del<C: diffalg::DiffRing>() -> PsdOp<C> {
    PsdOp::term(Quaternion::i(), 1, None).unwrap()
}

const ALL: [Flow; 6] = [
    Flow { index: 1, dir: dressing::Direction::S },
    Flow { index: 1, dir: dressing::Direction::T },
    Flow { index: 2, dir: dressing::Direction::S },
    Flow { index: 2, dir: dressing::Direction::T },
    Flow { index: 3, dir: dressing::Direction::S },
    Flow { index: 3, dir: dressing::Direction::T },
];

#[test]
fn vacuum_is_trivial() {
    let l = i_del::<DiffPoly>();
    let d = dress(&l, 5).unwrap();
    assert!(d.k.eq_within(&PsdOp::identity()));
    assert!(d.dirac_potential().unwrap().is_zero());
    for f in ALL {
        let p = flow_generator(&d, f).unwrap();
        assert_eq!(p, flow_p0(f));
        let v = lax_rhs(&d, &p, "vac").unwrap();
        assert!(v.velocities.values().all(DiffPoly::is_empty));
    }
}

#[test]
fn dressing_inverts_both_ways() {
    let l = symbolic_l(-6);
    let d = dress(&l, 5).unwrap();
    assert!(d.residual().is_zero());
    assert_eq!(d.residual().lo_valid(), Some(-4));
    // independent re-expansion: K·i∂·K⁻¹ must give back L
    let back = d.k.compose(&i_del()).compose(&d.k_inv);
    assert!(back.eq_within(&l));
    assert!(back.lo_valid().unwrap() <= -4);
}

#[test]
fn first_coefficient_and_potential() {
    let d = dress(&symbolic_l(-4), 3).unwrap();
    // b₁ = c₁ + j(−i/2)(u₀₃ + iu₀₄); a₁ = −b₁ i
    let a1 = d.a(1).unwrap();
    let half = DiffPoly::constant(GaussRat::from_rat(rat(1, 2)));
    assert_eq!(a1.anticommuting(), u0().map(|x| x.mul(&half).neg()));
    assert_eq!(d.dirac_potential().unwrap(), u0().map(|x| x.mul(&half)));
    // the commuting part integrates U₁-terms, so it is nonlocal
    assert!(a1.a.has_antiderivatives());
}

#[test]
fn dirac_part_of_explicit_quaternion() {
    let a = u(1, 1);
    let b = u(2, 3);
    let q = Quaternion::new(a, b.clone());
    assert_eq!(q.dirac_part(), Quaternion::jpart(b.neg()));
}

#[test]
fn low_flows_are_x_and_y() {
    let d = dress(&symbolic_l(-6), 4).unwrap();
    let s1 = flow_generator(&d, Flow::s(1)).unwrap();
    assert_eq!(s1, d.l.plus_part().unwrap());
    let t1 = flow_generator(&d, Flow::t(1)).unwrap();
    assert_eq!(t1, PsdOp::del(1, None).unwrap().neg());
    let v = lax_rhs(&d, &t1, "t1").unwrap();
    for ((a, b), vel) in &v.velocities {
        assert_eq!(*vel, DiffPoly::u(*a, *b, 1));
    }
}

#[test]
fn wilson_property_and_commuting_flows() {
    let d = dress(&symbolic_l(-8), 4).unwrap();
    let tables = velocity_tables(&d, &ALL, Exec::default()).unwrap();
    for (f, p, v) in &tables {
        assert!(p.terms().all(|(_, c)| !c.a.has_antiderivatives() && !c.b.has_antiderivatives()), "{f}");
        assert!(v.velocities.values().all(|x| !x.has_antiderivatives()), "{f}");
        assert_eq!(p.hi(), Some(f.index as i32));
    }
    let seq = velocity_tables(&d, &ALL, Exec::Sequential).unwrap();
    assert_eq!(seq, tables);
    for (n, p) in ALL.iter().enumerate() {
        for q in &ALL[n..] {
            let r = zero_curvature_residual(&d, *p, *q).unwrap();
            assert!(r.is_zero(), "{p},{q}: {r}");
        }
    }
}

#[test]
fn t2_generator_shape() {
    let d = dress(&symbolic_l(-6), 4).unwrap();
    let p = flow_generator(&d, Flow::t(2)).unwrap();
    assert_eq!(p.coeff(2).unwrap(), Quaternion::i());
    assert_eq!(p.coeff(1).unwrap(), u0());
}

#[test]
fn phase_covariance() {
    let w = GaussRat::new(rat(5, 13), rat(-12, 13));
    let l = symbolic_l(-6);
    let lw = l.conjugate_by_phase(&w).unwrap();
    let d = dress(&l, 4).unwrap();
    let dw = dress(&lw, 4).unwrap();
    for f in [Flow::s(2), Flow::t(2), Flow::t(3)] {
        let p = flow_generator(&d, f).unwrap();
        let pw = flow_generator(&dw, f).unwrap();
        assert_eq!(pw, p.conjugate_by_phase(&w).unwrap());
        let lax = l.commutator(&p).conjugate_by_phase(&w).unwrap();
        assert_eq!(lw.commutator(&pw), lax);
    }
}

#[test]
fn errors_and_names() {
    assert_eq!(
        dress(&symbolic_l(-3), 5).unwrap_err(),
        DressError::WindowTooShallow { lo: -3, depth: 5 }
    );
    let bad = PsdOp::<DiffPoly>::del(1, None).unwrap();
    assert_eq!(dress(&bad, 2).unwrap_err(), DressError::BadShape);
    assert_eq!("t3".parse::<Flow>().unwrap(), Flow::t(3));
    assert_eq!(Flow::s(2).to_string(), "s2");
    assert!("x1".parse::<Flow>().is_err());
    assert!("s0".parse::<Flow>().is_err());
    let d = dress(&symbolic_l(-4), 1).unwrap();
    assert!(matches!(flow_generator(&d, Flow::t(3)), Err(DressError::WindowTooShallow { .. })));
}

#[test]
fn json_table() {
    let d = dress(&symbolic_l(-4), 3).unwrap();
    let p = flow_generator(&d, Flow::t(1)).unwrap();
    let v = lax_rhs(&d, &p, "t1").unwrap();
    let j = flow_table_json(&v);
    assert_eq!(j["flow"], "t1");
    assert_eq!(j["velocities"]["u03"], "u03_y");
    assert_eq!(j["velocities"]["u12"], "u12_y");
}

fn ypoly() -> impl Strategy<Value = YPoly> {
    prop::collection::vec((-4i64..5, -4i64..5), 1..4)
        .prop_map(|v| YPoly::new(v.into_iter().map(|(a, b)| GaussRat::from_ints(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dressing_specializations(assign in prop::collection::vec(ypoly(), 18)) {
        // real generator values: take real parts of the sampled coefficients
        let mut m = BTreeMap::new();
        let mut it = assign.into_iter().map(|p| {
            YPoly::new(p.coeffs().iter().map(|c| GaussRat::from_rat(c.re.clone())).collect())
        });
        for b in 3..=4u8 {
            m.insert((0, b), it.next().unwrap());
        }
        for a in 1..=4u32 {
            for b in 1..=4u8 {
                m.insert((a, b), it.next().unwrap());
            }
        }
        let terms: Vec<(i32, Quaternion<YPoly>)> = symbolic_l(-4)
            .terms()
            .map(|(e, q)| (e, Quaternion::new(specialize(&q.a, &m), specialize(&q.b, &m))))
            .collect();
        let ly = PsdOp::new(terms, Some(-4)).unwrap();
        let d = dress(&ly, 4).unwrap();
        prop_assert!(d.residual().is_zero());
        prop_assert_eq!(d.residual().lo_valid(), Some(-3));
        let u = d.dirac_potential().unwrap();
        prop_assert_eq!(u.left_i(), u.right_i().neg());
    }
}
