use std::f64::consts::{FRAC_PI_4, PI};

use geomzero::{enumerate_s, lattice_from_pair, Grid, SpectralDataG0};
use nodal::{
    darboux_periodicity_check, dirac_residual, leading_coefficient, potential_field,
    scan_big_cell, tildef_residual, BakerSource, Condition, ConditionSystem, Darboux, GenusZero,
    NodalError, Vacuum,
};
use qcore::par::Exec;
use qcore::{c64, Complex64, Quaternion, Q64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn test_zetas(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(1.5..4.0), rng.gen_range(0.0..2.0 * PI)))
        .collect()
}

fn quaternionic_system() -> ConditionSystem {
    let h = Quaternion::new(c64(0.3, 0.1), c64(0.8, -0.4));
    ConditionSystem::new(vec![
        Condition::new(c64(2.0, 0.5), c64(-1.5, 1.0), Q64::j()),
        Condition::new(c64(0.5, -2.5), c64(1.8, 1.2), h),
    ])
    .unwrap()
}

#[test]
fn no_conditions_is_the_vacuum() {
    let cs = ConditionSystem::new(vec![]).unwrap();
    let nb = cs.solve(c64(0.3, -0.7)).unwrap();
    assert_eq!(nb.tail(c64(2.0, 1.0)), Q64::one());
    let z = c64(0.3, -0.7);
    assert_eq!(nb.value(c64(2.0, 1.0)), Q64::complex((z * c64(2.0, 1.0)).exp()));
    assert_eq!(cs.potential(z).unwrap(), c64(0.0, 0.0));
}

#[test]
fn complex_condition_gives_the_one_soliton() {
    let (p, q) = (c64(2.0, 0.3), c64(-1.5, 1.0));
    let cs = ConditionSystem::new(vec![Condition::new(p, q, Q64::one())]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        // (1 + a/p)e^{zp} = (1 + a/q)e^{zq}
        let (ep, eq) = ((z * p).exp(), (z * q).exp());
        let a = p * q * (eq - ep) / (q * ep - p * eq);
        let a1 = cs.solve(z).unwrap().a1();
        assert!((a1.a - a).norm() < 1e-12 * a.norm().max(1.0));
        assert!(a1.b.norm() < 1e-14);
        assert!(cs.potential(z).unwrap().norm() < 1e-14);
        for zeta in test_zetas(&mut rng, 3) {
            let r = dirac_residual(&cs, z, zeta, c64(0.0, 0.0)).unwrap();
            assert!(r < 1e-9, "residual {r} at {z} {zeta}");
        }
    }
}

#[test]
fn quaternionic_conditions_give_a_potential_annihilating_the_baker() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for cs in [
        ConditionSystem::new(vec![Condition::new(c64(2.0, 0.5), c64(-1.5, 1.0), Q64::j())])
            .unwrap(),
        quaternionic_system(),
    ] {
        for _ in 0..4 {
            let z = c64(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8));
            let nb = cs.solve(z).unwrap();
            assert!(nb.a1().b.norm() > 1e-3, "j-part of a₁ should not vanish");
            assert!(cs.closure_defect(&nb) < 1e-12);
            let u = cs.potential(z).unwrap();
            assert!((u + nb.a1().b).norm() < 1e-15);
            for zeta in test_zetas(&mut rng, 20) {
                let r = dirac_residual(&cs, z, zeta, u).unwrap();
                assert!(r < 1e-8, "residual {r} at z = {z}, ζ = {zeta}");
            }
        }
    }
}

#[test]
fn bad_conditions_are_rejected() {
    let bad = [
        Condition::new(c64(0.5, 0.0), c64(2.0, 0.0), Q64::one()),
        Condition::new(c64(2.0, 0.0), c64(2.0, 0.0), Q64::one()),
        Condition::new(c64(2.0, 0.0), c64(3.0, 0.0), Q64::zero()),
    ];
    for c in bad {
        assert!(matches!(
            ConditionSystem::new(vec![c]),
            Err(NodalError::BadCondition { index: 0, .. })
        ));
    }
}

#[test]
fn big_cell_exits_are_rare() {
    let cs = quaternionic_system();
    let grid = Grid { x0: -1.0, y0: -1.0, h: 0.02, nx: 101, ny: 101 };
    let scan = scan_big_cell(&cs, &grid, Exec::default());
    assert_eq!(scan.condition_number.len(), grid.len());
    assert!(scan.singular_z.len() <= 2 * 101, "{} singular nodes", scan.singular_z.len());
    let seq = scan_big_cell(&cs, &grid, Exec::Sequential);
    assert_eq!(seq, scan);
    let js = scan.to_json();
    assert!(js["condition_number"].is_array() && js["singular_z"].is_array());
}

#[test]
fn potential_field_is_order_independent() {
    let cs = quaternionic_system();
    let grid = Grid { x0: -0.5, y0: -0.5, h: 0.1, nx: 11, ny: 11 };
    let a = potential_field(&cs, &grid, Exec::Sequential).unwrap();
    let b = potential_field(&cs, &grid, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert!(potential_field(&Vacuum, &grid, Exec::Sequential).unwrap().iter().all(|u| u.norm() == 0.0));
}

#[test]
fn genus_zero_source_matches_geomzero() {
    let d = SpectralDataG0::new(c64(0.3, -0.4)).unwrap();
    let g0 = GenusZero::new(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let zeta = Complex64::from_polar(rng.gen_range(0.5..4.0), rng.gen_range(0.0..2.0 * PI));
        let psi = g0.tail(z, zeta).unwrap().mul_complex_right(&(z * zeta).exp());
        let reference = d.baker_zeta(z, zeta).unwrap();
        assert!(psi.sub(&reference).norm() < 1e-12 * reference.norm());
        // the contour a₁ agrees with the closed form
        let contour = nodal::source::BakerSource::a1(&Darboux::new(Vacuum, c64(1e3, 0.0)).unwrap(), z);
        assert!(contour.unwrap().norm() < 1e-9);
        assert!((g0.potential(z).unwrap() - d.epsilon).norm() < 1e-15);
        let fd = nodal::fd_tail_dz(&g0, z, zeta, nodal::FD_STEP).unwrap();
        assert!(fd.sub(&g0.tail_dz(z, zeta).unwrap()).norm() < 1e-11);
    }
}

#[test]
fn vacuum_is_fixed_by_every_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let kappa = Complex64::from_polar(rng.gen_range(1.1..10.0), rng.gen_range(0.0..2.0 * PI));
        let dt = Darboux::new(Vacuum, kappa).unwrap();
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for zeta in test_zetas(&mut rng, 5) {
            let t = dt.tail(z, zeta).unwrap();
            assert!(t.sub(&Q64::one()).norm() < 4.0 * f64::EPSILON);
        }
    }
    assert_eq!(Darboux::new(Vacuum, c64(0.5, 0.0)), Err(NodalError::KappaInside(0.5)));
}

#[test]
fn genus_zero_transform_satisfies_tildef_and_dirac() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let g0 = GenusZero { epsilon: c64(0.4, 0.25) };
    for _ in 0..3 {
        let kappa = Complex64::from_polar(rng.gen_range(2.0..5.0), rng.gen_range(0.0..2.0 * PI));
        let dt = Darboux::new(g0, kappa).unwrap();
        for ix in 0..6 {
            for iy in 0..6 {
                let z = c64(-1.0 + 0.4 * ix as f64, -1.0 + 0.4 * iy as f64);
                let u = dt.potential(z).unwrap();
                for zeta in test_zetas(&mut rng, 3) {
                    let r = tildef_residual(&g0, kappa, z, zeta).unwrap();
                    assert!(r < 1e-10, "tildef residual {r}");
                    let d = dirac_residual(&dt, z, zeta, u).unwrap();
                    assert!(d < 1e-8, "Dirac residual {d}");
                }
            }
        }
        // the transform changes the potential
        assert!((dt.potential(c64(0.2, 0.1)).unwrap() - g0.epsilon).norm() > 1e-3);
        let lead = leading_coefficient(&dt, c64(0.3, -0.2), c64(1.0, 1.0)).unwrap();
        assert!(lead.sub(&Q64::one()).norm() < 1e-6, "leading coefficient {lead:?}");
    }
}

#[test]
fn second_transform_at_the_conjugate_restores_the_potential() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for eps in [c64(0.5, -0.1), c64(0.2, 0.6)] {
        let g0 = GenusZero { epsilon: eps };
        let kappa = Complex64::from_polar(rng.gen_range(2.0..4.0), rng.gen_range(0.0..2.0 * PI));
        let once = Darboux::new(g0, kappa).unwrap();
        // ψ^κ vanishes identically at the ρ-image of κ
        let rho = -eps.norm_sqr() / kappa.conj();
        assert!(once.tail(c64(0.1, 0.2), rho).unwrap().norm() < 1e-10);
        let twice = Darboux::new(once, kappa.conj()).unwrap();
        for z in [c64(0.1, 0.2), c64(-0.4, 0.3)] {
            let u = twice.potential(z).unwrap();
            assert!((u - eps).norm() < 1e-8, "{u} vs {eps}");
        }
    }
}

#[test]
fn transformed_torus_stays_periodic() {
    let d = SpectralDataG0::new(c64(FRAC_PI_4, 0.0)).unwrap();
    let lp = lattice_from_pair(&d, c64(-1.0, 0.0)).unwrap();
    let s = enumerate_s(&lp, 4);
    let g0 = GenusZero::new(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let zs: Vec<Complex64> =
        (0..10).map(|_| c64(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))).collect();
    for _ in 0..3 {
        let kappa = Complex64::from_polar(3.0, rng.gen_range(0.0..2.0 * PI));
        let rep = darboux_periodicity_check(&g0, &lp, &s, kappa, &zs).unwrap();
        assert!(rep.defects.iter().all(|&x| x < 1e-8), "{rep:?}");
    }
    // far out along the positive axis the transform is the identity; along
    // the direction e^{iθ} it is the rotation e^{iθ}ψe^{−iθ}
    let zeta = c64(1.0, 1.0);
    for theta in [0.0, 1.0, 2.5] {
        let w = Complex64::from_polar(1.0, theta);
        let far = Darboux::new(g0, w * 1e6).unwrap();
        for z in &zs {
            let t = g0.tail(*z, zeta).unwrap();
            let rotated = Quaternion::new(t.a, t.b * w.conj() * w.conj());
            let gap = far.tail(*z, zeta).unwrap().sub(&rotated).norm();
            assert!(gap < 1e-5, "gap {gap}");
        }
    }
    let at = d.epsilon * s.points[0].eta;
    assert_eq!(
        darboux_periodicity_check(&g0, &lp, &s, at, &zs),
        Err(NodalError::KappaAtDivisor(at))
    );
}

#[test]
fn transform_of_a_nodal_baker_solves_its_dirac_equation() {
    let cs = quaternionic_system();
    let kappa = c64(2.5, -1.0);
    let dt = Darboux::new(cs, kappa).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..3 {
        let z = c64(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let u = dt.potential(z).unwrap();
        for zeta in test_zetas(&mut rng, 5) {
            let r = dirac_residual(&dt, z, zeta, u).unwrap();
            assert!(r < 1e-6, "residual {r}");
        }
    }
}
