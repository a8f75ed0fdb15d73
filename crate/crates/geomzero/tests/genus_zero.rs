use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use geomzero::lattice::inner;
use geomzero::{
    dirac_apply, dirac_residual, enumerate_s, lattice_from_pair, lattice_from_pair_exact,
    multiplier_map, multiplier_quaternion, torus_csv, torus_map, torus_metadata, willmore_energy,
    GeomError, Grid, Potential, SpectralDataG0,
};
use qcore::par::Exec;
use qcore::{c64, rat, Complex64, GaussRat, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn square() -> SpectralDataG0 {
    SpectralDataG0::new(c64(FRAC_PI_4, 0.0)).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() < tol
}

#[test]
fn baker_initial_value_and_tail() {
    let d = SpectralDataG0::new(c64(0.3, -0.4)).unwrap();
    for eta in [c64(1.0, 2.0), c64(-0.5, 0.1)] {
        let p = d.baker(c64(0.0, 0.0), eta).unwrap();
        assert_eq!(p, SpectralDataG0::initial_value(eta));
        assert!(close(p.b, -1.0 / eta, 1e-15));
    }
    let z = c64(0.7, -0.2);
    let eta = c64(1.5, -0.5);
    let scaled = d.baker(z, eta).unwrap().map(|c| c * (-z * d.epsilon * eta).exp());
    assert!(scaled.sub(&d.tail(z, eta).unwrap()).norm() < 1e-14);
    for arg in [0.3, 2.0, 4.0] {
        let eta = Complex64::from_polar(1e6, arg);
        let tail = d.tail(z, eta).unwrap();
        assert!(close(tail.a, c64(1.0, 0.0), 1e-6));
        // the j-part decays exactly like −η⁻¹
        assert!(close(tail.b * eta, c64(-1.0, 0.0), 1e-6));
    }
    assert_eq!(d.baker(z, c64(0.0, 0.0)), Err(GeomError::AtPuncture));
    assert!(SpectralDataG0::new(c64(1.0, 0.0)).is_err());
    assert!(SpectralDataG0::new(c64(0.0, 0.0)).is_err());
}

#[test]
fn baker_solves_the_dirac_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let eps = Complex64::from_polar(rng.gen_range(0.05..0.95), rng.gen_range(0.0..2.0 * PI));
        let d = SpectralDataG0::new(eps).unwrap();
        for _ in 0..400 {
            let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let eta = Complex64::from_polar(rng.gen_range(0.25..4.0), rng.gen_range(0.0..2.0 * PI));
            let jet = d.jet(z, eta).unwrap();
            let r = dirac_residual(d.dirac_u(), &jet).norm() / jet.a.norm();
            assert!(r < 1e-12, "residual {r}");
        }
    }
}

#[test]
fn finite_difference_dirac() {
    let g = Grid { x0: -0.5, y0: -0.5, h: 0.02, nx: 41, ny: 41 };
    // vacuum: holomorphic a, antiholomorphic b
    let a = g.sample(|z| z * z);
    let b = g.sample(|z| z.conj() * 3.0);
    let r = dirac_apply(Potential::Constant(c64(0.0, 0.0)), &a, &b, &g).unwrap();
    assert_eq!(r.len(), 37 * 37);
    assert!(r.iter().all(|&x| x < 1e-12));

    let d = SpectralDataG0::new(c64(0.4, 0.3)).unwrap();
    let eta = c64(0.8, -0.6);
    let a = g.sample(|z| d.jet(z, eta).unwrap().a);
    let b = g.sample(|z| d.jet(z, eta).unwrap().b);
    let r = dirac_apply(Potential::Constant(d.dirac_u()), &a, &b, &g).unwrap();
    assert!(r.iter().cloned().fold(0.0, f64::max) < 1e-7);
    let u = vec![d.dirac_u(); g.len()];
    let r2 = dirac_apply(Potential::Sampled(&u), &a, &b, &g).unwrap();
    assert_eq!(r, r2);

    let tiny = Grid { nx: 4, ..g };
    assert!(matches!(
        dirac_apply(Potential::Constant(c64(0.0, 0.0)), &a[..4 * 41], &b[..4 * 41], &tiny),
        Err(GeomError::GridTooCoarse { .. })
    ));
    assert!(matches!(
        dirac_apply(Potential::Constant(c64(0.0, 0.0)), &a[..10], &b, &g),
        Err(GeomError::FieldShape { .. })
    ));
}

#[test]
fn square_fixture_lattice() {
    let d = square();
    let lp = lattice_from_pair(&d, c64(-1.0, 0.0)).unwrap();
    assert!(close(lp.beta0, c64(0.5, 0.0), 1e-15));
    assert!(close(lp.beta1, c64(0.0, -0.5), 1e-15));
    for b in [lp.beta0, lp.beta1] {
        for l in lp.gens {
            let p = inner(b, l);
            assert!((p - p.round()).abs() < 1e-12);
        }
    }
    for (k, l) in lp.gens.iter().enumerate() {
        assert!(close(lp.mu_of(*l), c64(f64::from(lp.mu[k]), 0.0), 1e-12));
    }
    assert_eq!(lattice_from_pair(&d, c64(0.0, 1.0)), Err(GeomError::DegenerateLattice));
    assert_eq!(lattice_from_pair(&d, c64(0.0, -1.0)), Err(GeomError::DegenerateLattice));
    assert!(matches!(lattice_from_pair(&d, c64(2.0, 0.0)), Err(GeomError::NotUnimodular(_))));
    assert!(lattice_from_pair_exact(&d, &GaussRat::from_ints(1, 1)).is_err());
}

#[test]
fn square_fixture_divisor() {
    let d = square();
    let lp = lattice_from_pair_exact(&d, &GaussRat::from_int(-1)).unwrap();
    let s = enumerate_s(&lp, 64);
    let mut alphas: Vec<(i64, i64)> =
        s.points.iter().map(|p| ((p.alpha.re * 2.0).round() as i64, (p.alpha.im * 2.0).round() as i64)).collect();
    alphas.sort();
    assert_eq!(alphas, vec![(-1, 0), (0, -1), (0, 1), (1, 0)]);
    let mut etas: Vec<(i64, i64)> =
        s.points.iter().map(|p| (p.eta.re.round() as i64, p.eta.im.round() as i64)).collect();
    etas.sort();
    assert_eq!(etas, vec![(-1, 0), (0, -1), (0, 1), (1, 0)]);
    let reps = s.representatives();
    assert_eq!(reps.len(), 2);
    assert!(close(reps[0].alpha, lp.beta0, 1e-15));
    assert!(close(reps[0].eta, c64(0.0, 1.0), 1e-15));
}

/// Search every small combination of (β₀, γ) with floating-point tests only.
fn brute_force_s(lp: &geomzero::LatticePair, box_: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in -box_..=box_ {
        for n in -box_..=box_ {
            let a = lp.dual_point(m, n);
            if (a.norm() - lp.beta0.norm()).abs() < 1e-9 && lp.contains_dual((a - lp.beta0) * 0.5) {
                out.push((m, n));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn divisor_matches_exhaustive_search() {
    let fixtures = [
        (c64(FRAC_PI_4, 0.0), GaussRat::from_int(-1)),
        (c64(0.3, 0.5), GaussRat::new(rat(3, 5), rat(4, 5))),
        (c64(-0.2, 0.6), GaussRat::new(rat(-5, 13), rat(12, 13))),
    ];
    for (eps, q1) in &fixtures {
        let d = SpectralDataG0::new(*eps).unwrap();
        let exact = lattice_from_pair_exact(&d, q1).unwrap();
        let float = lattice_from_pair(&d, q1.to_complex64()).unwrap();
        let mut got: Vec<(i64, i64)> = enumerate_s(&exact, 10).points.iter().map(|p| (p.m, p.n)).collect();
        got.sort();
        assert_eq!(got, brute_force_s(&exact, 10));
        let mut got_f: Vec<(i64, i64)> = enumerate_s(&float, 10).points.iter().map(|p| (p.m, p.n)).collect();
        got_f.sort();
        assert_eq!(got, got_f);
        for p in enumerate_s(&exact, 64).points {
            assert!((p.eta.norm() - 1.0).abs() < 1e-12);
            assert!(p.m.rem_euclid(2) == 1 && p.n.rem_euclid(2) == 0);
        }
        assert!(got.contains(&(1, 0)));
    }
}

#[test]
fn torus_coordinates_are_doubly_periodic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (eps, q1) in [(c64(FRAC_PI_4, 0.0), c64(-1.0, 0.0)), (c64(0.3, 0.5), c64(0.6, 0.8))] {
        let d = SpectralDataG0::new(eps).unwrap();
        let lp = lattice_from_pair(&d, q1).unwrap();
        let s = enumerate_s(&lp, 64);
        for _ in 0..100 {
            let z = lp.gens[0] * rng.gen_range(0.0..1.0) + lp.gens[1] * rng.gen_range(0.0..1.0);
            for p in &s.points {
                for (j, l) in lp.gens.iter().enumerate() {
                    let shifted = d.baker(z + l, p.eta).unwrap();
                    let base = d.baker(z, p.eta).unwrap().map(|c| c / f64::from(lp.mu[j]));
                    assert!(shifted.sub(&base).norm() < 1e-10);
                }
            }
        }
        let coords = torus_map(&d, &s, c64(0.1, 0.2)).unwrap();
        assert_eq!(coords.len(), s.representatives().len());
    }
}

#[test]
fn rho_partner_is_a_right_multiple() {
    let d = SpectralDataG0::new(c64(0.3, 0.5)).unwrap();
    let eta = c64(0.4, 1.3);
    let z = c64(-0.3, 0.8);
    let p = d.baker(z, eta).unwrap();
    let q = d.baker(z, SpectralDataG0::rho(eta)).unwrap();
    // ψ(z, ρη) = ψ(z, η)·jη̄
    let jeta = Quaternion::new(c64(0.0, 0.0), eta.conj());
    assert!(q.sub(&p.mul(&jeta)).norm() < 1e-12 * p.norm());
    let zeta = d.epsilon * eta;
    assert!(close(d.rho_zeta(zeta), d.epsilon * SpectralDataG0::rho(eta), 1e-14));
}

#[test]
fn multipliers() {
    let d = SpectralDataG0::new(c64(0.3, 0.5)).unwrap();
    let lp = lattice_from_pair(&d, c64(0.6, 0.8)).unwrap();
    let s = enumerate_s(&lp, 64);
    for p in &s.points {
        for j in 0..2 {
            assert!(close(multiplier_map(&d, &lp, p.eta, j).unwrap(), c64(1.0, 0.0), 1e-10));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let eta = Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..2.0 * PI));
        for j in 0..2 {
            let q = multiplier_quaternion(&d, &lp, eta, j).unwrap();
            assert!(q.b.norm() < 1e-14 * q.a.norm().max(1.0));
            let l = lp.gens[j];
            let closed = (l * d.epsilon * eta - l.conj() * d.epsilon.conj() / eta).exp()
                * f64::from(lp.mu[j]);
            assert!(close(q.a, closed, 1e-12 * closed.norm()));
            let partner = multiplier_map(&d, &lp, SpectralDataG0::rho(eta), j).unwrap();
            assert!(close(partner, q.a.conj(), 1e-12 * q.a.norm()));
        }
    }
    assert!(multiplier_map(&d, &lp, c64(0.0, 0.0), 0).is_err());
    assert!(multiplier_map(&d, &lp, c64(f64::INFINITY, 0.0), 0).is_err());
}

#[test]
fn willmore_energy_scales() {
    let d = square();
    let lp = lattice_from_pair(&d, c64(-1.0, 0.0)).unwrap();
    let w = willmore_energy(&d, &lp);
    assert!((w - d.epsilon.norm_sqr() * lp.area()).abs() < 1e-15);
    let mut unit = lp.clone();
    let k = lp.area().sqrt();
    unit.gens = lp.gens.map(|g| g / k);
    assert!((willmore_energy(&d, &unit) - d.epsilon.norm_sqr()).abs() < 1e-14);
    let mut doubled = lp.clone();
    doubled.gens[0] = lp.gens[0] * 2.0;
    assert!((willmore_energy(&d, &doubled) - 2.0 * w).abs() < 1e-12);
    let small = SpectralDataG0::new(c64(1e-9, 0.0)).unwrap();
    assert!(small.epsilon.norm_sqr() * lp.area() < 1e-16);
}

#[test]
fn t0_action() {
    let d = SpectralDataG0::new(c64(0.3, 0.5)).unwrap();
    assert!(close(d.t0_action(PI).epsilon, d.epsilon, 1e-15));
    assert!(close(d.t0_action(FRAC_PI_2).epsilon, -d.epsilon, 1e-15));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let t0 = rng.gen_range(0.0..2.0 * PI);
        let e = d.t0_action(t0);
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let zeta = Complex64::from_polar(rng.gen_range(0.2..2.0), rng.gen_range(0.0..2.0 * PI));
        let w = Quaternion::complex(Complex64::from_polar(1.0, t0));
        let lhs = e.baker_zeta(z, zeta).unwrap();
        let rhs = w.conj().mul(&d.baker_zeta(z, zeta).unwrap()).mul(&w);
        assert!(lhs.sub(&rhs).norm() < 1e-12 * rhs.norm());
        let q1 = c64(0.6, 0.8);
        let (a, b) = (lattice_from_pair(&d, q1).unwrap(), lattice_from_pair(&e, q1).unwrap());
        assert!((willmore_energy(&d, &a) - willmore_energy(&e, &b)).abs() < 1e-12);
    }
}

#[test]
fn translation_covariance() {
    let d = SpectralDataG0::new(c64(-0.2, 0.6)).unwrap();
    let eta = c64(0.9, 0.7);
    let (z, zp) = (c64(0.3, -0.1), c64(-0.6, 0.4));
    let lhs = d.baker(z - zp, eta).unwrap().map(|c| c * d.exponential(zp, eta));
    let rhs = d.baker(z, eta).unwrap();
    assert!(lhs.sub(&rhs).norm() < 1e-13 * rhs.norm());
}

#[test]
fn no_complex_initial_value_for_nonzero_potential() {
    for eps in [c64(0.5, 0.0), c64(1e-6, 1e-6), c64(-0.3, 0.9)] {
        let d = SpectralDataG0::new(eps).unwrap();
        for zeta in [c64(1.0, 0.0), c64(0.0, 20.0), c64(-3.0, 1.0)] {
            let p = d.baker_zeta(c64(0.0, 0.0), zeta).unwrap();
            assert!(close(p.b, -eps / zeta, 1e-15));
            assert!(p.b.norm() > 0.0);
        }
    }
}

#[test]
fn exports_are_deterministic() {
    let d = square();
    let lp = lattice_from_pair(&d, c64(-1.0, 0.0)).unwrap();
    let s = enumerate_s(&lp, 64);
    let a = torus_csv(&d, &lp, &s, 8, Exec::Sequential).unwrap();
    let b = torus_csv(&d, &lp, &s, 8, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("x,y,m,re_a,im_a,re_b,im_b\n"));
    assert_eq!(a.lines().count(), 1 + 8 * 8 * 2);
    let meta = torus_metadata(&d, &lp, &s);
    assert_eq!(meta["S"].as_array().unwrap().len(), 4);
    assert_eq!(meta["degenerate"], false);
    assert!((meta["willmore"].as_f64().unwrap() - willmore_energy(&d, &lp)).abs() < 1e-15);
}

#[test]
fn beta1_always_in_divisor_and_hp0_subdivisor() {
    let d = SpectralDataG0::new(c64(0.3, 0.5)).unwrap();
    let lp = lattice_from_pair(&d, c64(0.6, 0.8)).unwrap();
    let s = enumerate_s(&lp, 64);
    assert!(s.points.iter().any(|p| close(p.alpha, lp.beta1, 1e-12)));
    assert!(!s.is_degenerate());
    let only = geomzero::DivisorS {
        points: s.points.iter().filter(|p| p.n == 0).cloned().collect(),
        bound: s.bound,
    };
    assert!(only.is_degenerate());
    let f = torus_map(&d, &only, c64(0.2, 0.1)).unwrap();
    assert_eq!(f.len(), 1);
    let empty = geomzero::DivisorS { points: vec![], bound: 0 };
    assert_eq!(torus_map(&d, &empty, c64(0.0, 0.0)), Err(GeomError::EmptyDivisor));
}
