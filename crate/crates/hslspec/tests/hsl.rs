use std::f64::consts::PI;

use geomzero::{dirac_residual, lattice_from_pair, multiplier_map, Grid, SpectralDataG0};
use hslspec::{
    classify_exact, f_alpha_exact, f_alpha_poly, hsl_matrix_poly, identification_roots,
    log_spectrum, min_f_alpha, multiplier_baker, multiplier_jet, numeric_spectrum, spectrum_json,
    BiPoly, HslData, HslError, Singularity,
};
use proptest::prelude::*;
use qcore::par::Exec;
use qcore::{c64, rat, Complex64, ConjRing, GaussRat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture() -> HslData {
    HslData::square(GaussRat::from_ints(3, 4)).unwrap()
}

fn skewed() -> HslData {
    HslData::exact(
        [GaussRat::from_ints(2, 0), GaussRat::from_ints(1, 3)],
        GaussRat::new(rat(1, 2), rat(1, 6)),
    )
    .unwrap()
}

fn gr(re: i64, im: i64, d: i64) -> GaussRat {
    GaussRat::new(rat(re, d), rat(im, d))
}

fn det_poly(m: &[[BiPoly; 2]; 2]) -> BiPoly {
    m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))
}

#[test]
fn matrix_determinant_is_f_alpha_exactly() {
    for h in [fixture(), skewed()] {
        let e = h.exact.clone().unwrap();
        for (m, n) in h.dual_box(3) {
            let alpha = h.dual_point_exact(m, n).unwrap();
            let det = det_poly(&hsl_matrix_poly(&alpha, &e.beta0));
            let f = f_alpha_poly(&alpha, &e.beta0);
            assert_eq!(det, f, "α = ({m}, {n})");
            // and against direct evaluation of the product formula
            for (eta, xi) in [(gr(1, -2, 3), gr(5, 1, 7)), (gr(0, 0, 1), gr(0, 0, 1))] {
                assert_eq!(f.eval(&eta, &xi), f_alpha_exact(&alpha, &e.beta0, &eta, &xi));
            }
        }
    }
}

#[test]
fn value_at_origin_is_real_and_vanishes_on_the_singular_set() {
    let h = fixture();
    let e = h.exact.clone().unwrap();
    let zero = GaussRat::zero();
    let singular = h.singular_set(8);
    assert!(singular.contains(&(0, 0)));
    for (m, n) in h.dual_box(8) {
        let alpha = h.dual_point_exact(m, n).unwrap();
        let f = f_alpha_exact(&alpha, &e.beta0, &zero, &zero);
        assert!(f.is_real());
        assert_eq!(f.is_zero(), singular.contains(&(m, n)));
    }
}

/// `(α/ᾱ)Z² + αZ + |β₀|²/4` has discriminant `α² − |β₀|²α/ᾱ`, computed here
/// literally in exact arithmetic.
fn exact_discriminant(alpha: &GaussRat, beta0: &GaussRat) -> GaussRat {
    let a = alpha.mul(&alpha.conj().inv().unwrap());
    let c = GaussRat::from_rat(beta0.norm_sqr());
    // 4·a·(|β₀|²/4)
    alpha.mul(alpha).sub(&a.mul(&c))
}

#[test]
fn classification_matches_exact_discriminant() {
    let h = fixture();
    let e = h.exact.clone().unwrap();
    let mut cusps = 0;
    for (m, n) in h.dual_box(8) {
        let alpha = h.dual_point_exact(m, n).unwrap();
        let expected = if alpha.is_zero() {
            Singularity::None
        } else if exact_discriminant(&alpha, &e.beta0).is_zero() {
            Singularity::Cusp
        } else {
            Singularity::DoublePoint
        };
        assert_eq!(h.classify(m, n), expected, "α = ({m}, {n})");
        assert_eq!(classify_exact(&alpha, &e.beta0), expected);
        if expected == Singularity::Cusp {
            cusps += 1;
        }
    }
    // lattice points of norm 25: (±5, 0), (0, ±5), (±3, ±4), (±4, ±3)
    assert_eq!(cusps, 12);
    assert_eq!(h.cusps(8).len(), 12);
}

#[test]
fn cusp_double_root_is_exact() {
    let h = fixture();
    let e = h.exact.clone().unwrap();
    let quarter = GaussRat::from_rat(e.beta0.norm_sqr()).mul(&gr(1, 0, 4));
    for (m, n) in h.cusps(8) {
        let alpha = h.dual_point_exact(m, n).unwrap();
        let a = alpha.mul(&alpha.conj().inv().unwrap());
        // Z = −ᾱ/2 is a root, and the derivative 2aZ + α vanishes there
        let z = alpha.conj().mul(&gr(-1, 0, 2));
        let value = a.mul(&z).mul(&z).add(&alpha.mul(&z)).add(&quarter);
        assert!(value.is_zero());
        assert!(a.mul(&z).add(&a.mul(&z)).add(&alpha).is_zero());
    }
}

#[test]
fn identification_roots_satisfy_vieta_and_lie_on_both_components() {
    let h = fixture();
    let b = h.beta0;
    for (m, n) in h.dual_box(8) {
        let alpha = h.dual_point(m, n);
        let Some([z1, z2]) = identification_roots(alpha, b) else {
            assert_eq!((m, n), (0, 0));
            continue;
        };
        let scale = alpha.norm() + b.norm_sqr();
        assert!((z1 + z2 + alpha.conj()).norm() < 1e-12 * scale);
        let prod = alpha.conj() * b.norm_sqr() / (4.0 * alpha);
        assert!((z1 * z2 - prod).norm() < 1e-12 * scale * scale);
        for z in [z1, z2] {
            // ξ on C_α, η on C₀ over the same ξ: the two points coincide
            let xi = z + b.conj() / 2.0;
            let eta0 = h.component_eta(c64(0.0, 0.0), xi);
            let f = h.f_alpha(alpha, eta0, xi);
            assert!(f.norm() < 1e-10 * scale, "α = ({m}, {n}): {f}");
        }
    }
}

#[test]
fn component_parametrisation_lies_on_the_curve() {
    let h = skewed();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let xi = c64(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let eta = h.component_eta(c64(0.0, 0.0), xi);
        let f = h.f_alpha(c64(0.0, 0.0), eta, xi);
        let scale = 1.0 + (eta.norm() + 1.0) * (xi.norm() + 1.0);
        assert!(f.norm() < 1e-14 * scale, "{f}");
        let back = h.component_xi(c64(0.0, 0.0), eta);
        assert!((back - xi).norm() < 1e-11 * (1.0 + xi.norm()));
    }
}

fn small_gauss() -> impl Strategy<Value = GaussRat> {
    (-20i64..20, -20i64..20, 1i64..6).prop_map(|(a, b, d)| gr(a, b, d))
}

proptest! {
    #[test]
    fn translation_moves_between_components(
        eta in small_gauss(),
        xi in small_gauss(),
        alpha in (-4i64..4, -4i64..4),
        gamma in (-4i64..4, -4i64..4),
    ) {
        let h = fixture();
        let b = h.exact.clone().unwrap().beta0;
        let a = h.dual_point_exact(alpha.0, alpha.1).unwrap();
        let g = h.dual_point_exact(gamma.0, gamma.1).unwrap();
        let lhs = f_alpha_exact(&a, &b, &eta.add(&g), &xi.add(&g.conj()));
        let rhs = f_alpha_exact(&a.add(&g), &b, &eta, &xi);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn flagging_is_translation_invariant(x in -2.0f64..2.0, y in -2.0f64..2.0, g in (-2i64..3, -2i64..3)) {
        let h = fixture();
        let eta = c64(x, y);
        let xi = h.component_xi(c64(0.0, 0.0), eta);
        let gamma = h.dual_point(g.0, g.1);
        // (η, ξ) ∈ C₀ maps to (η + γ, ξ + γ̄) ∈ C_{−γ}
        let f = h.f_alpha(-gamma, eta + gamma, xi + gamma.conj());
        prop_assert!(f.norm() < 1e-10 * (1.0 + xi.norm()) * (1.0 + gamma.norm()));
    }
}

#[test]
fn vacuum_limit_is_a_pair_of_lines() {
    // with β₀ → 0 the polynomial tends to (α + η)(ᾱ + ξ)
    let alpha = gr(2, -1, 1);
    let f = f_alpha_poly(&alpha, &GaussRat::zero());
    let lines = BiPoly::x()
        .add(&BiPoly::constant(alpha.clone()))
        .mul(&BiPoly::y().add(&BiPoly::constant(alpha.conj())));
    assert_eq!(f, lines);
    assert_eq!(HslData::square(GaussRat::zero()).unwrap_err(), HslError::ZeroBeta0);
}

#[test]
fn multiplier_baker_solves_the_dirac_equation() {
    let h = skewed();
    let u = h.dirac_u();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let zeta = Complex64::from_polar(rng.gen_range(0.3..4.0), rng.gen_range(0.0..2.0 * PI));
        let jet = multiplier_jet(&h, z, zeta).unwrap();
        let r = dirac_residual(u, &jet).norm() / jet.value().norm();
        assert!(r < 1e-12, "{r}");
    }
    let zeta = c64(0.7, -1.2);
    let at0 = multiplier_baker(&h, c64(0.0, 0.0), zeta).unwrap();
    assert!((at0.a - 1.0).norm() < 1e-15);
    assert!((at0.b + PI * h.beta0.conj() / 2.0 / zeta).norm() < 1e-15);
    assert_eq!(multiplier_baker(&h, c64(0.0, 0.0), c64(0.0, 0.0)).unwrap_err(), HslError::ZeroZeta);
}

#[test]
fn multiplier_baker_matches_genus_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for eps in [c64(PI / 4.0, 0.0), c64(0.3, 0.5), c64(-0.2, 0.6)] {
        let d = SpectralDataG0::new(eps).unwrap();
        // a lattice with ⟨β₀, λ₁⟩ = 1 and ⟨β₀, λ₂⟩ = 0
        let b = d.beta0();
        let h = HslData::new([b / b.norm_sqr(), c64(0.0, 1.0) * b / b.norm_sqr()], b).unwrap();
        assert!((h.dirac_u() - eps).norm() < 1e-15);
        for _ in 0..50 {
            let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let zeta = Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..2.0 * PI));
            let ours = multiplier_baker(&h, z, zeta).unwrap();
            let theirs = d.baker_zeta(z, zeta).unwrap();
            assert!(ours.sub(&theirs).norm() < 1e-12 * theirs.norm(), "{eps} {z} {zeta}");
        }
    }
}

#[test]
fn log_multipliers_land_on_the_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = SpectralDataG0::new(c64(0.3, 0.5)).unwrap();
    let q1 = c64(0.6, 0.8);
    let lp = lattice_from_pair(&d, q1).unwrap();
    let h = HslData::new(lp.gens, lp.beta0).unwrap();
    for _ in 0..100 {
        let eta_q = Complex64::from_polar(rng.gen_range(0.2..5.0), rng.gen_range(0.0..2.0 * PI));
        let chi = [
            multiplier_map(&d, &lp, eta_q, 0).unwrap(),
            multiplier_map(&d, &lp, eta_q, 1).unwrap(),
        ];
        let (eta, xi) = log_spectrum(lp.gens, chi);
        let (best, _) = min_f_alpha(&h, eta, xi, 16);
        assert!(best < 1e-9, "{eta_q}: {best}");
    }
}

#[test]
fn numeric_scan_recovers_the_components() {
    let h = fixture();
    let grid = Grid { x0: -3.013, y0: -2.987, h: 0.03, nx: 200, ny: 200 };
    let scan = numeric_spectrum(&h, &grid, 1, 1e-9, Exec::Parallel).unwrap();
    let flagged: Vec<_> = scan.points.iter().filter(|p| p.flagged).collect();
    assert!(flagged.len() > 9 * 200 * 190);
    for p in &flagged {
        let alpha = h.dual_point(p.m, p.n);
        let xi = h.component_xi(alpha, p.eta);
        assert!((xi - p.xi).norm() < 1e-9 * (1.0 + xi.norm()), "{p:?}");
    }
    let seq = numeric_spectrum(&h, &grid, 1, 1e-9, Exec::Sequential).unwrap();
    assert_eq!(seq, scan);
    assert_eq!(numeric_spectrum(&h, &grid, 0, 1e-9, Exec::Sequential).unwrap_err(), HslError::CutoffTooSmall);

    let csv = scan.to_csv();
    assert!(csv.starts_with("re_eta,im_eta,re_xi,im_xi,m,n\n"));
    assert_eq!(csv.lines().count(), flagged.len() + 1);
}

#[test]
fn flagged_points_map_to_flagged_points() {
    let h = fixture();
    let grid = Grid { x0: -1.013, y0: -0.987, h: 0.1, nx: 20, ny: 20 };
    let scan = numeric_spectrum(&h, &grid, 1, 1e-9, Exec::Sequential).unwrap();
    for p in scan.points.iter().filter(|p| p.flagged) {
        for (gm, gn) in [(1, 0), (0, 1), (-1, 2)] {
            let gamma = h.dual_point(gm, gn);
            let (m, n) = (p.m - gm, p.n - gn);
            let m2 = hslspec::hsl_matrix(h.beta0, h.dual_point(m, n), p.eta + gamma, p.xi + gamma.conj());
            let d = m2[0][0] * m2[1][1] - m2[0][1] * m2[1][0];
            let scale = (m2[0][0] * m2[1][1]).norm() + (m2[0][1] * m2[1][0]).norm();
            assert!(d.norm() < 1e-9 * scale);
        }
    }
}

#[test]
fn json_lists_every_mode() {
    let h = fixture();
    let v = spectrum_json(&h, 8, "cloud.csv");
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 17 * 17);
    assert_eq!(comps.iter().filter(|c| c["type"] == "cusp").count(), 12);
    assert_eq!(comps.iter().filter(|c| c["type"] == "none").count(), 1);
    assert_eq!(v["beta0"][0], 3.0);
    assert_eq!(v["cloud"], "cloud.csv");
}
