//! Criteria on genus-zero Baker functions, Darboux transforms and the HSL
//! spectrum.

use std::f64::consts::{FRAC_PI_4, PI};

use geomzero::{dirac_residual as jet_residual, enumerate_s, lattice_from_pair, multiplier_map, SpectralDataG0};
use hslspec::{
    classify_exact, f_alpha_exact, f_alpha_poly, hsl_matrix_poly, log_spectrum, min_f_alpha, multiplier_baker,
    HslData, Singularity,
};
use nodal::{dirac_residual, tildef_residual, BakerSource, Darboux, GenusZero, Vacuum};
use qcore::par::{map_indexed, map_slice, Exec};
use qcore::{c64, ConjRing, Complex64, GaussRat, Q64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Outcome;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fold_max(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}

/// Genus-zero Dirac residual with analytic derivatives.
pub fn ac5(exec: Exec) -> Vec<Outcome> {
    let mut r = rng(501);
    let eps: Vec<Complex64> =
        (0..5).map(|_| Complex64::from_polar(r.gen_range(0.05..0.95), r.gen_range(0.0..2.0 * PI))).collect();
    let worst = map_slice(&eps, exec, |&e| {
        let d = SpectralDataG0::new(e).expect("0 < |ε| < 1");
        let mut r = rng(e.re.to_bits() ^ e.im.to_bits());
        let mut worst: f64 = 0.0;
        for _ in 0..10_000 {
            let z = c64(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let eta = Complex64::from_polar(r.gen_range(0.25..4.0), r.gen_range(0.0..2.0 * PI));
            let res = d.jet(z, eta).map(|j| jet_residual(d.dirac_u(), &j).norm() / j.a.norm());
            worst = worst.max(res.unwrap_or(f64::INFINITY));
        }
        worst
    });
    let w = fold_max(worst);
    vec![Outcome::new("AC5", w < 1e-12, format!("5 ε × 10⁴ points: max relative residual {w:.2e} (< 1e-12)"))]
}

/// Monodromy of the genus-zero Baker function on the divisor.
pub fn ac6(exec: Exec) -> Vec<Outcome> {
    let d = SpectralDataG0::new(c64(FRAC_PI_4, 0.0)).expect("valid ε");
    let lp = match lattice_from_pair(&d, c64(-1.0, 0.0)) {
        Ok(lp) => lp,
        Err(e) => return vec![Outcome::new("AC6", false, format!("lattice: {e}"))],
    };
    let s = enumerate_s(&lp, 64);
    let mut r = rng(601);
    let zs: Vec<Complex64> =
        (0..100).map(|_| lp.gens[0] * r.gen_range(0.0..1.0) + lp.gens[1] * r.gen_range(0.0..1.0)).collect();
    let worst = fold_max(map_slice(&zs, exec, |&z| {
        let mut w: f64 = 0.0;
        for p in &s.points {
            for (j, l) in lp.gens.iter().enumerate() {
                let shifted = d.baker(z + l, p.eta);
                let base = d.baker(z, p.eta);
                let defect = match (shifted, base) {
                    (Ok(a), Ok(b)) => a.sub(&b.map(|c| c / f64::from(lp.mu[j]))).norm(),
                    _ => f64::INFINITY,
                };
                w = w.max(defect);
            }
        }
        w
    }));
    let pass = worst < 1e-10 && !s.points.is_empty();
    vec![Outcome::new(
        "AC6",
        pass,
        format!("ε = π/4, q₁ = −1, |S| = {}, 100 z × 2 generators: max defect {worst:.2e} (< 1e-10)", s.points.len()),
    )]
}

/// Log-multipliers of the genus-zero curve land on the HSL spectrum.
pub fn ac7(exec: Exec) -> Vec<Outcome> {
    let eps = c64(0.3, 0.5);
    let d = SpectralDataG0::new(eps).expect("valid ε");
    let lp = match lattice_from_pair(&d, c64(0.6, 0.8)) {
        Ok(lp) => lp,
        Err(e) => return vec![Outcome::new("AC7", false, format!("lattice: {e}"))],
    };
    let h = match HslData::new(lp.gens, lp.beta0) {
        Ok(h) => h,
        Err(e) => return vec![Outcome::new("AC7", false, format!("HSL data: {e}"))],
    };
    let ident = (h.dirac_u() - eps).norm();
    let mut r = rng(701);
    let etas: Vec<Complex64> =
        (0..100).map(|_| Complex64::from_polar(r.gen_range(0.2..5.0), r.gen_range(0.0..2.0 * PI))).collect();
    let spec = fold_max(map_slice(&etas, exec, |&eta_q| {
        let chi = [multiplier_map(&d, &lp, eta_q, 0), multiplier_map(&d, &lp, eta_q, 1)];
        match chi {
            [Ok(a), Ok(b)] => {
                let (eta, xi) = log_spectrum(lp.gens, [a, b]);
                min_f_alpha(&h, eta, xi, 16).0
            }
            _ => f64::INFINITY,
        }
    }));
    let s = enumerate_s(&lp, 64);
    let divisor = fold_max(s.points.iter().flat_map(|p| {
        (0..2).map(|j| multiplier_map(&d, &lp, p.eta, j).map_or(f64::INFINITY, |c| (c - 1.0).norm()))
    }));
    let pass = spec < 1e-9 && divisor < 1e-10 && ident < 1e-15 && !s.points.is_empty();
    vec![Outcome::new(
        "AC7",
        pass,
        format!(
            "100 Q: max min_α |F_α| {spec:.2e} (< 1e-9); |S| = {}: max |χ − 1| {divisor:.2e} (< 1e-10); |πβ̄₀/2 − ε| {ident:.1e}",
            s.points.len()
        ),
    )]
}

/// The Darboux identity, the transformed Dirac equation and the vacuum.
pub fn ac8(exec: Exec) -> Vec<Outcome> {
    let g0 = GenusZero { epsilon: c64(0.4, 0.25) };
    let mut r = rng(801);
    let kappas: Vec<Complex64> =
        (0..5).map(|_| Complex64::from_polar(r.gen_range(2.0..5.0), r.gen_range(0.0..2.0 * PI))).collect();
    let n = 41;
    let h = 2.0 / (n - 1) as f64;
    let mut tildef: f64 = 0.0;
    let mut dirac: f64 = 0.0;
    for (k, &kappa) in kappas.iter().enumerate() {
        let Ok(dt) = Darboux::new(g0, kappa) else {
            return vec![Outcome::new("AC8", false, format!("κ = {kappa} rejected"))];
        };
        let res = map_indexed(n * n, exec, |idx| {
            let z = c64(-1.0 + h * (idx % n) as f64, -1.0 + h * (idx / n) as f64);
            let mut r = rng(((k * n * n + idx) as u64) << 4);
            let zeta = Complex64::from_polar(r.gen_range(1.5..4.0), r.gen_range(0.0..2.0 * PI));
            let t = tildef_residual(&g0, kappa, z, zeta).unwrap_or(f64::INFINITY);
            let d = dt.potential(z).and_then(|u| dirac_residual(&dt, z, zeta, u)).unwrap_or(f64::INFINITY);
            (t, d)
        });
        tildef = tildef.max(fold_max(res.iter().map(|x| x.0)));
        dirac = dirac.max(fold_max(res.iter().map(|x| x.1)));
    }
    let mut vacuum: f64 = 0.0;
    for &kappa in &kappas {
        let dt = Darboux::new(Vacuum, kappa).expect("|κ| > 1");
        for k in 0..20 {
            let z = c64(0.1 * k as f64 - 1.0, 0.05 * k as f64);
            let zeta = Complex64::from_polar(1.5 + 0.1 * k as f64, 0.3 * k as f64);
            let d = dt.tail(z, zeta).map_or(f64::INFINITY, |t| t.sub(&Q64::one()).norm());
            vacuum = vacuum.max(d);
        }
    }
    let vac_tol = 4.0 * f64::EPSILON;
    let pass = tildef < 1e-10 && dirac < 1e-8 && vacuum < vac_tol;
    vec![Outcome::new(
        "AC8",
        pass,
        format!(
            "5 κ × 41×41 grid: tildef {tildef:.2e} (< 1e-10), Dirac {dirac:.2e} (< 1e-8), vacuum {vacuum:.1e} (< {vac_tol:.1e})"
        ),
    )]
}

/// The quadratic `(α/ᾱ)Z² + αZ + |β₀|²/4` decides the classification:
/// no identification at `α = 0`, a cusp at a double root, else a double point.
fn classify_by_roots(alpha: &GaussRat, beta0: &GaussRat) -> Singularity {
    let Some(ab) = alpha.conj().inv() else {
        return Singularity::None;
    };
    let a = alpha.mul(&ab);
    let c = GaussRat::from_rat(beta0.norm_sqr()).mul(&GaussRat::from_ratio(1, 4));
    let disc = alpha.mul(alpha).sub(&a.mul(&c).scale_i64(4));
    if disc.is_zero() {
        Singularity::Cusp
    } else {
        Singularity::DoublePoint
    }
}

/// HSL determinant identity, classification and the multiplier Baker function.
pub fn ac9(exec: Exec) -> Vec<Outcome> {
    let h = match HslData::square(GaussRat::from_ints(3, 4)) {
        Ok(h) => h,
        Err(e) => return vec![Outcome::new("AC9", false, format!("fixture: {e}"))],
    };
    let e = h.exact.clone().expect("exact fixture");
    let modes = h.dual_box(8);
    let checks = map_slice(&modes, exec, |&(m, n)| {
        let alpha = h.dual_point_exact(m, n).expect("exact lattice");
        let mat = hsl_matrix_poly(&alpha, &e.beta0);
        let det = mat[0][0].mul(&mat[1][1]).sub(&mat[0][1].mul(&mat[1][0]));
        let f = f_alpha_poly(&alpha, &e.beta0);
        let probe = (GaussRat::from_ratio(2, 7), GaussRat::from_ints(-1, 3));
        let identity = det == f && f.eval(&probe.0, &probe.1) == f_alpha_exact(&alpha, &e.beta0, &probe.0, &probe.1);
        let expected = classify_by_roots(&alpha, &e.beta0);
        let class = h.classify(m, n) == expected && classify_exact(&alpha, &e.beta0) == expected;
        (identity, class, expected == Singularity::Cusp)
    });
    let identities = checks.iter().filter(|c| c.0).count();
    let classes = checks.iter().filter(|c| c.1).count();
    let cusps = checks.iter().filter(|c| c.2).count();

    let mut r = rng(901);
    let mut baker: f64 = 0.0;
    for eps in [c64(FRAC_PI_4, 0.0), c64(0.3, 0.5), c64(-0.2, 0.6)] {
        let d = SpectralDataG0::new(eps).expect("valid ε");
        let b = d.beta0();
        let hd = HslData::new([b / b.norm_sqr(), c64(0.0, 1.0) * b / b.norm_sqr()], b).expect("lattice");
        for _ in 0..100 {
            let z = c64(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let zeta = Complex64::from_polar(r.gen_range(0.3..3.0), r.gen_range(0.0..2.0 * PI));
            let d = match (multiplier_baker(&hd, z, zeta), d.baker_zeta(z, zeta)) {
                (Ok(a), Ok(b)) => a.sub(&b).norm() / b.norm(),
                _ => f64::INFINITY,
            };
            baker = baker.max(d);
        }
    }
    let total = modes.len();
    let pass = identities == total && classes == total && baker < 1e-12;
    vec![Outcome::new(
        "AC9",
        pass,
        format!(
            "box 8 ({total} modes): det ≡ F_α {identities}/{total}, classification {classes}/{total} ({cusps} cusps); Baker match {baker:.2e} (< 1e-12)"
        ),
    )]
}
