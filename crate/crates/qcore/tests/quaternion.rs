use proptest::prelude::*;
use qcore::{ConjRing, 
    c64, isplit, qinv, qmul, rat, GaussRat, QError, Quaternion, Rat, Scalar, Q64,
};

type GQ = Quaternion<GaussRat>;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6)
        .prop_map(|(a, b, c, d)| GaussRat::new(rat(a, b), rat(c, d)))
}

fn quat() -> impl Strategy<Value = GQ> {
    (gauss(), gauss()).prop_map(|(a, b)| Quaternion::new(a, b))
}

/// Hamilton coordinates (w, x, y, z) of `a + jb`: `jb = b₀j − b₁k`.
fn hamilton(q: &GQ) -> [Rat; 4] {
    [q.a.re.clone(), q.a.im.clone(), q.b.re.clone(), -q.b.im.clone()]
}

fn from_hamilton(h: &[Rat; 4]) -> GQ {
    Quaternion::new(
        GaussRat::new(h[0].clone(), h[1].clone()),
        GaussRat::new(h[2].clone(), -h[3].clone()),
    )
}

/// Left-multiplication matrix of a Hamilton quaternion.
fn left_matrix(p: &[Rat; 4]) -> [[Rat; 4]; 4] {
    let [w, x, y, z] = p.clone();
    [
        [w.clone(), -x.clone(), -y.clone(), -z.clone()],
        [x.clone(), w.clone(), -z.clone(), y.clone()],
        [y.clone(), z.clone(), w.clone(), -x.clone()],
        [z, -y, x, w],
    ]
}

fn apply(m: &[[Rat; 4]; 4], v: &[Rat; 4]) -> [Rat; 4] {
    let mut out: [Rat; 4] = [rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
    for i in 0..4 {
        for k in 0..4 {
            out[i] = &out[i] + &m[i][k] * &v[k];
        }
    }
    out
}

fn oracle_mul(p: &GQ, q: &GQ) -> GQ {
    from_hamilton(&apply(&left_matrix(&hamilton(p)), &hamilton(q)))
}

#[test]
fn identity_and_basis_products() {
    let q = Quaternion::new(GaussRat::from_ints(3, -2), GaussRat::from_ints(1, 5));
    assert_eq!(GQ::one().mul(&q), q);
    assert_eq!(q.mul(&GQ::one()), q);
    // i·j = k = (0, −i)
    assert_eq!(GQ::i().mul(&GQ::j()), Quaternion::new(GaussRat::zero(), GaussRat::from_ints(0, -1)));
    assert_eq!(GQ::k(), Quaternion::new(GaussRat::zero(), GaussRat::from_ints(0, -1)));
    // j·c = c̄·j
    let c = GQ::complex(GaussRat::from_ints(2, 7));
    assert_eq!(GQ::j().mul(&c), GQ::complex(GaussRat::from_ints(2, -7)).mul(&GQ::j()));
}

#[test]
fn inverse_examples() {
    assert_eq!(GQ::j().inv().unwrap(), GQ::j().neg());
    // qinv(1 − jε̄) = (1 + jε̄)/(1 + |ε|²)
    let eps = GaussRat::new(rat(1, 3), rat(-1, 4));
    let q = Quaternion::new(GaussRat::one(), eps.conj().neg());
    let n = (&GaussRat::one() + &GaussRat::from_rat(eps.norm_sqr())).inv().unwrap();
    let expected = Quaternion::new(n.clone(), &eps.conj() * &n);
    assert_eq!(q.inv().unwrap(), expected);
    assert_eq!(q.mul(&expected), GQ::one());
}

#[test]
fn tagged_scalar_operations() {
    let g = |a, b| Scalar::Gaussian(GaussRat::from_ints(a, b));
    let p = Quaternion { a: g(0, 1), b: g(0, 0) };
    let q = Quaternion { a: g(0, 0), b: g(1, 0) };
    let k = qmul(&p, &q).unwrap();
    assert_eq!(k, Quaternion { a: g(0, 0), b: g(0, -1) });
    let jinv = qinv(&q).unwrap();
    assert_eq!(jinv, Quaternion { a: g(0, 0), b: g(-1, 0) });
    let (c, a) = isplit(&p);
    assert_eq!(c, p);
    assert!(a.a.is_zero() && a.b.is_zero());
    // isplit(1 + k) = (1, k)
    let one_k = Quaternion { a: g(1, 0), b: g(0, -1) };
    let (c, a) = isplit(&one_k);
    assert_eq!(c, Quaternion { a: g(1, 0), b: g(0, 0) });
    assert_eq!(a, Quaternion { a: g(0, 0), b: g(0, -1) });

    let mixed = Quaternion { a: Scalar::Complex(c64(1.0, 0.0)), b: Scalar::Complex(c64(0.0, 0.0)) };
    assert!(matches!(qmul(&p, &mixed), Err(QError::MixedRings(..))));
    let zero = Quaternion { a: g(0, 0), b: g(0, 0) };
    assert_eq!(qinv(&zero), Err(QError::ZeroInverse));
}

#[test]
fn isplit_of_symbolic_potential_shape() {
    // U₀ = j(u₀₃ + i u₀₄) with sample values is purely anticommuting.
    let u0 = GQ::jpart(GaussRat::from_ints(3, 4));
    let (c, a) = u0.isplit();
    assert!(c.is_zero());
    assert_eq!(a, u0);
}

#[test]
fn float_quaternions_follow_the_same_rule() {
    let p = Q64::new(c64(0.3, -1.2), c64(0.7, 0.1));
    let q = Q64::new(c64(-0.4, 0.9), c64(1.1, -0.6));
    let pq = p.mul(&q);
    assert!((pq.norm() - p.norm() * q.norm()).abs() < 1e-14);
    let back = pq.mul(&q.inv().unwrap());
    assert!(back.sub(&p).norm() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_matches_matrix_oracle_and_associates(p in quat(), q in quat(), r in quat()) {
        prop_assert_eq!(p.mul(&q), oracle_mul(&p, &q));
        let lhs = p.mul(&q).mul(&r);
        let rhs = p.mul(&q.mul(&r));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, oracle_mul(&oracle_mul(&p, &q), &r));
    }

    #[test]
    fn norm_is_multiplicative(p in quat(), q in quat()) {
        prop_assert_eq!(p.mul(&q).norm2(), p.norm2().mul(&q.norm2()));
    }

    #[test]
    fn inverse_is_two_sided_and_involutive(q in quat()) {
        prop_assume!(!q.is_zero());
        let inv = q.inv().unwrap();
        prop_assert_eq!(inv.mul(&q), GQ::one());
        prop_assert_eq!(q.mul(&inv), GQ::one());
        prop_assert_eq!(inv.inv().unwrap(), q);
    }

    #[test]
    fn isplit_parts_commute_and_anticommute_with_i(q in quat()) {
        let (c, a) = q.isplit();
        prop_assert_eq!(c.add(&a), q.clone());
        prop_assert_eq!(c.left_i(), c.right_i());
        prop_assert_eq!(a.left_i(), a.right_i().neg());
    }

    #[test]
    fn dirac_part_is_minus_anticommuting_part(q in quat()) {
        // −(q + iqi)/2 = −jb for q = a + jb.
        prop_assert_eq!(q.dirac_part(), q.anticommuting().neg());
    }

    #[test]
    fn conjugation_reverses_products(p in quat(), q in quat()) {
        prop_assert_eq!(p.mul(&q).conj(), q.conj().mul(&p.conj()));
    }

    #[test]
    fn gaussian_conjugation_is_involution(g in gauss()) {
        prop_assert_eq!(g.conj().conj(), g);
    }
}
