//! Criteria on quaternionic tau functions and the KP reduction.

use qcore::par::{map_slice, Exec};
use qcore::{ConjRing, GaussRat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use taugrass::fixtures::{kp_base, quaternionic_fixture, random_gauss, random_quaternionic_frame};
use taugrass::{
    baker_from_frame, big_cell_rank, diagonal_lead, factorization_sign, plucker_support, schur_tau,
    support_law_violations, tau, tau_hat, FiniteRankFrame, Flow,
};

use crate::Outcome;

fn times(r: &mut ChaCha8Rng, k: usize) -> Vec<GaussRat> {
    (0..k).map(|_| random_gauss(r, 2).mul(&GaussRat::from_ratio(1, 2))).collect()
}

fn frames() -> Vec<FiniteRankFrame> {
    let mut r = ChaCha8Rng::seed_from_u64(1001);
    (0..5).map(|k| random_quaternionic_frame(&mut r, -2, 2, if k < 2 { 0.0 } else { 0.6 })).collect()
}

/// `τ̂_S = ±τ_{S₀}τ_{S₁}` on the basis frame of every support set of `w`;
/// returns (checked, failures).
fn factorization(w: &FiniteRankFrame, r: &mut ChaCha8Rng) -> (usize, Vec<String>) {
    let (t0, t1) = (times(r, 3), times(r, 3));
    let mut bad = Vec::new();
    let support = plucker_support(w, Exec::Sequential);
    for (s, _) in &support {
        let got = FiniteRankFrame::basis(s, w.lo(), w.n()).and_then(|b| tau_hat(&b, &t0, &t1));
        let (s0, s1) = s.split();
        let want = match factorization_sign(s) {
            Some(sign) => schur_tau(&s0, &t0).and_then(|a| Ok(a.mul(&schur_tau(&s1, &t1)?).scale_i64(sign))),
            None => Ok(GaussRat::zero()),
        };
        match (got, want) {
            (Ok(g), Ok(w)) if g == w => {}
            _ => bad.push(s.to_string()),
        }
    }
    (support.len(), bad)
}

/// The four tau laws on five random quaternionic frames.
pub fn ac10(exec: Exec) -> Vec<Outcome> {
    let ws = frames();
    let per_frame = map_slice(&ws.iter().enumerate().collect::<Vec<_>>(), exec, |&(k, w)| {
        let mut r = ChaCha8Rng::seed_from_u64(1100 + k as u64);
        let support = plucker_support(w, Exec::Sequential).len();
        let violations = support_law_violations(w, Exec::Sequential).len();
        let (checked, fact_bad) = factorization(w, &mut r);
        let lead = match diagonal_lead(w) {
            Ok(Some(l)) if !l.c.is_zero() && l.c.is_real() => Ok(l.m),
            Ok(Some(l)) => Err(format!("c = {} is not real nonzero", l.c)),
            Ok(None) => Err("diagonal restriction vanishes".to_string()),
            Err(e) => Err(e.to_string()),
        };
        let mut cell_bad = 0;
        let mut zeros = 0;
        for _ in 0..100 {
            let f = Flow::Pair(times(&mut r, 2), times(&mut r, 2));
            match (tau(w, &f), big_cell_rank(w, &f)) {
                (Ok(t), Ok(inside)) => {
                    zeros += usize::from(t.is_zero());
                    cell_bad += usize::from(t.is_zero() == inside);
                }
                _ => cell_bad += 1,
            }
        }
        (support, violations, checked, fact_bad, lead, cell_bad, zeros)
    });
    let support: usize = per_frame.iter().map(|x| x.0).sum();
    let violations: usize = per_frame.iter().map(|x| x.1).sum();
    let checked: usize = per_frame.iter().map(|x| x.2).sum();
    let fact_bad: Vec<String> = per_frame.iter().flat_map(|x| x.3.clone()).collect();
    let leads: Vec<String> =
        per_frame.iter().map(|x| x.4.as_ref().map_or_else(|e| e.clone(), |m| format!("m={m}"))).collect();
    let leads_ok = per_frame.iter().all(|x| x.4.is_ok());
    let cell_bad: usize = per_frame.iter().map(|x| x.5).sum();
    let zeros: usize = per_frame.iter().map(|x| x.6).sum();
    vec![
        Outcome::new(
            "AC10a",
            violations == 0,
            format!("nonzero Plücker coordinates with S₀ ≠ S₁: {violations} of {support}"),
        ),
        Outcome::new(
            "AC10b",
            fact_bad.is_empty() && checked > 0,
            format!("{checked} support sets: τ̂_S = ±τ_S₀τ_S₁ failed for {fact_bad:?}"),
        ),
        Outcome::new("AC10c", leads_ok, format!("lowest term c|z|^2m, c real nonzero: {leads:?}")),
        Outcome::new(
            "AC10d",
            cell_bad == 0,
            format!("500 flows: τ = 0 ⇔ rank test fails, disagreements {cell_bad} ({zeros} zeros)"),
        ),
    ]
}

/// `V ⊕ V̄` has a commuting `a₁`; a quaternionic fixture does not.
pub fn ac11(_exec: Exec) -> Vec<Outcome> {
    let zs = [GaussRat::zero(), GaussRat::from_ints(1, 0), GaussRat::new(qcore::rat(1, 2), qcore::rat(-3, 4))];
    let kp = FiniteRankFrame::kp(&kp_base()).and_then(|w| {
        zs.iter().map(|z| baker_from_frame(&w, z).map(|a| a[0].b.is_zero())).collect::<Result<Vec<bool>, _>>()
    });
    let q = quaternionic_fixture();
    let quat = baker_from_frame(&q, &GaussRat::new(qcore::rat(1, 3), qcore::rat(1, 1))).map(|a| a[0].b.clone());
    let (kp_ok, kp_note) = match &kp {
        Ok(v) => (v.iter().all(|&b| b), format!("V⊕V̄ j-part of a₁ zero at {}/{} points", v.iter().filter(|b| **b).count(), v.len())),
        Err(e) => (false, e.to_string()),
    };
    let (q_ok, q_note) = match &quat {
        Ok(b) => (!b.is_zero(), format!("quaternionic fixture j-part {b}")),
        Err(e) => (false, e.to_string()),
    };
    vec![Outcome::new("AC11", kp_ok && q_ok, format!("{kp_note}; {q_note}"))]
}
