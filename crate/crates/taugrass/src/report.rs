//! JSON summaries of frames.

use qcore::par::Exec;
use qcore::GaussRat;
use serde_json::{json, Value};

use crate::frame::{plucker_support, FiniteRankFrame};
use crate::tau::{big_cell_rank, diagonal_lead, lowest_term, tau, z1_poly, Flow};
use crate::TauError;

fn times(t: &[GaussRat]) -> Value {
    json!(t.iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

/// `{"support": [{"S", "wS"}], "tau_samples": [...], "leading": {"m", "c"}}`.
pub fn frame_report(w: &FiniteRankFrame, samples: &[Flow], exec: Exec) -> Result<Value, TauError> {
    let support: Vec<Value> = plucker_support(w, exec)
        .into_iter()
        .map(|(s, c)| {
            let (s0, s1) = s.split();
            json!({"S": s.to_string(), "S0": s0.to_string(), "S1": s1.to_string(), "wS": c.to_string()})
        })
        .collect();
    let mut tau_samples = Vec::with_capacity(samples.len());
    for flow in samples {
        let t = match flow {
            Flow::Scalar(t) => json!({"t": times(t)}),
            Flow::Pair(t0, t1) => json!({"t0": times(t0), "t1": times(t1)}),
        };
        tau_samples.push(json!({
            "gamma": t,
            "tau": tau(w, flow)?.to_string(),
            "big_cell": big_cell_rank(w, flow)?,
        }));
    }
    let leading = if w.is_paired() {
        match diagonal_lead(w)? {
            Some(l) => json!({"m": l.m, "c": l.c.to_string()}),
            None => Value::Null,
        }
    } else {
        match lowest_term(&z1_poly(w)) {
            Some((m, terms)) => json!({"m": m, "c": terms[0].1.to_string()}),
            None => Value::Null,
        }
    };
    Ok(json!({
        "quaternionic": w.is_quaternionic(),
        "window": [w.lo(), w.n()],
        "support": support,
        "tau_samples": tau_samples,
        "leading": leading,
    }))
}
