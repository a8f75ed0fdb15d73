//! The acceptance suite: each criterion runs at its stated scale and
//! tolerance and yields one pass/fail verdict with a short detail line.

mod dressing_checks;
mod geometry_checks;
mod tau_checks;

use std::fmt;
use std::time::Instant;

use qcore::par::{map_slice, Exec};
use serde_json::{json, Value};

pub use dressing_checks::{ac1, ac2, ac3, ac4, velocity_oracle};
pub use geometry_checks::{ac5, ac6, ac7, ac8, ac9};
pub use tau_checks::{ac10, ac11};

/// Criteria whose statement is false; they are run as stated and expected
/// to fail. The ledger holds the counterexample.
pub const KNOWN_FALSE: &[&str] = &["AC10a"];

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub id: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn new(id: &str, pass: bool, detail: impl Into<String>) -> Self {
        Outcome { id: id.to_string(), pass, detail: detail.into(), seconds: 0.0 }
    }

    pub fn known_false(&self) -> bool {
        KNOWN_FALSE.contains(&self.id.as_str())
    }

    /// A pass, or a failure of a criterion known to be false.
    pub fn as_expected(&self) -> bool {
        self.pass != self.known_false()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "pass": self.pass,
            "known_false": self.known_false(),
            "detail": self.detail,
        })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let note = if self.known_false() { " [known false]" } else { "" };
        write!(f, "{:<6}{verdict}{note}  {} ({:.1}s)", self.id, self.detail, self.seconds)
    }
}

type Check = fn(Exec) -> Vec<Outcome>;

const CHECKS: [Check; 11] = [ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11];

fn timed(check: Check, exec: Exec) -> Vec<Outcome> {
    let start = Instant::now();
    let mut out = check(exec);
    let s = start.elapsed().as_secs_f64();
    for o in &mut out {
        o.seconds = s;
    }
    out
}

/// Every criterion, in order. Criteria run concurrently under `Exec::Parallel`.
pub fn run_all(exec: Exec) -> Vec<Outcome> {
    map_slice(&CHECKS, exec, |&c| timed(c, exec)).into_iter().flatten().collect()
}

/// `{"criteria": [...], "all_as_expected": bool}`.
pub fn report_json(outcomes: &[Outcome]) -> Value {
    json!({
        "criteria": outcomes.iter().map(Outcome::to_json).collect::<Vec<_>>(),
        "all_as_expected": outcomes.iter().all(Outcome::as_expected),
    })
}
