//! Index sets `S ⊂ ℤ` differing from `ℕ` in finitely many places.

use std::collections::BTreeSet;
use std::fmt;

/// `S` stored as its negative elements and the naturals it misses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    below: BTreeSet<i64>,
    missing: BTreeSet<i64>,
}

impl IndexSet {
    /// `ℕ`.
    pub fn naturals() -> Self {
        IndexSet { below: BTreeSet::new(), missing: BTreeSet::new() }
    }

    /// `T ∪ [n, ∞)`; elements of `T` at or above `n` are absorbed.
    pub fn from_window(t: &[i64], n: i64) -> Self {
        let n = n.max(0);
        let below = t.iter().copied().filter(|&k| k < 0).collect();
        let missing = (0..n).filter(|k| !t.contains(k)).collect();
        IndexSet { below, missing }
    }

    pub fn contains(&self, k: i64) -> bool {
        if k < 0 {
            self.below.contains(&k)
        } else {
            !self.missing.contains(&k)
        }
    }

    /// `|S∖ℕ| − |ℕ∖S|`.
    pub fn virtual_cardinal(&self) -> i64 {
        self.below.len() as i64 - self.missing.len() as i64
    }

    /// Least `N ≥ 0` with `[N, ∞) ⊂ S`.
    pub fn stable_start(&self) -> i64 {
        self.missing.iter().next_back().map_or(0, |m| m + 1)
    }

    /// Least element.
    pub fn min(&self) -> i64 {
        match self.below.iter().next() {
            Some(&k) => k,
            None => (0..).find(|k| !self.missing.contains(k)).expect("S is cofinite in ℕ"),
        }
    }

    /// Elements below `n`, increasing.
    pub fn elements_below(&self, n: i64) -> Vec<i64> {
        let lo = self.min().min(0);
        (lo..n).filter(|&k| self.contains(k)).collect()
    }

    /// `S₀ = {j : 2j ∈ S}` and `S₁ = {j : 2j + 1 ∈ S}`.
    pub fn split(&self) -> (IndexSet, IndexSet) {
        let part = |r: i64| IndexSet {
            below: self.below.iter().filter(|k| k.rem_euclid(2) == r).map(|k| k.div_euclid(2)).collect(),
            missing: self.missing.iter().filter(|k| k.rem_euclid(2) == r).map(|k| k.div_euclid(2)).collect(),
        };
        (part(0), part(1))
    }

    /// Inverse of [`IndexSet::split`].
    pub fn join(s0: &IndexSet, s1: &IndexSet) -> IndexSet {
        let below = s0.below.iter().map(|k| 2 * k).chain(s1.below.iter().map(|k| 2 * k + 1)).collect();
        let missing =
            s0.missing.iter().map(|k| 2 * k).chain(s1.missing.iter().map(|k| 2 * k + 1)).collect();
        IndexSet { below, missing }
    }
}

impl fmt::Display for IndexSet {
    /// `{t₁,…} ∪ [N,∞)` with `N` the stable start.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.stable_start();
        let t: Vec<String> = self.elements_below(n).iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}∪[{},∞)", t.join(","), n)
    }
}
