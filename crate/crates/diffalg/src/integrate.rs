//! Formal antiderivatives.
//!
//! `∂_y` preserves the label multiset of a monomial and raises its weight by
//! one, so integration splits into homogeneous components. Each component
//! is solved by exact linear algebra against the derivatives of every
//! candidate monomial one weight lower. What is left over is reduced to a
//! canonical normal form modulo the image of `∂_y`, and each surviving
//! monomial `m` receives the antiderivative symbol `I[m]`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};

use qcore::GaussRat;

use crate::poly::{Antiderivative, DiffPoly, Generator, Label, Monomial};

type SparseVec = BTreeMap<Monomial, GaussRat>;

static REGISTRY: OnceLock<Mutex<BTreeSet<Arc<Antiderivative>>>> = OnceLock::new();

fn registry() -> &'static Mutex<BTreeSet<Arc<Antiderivative>>> {
    REGISTRY.get_or_init(|| Mutex::new(BTreeSet::new()))
}

/// The antiderivative symbol of a single monomial, interned in the
/// append-only registry.
pub fn antiderivative_of(m: &Monomial) -> Arc<Antiderivative> {
    let a = Antiderivative {
        derivative: DiffPoly::from_monomial(m.clone(), GaussRat::one()),
        weight: m.weight() - 1,
        labels: m.labels(),
    };
    let mut reg = registry().lock().expect("registry poisoned");
    if let Some(existing) = reg.get(&a) {
        return existing.clone();
    }
    let arc = Arc::new(a);
    reg.insert(arc.clone());
    arc
}

/// Number of antiderivative symbols created so far in this process.
pub fn registry_len() -> usize {
    registry().lock().expect("registry poisoned").len()
}

/// Outcome of an integration.
#[derive(Clone, Debug, PartialEq)]
pub struct Integral {
    pub value: DiffPoly,
    /// Symbols introduced for the non-exact part (empty when `p` is exact).
    pub introduced: Vec<Arc<Antiderivative>>,
}

impl Integral {
    pub fn is_exact(&self) -> bool {
        self.introduced.is_empty()
    }
}

/// `q` with `∂_y q = p`, integration constant zero.
pub fn formal_integrate(p: &DiffPoly) -> DiffPoly {
    integrate_with(p, &[]).value
}

/// Like [`formal_integrate`], also allowing the candidate basis to use the
/// given antiderivative symbols in addition to those already in `p`.
pub fn integrate_with(p: &DiffPoly, extra: &[Arc<Antiderivative>]) -> Integral {
    let mut known = p.antiderivatives();
    for a in extra {
        if !known.contains(a) {
            known.push(a.clone());
        }
    }
    known.sort();
    let mut value = DiffPoly::zero();
    let mut introduced = Vec::new();
    for ((labels, weight), comp) in p.components() {
        let (part, fresh) = integrate_component(&comp, &labels, weight, &known);
        value = value.add(&part);
        for a in fresh {
            if !introduced.contains(&a) {
                introduced.push(a);
            }
        }
    }
    introduced.sort();
    Integral { value, introduced }
}

struct Echelon {
    /// (leading monomial, normalized image vector, preimage over candidates)
    rows: Vec<(SparseVec, BTreeMap<usize, GaussRat>)>,
    lead: BTreeMap<Monomial, usize>,
}

fn axpy(dst: &mut SparseVec, c: &GaussRat, src: &SparseVec) {
    for (m, x) in src {
        let v = dst.get(m).cloned().unwrap_or_else(GaussRat::zero);
        let nv = &v + &(c * x);
        if nv.is_zero() {
            dst.remove(m);
        } else {
            dst.insert(m.clone(), nv);
        }
    }
}

fn axpy_idx(dst: &mut BTreeMap<usize, GaussRat>, c: &GaussRat, src: &BTreeMap<usize, GaussRat>) {
    for (k, x) in src {
        let v = dst.get(k).cloned().unwrap_or_else(GaussRat::zero);
        let nv = &v + &(c * x);
        if nv.is_zero() {
            dst.remove(k);
        } else {
            dst.insert(*k, nv);
        }
    }
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new(), lead: BTreeMap::new() }
    }

    /// Subtract basis rows until no monomial of `v` is a leading monomial.
    fn reduce(&self, v: &mut SparseVec, pre: &mut BTreeMap<usize, GaussRat>) {
        loop {
            let hit = v
                .iter()
                .rev()
                .find_map(|(m, c)| self.lead.get(m).map(|&r| (r, c.clone())));
            let Some((r, c)) = hit else { break };
            let (row, rpre) = &self.rows[r];
            axpy(v, &(-&c), row);
            axpy_idx(pre, &(-&c), rpre);
        }
    }

    fn insert(&mut self, mut v: SparseVec, mut pre: BTreeMap<usize, GaussRat>) {
        self.reduce(&mut v, &mut pre);
        let Some((lead, c)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            return;
        };
        let inv = c.inv().expect("nonzero leading coefficient");
        for x in v.values_mut() {
            *x = &*x * &inv;
        }
        for x in pre.values_mut() {
            *x = &*x * &inv;
        }
        self.lead.insert(lead, self.rows.len());
        self.rows.push((v, pre));
    }
}

fn to_sparse(p: &DiffPoly) -> SparseVec {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn integrate_component(
    comp: &DiffPoly,
    labels: &[Label],
    weight: i64,
    known: &[Arc<Antiderivative>],
) -> (DiffPoly, Vec<Arc<Antiderivative>>) {
    let candidates = if labels.is_empty() {
        Vec::new()
    } else {
        enumerate_candidates(labels, weight - 1, known)
    };
    let mut ech = Echelon::new();
    for (k, cand) in candidates.iter().enumerate() {
        let image = to_sparse(&cand.d_y());
        ech.insert(image, BTreeMap::from([(k, GaussRat::one())]));
    }
    let mut v = to_sparse(comp);
    let mut pre = BTreeMap::new();
    ech.reduce(&mut v, &mut pre);
    // p = Σ c_k ∂_y(cand_k) − (accumulated negatives) + remainder
    let mut out = DiffPoly::zero();
    for (k, c) in pre {
        out = out.add(&DiffPoly::from_monomial(candidates[k].clone(), -&c));
    }
    let mut fresh = Vec::new();
    for (m, c) in v {
        let a = antiderivative_of(&m);
        out = out.add(&DiffPoly::from_monomial(Monomial::of(Generator::A(a.clone())), c));
        fresh.push(a);
    }
    (out, fresh)
}

fn remove_labels(have: &[Label], take: &[Label]) -> Option<Vec<Label>> {
    let mut rest = have.to_vec();
    for l in take {
        let pos = rest.iter().position(|x| x == l)?;
        rest.remove(pos);
    }
    Some(rest)
}

/// All monomials with the given label multiset and weight built from `u`
/// generators and the known antiderivative symbols.
pub(crate) fn enumerate_candidates(
    labels: &[Label],
    weight: i64,
    known: &[Arc<Antiderivative>],
) -> Vec<Monomial> {
    let usable: Vec<&Arc<Antiderivative>> = known
        .iter()
        .filter(|a| {
            !a.labels().is_empty()
                && a.weight() <= weight
                && remove_labels(labels, a.labels()).is_some()
        })
        .collect();
    let mut out = Vec::new();
    choose_antiderivatives(labels, weight, &usable, 0, Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

fn choose_antiderivatives(
    labels: &[Label],
    weight: i64,
    usable: &[&Arc<Antiderivative>],
    idx: usize,
    chosen: Vec<(Generator, u32)>,
    out: &mut Vec<Monomial>,
) {
    if idx == usable.len() {
        for uf in u_factorizations(labels, weight) {
            let mut f = chosen.clone();
            f.extend(uf);
            out.push(Monomial::from_factors(f));
        }
        return;
    }
    let a = usable[idx];
    let mut rest = labels.to_vec();
    let mut w = weight;
    let mut picked = chosen.clone();
    let mut count = 0u32;
    loop {
        choose_antiderivatives(&rest, w, usable, idx + 1, picked.clone(), out);
        let Some(r) = remove_labels(&rest, a.labels()) else { break };
        rest = r;
        w -= a.weight();
        count += 1;
        picked = chosen.clone();
        picked.push((Generator::A((*a).clone()), count));
    }
}

/// Products of `u` generators carrying exactly `labels` with total weight
/// `weight`; orders are non-decreasing within a run of equal labels.
fn u_factorizations(labels: &[Label], weight: i64) -> Vec<Vec<(Generator, u32)>> {
    let base: i64 = labels.iter().map(|(a, _)| *a as i64 + 1).sum();
    let spare = weight - base;
    if spare < 0 {
        return Vec::new();
    }
    let mut sorted = labels.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    let mut orders = vec![0u32; sorted.len()];
    distribute(&sorted, 0, spare as u32, &mut orders, &mut out);
    out
}

fn distribute(
    labels: &[Label],
    pos: usize,
    left: u32,
    orders: &mut Vec<u32>,
    out: &mut Vec<Vec<(Generator, u32)>>,
) {
    if pos == labels.len() {
        if left == 0 {
            let f = labels
                .iter()
                .zip(orders.iter())
                .map(|((a, b), o)| (Generator::u(*a, *b, *o), 1))
                .collect();
            out.push(f);
        }
        return;
    }
    let min = if pos > 0 && labels[pos] == labels[pos - 1] { orders[pos - 1] } else { 0 };
    if pos + 1 == labels.len() {
        if left >= min {
            orders[pos] = left;
            distribute(labels, pos + 1, 0, orders, out);
        }
        return;
    }
    for o in min..=left {
        orders[pos] = o;
        distribute(labels, pos + 1, left - o, orders, out);
    }
}
