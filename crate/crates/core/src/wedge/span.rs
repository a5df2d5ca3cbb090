//! Membership of relations in the submodule `N ⊂ V_aff ⊗ V_aff`.
//!
//! `N` is spanned by `U_q(g)[z⊗z, z⁻¹⊗z⁻¹, z⊗1+1⊗z]` applied to `u⊗u` for an
//! extremal `u`. We generate it inside a box of z-powers by breadth-first
//! search, one weight space at a time, and test membership by elimination.

use super::{Engine, Gen, Pair, Rel};
use crate::crystal::{Elem, Letter, Weight};
use crate::lincomb::LinComb;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Member,
    /// The relation is nonzero in `⋀²`, so it cannot lie in `N`.
    NotMember,
    /// Not found in the generated part of `N`; a wider window may decide.
    Inconclusive,
}

/// Echelon basis of a subspace of formal combinations, pivot = largest key.
#[derive(Default)]
struct SparseEchelon {
    rows: BTreeMap<Pair, LinComb<Pair>>,
}

impl SparseEchelon {
    fn reduce(&self, v: &LinComb<Pair>) -> LinComb<Pair> {
        let mut v = v.clone();
        loop {
            let hit = v.terms.iter().rev().find_map(|(k, c)| self.rows.get(k).map(|r| (c.clone(), r)));
            match hit {
                Some((c, r)) => v.add_scaled(r, &-&c),
                None => return v,
            }
        }
    }

    fn insert(&mut self, v: &LinComb<Pair>) -> Option<LinComb<Pair>> {
        let r = self.reduce(v);
        let (k, c) = r.terms.iter().next_back()?;
        let k = *k;
        let r = r.scale(&c.inv().ok()?);
        self.rows.insert(k, r.clone());
        Some(r)
    }
}

/// The part of `N` supported on `|z| ≤ box_z` in both factors.
pub struct NSpan {
    pub box_z: i64,
    spaces: HashMap<Weight, SparseEchelon>,
    pub dim: usize,
}

fn in_box(v: &LinComb<Pair>, b: i64) -> bool {
    v.terms.keys().all(|(x, y)| x.z.abs() <= b && y.z.abs() <= b)
}

impl Engine {
    /// An extremal letter: every `i`-string through it starts or ends there.
    pub fn extremal_letter(&self) -> Letter {
        let t = &self.t;
        *t.letters()
            .iter()
            .find(|&&j| t.indices().all(|i| t.eps(i, j) == 0 || t.phi(i, j) == 0))
            .expect("perfect crystals have extremal elements")
    }

    fn pair_weight(&self, p: &Pair) -> Weight {
        self.t.wt(p.0).add(&self.t.wt(p.1))
    }

    pub fn n_span(&self, box_z: i64) -> NSpan {
        let u = Elem::new(self.extremal_letter(), 0);
        let mut span = NSpan { box_z, spaces: HashMap::new(), dim: 0 };
        let mut queue: VecDeque<LinComb<Pair>> = VecDeque::new();
        let start = LinComb::basis((u, u));
        span.add(self, &start, &mut queue);
        let gens: Vec<Gen> = self.t.indices().flat_map(|i| [Gen::E(i), Gen::F(i)]).collect();
        while let Some(v) = queue.pop_front() {
            let mut next: Vec<LinComb<Pair>> = Vec::new();
            for &g in &gens {
                let img: LinComb<Pair> = v.map_linear(|(x, y)| {
                    self.tensor_act_word(g, &[*x, *y]).terms.into_iter().map(|(w, c)| ((w[0], w[1]), c)).collect()
                });
                next.push(img);
            }
            for (a, b) in [(1, 1), (-1, -1)] {
                next.push(v.terms.iter().map(|((x, y), c)| ((x.shift(a), y.shift(b)), c.clone())).collect());
            }
            let mut sym = LinComb::new();
            for ((x, y), c) in v.iter() {
                sym.add_term((x.shift(1), *y), c.clone());
                sym.add_term((*x, y.shift(1)), c.clone());
            }
            next.push(sym);
            for w in next {
                span.add(self, &w, &mut queue);
            }
        }
        span
    }

    /// Classifies a relation; `Member` needs it inside the generated box.
    pub fn rel_in_n(&self, rel: &Rel, span: &NSpan) -> Membership {
        let wedge: LinComb<Vec<Elem>> = rel.iter().map(|((x, y), c)| (vec![*x, *y], c.clone())).collect();
        if !self.straighten(&wedge).is_zero() {
            return Membership::NotMember;
        }
        if span.contains(self, rel) {
            Membership::Member
        } else {
            Membership::Inconclusive
        }
    }

    /// `C_{i,j}`, shifted to be centred in z, against `N` within `window`;
    /// the search box is `window + 1`.
    pub fn verify_rel_in_n(&self, i: Letter, j: Letter, window: i64) -> crate::Result<Membership> {
        let rel = self.rel_base(i, j)?.clone();
        let span = self.n_span(window + 1);
        Ok(self.rel_in_n(&centre(&rel), &span))
    }
}

/// Shifts a relation so its z-powers are as balanced as possible.
pub fn centre(rel: &Rel) -> Rel {
    let lo = rel.terms.keys().map(|(x, y)| x.z.min(y.z)).min().unwrap_or(0);
    let hi = rel.terms.keys().map(|(x, y)| x.z.max(y.z)).max().unwrap_or(0);
    let s = -(lo + hi).div_euclid(2);
    rel.iter().map(|((x, y), c)| ((x.shift(s), y.shift(s)), c.clone())).collect()
}

impl NSpan {
    fn add(&mut self, eng: &Engine, v: &LinComb<Pair>, queue: &mut VecDeque<LinComb<Pair>>) {
        if v.is_zero() || !in_box(v, self.box_z) {
            return;
        }
        // every generator preserves weight spaces, so the terms share one weight
        let w = eng.pair_weight(v.terms.keys().next().unwrap());
        if let Some(r) = self.spaces.entry(w).or_default().insert(v) {
            self.dim += 1;
            queue.push_back(r);
        }
    }

    pub fn contains(&self, eng: &Engine, v: &LinComb<Pair>) -> bool {
        if v.is_zero() {
            return true;
        }
        if !in_box(v, self.box_z) {
            return false;
        }
        let w = eng.pair_weight(v.terms.keys().next().unwrap());
        self.spaces.get(&w).is_some_and(|e| e.reduce(v).is_zero())
    }
}

/// Per-relation outcome for reports.
#[derive(Clone, Debug, Serialize)]
pub struct RelCheck {
    pub i: Letter,
    pub j: Letter,
    pub result: Membership,
}

pub fn verify_all(eng: &Engine, window: i64) -> Vec<RelCheck> {
    let span = eng.n_span(window + 1);
    eng.rel_keys()
        .into_iter()
        .map(|(i, j)| {
            let rel = centre(eng.rel_base(i, j).expect("listed key"));
            let fits = in_box(&rel, window);
            let result = if fits { eng.rel_in_n(&rel, &span) } else { Membership::Inconclusive };
            RelCheck { i, j, result }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{AffineType, Family};

    #[test]
    fn zero_and_start_vector() {
        let eng = Engine::new(AffineType::new(Family::A1K, 1, 2).unwrap());
        let span = eng.n_span(1);
        assert!(span.contains(&eng, &LinComb::new()));
        let u = Elem::new(eng.extremal_letter(), 0);
        assert!(span.contains(&eng, &LinComb::basis((u, u))));
    }

    /// Normally ordered pairs stay independent modulo the generated span.
    #[test]
    fn span_meets_normal_pairs_trivially() {
        for t in [AffineType::minimal(Family::A2Even), AffineType::new(Family::A1K, 1, 2).unwrap()] {
            let eng = Engine::new(t);
            let span = eng.n_span(2);
            let mut all = SparseEchelon::default();
            for e in span.spaces.values() {
                for r in e.rows.values() {
                    assert!(all.insert(r).is_some());
                }
            }
            let letters = eng.t.letters().to_vec();
            for &a in &letters {
                for &b in &letters {
                    for za in -2..=2 {
                        for zb in -2..=2 {
                            let (x, y) = (Elem::new(a, za), Elem::new(b, zb));
                            if eng.h(x, y) > 0 {
                                assert!(all.insert(&LinComb::basis((x, y))).is_some(), "{x:?} {y:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn base_relations_in_n() {
        for t in [AffineType::minimal(Family::A2Even), AffineType::new(Family::A1K, 1, 2).unwrap()] {
            let eng = Engine::new(t);
            for r in verify_all(&eng, 2) {
                assert_eq!(r.result, Membership::Member, "{:?}", (r.i, r.j));
            }
        }
    }

    #[test]
    fn normal_pair_is_not_in_n() {
        let eng = Engine::new(AffineType::minimal(Family::A2Even));
        let span = eng.n_span(1);
        let a = Elem::new(1, 0);
        let b = Elem::new(0, 0);
        let (x, y) = if eng.h(a, b) > 0 { (a, b) } else { (b, a) };
        assert_eq!(eng.rel_in_n(&LinComb::basis((x, y)), &span), Membership::NotMember);
    }
}

