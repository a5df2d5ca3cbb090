//! `V_aff` with its lower global base, the relations `C_{i,j}`, and the
//! straightening of finite q-wedges into normally ordered form.

pub mod span;
pub mod tables;

use crate::coeff::{qint, RatQ};
use crate::crystal::{AffineType, Elem, Letter};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
pub use tables::{Pair, Rel};

pub type Word = Vec<Elem>;
pub type Vaff = LinComb<Elem>;
pub type WedgeVec = LinComb<Word>;
pub type Expansion = Rc<Vec<(Word, RatQ)>>;

/// Generators acting on `V_aff` and on tensor/wedge powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E(usize),
    F(usize),
    /// `t_i = q_i^{h_i}`; `T(i, -1)` is the inverse.
    T(usize, i64),
}

pub struct Engine {
    pub t: AffineType,
    rels: HashMap<(Letter, Letter), Rel>,
    pair_memo: RefCell<HashMap<(Letter, Letter, i64), Rc<Vec<(Elem, Elem, RatQ)>>>>,
    ins_memo: RefCell<HashMap<(Elem, Word, Option<Elem>), Expansion>>,
}

impl Engine {
    pub fn new(t: AffineType) -> Engine {
        let rels = tables::build(&t);
        Engine { t, rels, pair_memo: RefCell::default(), ins_memo: RefCell::default() }
    }

    pub fn h(&self, a: Elem, b: Elem) -> i64 {
        self.t.energy(a, b)
    }

    pub fn is_normal(&self, w: &[Elem]) -> bool {
        w.windows(2).all(|p| self.h(p[0], p[1]) > 0)
    }

    /// `C_{i,j}` as tabulated, identified with `C_{b_i, z^{-H(i,j)} b_j}`.
    pub fn rel_base(&self, i: Letter, j: Letter) -> Result<&Rel> {
        self.rels.get(&(i, j)).ok_or_else(|| Error::Invalid(format!("no letter pair ({i},{j})")))
    }

    /// Letter pairs with a base relation, sorted.
    pub fn rel_keys(&self) -> Vec<(Letter, Letter)> {
        let mut k: Vec<_> = self.rels.keys().copied().collect();
        k.sort();
        k
    }

    /// Leading pair of `C_{i,j}`.
    pub fn leading(&self, i: Letter, j: Letter) -> Pair {
        (Elem::new(i, 0), Elem::new(j, -self.t.energy_cl(i, j)))
    }

    /// `b1 ∧ b2` as a combination of normally ordered pairs.
    pub fn normal_pair(&self, b1: Elem, b2: Elem) -> Rc<Vec<(Elem, Elem, RatQ)>> {
        let key = (b1.j, b2.j, b2.z - b1.z);
        if let Some(r) = self.pair_memo.borrow().get(&key) {
            return shift_pairs(r, b1.z);
        }
        let base = self.normal_pair_at0(Elem::new(b1.j, 0), Elem::new(b2.j, b2.z - b1.z));
        self.pair_memo.borrow_mut().insert(key, base.clone());
        shift_pairs(&base, b1.z)
    }

    fn normal_pair_at0(&self, b1: Elem, b2: Elem) -> Rc<Vec<(Elem, Elem, RatQ)>> {
        let h = self.h(b1, b2);
        let mut acc: LinComb<Pair> = LinComb::new();
        if h > 0 {
            acc.add_term((b1, b2), RatQ::one());
        } else if h == 0 {
            let lead = self.leading(b1.j, b2.j);
            for ((x, y), c) in self.rels[&(b1.j, b2.j)].iter() {
                if (*x, *y) == lead {
                    continue;
                }
                self.add_normalized(&mut acc, *x, *y, &-c);
            }
        } else {
            // (z^c⊗1 + 1⊗z^c)·C_{z^{-c} b1, b2} with c = -H.
            let c = -h;
            let lead = self.leading(b1.j, b2.j);
            let base = &self.rels[&(b1.j, b2.j)];
            let off = -c - lead.0.z;
            self.add_normalized(&mut acc, b1.shift(-c), b2.shift(c), &RatQ::from_int(-1));
            for ((x, y), r) in base.iter() {
                if (*x, *y) == lead {
                    continue;
                }
                let (x, y) = (x.shift(off), y.shift(off));
                self.add_normalized(&mut acc, x, y.shift(c), &-r);
                self.add_normalized(&mut acc, x.shift(c), y, &-r);
            }
        }
        Rc::new(acc.terms.into_iter().map(|((x, y), c)| (x, y, c)).collect())
    }

    fn add_normalized(&self, acc: &mut LinComb<Pair>, x: Elem, y: Elem, c: &RatQ) {
        if self.h(x, y) > 0 {
            acc.add_term((x, y), c.clone());
        } else {
            for (a, b, d) in self.normal_pair(x, y).iter() {
                acc.add_term((*a, *b), &d.clone() * c);
            }
        }
    }

    /// The relation of the form `G(b1)⊗G(b2) − Σ a G(b'1)⊗G(b'2)` with
    /// normally ordered targets, for `H(b1⊗b2) ≤ 0`.
    pub fn rel_general(&self, b1: Elem, b2: Elem) -> Result<Rel> {
        if self.h(b1, b2) > 0 {
            return Err(Error::Domain(format!("H({b1}⊗{b2}) > 0: already normally ordered")));
        }
        let mut r = Rel::basis((b1, b2));
        for (x, y, c) in self.normal_pair(b1, b2).iter() {
            r.add_term((*x, *y), -c);
        }
        Ok(r)
    }

    /// `a ∧ u` for a normally ordered `u`, optionally followed by a
    /// semi-infinite tail whose first letter is `wall`. Terms whose last
    /// letter `b` has `H(b ⊗ wall) ≤ 0` vanish.
    pub fn insert(&self, a: Elem, u: &[Elem], wall: Option<Elem>) -> Expansion {
        let s = a.z;
        let key_u: Word = u.iter().map(|b| b.shift(-s)).collect();
        let key = (a.shift(-s), key_u, wall.map(|w| w.shift(-s)));
        if let Some(r) = self.ins_memo.borrow().get(&key) {
            return shift_words(r, s);
        }
        let r = self.insert_raw(key.0, &key.1, key.2);
        self.ins_memo.borrow_mut().insert(key, r.clone());
        shift_words(&r, s)
    }

    fn insert_raw(&self, a: Elem, u: &[Elem], wall: Option<Elem>) -> Expansion {
        if u.is_empty() {
            return Rc::new(match wall {
                Some(w) if self.h(a, w) <= 0 => vec![],
                _ => vec![(vec![a], RatQ::one())],
            });
        }
        if self.h(a, u[0]) > 0 {
            let mut w = Vec::with_capacity(u.len() + 1);
            w.push(a);
            w.extend_from_slice(u);
            return Rc::new(vec![(w, RatQ::one())]);
        }
        let mut acc: WedgeVec = LinComb::new();
        for (x, y, c) in self.normal_pair(a, u[0]).iter() {
            for (w1, c1) in self.insert(*y, &u[1..], wall).iter() {
                let cc = c * c1;
                for (w2, c2) in self.insert(*x, w1, wall).iter() {
                    acc.add_term(w2.clone(), &cc * c2);
                }
            }
        }
        Rc::new(acc.terms.into_iter().collect())
    }

    /// Normal form of an arbitrary finite word, straightened right to left.
    pub fn straighten_word(&self, w: &[Elem]) -> WedgeVec {
        self.straighten_onto(w, &[], None)
    }

    /// `w ∧ u` with `u` normally ordered (and compatible with `wall`).
    pub fn straighten_onto(&self, w: &[Elem], u: &[Elem], wall: Option<Elem>) -> WedgeVec {
        self.straighten_prefix(w, LinComb::basis(u.to_vec()), wall)
    }

    pub fn straighten_prefix(&self, w: &[Elem], mut cur: WedgeVec, wall: Option<Elem>) -> WedgeVec {
        for &a in w.iter().rev() {
            let mut next = LinComb::new();
            for (u, c) in cur.iter() {
                for (x, d) in self.insert(a, u, wall).iter() {
                    next.add_term(x.clone(), c * d);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn straighten(&self, v: &WedgeVec) -> WedgeVec {
        v.map_linear(|w| self.straighten_word(w))
    }

    /// Straightening by repeated rewriting of a chosen defect: the leftmost
    /// one if `leftmost`, else the rightmost. Independent of [`Engine::insert`].
    pub fn rewrite(&self, v: &WedgeVec, leftmost: bool) -> WedgeVec {
        let mut done: WedgeVec = LinComb::new();
        let mut todo = v.clone();
        while let Some((w, c)) = todo.terms.pop_first() {
            let defects: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&k| self.h(w[k], w[k + 1]) <= 0).collect();
            let pos = if leftmost { defects.first() } else { defects.last() };
            match pos {
                None => done.add_term(w, c),
                Some(&k) => {
                    for (x, y, d) in self.normal_pair(w[k], w[k + 1]).iter() {
                        let mut nw = w.clone();
                        nw[k] = *x;
                        nw[k + 1] = *y;
                        todo.add_term(nw, &c * d);
                    }
                }
            }
        }
        done
    }

    /// Generator action on one letter.
    pub fn act_letter(&self, g: Gen, b: Elem) -> Option<(Elem, RatQ)> {
        let t = &self.t;
        match g {
            Gen::E(i) => t.e(i, b).map(|nb| (nb, qint(1 + t.phi(i, b.j), t.qscale(i)))),
            Gen::F(i) => t.f(i, b).map(|nb| (nb, qint(1 + t.eps(i, b.j), t.qscale(i)))),
            Gen::T(i, s) => Some((b, RatQ::q_pow(s * t.qscale(i) * t.hw(i, b.j)))),
        }
    }

    pub fn vaff_act(&self, g: Gen, v: &Vaff) -> Vaff {
        v.map_linear(|b| match self.act_letter(g, *b) {
            Some((nb, c)) => Vaff::single(nb, c),
            None => Vaff::new(),
        })
    }

    /// Coproduct action on a tensor word, without straightening:
    /// `e_i ↦ Σ t_i^{-1}⊗…⊗e_i⊗1⊗…`, `f_i ↦ Σ 1⊗…⊗f_i⊗t_i⊗…`.
    pub fn tensor_act_word(&self, g: Gen, w: &[Elem]) -> WedgeVec {
        let t = &self.t;
        let mut out = LinComb::new();
        match g {
            Gen::T(i, s) => {
                let e: i64 = w.iter().map(|b| t.hw(i, b.j)).sum();
                out.add_term(w.to_vec(), RatQ::q_pow(s * t.qscale(i) * e));
            }
            Gen::E(i) | Gen::F(i) => {
                let raise = matches!(g, Gen::E(_));
                let hw: Vec<i64> = w.iter().map(|b| t.hw(i, b.j)).collect();
                for k in 0..w.len() {
                    if let Some((nb, c)) = self.act_letter(g, w[k]) {
                        let e: i64 = if raise { -hw[..k].iter().sum::<i64>() } else { hw[k + 1..].iter().sum() };
                        let mut nw = w.to_vec();
                        nw[k] = nb;
                        out.add_term(nw, &c * &RatQ::q_pow(e * t.qscale(i)));
                    }
                }
            }
        }
        out
    }

    pub fn tensor_act(&self, g: Gen, v: &WedgeVec) -> WedgeVec {
        v.map_linear(|w| self.tensor_act_word(g, w))
    }

    /// Generator action on `⋀^r V_aff`, result in normal form.
    pub fn wedge_act(&self, g: Gen, v: &WedgeVec) -> WedgeVec {
        self.straighten(&self.tensor_act(g, v))
    }

    /// Concatenation `a ∧ b`, straightened.
    pub fn wedge_mul(&self, a: &WedgeVec, b: &WedgeVec) -> WedgeVec {
        let mut out = LinComb::new();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                let mut w = x.clone();
                w.extend_from_slice(y);
                out.add_scaled(&self.straighten_word(&w), &(c * d));
            }
        }
        out
    }

    /// Applies a symmetric Laurent polynomial in the slot variables, then
    /// straightens. Monomials are exponent vectors of length `r`.
    pub fn symfun_act(&self, f: &SymPoly, v: &WedgeVec) -> Result<WedgeVec> {
        f.check_symmetric()?;
        let mut out = LinComb::new();
        for (w, c) in v.iter() {
            if w.len() != f.arity {
                return Err(Error::Invalid(format!("arity {} vs word length {}", f.arity, w.len())));
            }
            for (ex, d) in f.terms.iter() {
                let nw: Word = w.iter().zip(ex).map(|(b, e)| b.shift(*e)).collect();
                out.add_term(nw, c * d);
            }
        }
        Ok(self.straighten(&out))
    }

    /// Number of cached pair rewrites and insertions.
    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.pair_memo.borrow().len(), self.ins_memo.borrow().len())
    }
}

fn shift_pairs(r: &Rc<Vec<(Elem, Elem, RatQ)>>, s: i64) -> Rc<Vec<(Elem, Elem, RatQ)>> {
    if s == 0 {
        return r.clone();
    }
    Rc::new(r.iter().map(|(x, y, c)| (x.shift(s), y.shift(s), c.clone())).collect())
}

fn shift_words(r: &Expansion, s: i64) -> Expansion {
    if s == 0 {
        return r.clone();
    }
    Rc::new(r.iter().map(|(w, c)| (w.iter().map(|b| b.shift(s)).collect(), c.clone())).collect())
}

/// Laurent polynomial in `z_1..z_r` acting slotwise.
#[derive(Clone, Debug)]
pub struct SymPoly {
    pub arity: usize,
    pub terms: LinComb<Vec<i64>>,
}

impl SymPoly {
    pub fn new(arity: usize) -> SymPoly {
        SymPoly { arity, terms: LinComb::new() }
    }

    /// Power sum `Σ_k z_k^n`.
    pub fn power_sum(n: i64, arity: usize) -> SymPoly {
        let mut s = SymPoly::new(arity);
        for k in 0..arity {
            let mut e = vec![0; arity];
            e[k] = n;
            s.terms.add_term(e, RatQ::one());
        }
        s
    }

    /// `Z(t,d) = z^t⊗z^{d-t} + δ(2t>d) z^{d-t}⊗z^t − δ(2t<d) z^t⊗z^{d-t}`.
    pub fn z_op(t: i64, d: i64) -> SymPoly {
        let mut s = SymPoly::new(2);
        if 2 * t < d {
            return s;
        }
        s.terms.add_term(vec![t, d - t], RatQ::one());
        if 2 * t > d {
            s.terms.add_term(vec![d - t, t], RatQ::one());
        }
        s
    }

    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        let mut s = SymPoly::new(self.arity);
        for (a, c) in self.terms.iter() {
            for (b, d) in o.terms.iter() {
                s.terms.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), c * d);
            }
        }
        s
    }

    pub fn check_symmetric(&self) -> Result<()> {
        for (ex, c) in self.terms.iter() {
            if ex.len() != self.arity {
                return Err(Error::Invalid("exponent vector of wrong length".into()));
            }
            for k in 0..self.arity.saturating_sub(1) {
                let mut sw = ex.clone();
                sw.swap(k, k + 1);
                if &self.terms.coeff(&sw) != c {
                    return Err(Error::Invalid("polynomial is not symmetric".into()));
                }
            }
        }
        Ok(())
    }
}

/// Wedge image of a tensor-form relation.
pub fn rel_to_wedge(r: &Rel) -> WedgeVec {
    r.iter().map(|((x, y), c)| (vec![*x, *y], c.clone())).collect()
}

#[cfg(test)]
mod tests;
