//! Semi-infinite wedges `u ∧ |p⟩` in `F_m`, the `U'_q(g)` action and bosons.
//!
//! A vector is a combination of finite normally ordered prefixes `u`
//! followed by the ground-state tail starting at `p = m + |u|`. Tails are
//! absorbed maximally: no prefix ends in `b°_{p-1}`.
//!
//! `e_i` and `B_n`, `n > 0`, act by finite sums. `f_i|p⟩` and `B_{-n}|p⟩`
//! are obtained from the fixed-point equation over one period
//! `X = R + W ∧ ψ(X)`, `W = b°_p ∧ … ∧ b°_{p+N-1}`, which is solved exactly
//! on the closure of `R` under `X ↦ W ∧ ψ(X)`.

use crate::coeff::{qfact, RatQ};
use crate::crystal::{Elem, Weight};
use num_rational::Rational64;
use crate::error::{Error, Result};
use crate::linalg;
use crate::lincomb::LinComb;
use crate::wedge::{Engine, Gen, Vaff, Word, WedgeVec};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

mod enumerate;
pub use enumerate::{partitions, Caps, CharTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVec {
    pub m: i64,
    pub terms: WedgeVec,
}

impl FockVec {
    pub fn zero(m: i64) -> FockVec {
        FockVec { m, terms: LinComb::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// `⟨m|v⟩`: the coefficient of the vacuum.
    pub fn vacuum_coeff(&self) -> RatQ {
        self.terms.coeff(&Vec::new())
    }

    pub fn scale(&self, c: &RatQ) -> FockVec {
        FockVec { m: self.m, terms: self.terms.scale(c) }
    }

    pub fn plus(&self, o: &FockVec) -> Result<FockVec> {
        self.same_m(o)?;
        Ok(FockVec { m: self.m, terms: self.terms.plus(&o.terms) })
    }

    pub fn sub(&self, o: &FockVec) -> Result<FockVec> {
        self.same_m(o)?;
        Ok(FockVec { m: self.m, terms: self.terms.sub(&o.terms) })
    }

    fn same_m(&self, o: &FockVec) -> Result<()> {
        if self.m != o.m {
            return Err(Error::Invalid(format!("vectors of F_{} and F_{}", self.m, o.m)));
        }
        Ok(())
    }

    /// If `self = c |m⟩`, returns `c`.
    pub fn vacuum_ratio(&self) -> Option<RatQ> {
        let c = self.vacuum_coeff();
        if self.terms.len() == usize::from(!c.is_zero()) {
            Some(c)
        } else {
            None
        }
    }
}

/// A ground-state sequence `b°_{r+sN} = z^{sc} base[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ground {
    pub base: Vec<Elem>,
    pub shift: i64,
}

impl Ground {
    pub fn period(&self) -> (i64, i64) {
        (self.base.len() as i64, self.shift)
    }

    pub fn at(&self, p: i64) -> Elem {
        let n = self.base.len() as i64;
        self.base[p.rem_euclid(n) as usize].shift(p.div_euclid(n) * self.shift)
    }
}

pub struct Fock {
    pub eng: Engine,
    pub kappa: usize,
    pub period: (i64, i64),
    ground: Ground,
    f_memo: RefCell<HashMap<(usize, i64), FockVec>>,
    b_memo: RefCell<HashMap<(i64, i64), FockVec>>,
}

impl Fock {
    pub fn new(eng: Engine, kappa: usize) -> Result<Fock> {
        let (n, c) = eng.t.period(kappa)?;
        let base = (0..n).map(|p| eng.t.ground(kappa, p)).collect::<Result<Vec<_>>>()?;
        Fock::with_ground(eng, kappa, Ground { base, shift: c })
    }

    /// A Fock space over an arbitrary ground-state sequence; checks
    /// `ε(b°_p) = φ(b°_{p+1})` and a constant positive energy along it.
    pub fn with_ground(eng: Engine, kappa: usize, ground: Ground) -> Result<Fock> {
        let t = &eng.t;
        let n = ground.base.len() as i64;
        if n == 0 {
            return Err(Error::Invalid("empty ground-state period".into()));
        }
        let h0 = t.energy(ground.at(0), ground.at(1));
        for p in 0..n {
            let (a, b) = (ground.at(p), ground.at(p + 1));
            if t.eps_vec(a.j) != t.phi_vec(b.j) || t.energy(a, b) != h0 || h0 <= 0 {
                return Err(Error::Invalid(format!("not a ground-state sequence at {p}: {a} {b}")));
            }
        }
        Ok(Fock { period: ground.period(), eng, kappa, ground, f_memo: RefCell::default(), b_memo: RefCell::default() })
    }

    /// `b°_p`.
    pub fn ground(&self, p: i64) -> Elem {
        self.ground.at(p)
    }

    /// `λ_p`: Λ-part `φ(b°_p)`, δ-part normalized by `λ_0`.
    pub fn lambda(&self, p: i64) -> Weight {
        let t = &self.eng.t;
        let mut d: i64 = 0;
        if p >= 0 {
            for k in 0..p {
                d -= self.ground(k).z;
            }
        } else {
            for k in p..0 {
                d += self.ground(k).z;
            }
        }
        Weight { lam: t.phi_vec(self.ground(p).j), delta: Rational64::from_integer(d) }
    }

    pub fn vacuum(&self, m: i64) -> FockVec {
        FockVec { m, terms: LinComb::basis(Vec::new()) }
    }

    /// Ground-state segment `b°_p … b°_{p+len-1}`.
    pub fn segment(&self, p: i64, len: i64) -> Word {
        (p..p + len).map(|k| self.ground(k)).collect()
    }

    fn canon(&self, m: i64, mut u: Word) -> Word {
        while let Some(&last) = u.last() {
            if last == self.ground(m + u.len() as i64 - 1) {
                u.pop();
            } else {
                break;
            }
        }
        u
    }

    /// Weight of `u ∧ |m+|u|⟩`.
    pub fn term_weight(&self, m: i64, u: &[Elem]) -> Weight {
        let mut w = self.lambda(m + u.len() as i64);
        for b in u {
            w = w.add(&self.eng.t.wt(*b));
        }
        w
    }

    /// Common weight of all terms; `None` for zero.
    pub fn weight(&self, v: &FockVec) -> Result<Option<Weight>> {
        let mut out: Option<Weight> = None;
        for (u, _) in v.terms.iter() {
            let w = self.term_weight(v.m, u);
            match &out {
                None => out = Some(w),
                Some(o) if *o != w => {
                    return Err(Error::Contradiction(format!("inhomogeneous vector: {o} vs {w}")));
                }
                _ => {}
            }
        }
        Ok(out)
    }

    /// Checks normal ordering, the junction with the tail, and canonical absorption.
    pub fn check_canonical(&self, v: &FockVec) -> Result<()> {
        for (u, _) in v.terms.iter() {
            let p = v.m + u.len() as i64;
            let ok = self.eng.is_normal(u)
                && u.last().map_or(true, |&b| self.eng.h(b, self.ground(p)) > 0 && b != self.ground(p - 1));
            if !ok {
                return Err(Error::Contradiction(format!("non-canonical term {u:?} in F_{}", v.m)));
            }
        }
        self.weight(v).map(|_| ())
    }

    /// `w ∧ v` for an arbitrary finite word `w`.
    pub fn wedge_word(&self, w: &[Elem], v: &FockVec) -> FockVec {
        let m = v.m - w.len() as i64;
        let mut terms = LinComb::new();
        for (u, c) in v.terms.iter() {
            let wall = self.ground(v.m + u.len() as i64);
            for (x, d) in self.eng.straighten_onto(w, u, Some(wall)).iter() {
                terms.add_term(self.canon(m, x.clone()), c * d);
            }
        }
        FockVec { m, terms }
    }

    /// `Σ c_w w ∧ v` for a combination of words of one length.
    pub fn wedge_vec(&self, w: &WedgeVec, v: &FockVec) -> Result<FockVec> {
        let mut out: Option<FockVec> = None;
        for (x, c) in w.iter() {
            let r = self.wedge_word(x, v).scale(c);
            out = Some(match out {
                None => r,
                Some(o) => o.plus(&r)?,
            });
        }
        Ok(out.unwrap_or_else(|| FockVec::zero(v.m - 1)))
    }

    pub fn wedge_left(&self, a: &Vaff, v: &FockVec) -> FockVec {
        let mut terms = LinComb::new();
        for (b, c) in a.iter() {
            terms.add_scaled(&self.wedge_word(&[*b], v).terms, c);
        }
        FockVec { m: v.m - 1, terms }
    }

    /// Shift by `s` periods: `b°_{k+N} = z^c b°_k`.
    pub fn psi(&self, v: &FockVec, s: i64) -> FockVec {
        let (n, c) = self.period;
        FockVec {
            m: v.m + s * n,
            terms: v.terms.iter().map(|(u, x)| (u.iter().map(|b| b.shift(s * c)).collect(), x.clone())).collect(),
        }
    }

    /// Each term is `prefix-combination ∧ |p⟩`; `g` maps a prefix word to a
    /// combination of same-length (non-normal) words.
    fn act_prefix(&self, v: &FockVec, mut g: impl FnMut(&Word) -> WedgeVec) -> FockVec {
        let mut terms = LinComb::new();
        for (u, c) in v.terms.iter() {
            let p = v.m + u.len() as i64;
            let tail = self.vacuum(p);
            for (x, d) in g(u).iter() {
                terms.add_scaled(&self.wedge_word(x, &tail).terms, &(c * d));
            }
        }
        FockVec { m: v.m, terms }
    }

    pub fn e_act(&self, i: usize, v: &FockVec) -> FockVec {
        self.act_prefix(v, |u| self.eng.tensor_act_word(Gen::E(i), u))
    }

    /// `t_i^s`.
    pub fn t_act(&self, i: usize, s: i64, v: &FockVec) -> FockVec {
        let t = &self.eng.t;
        let terms = v
            .terms
            .iter()
            .map(|(u, c)| {
                let h = self.term_weight(v.m, u).pairing(i);
                (u.clone(), c * &RatQ::q_pow(s * t.qscale(i) * h))
            })
            .collect();
        FockVec { m: v.m, terms }
    }

    /// `f_i(u ∧ |p⟩) = f_i u ∧ t_i|p⟩ + u ∧ f_i|p⟩`.
    pub fn f_act(&self, i: usize, v: &FockVec) -> Result<FockVec> {
        let t = &self.eng.t;
        let mut terms = LinComb::new();
        for (u, c) in v.terms.iter() {
            let p = v.m + u.len() as i64;
            let tq = RatQ::q_pow(t.qscale(i) * self.lambda(p).pairing(i));
            let tail = self.vacuum(p);
            for (x, d) in self.eng.tensor_act_word(Gen::F(i), u).iter() {
                terms.add_scaled(&self.wedge_word(x, &tail).terms, &(&(c * d) * &tq));
            }
            let ft = self.f_tail(i, p)?;
            terms.add_scaled(&self.wedge_word(u, &ft).terms, c);
        }
        Ok(FockVec { m: v.m, terms })
    }

    /// `f_i^{(k)} = f_i^k / [k]_i!`.
    pub fn f_divided(&self, i: usize, k: usize, v: &FockVec) -> Result<FockVec> {
        let mut cur = v.clone();
        for _ in 0..k {
            cur = self.f_act(i, &cur)?;
        }
        Ok(cur.scale(&qfact(k as i64, self.eng.t.qscale(i)).inv()?))
    }

    pub fn e_divided(&self, i: usize, k: usize, v: &FockVec) -> Result<FockVec> {
        let mut cur = v.clone();
        for _ in 0..k {
            cur = self.e_act(i, &cur);
        }
        Ok(cur.scale(&qfact(k as i64, self.eng.t.qscale(i)).inv()?))
    }

    pub fn act(&self, g: Gen, v: &FockVec) -> Result<FockVec> {
        Ok(match g {
            Gen::E(i) => self.e_act(i, v),
            Gen::F(i) => self.f_act(i, v)?,
            Gen::T(i, s) => self.t_act(i, s, v),
        })
    }

    /// `B_n(u ∧ |p⟩) = (Σ_slots z^n) u ∧ |p⟩ + u ∧ B_n|p⟩`, the last term
    /// vanishing for `n > 0`.
    pub fn boson_act(&self, n: i64, v: &FockVec) -> Result<FockVec> {
        if n == 0 {
            return Err(Error::Domain("B_0 is not defined".into()));
        }
        let mut out = self.act_prefix(v, |u| slot_power(u, n));
        if n < 0 {
            for (u, c) in v.terms.iter() {
                let p = v.m + u.len() as i64;
                let bt = self.b_tail(n, p)?;
                out.terms.add_scaled(&self.wedge_word(u, &bt).terms, c);
            }
        }
        Ok(out)
    }

    /// `f_i|p⟩`.
    pub fn f_tail(&self, i: usize, p: i64) -> Result<FockVec> {
        let (nn, _) = self.period;
        let (r, s) = (p.rem_euclid(nn), p.div_euclid(nn));
        if let Some(x) = self.f_memo.borrow().get(&(i, r)) {
            return Ok(self.psi(x, s));
        }
        let w = self.segment(r, nn);
        let tq = RatQ::q_pow(self.eng.t.qscale(i) * self.lambda(r + nn).pairing(i));
        let rhs = self.wedge_vec(&self.eng.tensor_act_word(Gen::F(i), &w).scale(&tq), &self.vacuum(r + nn))?;
        let x = self.solve_period(r, &rhs)?;
        self.f_memo.borrow_mut().insert((i, r), x.clone());
        Ok(self.psi(&x, s))
    }

    /// `B_n|p⟩` for `n < 0`.
    pub fn b_tail(&self, n: i64, p: i64) -> Result<FockVec> {
        if n > 0 {
            return Ok(FockVec::zero(p));
        }
        let (nn, _) = self.period;
        let (r, s) = (p.rem_euclid(nn), p.div_euclid(nn));
        if let Some(x) = self.b_memo.borrow().get(&(n, r)) {
            return Ok(self.psi(x, s));
        }
        let w = self.segment(r, nn);
        let rhs = self.wedge_vec(&slot_power(&w, n), &self.vacuum(r + nn))?;
        let x = self.solve_period(r, &rhs)?;
        self.b_memo.borrow_mut().insert((n, r), x.clone());
        Ok(self.psi(&x, s))
    }

    /// The period map `X ↦ b°_r ∧ … ∧ b°_{r+N-1} ∧ ψ(X)` on `F_r`.
    pub fn period_map(&self, x: &FockVec) -> FockVec {
        let (nn, _) = self.period;
        self.wedge_word(&self.segment(x.m, nn), &self.psi(x, 1))
    }

    /// Solves `X = R + period_map(X)` in `F_r`.
    fn solve_period(&self, r: i64, rhs: &FockVec) -> Result<FockVec> {
        let mut index: BTreeMap<Word, usize> = BTreeMap::new();
        let mut basis: Vec<Word> = Vec::new();
        let mut images: Vec<FockVec> = Vec::new();
        for (u, _) in rhs.terms.iter() {
            index.insert(u.clone(), basis.len());
            basis.push(u.clone());
        }
        let mut k = 0;
        while k < basis.len() {
            let img = self.period_map(&FockVec { m: r, terms: LinComb::basis(basis[k].clone()) });
            for (u, _) in img.terms.iter() {
                if !index.contains_key(u) {
                    index.insert(u.clone(), basis.len());
                    basis.push(u.clone());
                }
            }
            images.push(img);
            k += 1;
            if basis.len() > 20_000 {
                return Err(Error::Contradiction("period-map closure does not terminate".into()));
            }
        }
        let d = basis.len();
        let mut a = vec![vec![RatQ::zero(); d]; d];
        for (col, img) in images.iter().enumerate() {
            a[col][col] = RatQ::one();
            for (u, c) in img.terms.iter() {
                let row = index[u];
                a[row][col] = &a[row][col] - c;
            }
        }
        let b: Vec<RatQ> = basis.iter().map(|u| rhs.terms.coeff(u)).collect();
        let x = linalg::solve(&a, &b)?;
        Ok(FockVec { m: r, terms: basis.into_iter().zip(x).collect() })
    }

    /// `γ_n` from `B_n B_{-n}|0⟩ = γ_n|0⟩`.
    pub fn gamma(&self, n: i64) -> Result<RatQ> {
        if n <= 0 {
            return Err(Error::Domain("gamma needs n > 0".into()));
        }
        let c = self.commutator(n, -n, &self.vacuum(0))?;
        c.vacuum_ratio().ok_or_else(|| Error::Contradiction(format!("[B_{n},B_-{n}]|0> is not a multiple of |0>")))
    }

    /// `[B_n, B_{n'}] v`.
    pub fn commutator(&self, n: i64, n2: i64, v: &FockVec) -> Result<FockVec> {
        let a = self.boson_act(n, &self.boson_act(n2, v)?)?;
        let b = self.boson_act(n2, &self.boson_act(n, v)?)?;
        a.sub(&b)
    }

    /// Cached tail solutions.
    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.f_memo.borrow().len(), self.b_memo.borrow().len())
    }
}

/// `Σ_slots z^n` applied to a word.
pub fn slot_power(u: &[Elem], n: i64) -> WedgeVec {
    let mut out = LinComb::new();
    for k in 0..u.len() {
        let mut w = u.to_vec();
        w[k] = w[k].shift(n);
        out.add_term(w, RatQ::one());
    }
    out
}

#[cfg(test)]
mod tests;
