//! Young-diagram model of the level-1 `A⁽²⁾₂ₙ` Fock space.
//!
//! Diagrams in `DP_h` (`h = 2n+1`; a row length may repeat only when it is a
//! multiple of `h`) index the normally ordered wedges through `Y(u) = [−l(u_k)]`.

use crate::coeff::{q, RatQ};
use crate::crystal::{AffineType, Elem, Family};
use crate::error::{Error, Result};
use crate::fock::{Fock, FockVec};
use crate::lincomb::LinComb;
use crate::wedge::{Engine, Gen, Word};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// Rows, weakly decreasing, all positive.
pub type Diagram = Vec<i64>;

pub struct Young {
    pub n: usize,
    pub h: i64,
}

fn rem(y: i64, h: i64) -> i64 {
    y.rem_euclid(h)
}

impl Young {
    pub fn new(n: usize) -> Result<Young> {
        if n == 0 {
            return Err(Error::Domain("rank must be positive".into()));
        }
        Ok(Young { n, h: 2 * n as i64 + 1 })
    }

    pub fn affine_type(&self) -> Result<AffineType> {
        AffineType::new(Family::A2Even, self.n, 1)
    }

    pub fn is_dp(&self, y: &[i64]) -> bool {
        y.iter().all(|&r| r > 0) && y.windows(2).all(|w| w[0] > w[1] || (w[0] == w[1] && w[0] % self.h == 0))
    }

    pub fn check(&self, y: &[i64]) -> Result<()> {
        if self.is_dp(y) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{y:?} is not in DP_{}", self.h)))
        }
    }

    /// All diagrams in `DP_h` with `size` boxes.
    pub fn diagrams(&self, size: i64) -> Vec<Diagram> {
        fn rec(y: &Young, left: i64, max: i64, cur: &mut Diagram, out: &mut Vec<Diagram>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for r in (1..=left.min(max)).rev() {
                if cur.last() == Some(&r) && r % y.h != 0 {
                    continue;
                }
                cur.push(r);
                rec(y, left - r, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, size, size, &mut Vec::new(), &mut out);
        out
    }

    /// `β_i`, signs read in the order written.
    pub fn beta(&self, i: usize, y: i64) -> i64 {
        let (n, h) = (self.n as i64, self.h);
        let r = rem(y, h);
        let i = i as i64;
        if i == 0 {
            if r == rem(n, h) {
                4
            } else if r == rem(-n, h) {
                -4
            } else {
                0
            }
        } else if i == n {
            if r == rem(-1, h) {
                2
            } else if r == rem(1, h) {
                -2
            } else {
                0
            }
        } else if r == rem(-n + i - 1, h) || r == rem(n - i, h) {
            2
        } else if r == rem(-n + i, h) || r == rem(n - i + 1, h) {
            -2
        } else {
            0
        }
    }

    fn alpha(y: &[i64], v: i64) -> i64 {
        y.iter().filter(|&&r| r == v).count() as i64
    }

    fn sum_beta(&self, i: usize, rows: &[i64]) -> i64 {
        rows.iter().map(|&r| self.beta(i, r)).sum()
    }

    fn rep_factor(a: i64) -> RatQ {
        &RatQ::one() - &q(2).scale_int(-1).pow(a)
    }

    pub fn act(&self, g: Gen, y: &[i64]) -> Result<LinComb<Diagram>> {
        self.check(y)?;
        let n = self.n;
        let h = self.h;
        let mut out = LinComb::new();
        let ni = n as i64;
        let bump = |k: usize, d: i64| {
            let mut z = y.to_vec();
            z[k] += d;
            if z[k] == 0 {
                z.pop();
            }
            z
        };
        match g {
            Gen::T(i, s) => {
                let e = self.sum_beta(i, y) + if i == n { 1 } else { 0 };
                out.add_term(y.to_vec(), q(s * e));
            }
            Gen::F(i) => {
                for k in 0..y.len() {
                    let yk = y[k];
                    let free = k == 0 || y[k - 1] != yk + 1;
                    let below = self.sum_beta(i, &y[k + 1..]);
                    if i != n {
                        let ii = i as i64;
                        let hit = rem(yk, h) == rem(ni + ii, h) || rem(yk, h) == rem(ni - ii, h);
                        if hit && free {
                            out.add_term(bump(k, 1), q(below));
                        }
                    } else if rem(yk, h) == h - 1 {
                        out.add_term(bump(k, 1), q(below + 1));
                    } else if rem(yk, h) == 0 && free && (k == 0 || y[k - 1] != yk) {
                        out.add_term(bump(k, 1), &q(below) * &Self::rep_factor(Self::alpha(y, yk)));
                    }
                }
                if i == n && y.last() != Some(&1) {
                    let mut z = y.to_vec();
                    z.push(1);
                    out.add_term(z, RatQ::one());
                }
            }
            Gen::E(i) => {
                for k in 0..y.len() {
                    let yk = y[k];
                    let free = k + 1 == y.len() || y[k + 1] != yk - 1;
                    let above = self.sum_beta(i, &y[..k]);
                    if i != n {
                        let ii = i as i64;
                        let hit = rem(yk, h) == rem(ni + 1 + ii, h) || rem(yk, h) == rem(ni + 1 - ii, h);
                        if hit && free {
                            out.add_term(bump(k, -1), q(-above));
                        }
                    } else if rem(yk, h) == 1 {
                        out.add_term(bump(k, -1), q(-above));
                    } else if rem(yk, h) == 0 && free && (k + 1 == y.len() || y[k + 1] != yk) {
                        out.add_term(bump(k, -1), &q(-above - 1) * &Self::rep_factor(Self::alpha(y, yk)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn act_vec(&self, g: Gen, v: &LinComb<Diagram>) -> Result<LinComb<Diagram>> {
        let mut out = LinComb::new();
        for (y, c) in v.iter() {
            out.add_scaled(&self.act(g, y)?, c);
        }
        Ok(out)
    }

    /// `‖Y‖² = ∏_{y ∈ hZ_{>0}} ∏_{i=1}^{α_Y(y)} (1 − (−q²)^i)`.
    pub fn norm(&self, y: &[i64]) -> RatQ {
        let mut acc = RatQ::one();
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for &r in y {
            *counts.entry(r).or_default() += 1;
        }
        for (r, a) in counts {
            if r % self.h == 0 {
                for i in 1..=a {
                    acc = &acc * &Self::rep_factor(i);
                }
            }
        }
        acc
    }

    pub fn inner(&self, a: &LinComb<Diagram>, b: &LinComb<Diagram>) -> RatQ {
        let mut acc = RatQ::zero();
        for (y, c) in a.iter() {
            let d = b.coeff(y);
            if !d.is_zero() {
                acc = &acc + &(&(c * &d) * &self.norm(y));
            }
        }
        acc
    }

    /// `(f_i X, Y) = (X, q_i e_i t_i Y)` for all `|X| = d`, `|Y| = d+1`, `d < degree`.
    pub fn adjoint_check(&self, i: usize, degree: i64) -> Result<bool> {
        let qi = q(self.affine_type()?.qscale(i));
        for d in 0..degree {
            for x in self.diagrams(d) {
                let fx = self.act(Gen::F(i), &x)?;
                for y in self.diagrams(d + 1) {
                    let ety = self.act_vec(Gen::E(i), &self.act(Gen::T(i, 1), &y)?)?.scale(&qi);
                    if self.inner(&fx, &LinComb::basis(y.clone())) != self.inner(&LinComb::basis(x.clone()), &ety) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// The letter with `−l(b) = y`.
    pub fn letter_of_row(&self, t: &AffineType, y: i64) -> Elem {
        let (h, n) = (self.h, self.n as i64);
        // l(z^a b) = h a + l(b) with l(b) ∈ [−n, n]
        let r = rem(-y + n, h) - n;
        let a = (-y - r) / h;
        let j = t
            .letters()
            .iter()
            .copied()
            .find(|&j| t.grade_l(Elem::new(j, 0)) == r)
            .expect("l(b) runs over [−n, n]");
        Elem::new(j, a)
    }

    pub fn bij_from_wedge(&self, t: &AffineType, u: &[Elem]) -> Result<Diagram> {
        let mut out = Vec::with_capacity(u.len());
        for b in u {
            let plus = b.z <= -1 || (b.z == 0 && b.j <= 0);
            if !plus {
                return Err(Error::Domain(format!("{b:?} is not in V_aff^+")));
            }
            let y = -t.grade_l(*b);
            if y > 0 {
                out.push(y);
            }
        }
        self.check(&out)?;
        Ok(out)
    }

    pub fn wedge_from_diagram(&self, t: &AffineType, y: &[i64]) -> Result<Word> {
        self.check(y)?;
        Ok(y.iter().map(|&r| self.letter_of_row(t, r)).collect())
    }

    pub fn fock(&self) -> Result<Fock> {
        Fock::new(Engine::new(self.affine_type()?), 0)
    }

    pub fn to_diagrams(&self, fk: &Fock, v: &FockVec) -> Result<LinComb<Diagram>> {
        let mut out = LinComb::new();
        for (u, c) in v.terms.iter() {
            out.add_term(self.bij_from_wedge(&fk.eng.t, u)?, c.clone());
        }
        Ok(out)
    }

    /// The Fock action of `g` on `u(Y) ∧ |m⟩`, read back as diagrams.
    pub fn fock_image(&self, fk: &Fock, g: Gen, y: &[i64]) -> Result<LinComb<Diagram>> {
        let u = self.wedge_from_diagram(&fk.eng.t, y)?;
        let v = FockVec { m: 0, terms: LinComb::basis(u) };
        fk.check_canonical(&v)?;
        self.to_diagrams(fk, &fk.act(g, &v)?)
    }

    /// First `(g, Y)` with `|Y| ≤ max_size` where the two actions differ.
    pub fn transport_check(&self, fk: &Fock, max_size: i64) -> Result<Option<TransportFailure>> {
        let n = self.n;
        let gens: Vec<Gen> = (0..=n).flat_map(|i| [Gen::E(i), Gen::F(i), Gen::T(i, 1)]).collect();
        for size in 0..=max_size {
            for y in self.diagrams(size) {
                for &g in &gens {
                    let a = self.act(g, &y)?;
                    let b = self.fock_image(fk, g, &y)?;
                    if a != b {
                        return Ok(Some(TransportFailure { gen: format!("{g:?}"), diagram: y, young: fmt_comb(&a), fock: fmt_comb(&b) }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn boson_image(&self, fk: &Fock, k: i64, y: &[i64]) -> Result<LinComb<Diagram>> {
        let u = self.wedge_from_diagram(&fk.eng.t, y)?;
        let v = FockVec { m: 0, terms: LinComb::basis(u) };
        self.to_diagrams(fk, &fk.boson_act(k, &v)?)
    }

    /// `(B_{−1} X, Y) = (X, B_1 Y)` with `|X| + h = |Y| ≤ max_size`.
    pub fn boson_adjoint_check(&self, fk: &Fock, max_size: i64) -> Result<bool> {
        for d in 0..=max_size - self.h {
            let ys = self.diagrams(d + self.h);
            for x in self.diagrams(d) {
                let bx = self.boson_image(fk, -1, &x)?;
                for y in &ys {
                    let by = self.boson_image(fk, 1, y)?;
                    if self.inner(&bx, &LinComb::basis(y.clone())) != self.inner(&LinComb::basis(x.clone()), &by) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `#DP_h` per size against the normally ordered Fock basis per depth.
    pub fn graded_counts(&self, fk: &Fock, max: i64) -> (Vec<usize>, Vec<usize>) {
        let mut wedge = vec![0; max as usize + 1];
        for (_, d) in fk.sequences(0, max, crate::fock::Caps::for_depth(max), false) {
            wedge[d as usize] += 1;
        }
        let young = (0..=max).map(|d| self.diagrams(d).len()).collect();
        (young, wedge)
    }

    /// At `q = 1` the span of diagrams with a repeated row is stable under `e_i, f_i`.
    pub fn reduced_well_defined(&self, degree: i64) -> Result<bool> {
        let one = num_rational::BigRational::from_integer(1.into());
        for d in 0..=degree {
            for y in self.diagrams(d).into_iter().filter(|y| y.windows(2).any(|w| w[0] == w[1])) {
                for i in 0..=self.n {
                    for g in [Gen::E(i), Gen::F(i)] {
                        for (z, c) in self.act(g, &y)?.iter() {
                            let repeated = z.windows(2).any(|w| w[0] == w[1]);
                            if !repeated && !c.eval(&one)?.is_zero() {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// `dim` of the q→1 reduction per degree: the rank of the Gram form at `q = 1`.
    pub fn reduce_q1(&self, degree: i64) -> Vec<usize> {
        // the Gram matrix is diagonal, so its rank at q=1 counts nonvanishing norms
        (0..=degree)
            .map(|d| {
                self.diagrams(d)
                    .iter()
                    .filter(|y| {
                        let v = self.norm(y).eval(&num_rational::BigRational::from_integer(1.into()));
                        v.map(|x| x != num_rational::BigRational::from_integer(0.into())).unwrap_or(false)
                    })
                    .count()
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransportFailure {
    pub gen: String,
    pub diagram: Diagram,
    pub young: String,
    pub fock: String,
}

pub fn fmt_comb(v: &LinComb<Diagram>) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter().map(|(y, c)| format!("({c}){y:?}")).collect::<Vec<_>>().join(" + ")
}

/// Distinct partitions of `d`.
pub fn distinct_partitions(d: i64) -> usize {
    crate::fock::partitions(d).into_iter().filter(|p| p.windows(2).all(|w| w[0] > w[1])).count()
}

#[cfg(test)]
mod tests;
