//! The base relations `C_{i,j}` for every type, as tabulated in tensor form.

use crate::coeff::{q, qbinom, qint, RatQ};
use crate::crystal::{AffineType, Elem, Family, Letter, PHI};
use crate::lincomb::LinComb;
use std::collections::HashMap;

pub type Pair = (Elem, Elem);
pub type Rel = LinComb<Pair>;

fn v(j: Letter, z: i64) -> Elem {
    Elem::new(j, z)
}

fn one_term(c: RatQ, a: Elem, b: Elem) -> Rel {
    Rel::single((a, b), c)
}

/// `(z^a ⊗ z^a) r`.
pub fn shift_rel(r: &Rel, a: i64) -> Rel {
    r.iter().map(|((x, y), c)| ((x.shift(a), y.shift(a)), c.clone())).collect()
}

fn neg_pow(base: &RatQ, e: i64) -> RatQ {
    (-base).pow(e)
}

struct Ortho<'a> {
    t: &'a AffineType,
    s: i64,
    excluded: Vec<Letter>,
}

impl Ortho<'_> {
    fn h(&self, i: Letter, j: Letter) -> i64 {
        self.t.energy_cl(i, j)
    }

    fn generic(&self, i: Letter, j: Letter) -> Rel {
        let h = self.h(i, j);
        let mut r = one_term(RatQ::one(), v(i, 0), v(j, -h));
        r.add_term((v(j, -h), v(i, 0)), q(self.s));
        r
    }

    fn four(&self, i: Letter) -> Rel {
        let h = self.h(i, -i);
        let mut r = one_term(RatQ::one(), v(i, 0), v(-i, -h));
        r.add_term((v(i + 1, 0), v(-i - 1, -h)), q(self.s));
        r.add_term((v(-i - 1, -h), v(i + 1, 0)), q(self.s));
        r.add_term((v(-i, -h), v(i, 0)), q(2 * self.s));
        r
    }

    /// `C̃_{i,j}` outside the per-type special pairs.
    fn tilde(&self, i: Letter, j: Letter) -> Rel {
        if i == j && i != 0 && i != PHI {
            return one_term(RatQ::one(), v(i, 0), v(i, 0));
        }
        if i != PHI && j == -i && i != 0 && !self.excluded.contains(&i) {
            return self.four(i);
        }
        self.generic(i, j)
    }
}

/// `C̃_{0,0}`, shared by the families with a zero letter; `d` is `H(0,0)`.
fn tilde_00(n: Letter, d: i64) -> Rel {
    let q2b = &q(2) * &qint(2, 1);
    let mut r = one_term(RatQ::one(), v(0, 0), v(0, -d));
    r.add_term((v(-n, 0), v(n, -d)), q2b.clone());
    r.add_term((v(n, -d), v(-n, 0)), q2b);
    r.add_term((v(0, -d), v(0, 0)), q(2));
    r
}

fn tilde_n_minus_n_with_zero(n: Letter) -> Rel {
    let mut r = one_term(RatQ::one(), v(n, 0), v(-n, 0));
    r.add_term((v(0, 0), v(0, 0)), q(1));
    r.add_term((v(-n, 0), v(n, 0)), q(4));
    r
}

/// `C̃_{-1,1}` of the B, A2odd and D1 families; `s` is the q-power step.
fn tilde_m11_fork(s: i64) -> Rel {
    let mut r = one_term(RatQ::one(), v(-1, 0), v(1, -2));
    r.add_term((v(-2, -1), v(2, -1)), q(s));
    r.add_term((v(2, -1), v(-2, -1)), q(s));
    r.add_term((v(1, -2), v(-1, 0)), q(2 * s));
    r
}

/// All `C_{i,j}` keyed by the classical pair; each has leading term
/// `v_i ⊗ z^{-H(i,j)} v_j` with coefficient 1.
pub fn build(t: &AffineType) -> HashMap<(Letter, Letter), Rel> {
    let mut out = HashMap::new();
    let ls: Vec<Letter> = t.letters().to_vec();
    let n = t.n as Letter;
    match t.family {
        Family::A1 => {
            for &i in &ls {
                for &j in &ls {
                    let h = t.energy_cl(i, j);
                    let mut r = one_term(RatQ::one(), v(i, 0), v(j, -h));
                    if i != j {
                        r.add_term((v(j, -h), v(i, 0)), q(1));
                    }
                    out.insert((i, j), r);
                }
            }
        }
        Family::A1K => {
            let k = t.k as i64;
            for &i in &ls {
                for &j in &ls {
                    out.insert((i, j), level_k(k, i as i64, j as i64, t.energy_cl(i, j)));
                }
            }
        }
        _ => {
            let (s, excluded): (i64, Vec<Letter>) = match t.family {
                Family::A2Even | Family::B1 => (2, vec![-1, 0, n]),
                Family::A2Odd | Family::D1 => (1, vec![-1, n]),
                Family::D2 => (2, vec![-1, 0, PHI, n]),
                _ => unreachable!(),
            };
            let o = Ortho { t, s, excluded };
            let mut tl: HashMap<(Letter, Letter), Rel> = HashMap::new();
            for &i in &ls {
                for &j in &ls {
                    tl.insert((i, j), o.tilde(i, j));
                }
            }
            match t.family {
                Family::A2Even => {
                    tl.insert((0, 0), tilde_00(n, 1));
                    tl.insert((n, -n), tilde_n_minus_n_with_zero(n));
                    let mut r = one_term(RatQ::one(), v(-1, 0), v(1, -1));
                    r.add_term((v(1, -1), v(-1, 0)), q(4));
                    tl.insert((-1, 1), r);
                }
                Family::B1 => {
                    tl.insert((0, 0), tilde_00(n, 1));
                    tl.insert((n, -n), tilde_n_minus_n_with_zero(n));
                    tl.insert((-1, 1), tilde_m11_fork(2));
                }
                Family::A2Odd => {
                    let mut r = one_term(RatQ::one(), v(n, 0), v(-n, 0));
                    r.add_term((v(-n, 0), v(n, 0)), q(2));
                    tl.insert((n, -n), r);
                    tl.insert((-1, 1), tilde_m11_fork(1));
                }
                Family::D1 => {
                    let mut r = one_term(RatQ::one(), v(n, 0), v(-n, -1));
                    r.add_term((v(1 - n, 0), v(n - 1, -1)), q(1));
                    r.add_term((v(n - 1, -1), v(1 - n, 0)), q(1));
                    r.add_term((v(-n, -1), v(n, 0)), q(2));
                    tl.insert((n, -n), r);
                    tl.insert((-1, 1), tilde_m11_fork(1));
                }
                Family::D2 => {
                    tl.insert((0, 0), tilde_00(n, 2));
                    tl.insert((n, -n), tilde_n_minus_n_with_zero(n));
                    let mut r = one_term(RatQ::one(), v(-1, 0), v(1, -2));
                    r.add_term((v(PHI, -1), v(PHI, -1)), q(1));
                    r.add_term((v(1, -2), v(-1, 0)), q(4));
                    tl.insert((-1, 1), r);
                    let q2b = &q(2) * &qint(2, 1);
                    let mut r = one_term(RatQ::one(), v(PHI, 0), v(PHI, -2));
                    r.add_term((v(1, -1), v(-1, -1)), q2b.clone());
                    r.add_term((v(-1, -1), v(1, -1)), q2b);
                    r.add_term((v(PHI, -2), v(PHI, 0)), q(2));
                    tl.insert((PHI, PHI), r);
                }
                _ => unreachable!(),
            }
            for (key, r) in &tl {
                out.insert(*key, r.clone());
            }
            let step = q(s);
            // C_{i,-i} = Σ_{k=i}^{top} (-q^s)^{k-i} C̃_{k,-k}
            let top = if t.family == Family::D1 { n - 1 } else { n };
            for i in 1..=top {
                let mut r = Rel::new();
                for k in i..=top {
                    r.add_scaled(&tl[&(k, -k)], &neg_pow(&step, (k - i) as i64));
                }
                out.insert((i, -i), r);
            }
            // C_{-j,j} = Σ_{k=lo}^{j} (-q^s)^{j-k} C̃_{-k,k}
            let lo = match t.family {
                Family::A2Even | Family::D2 => 1,
                _ => 2,
            };
            for j in lo..=n {
                let mut r = Rel::new();
                for k in lo..=j {
                    r.add_scaled(&tl[&(-k, k)], &neg_pow(&step, (j - k) as i64));
                }
                out.insert((-j, j), r);
            }
            let q2b = &q(2) * &qint(2, 1);
            match t.family {
                Family::A2Even | Family::B1 | Family::D2 => {
                    let mut r = tl[&(0, 0)].clone();
                    r.add_scaled(&out[&(-n, n)].clone(), &-&q2b);
                    out.insert((0, 0), r);
                }
                _ => {}
            }
            match t.family {
                Family::B1 | Family::A2Odd | Family::D1 => {
                    let mut r = tl[&(-1, 1)].clone();
                    r.add_scaled(&shift_rel(&out[&(2, -2)], -1), &-&step);
                    out.insert((-1, 1), r);
                }
                _ => {}
            }
            if t.family == Family::D1 {
                let mut r = tl[&(n, -n)].clone();
                r.add_scaled(&out[&(1 - n, n - 1)].clone(), &-&q(1));
                out.insert((n, -n), r);
            }
            if t.family == Family::D2 {
                let mut r = tl[&(PHI, PHI)].clone();
                r.add_scaled(&shift_rel(&out[&(1, -1)], -1), &-&q2b);
                out.insert((PHI, PHI), r);
            }
        }
    }
    out
}

/// The explicit level-k relation, summed over `i'+j' = i+j`, `a+b = H(i,j)`.
pub fn level_k(k: i64, i: i64, j: i64, h: i64) -> Rel {
    let s = i + j;
    let mut r = Rel::new();
    for ip in 0..=k {
        let jp = s - ip;
        if !(0..=k).contains(&jp) {
            continue;
        }
        for a in 0..=h {
            let b = h - a;
            let c = if s <= k {
                &q((k - jp) * (ip - b) + (k - ip) * a) * &(&qbinom(jp, a) * &qbinom(ip, b))
            } else {
                &q(ip * (k - jp - b) + jp * a) * &(&qbinom(k - ip, a) * &qbinom(k - jp, b))
            };
            r.add_term((v(ip as Letter, -a), v(jp as Letter, -b)), c);
        }
    }
    r
}
