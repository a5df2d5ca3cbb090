//! Normally ordered bases of weight spaces, paths, and the shift decomposition.
//!
//! Sequences are built from the tail leftwards. A canonical prefix that is
//! not empty is never the vacuum of the suffix it starts, so every suffix
//! has depth at least 1; `Caps` bounds the remaining search, and the tests
//! check that enlarging the caps changes nothing.

use super::Fock;
use crate::crystal::{Elem, Weight};
use crate::error::{Error, Result};
use crate::wedge::Word;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_len: usize,
    /// Letters `z^a b` with `|a − z(b°_k)| ≤ z_window` at position `k`.
    pub z_window: i64,
    /// Allowed excess of a suffix depth over the target depth.
    pub slack: i64,
}

impl Caps {
    /// Defaults that were checked to be stable for depth `d`.
    pub fn for_depth(d: i64) -> Caps {
        Caps { max_len: d as usize + 2, z_window: d + 1, slack: 2 }
    }

    pub fn enlarged(self) -> Caps {
        Caps { max_len: self.max_len + 2, z_window: self.z_window + 1, slack: self.slack + 2 }
    }
}

/// Graded counts up to a depth in the principal grading `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharTable {
    pub type_name: String,
    pub kappa: usize,
    pub m: i64,
    pub max_depth: i64,
    /// Normally ordered sequences per depth.
    pub normal: Vec<usize>,
    /// `H ≡ 1` sequences per depth.
    pub paths: Vec<usize>,
    /// `Σ_j paths(d − h j) p(j)`.
    pub product: Vec<usize>,
    /// Each normal sequence splits uniquely and every pair recombines.
    pub bijection_ok: bool,
    /// Tail rigidity: `b_m = b°_m` forces the whole tail.
    pub first_letter_ok: bool,
}

impl CharTable {
    pub fn ok(&self) -> bool {
        self.bijection_ok && self.first_letter_ok && self.normal == self.product
    }
}

impl Fock {
    /// `s(λ_m) − s(μ)`, in units of the grading `l`.
    pub fn depth_of(&self, m: i64, mu: &Weight) -> Result<i64> {
        let t = &self.eng.t;
        let beta = self.lambda(m).sub(mu);
        let c = t.root_coords(&beta).ok_or_else(|| Error::Domain(format!("{mu} is not λ_m minus a root-lattice element")))?;
        Ok(c.iter().sum())
    }

    fn contribution(&self, k: i64, b: Elem) -> i64 {
        let t = &self.eng.t;
        t.grade_l(self.ground(k)) - t.grade_l(b)
    }

    /// Canonical prefixes of depth `≤ max_depth`; `exact_one` restricts to paths.
    pub fn sequences(&self, m: i64, max_depth: i64, caps: Caps, exact_one: bool) -> Vec<(Word, i64)> {
        let mut out = vec![(Vec::new(), 0)];
        let letters: Vec<_> = self.eng.t.letters().to_vec();
        for len in 1..=caps.max_len as i64 {
            let p = m + len;
            let mut rev: Vec<Elem> = Vec::new();
            self.dfs(m, p - 1, self.ground(p), true, 0, max_depth, caps, exact_one, &letters, &mut rev, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        m: i64,
        k: i64,
        next: Elem,
        last: bool,
        acc: i64,
        max_depth: i64,
        caps: Caps,
        exact_one: bool,
        letters: &[crate::crystal::Letter],
        rev: &mut Vec<Elem>,
        out: &mut Vec<(Word, i64)>,
    ) {
        let g = self.ground(k);
        for &j in letters {
            for z in g.z - caps.z_window..=g.z + caps.z_window {
                let b = Elem::new(j, z);
                if last && b == g {
                    continue;
                }
                let hh = self.eng.h(b, next);
                if (exact_one && hh != 1) || hh <= 0 {
                    continue;
                }
                let d = acc + self.contribution(k, b);
                if d < 1 || d > max_depth + caps.slack {
                    continue;
                }
                rev.push(b);
                if k == m {
                    if d <= max_depth {
                        out.push((rev.iter().rev().copied().collect(), d));
                    }
                } else {
                    self.dfs(m, k - 1, b, false, d, max_depth, caps, exact_one, letters, rev, out);
                }
                rev.pop();
            }
        }
    }

    /// Normally ordered basis of `(F_m)_μ`.
    pub fn weight_basis(&self, m: i64, mu: &Weight, caps: Option<Caps>) -> Result<Vec<Word>> {
        let d = self.depth_of(m, mu)?;
        if d < 0 {
            return Ok(Vec::new());
        }
        let caps = caps.unwrap_or_else(|| Caps::for_depth(d));
        Ok(self
            .sequences(m, d, caps, false)
            .into_iter()
            .filter(|(u, dd)| *dd == d && self.term_weight(m, u) == *mu)
            .map(|(u, _)| u)
            .collect())
    }

    /// Splits a normal sequence into an `H ≡ 1` sequence and a partition.
    pub fn shift_decompose(&self, m: i64, u: &[Elem]) -> (Word, Vec<i64>) {
        let p = m + u.len() as i64;
        let mut a = vec![0i64; u.len()];
        let mut acc = 0;
        for k in (0..u.len()).rev() {
            let next = if k + 1 < u.len() { u[k + 1] } else { self.ground(p) };
            acc += self.eng.h(u[k], next) - 1;
            a[k] = acc;
        }
        let path: Word = u.iter().zip(&a).map(|(b, s)| b.shift(*s)).collect();
        let path = self.canon(m, path);
        (path, a.into_iter().filter(|&x| x > 0).collect())
    }

    /// Inverse of [`Fock::shift_decompose`].
    pub fn shift_compose(&self, m: i64, path: &[Elem], parts: &[i64]) -> Word {
        let len = path.len().max(parts.len());
        let mut w: Word = (0..len as i64)
            .map(|k| if (k as usize) < path.len() { path[k as usize] } else { self.ground(m + k) })
            .collect();
        for (k, a) in parts.iter().enumerate() {
            w[k] = w[k].shift(-a);
        }
        self.canon(m, w)
    }

    pub fn character_count(&self, m: i64, max_depth: i64, caps: Option<Caps>) -> CharTable {
        let t = &self.eng.t;
        let h = t.h();
        let caps = caps.unwrap_or_else(|| Caps::for_depth(max_depth));
        let normal = self.sequences(m, max_depth, caps, false);
        let paths = self.sequences(m, max_depth, caps, true);
        let dsz = max_depth as usize + 1;
        let mut nc = vec![0; dsz];
        let mut pc = vec![0; dsz];
        for (_, d) in &normal {
            nc[*d as usize] += 1;
        }
        for (_, d) in &paths {
            pc[*d as usize] += 1;
        }
        let parts_by_size: Vec<Vec<Vec<i64>>> = (0..=max_depth / h).map(partitions).collect();
        let mut product = vec![0; dsz];
        let mut composed: BTreeSet<Word> = BTreeSet::new();
        let mut bij = true;
        for (pth, d) in &paths {
            for (j, ps) in parts_by_size.iter().enumerate() {
                let dd = d + h * j as i64;
                if dd > max_depth {
                    break;
                }
                product[dd as usize] += ps.len();
                for lam in ps {
                    let w = self.shift_compose(m, pth, lam);
                    bij &= self.contribution_total(m, &w) == dd;
                    bij &= composed.insert(w);
                }
            }
        }
        let normal_set: BTreeSet<Word> = normal.iter().map(|(u, _)| u.clone()).collect();
        bij &= normal_set == composed;
        let path_set: BTreeSet<Word> = paths.iter().map(|(u, _)| u.clone()).collect();
        for (u, _) in &normal {
            let (pth, lam) = self.shift_decompose(m, u);
            bij &= path_set.contains(&pth) && self.shift_compose(m, &pth, &lam) == *u;
        }
        let first_letter_ok = normal.iter().all(|(u, _)| u.first() != Some(&self.ground(m)));
        CharTable {
            type_name: t.name(),
            kappa: self.kappa,
            m,
            max_depth,
            normal: nc,
            paths: pc,
            product,
            bijection_ok: bij,
            first_letter_ok,
        }
    }

    fn contribution_total(&self, m: i64, u: &[Elem]) -> i64 {
        u.iter().enumerate().map(|(k, b)| self.contribution(m + k as i64, *b)).sum()
    }
}

/// Partitions of `n` as weakly decreasing part lists.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn rec(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
