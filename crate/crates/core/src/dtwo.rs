//! The vector-representation R-matrix of `D⁽²⁾ₙ₊₁` in the upper global base,
//! its crossing symmetry, and the q-KZ equation for the level-1 two-point
//! function `Ψ(z)`.
//!
//! Everything here is self-contained: the index set, weights and `q^{−φ}` are
//! rebuilt locally and never mixed with the lower-base wedge engine.
//!
//! Entries are computed over any [`Ring`]: exact rationals at sample points,
//! or truncated z-series with coefficients in `Q(q)` for q-KZ.

use crate::coeff::series::{Ring, WSeries};
use crate::coeff::RatQ;
use crate::crystal::{AffineType, Family, PHI};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::collections::HashMap;

/// A sample value as a constant of `Q(q)`.
fn cst(x: &BigRational) -> RatQ {
    RatQ::from_rational(x)
}

/// z-series truncated after `z^T`, coefficients in `Q(q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSer<const T: usize>(pub WSeries<RatQ>);

impl<const T: usize> ZSer<T> {
    pub fn constant(c: RatQ) -> Self {
        ZSer(WSeries::new(vec![c], T))
    }

    /// `c z`.
    pub fn var(c: RatQ) -> Self {
        ZSer(WSeries::new(vec![RatQ::zero(), c], T))
    }
}

impl<const T: usize> Ring for ZSer<T> {
    fn zero() -> Self {
        ZSer(WSeries::new(vec![], T))
    }
    fn one() -> Self {
        ZSer(WSeries::one(T))
    }
    fn add(&self, o: &Self) -> Self {
        ZSer(self.0.add(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        ZSer(self.0.mul(&o.0))
    }
    fn neg(&self) -> Self {
        ZSer(self.0.scale(&RatQ::from_int(-1)))
    }
    fn is_zero(&self) -> bool {
        self.0.coeffs.iter().all(|c| c.is_zero())
    }
    fn div_int(&self, n: i64) -> Self {
        ZSer(self.0.map(|c| c / &RatQ::from_int(n)))
    }
    fn inv(&self) -> Option<Self> {
        self.0.inv().ok().map(ZSer)
    }
    fn mul_int(&self, n: i64) -> Self {
        ZSer(self.0.map(|c| c.scale_int(n)))
    }
}

/// The index set `J` in the total order `1 ≻ 2 ≻ … ≻ n ≻ 0 ≻ −n ≻ … ≻ −1 ≻ φ`.
#[derive(Clone, Debug)]
pub struct Index {
    pub n: usize,
    pub order: Vec<i32>,
    pos: HashMap<i32, usize>,
}

impl Index {
    pub fn new(n: usize) -> Result<Index> {
        if n < 2 {
            return Err(Error::Unsupported(format!("D2 R-matrix needs n ≥ 2, got {n}")));
        }
        let ni = n as i32;
        let mut order: Vec<i32> = (1..=ni).collect();
        order.push(0);
        order.extend((1..=ni).map(|i| -(ni + 1 - i)));
        order.push(PHI);
        let pos = order.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        Ok(Index { n, order, pos })
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn pos(&self, j: i32) -> usize {
        self.pos[&j]
    }

    /// `i ≻ j`.
    pub fn above(&self, i: i32, j: i32) -> bool {
        self.pos(i) < self.pos(j)
    }

    pub fn neg(j: i32) -> i32 {
        if j == PHI {
            PHI
        } else {
            -j
        }
    }

    pub fn bar(&self, j: i32) -> i64 {
        let n = self.n as i64;
        match j {
            0 => n,
            PHI => 2 * n,
            j if j > 0 => j as i64,
            j => 2 * n + 1 + j as i64,
        }
    }

    fn sgn(j: i32) -> i64 {
        if j > 0 {
            1
        } else {
            -1
        }
    }

    /// `(φ, wt v_j)` with `φ = 2Λ_n + 2ρ` on the classical part.
    pub fn phi_pairing(&self, j: i32) -> i64 {
        if j == 0 || j == PHI {
            return 0;
        }
        let t = AffineType::new(Family::D2, self.n, 1).expect("D2 exists for n ≥ 2");
        let n = self.n;
        let f = |i: usize| -> i64 { (i..=n).map(|k| t.norm(k) * if k == n { 2 } else { 1 }).sum() };
        if j > 0 {
            f(j as usize)
        } else {
            -f((-j) as usize)
        }
    }
}

/// Powers of `q` and friends over a ring.
struct Consts<F: Ring> {
    q: F,
    qi: F,
    xi2: F,
    two: F,
}

impl<F: Ring> Consts<F> {
    fn new(n: usize, q: &F) -> Result<Self> {
        let qi = q.inv().ok_or(Error::DivisionByZero)?;
        let two = q.add(&qi);
        let mut c = Consts { q: q.clone(), qi, xi2: F::one(), two };
        c.xi2 = c.qp(4 * n as i64);
        Ok(c)
    }

    fn qp(&self, k: i64) -> F {
        let b = if k >= 0 { &self.q } else { &self.qi };
        let mut acc = F::one();
        for _ in 0..k.abs() {
            acc = acc.mul(b);
        }
        acc
    }

    /// `(−q²)^k`.
    fn mq2(&self, k: i64) -> F {
        let v = self.qp(2 * k);
        if k.rem_euclid(2) == 1 {
            v.neg()
        } else {
            v
        }
    }

    fn s(&self, i: i32, j: i32) -> Option<F> {
        let two_inv = self.two.inv()?;
        let sg = |k: i32| F::from_int(Index::sgn(k));
        Some(match (i, j) {
            (0, PHI) | (PHI, 0) => F::from_int(-1),
            (i, 0) => sg(i).mul(&two_inv).neg(),
            (0, j) => sg(j).mul(&self.two).neg(),
            (i, PHI) => sg(i).mul(&two_inv),
            (PHI, j) => sg(j).mul(&self.two),
            (i, j) => F::from_int(Index::sgn(i) * Index::sgn(j)),
        })
    }
}

fn pw<F: Ring>(x: &F, k: usize) -> F {
    let mut a = F::one();
    for _ in 0..k {
        a = a.mul(x);
    }
    a
}

/// Sparse `d² × d²` matrix; column `b·d + d'` lists the image of `v_b ⊗ v_{d'}`.
#[derive(Clone, Debug)]
pub struct RMat<F: Ring> {
    pub d: usize,
    pub cols: Vec<Vec<(usize, F)>>,
}

impl<F: Ring> RMat<F> {
    fn push(&mut self, row: (usize, usize), col: (usize, usize), c: F) {
        if c.is_zero() {
            return;
        }
        let (r, k) = (row.0 * self.d + row.1, col.0 * self.d + col.1);
        if let Some(e) = self.cols[k].iter_mut().find(|(rr, _)| *rr == r) {
            e.1 = e.1.add(&c);
        } else {
            self.cols[k].push((r, c));
        }
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); v.len()];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, c) in &self.cols[k] {
                out[*r] = out[*r].add(&c.mul(x));
            }
        }
        out
    }

    pub fn dense(&self) -> Vec<Vec<F>> {
        let s = self.d * self.d;
        let mut m = vec![vec![F::zero(); s]; s];
        for (k, col) in self.cols.iter().enumerate() {
            for (r, c) in col {
                m[*r][k] = c.clone();
            }
        }
        m
    }
}

/// `R̄(z)` with `R̄(z) v₁⊗v₁ = v₁⊗v₁`.
///
/// The `a_ij` block carries the common denominator `(1−q⁴z²)(1−ξ²z²)` and
/// the second exchange sum runs over `i ≺ j`.
pub fn build_rbar<F: Ring>(ix: &Index, q: &F, z: &F) -> Result<RMat<F>> {
    let k = Consts::new(ix.n, q)?;
    let d = ix.dim();
    let one = F::one();
    let z2 = z.mul(z);
    let q4 = k.qp(4);
    let d1 = one.sub(&q4.mul(&z2));
    let d2 = one.sub(&k.xi2.mul(&z2));
    let d1i = d1.inv().ok_or(Error::Pole)?;
    let di = d1.mul(&d2).inv().ok_or(Error::Pole)?;
    let mut r = RMat { d, cols: vec![Vec::new(); d * d] };
    let p = |j: i32| ix.pos(j);
    let diag2 = k.qp(2).mul(&one.sub(&z2)).mul(&d1i);
    let exch = one.sub(&q4).mul(&d1i);
    for &i in &ix.order {
        if i != 0 && i != PHI {
            r.push((p(i), p(i)), (p(i), p(i)), one.clone());
        }
        for &j in &ix.order {
            if i != j && i != Index::neg(j) {
                r.push((p(i), p(j)), (p(i), p(j)), diag2.clone());
                let alpha = usize::from(i == PHI || j == PHI);
                let zpow = if ix.above(i, j) { pw(z, alpha) } else { pw(z, 2 - alpha) };
                r.push((p(i), p(j)), (p(j), p(i)), exch.mul(&zpow));
            }
            // a_ij E_ij ⊗ E_{−i,−j}
            let (ni, nj) = (Index::neg(i), Index::neg(j));
            let self_dual = i == ni;
            let a = if i == j {
                let mut a = one.sub(&z2).mul(&q4.sub(&k.xi2.mul(&z2)));
                if self_dual {
                    a = a.add(&one.sub(&k.qp(2)).mul(&k.qp(2).add(&z2)).mul(&d2));
                }
                a
            } else {
                let alpha = usize::from(i == PHI || j == PHI);
                let s = k.s(i, j).ok_or(Error::DivisionByZero)?.mul(&k.mq2(ix.bar(j) - ix.bar(i)));
                let delta = if i == nj { d2.clone() } else { F::zero() };
                let zm = z2.sub(&one);
                let inner = if ix.above(i, j) {
                    pw(z, alpha).mul(&zm).mul(&s).add(&delta)
                } else {
                    k.xi2.mul(&pw(z, 2 - alpha)).mul(&zm).mul(&s).add(&z2.mul(&delta))
                };
                one.sub(&q4).mul(&inner)
            };
            r.push((p(i), p(ni)), (p(j), p(nj)), a.mul(&di));
        }
    }
    Ok(r)
}

/// `w(z)` as a vector on `V ⊗ V`.
pub fn w_vector<F: Ring>(ix: &Index, q: &F, z: &F) -> Result<Vec<F>> {
    let k = Consts::new(ix.n, q)?;
    let d = ix.dim();
    let n = ix.n as i64;
    let z2 = z.mul(z);
    let mut w = vec![F::zero(); d * d];
    let at = |a: i32, b: i32| ix.pos(a) * d + ix.pos(b);
    w[at(0, 0)] = F::one().add(&z2.mul(&k.qp(2)).mul(&k.xi2));
    // sign opposite to the literal formula; the solution is unique
    w[at(PHI, PHI)] = k.q.mul(&k.two).mul(&k.mq2(n)).mul(z).neg();
    for i in 1..=ix.n as i32 {
        let c = k.q.mul(&k.mq2(n - i as i64)).neg();
        w[at(i, -i)] = c.clone();
        w[at(-i, i)] = c.mul(&z2).mul(&k.qp(4 * i as i64 - 2));
    }
    Ok(w)
}

/// `w(z)` with the `v_φ⊗v_φ` sign as tabulated; fails the intertwining identity.
pub fn w_vector_literal<F: Ring>(ix: &Index, q: &F, z: &F) -> Result<Vec<F>> {
    let mut w = w_vector(ix, q, z)?;
    let k = ix.pos(PHI) * ix.dim() + ix.pos(PHI);
    w[k] = w[k].neg();
    Ok(w)
}

/// `(q^{−φ} ⊗ 1) v`.
pub fn apply_phi<F: Ring>(ix: &Index, q: &F, v: &[F]) -> Result<Vec<F>> {
    let k = Consts::new(ix.n, q)?;
    let d = ix.dim();
    Ok(v.iter()
        .enumerate()
        .map(|(idx, x)| x.mul(&k.qp(-ix.phi_pairing(ix.order[idx / d]))))
        .collect())
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `q` itself: every check below is exact in `q` and sampled in `z` only.
fn qs() -> RatQ {
    crate::coeff::q(1)
}

/// `K(z)·R̄(z)` with `K = c(1+q²)(1−q⁴z²)(1−ξ²z²)`, `c ∈ Z` clearing the
/// constant denominators, so all entries are Laurent polynomials in `q`.
/// Identities homogeneous in `R̄` may be checked on these.
pub fn build_cleared(ix: &Index, z: &BigRational) -> Result<RMat<RatQ>> {
    let zq = cst(z);
    let mut r = build_rbar(ix, &qs(), &zq)?;
    let z2 = &zq * &zq;
    let one = RatQ::one();
    let xi2 = crate::coeff::q(4 * ix.n as i64);
    let k = &(&(&one + &crate::coeff::q(2)) * &(&one - &(&crate::coeff::q(4) * &z2))) * &(&one - &(&xi2 * &z2));
    let mut l = num_bigint::BigInt::one();
    for e in r.cols.iter_mut().flatten() {
        e.1 = &e.1 * &k;
        if e.1.denominator().len() != 1 {
            return Err(Error::Contradiction("R̄ entry has a pole outside (1−q⁴z²)(1−ξ²z²)".into()));
        }
        l = num_integer::Integer::lcm(&l, &e.1.denominator()[0]);
    }
    let lq = RatQ::from_bigint(l);
    for e in r.cols.iter_mut().flatten() {
        e.1 = &e.1 * &lq;
    }
    Ok(r)
}

/// `R̄(z) v₁⊗v₁ = v₁⊗v₁`, the `i ≠ ±j` diagonal entry, and `R̄(1) = P`.
pub fn normalization_check(ix: &Index, z: &BigRational) -> Result<bool> {
    let d = ix.dim();
    let zq = cst(z);
    let r = build_rbar(ix, &qs(), &zq)?;
    let v11 = ix.pos(1) * d + ix.pos(1);
    let ok1 = r.cols[v11] == vec![(v11, RatQ::one())];
    let (a, b) = (ix.pos(1), ix.pos(2));
    let z2 = &zq * &zq;
    let want = &(&crate::coeff::q(2) * &(&RatQ::one() - &z2)) / &(&RatQ::one() - &(&crate::coeff::q(4) * &z2));
    let ok2 = r.dense()[a * d + b][a * d + b] == want;
    let r1 = build_rbar(ix, &qs(), &RatQ::one())?;
    let ok3 = (0..d * d).all(|k| r1.cols[k] == vec![((k % d) * d + k / d, RatQ::one())]);
    Ok(ok1 && ok2 && ok3)
}

fn flip(d: usize, v: &[RatQ]) -> Vec<RatQ> {
    (0..d * d).map(|k| v[(k % d) * d + k / d].clone()).collect()
}

/// `R̄(z) R̄₂₁(z⁻¹) = 1`; this is what lets crossing use `R̄⁻¹(z) = R̄₂₁(z⁻¹)`.
pub fn unitarity_check(ix: &Index, z: &BigRational) -> Result<bool> {
    let d = ix.dim();
    let r = build_rbar(ix, &qs(), &cst(z))?;
    let ri = build_rbar(ix, &qs(), &cst(&z.recip()))?;
    for k in 0..d * d {
        let mut e = vec![RatQ::zero(); d * d];
        e[k] = RatQ::one();
        if r.apply(&flip(d, &ri.apply(&flip(d, &e)))) != e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `β(z) = q⁻⁴(1−z²)(1−q^{−4n+4}z²)/((1−q^{−4n}z²)(1−q⁻⁴z²))`.
pub fn beta(n: usize, z: &RatQ) -> Result<RatQ> {
    let one = RatQ::one();
    let z2 = z * z;
    let n = n as i64;
    let q = crate::coeff::q;
    let num = &(&q(-4) * &(&one - &z2)) * &(&one - &(&q(-4 * n + 4) * &z2));
    let den = &(&one - &(&q(-4 * n) * &z2)) * &(&one - &(&q(-4) * &z2));
    num.checked_div(&den).map_err(|_| Error::Pole)
}

/// `C v_j = c_j v*_{−j}` as `(row, col, c_j)`.
fn crossing_c(ix: &Index) -> Vec<(usize, usize, RatQ)> {
    let k = Consts::new(ix.n, &qs()).expect("q is invertible");
    let two_inv = k.two.inv().expect("[2] ≠ 0");
    ix.order
        .iter()
        .map(|&j| {
            let c = match j {
                0 => -&(&k.mq2(ix.bar(0) - 1) * &two_inv),
                PHI => &(&k.mq2(ix.bar(PHI) - 1) * &k.qp(-2 * ix.n as i64)) * &two_inv,
                j => k.mq2(ix.bar(j) - 1).scale_int(Index::sgn(j)),
            };
            (ix.pos(Index::neg(j)), ix.pos(j), c)
        })
        .collect()
}

/// `(R̄⁻¹(z))^{t₁} = β(z) (C⊗1) R̄(zξ⁻¹) (C⊗1)⁻¹`, with `R̄⁻¹(z) = R̄₂₁(z⁻¹)`.
pub fn crossing_check(ix: &Index, z: &BigRational) -> Result<bool> {
    crossing_scaled(ix, z, &RatQ::one())
}

/// Keys are `((a,c),(b,d))` flattened as row and column.
type Entries = HashMap<(usize, usize), RatQ>;

fn crossing_scaled(ix: &Index, z: &BigRational, scale: &RatQ) -> Result<bool> {
    let d = ix.dim();
    let zq = cst(z);
    let ri = build_rbar(ix, &qs(), &zq.inv()?)?;
    let rx = build_rbar(ix, &qs(), &(&zq * &crate::coeff::q(-2 * ix.n as i64)))?;
    let b = &beta(ix.n, &zq)? * scale;
    let mut lhs: Entries = HashMap::new();
    // R̄⁻¹(z)[(b,c),(a,d)] = R̄(1/z)[(c,b),(d,a)], then t₁ swaps a and b
    for (col, entries) in ri.cols.iter().enumerate() {
        let (dd, a) = (col / d, col % d);
        for (row, v) in entries {
            let (c, bb) = (row / d, row % d);
            lhs.insert((a * d + c, bb * d + dd), v.clone());
        }
    }
    // (C⊗1) M (C⊗1)⁻¹ moves M[(j,·),(j',·)] to (−j, −j') scaled by c_j / c_{j'}
    let mut to = vec![(0usize, RatQ::zero()); d];
    for (row, col, c) in crossing_c(ix) {
        to[col] = (row, c);
    }
    let mut rhs: Entries = HashMap::new();
    for (col, entries) in rx.cols.iter().enumerate() {
        let (jb, dd) = (col / d, col % d);
        let (bb, cb) = &to[jb];
        for (row, m) in entries {
            let (ja, c) = (row / d, row % d);
            let (a, ca) = &to[ja];
            rhs.insert((a * d + c, bb * d + dd), &(&(&b * ca) * m) / cb);
        }
    }
    Ok(lhs == rhs)
}

type Sparse3 = HashMap<usize, RatQ>;

fn apply_pair(r: &RMat<RatQ>, v: &Sparse3, slots: (usize, usize)) -> Sparse3 {
    let d = r.d;
    let mut out: Sparse3 = HashMap::new();
    for (&k, x) in v {
        let idx = [k / (d * d), (k / d) % d, k % d];
        let col = idx[slots.0] * d + idx[slots.1];
        for (row, c) in &r.cols[col] {
            let mut o = idx;
            o[slots.0] = row / d;
            o[slots.1] = row % d;
            let key = o[0] * d * d + o[1] * d + o[2];
            let e = out.entry(key).or_insert_with(RatQ::zero);
            *e = &*e + &(c * x);
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// `R₁₂(x) R₁₃(xy) R₂₃(y) = R₂₃(y) R₁₃(xy) R₁₂(x)` on every basis vector of `V⊗³`.
pub fn ybe_check(ix: &Index, x: &BigRational, y: &BigRational) -> Result<bool> {
    let d = ix.dim();
    let r12 = build_cleared(ix, x)?;
    let r13 = build_cleared(ix, &(x * y))?;
    let r23 = build_cleared(ix, y)?;
    for k in 0..d * d * d {
        let v: Sparse3 = [(k, RatQ::one())].into_iter().collect();
        let l = apply_pair(&r12, &apply_pair(&r13, &apply_pair(&r23, &v, (1, 2)), (0, 2)), (0, 1));
        let r = apply_pair(&r23, &apply_pair(&r13, &apply_pair(&r12, &v, (0, 1)), (0, 2)), (1, 2));
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The scalar of the intertwining identity at argument `z`.
fn int_scalar<F: Ring>(k: &Consts<F>, z: &F) -> Result<F> {
    let one = F::one();
    let z2 = z.mul(z);
    let xi4 = k.xi2.mul(&k.xi2);
    let num = one.sub(&k.qp(4).mul(&k.xi2).mul(&z2)).mul(&one.sub(&xi4.mul(&z2)));
    let den = one.sub(&k.qp(8).mul(&xi4).mul(&z2)).mul(&one.sub(&k.qp(4).mul(&xi4).mul(&k.xi2).mul(&z2)));
    Ok(k.qp(2).mul(&num).mul(&den.inv().ok_or(Error::Pole)?))
}

/// `R̄(q²ξ²z)(q^{−φ}⊗1) w(z)` and the tabulated right side.
fn intertwine_sides<F: Ring>(ix: &Index, q: &F, z: &F) -> Result<(Vec<F>, Vec<F>)> {
    let k = Consts::new(ix.n, q)?;
    let sz = k.qp(2).mul(&k.xi2).mul(z);
    let lhs = build_rbar(ix, q, &sz)?.apply(&apply_phi(ix, q, &w_vector(ix, q, z)?)?);
    let c = int_scalar(&k, z)?;
    let rhs = w_vector(ix, q, &sz)?.into_iter().map(|x| x.mul(&c)).collect();
    Ok((lhs, rhs))
}

pub fn intertwine_check(ix: &Index, z: &BigRational) -> Result<bool> {
    let (l, r) = intertwine_sides(ix, &qs(), &cst(z))?;
    Ok(l == r)
}

/// `(a z²; P)_∞ = Σ_m (−a)^m P^{m(m−1)/2} z^{2m} / (P;P)_m`, truncated.
fn poch_z<const T: usize>(a: &RatQ, big_p: &RatQ) -> Result<ZSer<T>> {
    let mut coeffs = vec![RatQ::zero(); T + 1];
    let mut pp = RatQ::one();
    for m in 0..=T / 2 {
        if m > 0 {
            pp = &pp * &(&RatQ::one() - &big_p.pow(m as i64));
        }
        let c = &(&(-a).pow(m as i64) * &big_p.pow((m * m.saturating_sub(1) / 2) as i64)) / &pp;
        coeffs[2 * m] = c;
    }
    Ok(ZSer(WSeries::new(coeffs, T)))
}

/// Residual of `Ψ(pz) = R⁺(pz)(q^{−φ}⊗1)Ψ(z)` with `p = q^{2(h^∨+1)}`, as a
/// truncated z-series per component; `None` when all components vanish.
pub fn qkz_residual<const T: usize>(ix: &Index) -> Result<Option<(usize, ZSer<T>)>> {
    let t = AffineType::new(Family::D2, ix.n, 1)?;
    let n = ix.n as i64;
    let qq = ZSer::<T>::constant(crate::coeff::q(1));
    let xi2 = 4 * n;
    let xi4 = crate::coeff::q(2 * xi2);
    let pexp = 2 * (t.hvee() + 1);
    let z = ZSer::<T>::var(RatQ::one());
    let pz = ZSer::<T>::var(crate::coeff::q(pexp));
    // Ψ(z) = P(z) w(z)
    let prefactor = |scale: i64| -> Result<ZSer<T>> {
        // (a z²; ξ⁴) with z → q^scale z
        let pc = |e: i64| poch_z::<T>(&crate::coeff::q(e + 2 * scale), &xi4);
        let num = pc(4 + 2 * xi2)?.mul(&pc(3 * xi2)?);
        let den = pc(4 + xi2)?.mul(&pc(2 * xi2)?);
        Ok(num.mul(&den.inv().ok_or(Error::NotInvertible)?))
    };
    let psi = |scale: i64, zz: &ZSer<T>| -> Result<Vec<ZSer<T>>> {
        let p = prefactor(scale)?;
        Ok(w_vector(ix, &qq, zz)?.into_iter().map(|c| c.mul(&p)).collect())
    };
    let lhs = psi(pexp, &pz)?;
    // R⁺(x) = q⁻² ρ(x) R̄(x) at x = pz
    let pc = |e: i64| poch_z::<T>(&crate::coeff::q(e + 2 * pexp), &xi4);
    let rho_num = pc(4)?.mul(&pc(xi2)?).mul(&pc(xi2)?).mul(&pc(2 * xi2 - 4)?);
    let rho_den = pc(0)?.mul(&pc(xi2 - 4)?).mul(&pc(xi2 + 4)?).mul(&pc(2 * xi2)?);
    let rho = rho_num.mul(&rho_den.inv().ok_or(Error::NotInvertible)?).mul(&ZSer::constant(crate::coeff::q(-2)));
    let rhs: Vec<ZSer<T>> = build_rbar(ix, &qq, &pz)?
        .apply(&apply_phi(ix, &qq, &psi(0, &z)?)?)
        .into_iter()
        .map(|c| c.mul(&rho))
        .collect();
    for (k, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
        let r = a.sub(b);
        if !r.is_zero() {
            return Ok(Some((k, r)));
        }
    }
    Ok(None)
}

/// `ω/φ` from the wedge model against the closed D⁽²⁾ θ product, both κ.
pub fn theta_consistency(n: usize, tmax: usize, qord: i64) -> Result<bool> {
    let t = AffineType::new(Family::D2, n, 1)?;
    for kappa in 0..2 {
        let tp = crate::twopoint::TwoPoint::new(t.clone(), kappa)?;
        if !tp.theta_closed(tmax, qord)?.agrees(&tp.theta_from_omega(tmax, qord)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Distinct nonzero sample arguments.
pub fn points(k: usize) -> Vec<BigRational> {
    (0..k as i64).map(|j| rat(j + 2, 2 * j + 5)).collect()
}

/// Degree in `z` of each identity after clearing denominators; one more
/// distinct point than this proves it as an identity of rational functions.
///
/// Every entry of `R̄(z)` is `N(z)/((1−q⁴z²)(1−ξ²z²))` with `deg N ≤ 4`;
/// `w(z)` has degree 2 and the scalars `β`, the intertwining factor have
/// numerator and denominator of degree 4.
pub fn degree_bound(check: &str) -> Option<usize> {
    Some(match check {
        "normalization" => 4,
        "unitarity" => 8,
        "crossing" => 12,
        "intertwine" => 10,
        // in each of x and y separately
        "ybe" => 8,
        _ => return None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DtwoReport {
    pub n: usize,
    pub check: String,
    /// "certificate": exact in q at more z points than the degree bound;
    /// "series": exact in q, truncated in z or w.
    pub method: String,
    pub degree_bound: Option<usize>,
    pub points: usize,
    pub ok: bool,
}

/// Runs one named check; `ybe_points` caps the grid side for YBE (None: full).
pub fn run_check(n: usize, check: &str, ybe_points: Option<usize>) -> Result<DtwoReport> {
    let ix = Index::new(n)?;
    let bound = degree_bound(check);
    let mut used = 0;
    let mut ok = true;
    let mut method = "certificate";
    match check {
        "normalization" | "unitarity" | "crossing" | "intertwine" => {
            for z in points(bound.unwrap_or(0) + 1) {
                ok &= match check {
                    "normalization" => normalization_check(&ix, &z)?,
                    "unitarity" => unitarity_check(&ix, &z)?,
                    "crossing" => unitarity_check(&ix, &z)? && crossing_check(&ix, &z)?,
                    _ => intertwine_check(&ix, &z)?,
                };
                used += 1;
            }
        }
        "ybe" => {
            let side = ybe_points.unwrap_or(bound.unwrap_or(0) + 1);
            let ps = points(side);
            for x in &ps {
                for y in &ps {
                    ok &= ybe_check(&ix, x, y)?;
                    used += 1;
                }
            }
            if side <= bound.unwrap_or(0) {
                method = "sampled";
            }
        }
        "qkz" => {
            method = "series";
            ok = qkz_residual::<8>(&ix)?.is_none();
        }
        "theta" => {
            method = "series";
            ok = theta_consistency(n, 6, 20)?;
        }
        other => return Err(Error::Invalid(format!("unknown dtwo check {other}"))),
    }
    Ok(DtwoReport { n, check: check.into(), method: method.into(), degree_bound: bound, points: used, ok })
}

pub const CHECKS: [&str; 7] = ["normalization", "unitarity", "crossing", "ybe", "intertwine", "qkz", "theta"];

#[cfg(test)]
mod tests;
