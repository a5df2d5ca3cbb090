//! Truncated q-series and truncated power series in an auxiliary variable w.

use super::ratq::RatQ;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Minimal commutative ring interface used by [`WSeries`].
pub trait Ring: Clone + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn div_int(&self, n: i64) -> Self;
    fn inv(&self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn from_int(n: i64) -> Self {
        Self::one().mul_int(n)
    }
    fn mul_int(&self, n: i64) -> Self {
        let mut acc = Self::zero();
        let (k, neg) = if n < 0 { (-n, true) } else { (n, false) };
        for _ in 0..k {
            acc = acc.add(self);
        }
        if neg {
            acc.neg()
        } else {
            acc
        }
    }
}

impl Ring for RatQ {
    fn zero() -> Self {
        RatQ::zero()
    }
    fn one() -> Self {
        RatQ::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        RatQ::is_zero(self)
    }
    fn div_int(&self, n: i64) -> Self {
        self / &RatQ::from_int(n)
    }
    fn inv(&self) -> Option<Self> {
        RatQ::inv(self).ok()
    }
    fn mul_int(&self, n: i64) -> Self {
        self.scale_int(n)
    }
}

/// A q-series known modulo `q^order` (or exactly when `order` is `None`).
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<i64, BigRational>,
    order: Option<i64>,
}

impl QSeries {
    pub fn exact(terms: BTreeMap<i64, BigRational>) -> Self {
        let mut s = QSeries { terms, order: None };
        s.clean();
        s
    }

    pub fn zero_mod(order: i64) -> Self {
        QSeries { terms: BTreeMap::new(), order: Some(order) }
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut t = BTreeMap::new();
        t.insert(e, c);
        Self::exact(t)
    }

    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn truncate(&self, order: i64) -> Self {
        let o = match self.order {
            Some(x) => x.min(order),
            None => order,
        };
        let terms = self.terms.range(..o).map(|(k, v)| (*k, v.clone())).collect();
        QSeries { terms, order: Some(o) }
    }

    fn clean(&mut self) {
        self.terms.retain(|_, v| !v.is_zero());
        if let Some(o) = self.order {
            self.terms.retain(|k, _| *k < o);
        }
    }

    /// Lowest exponent that may carry a nonzero coefficient.
    fn low(&self) -> Option<i64> {
        match self.terms.keys().next() {
            Some(k) => Some(*k),
            None => self.order,
        }
    }

    /// Equality of the known parts, up to the smaller of the two orders.
    pub fn agrees(&self, o: &Self) -> bool {
        let ord = min_order(self.order, o.order);
        let a = match ord {
            Some(x) => self.truncate(x),
            None => self.clone(),
        };
        let b = match ord {
            Some(x) => o.truncate(x),
            None => o.clone(),
        };
        a.terms == b.terms
    }

    pub fn from_ratq(x: &RatQ, order: i64) -> Self {
        if x.is_zero() {
            return Self::zero_mod(order);
        }
        let need = order - x.shift();
        let mut terms = BTreeMap::new();
        if need <= 0 {
            return QSeries { terms, order: Some(order) };
        }
        let need = need as usize;
        let den = x.denominator();
        let num = x.numerator();
        let d0 = BigRational::from_integer(den[0].clone());
        let mut inv: Vec<BigRational> = Vec::with_capacity(need);
        for k in 0..need {
            let mut acc = if k == 0 { BigRational::one() } else { BigRational::zero() };
            for j in 1..=k.min(den.len() - 1) {
                acc -= BigRational::from_integer(den[j].clone()) * &inv[k - j];
            }
            inv.push(acc / &d0);
        }
        for k in 0..need {
            let mut acc = BigRational::zero();
            for j in 0..=k.min(num.len() - 1) {
                acc += BigRational::from_integer(num[j].clone()) * &inv[k - j];
            }
            if !acc.is_zero() {
                terms.insert(x.shift() + k as i64, acc);
            }
        }
        QSeries { terms, order: Some(order) }
    }

    /// Exact Laurent polynomial with integer coefficients, if finite.
    pub fn from_laurent(x: &RatQ) -> Option<Self> {
        let t = x.laurent_terms()?;
        Some(Self::exact(t.into_iter().map(|(e, c)| (e, BigRational::from_integer(c))).collect()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut s = QSeries {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            order: self.order,
        };
        s.clean();
        s
    }
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

fn add_order(a: Option<i64>, d: Option<i64>) -> Option<i64> {
    match (a, d) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

impl Ring for QSeries {
    fn zero() -> Self {
        QSeries { terms: BTreeMap::new(), order: None }
    }
    fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            *terms.entry(*k).or_insert_with(BigRational::zero) += v;
        }
        let mut s = QSeries { terms, order: min_order(self.order, o.order) };
        s.clean();
        s
    }
    fn mul(&self, o: &Self) -> Self {
        if (self.order.is_none() && self.terms.is_empty()) || (o.order.is_none() && o.terms.is_empty()) {
            return Self::zero();
        }
        let order = min_order(add_order(self.order, o.low()), add_order(o.order, self.low()));
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &o.terms {
                let e = ka + kb;
                if order.is_some_and(|x| e >= x) {
                    break;
                }
                *terms.entry(e).or_insert_with(BigRational::zero) += va * vb;
            }
        }
        let mut s = QSeries { terms, order };
        s.clean();
        s
    }
    fn neg(&self) -> Self {
        QSeries { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(), order: self.order }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn div_int(&self, n: i64) -> Self {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
    }
    fn inv(&self) -> Option<Self> {
        let (&v, c) = self.terms.iter().next()?;
        let cinv = c.recip();
        // x = c q^v (1 + y); only exact monomials invert exactly.
        let Some(ord) = self.order else {
            if self.terms.len() == 1 {
                return Some(Self::monomial(cinv, -v));
            }
            return None;
        };
        let rel = ord - v;
        let mut y: Vec<BigRational> = vec![BigRational::zero(); rel.max(0) as usize];
        for (k, val) in &self.terms {
            let i = (k - v) as usize;
            if i < y.len() {
                y[i] = val * &cinv;
            }
        }
        let mut r: Vec<BigRational> = Vec::with_capacity(y.len());
        for k in 0..y.len() {
            let mut acc = if k == 0 { BigRational::one() } else { BigRational::zero() };
            for j in 1..=k {
                acc -= &y[j] * &r[k - j];
            }
            r.push(acc);
        }
        let terms = r.into_iter().enumerate().map(|(i, x)| (i as i64 - v, x * &cinv)).collect();
        let mut s = QSeries { terms, order: Some(ord - 2 * v) };
        s.clean();
        Some(s)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})q^{}", v, k)?;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(o) = self.order {
            write!(f, " + O(q^{})", o)?;
        }
        Ok(())
    }
}

/// Power series in w truncated after `w^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct WSeries<C: Ring> {
    pub coeffs: Vec<C>,
}

impl<C: Ring> WSeries<C> {
    pub fn new(mut coeffs: Vec<C>, t: usize) -> Self {
        coeffs.resize(t + 1, C::zero());
        WSeries { coeffs }
    }

    pub fn one(t: usize) -> Self {
        Self::new(vec![C::one()], t)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let t = self.order().min(o.order());
        WSeries { coeffs: (0..=t).map(|i| self.coeffs[i].add(&o.coeffs[i])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let t = self.order().min(o.order());
        WSeries { coeffs: (0..=t).map(|i| self.coeffs[i].sub(&o.coeffs[i])).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = self.order().min(o.order());
        let mut out = vec![C::zero(); t + 1];
        for i in 0..=t {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(t - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        WSeries { coeffs: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> WSeries<D> {
        WSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Inverse of a series whose constant term is invertible.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inv().ok_or(Error::NotInvertible)?;
        let t = self.order();
        let mut r: Vec<C> = vec![c0.clone()];
        for k in 1..=t {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&r[k - j]));
            }
            r.push(acc.neg().mul(&c0));
        }
        Ok(WSeries { coeffs: r })
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp needs a zero constant term".into()));
        }
        let t = self.order();
        let mut e: Vec<C> = vec![C::one()];
        for n in 1..=t {
            let mut acc = C::zero();
            for k in 1..=n {
                acc = acc.add(&self.coeffs[k].mul_int(k as i64).mul(&e[n - k]));
            }
            e.push(acc.div_int(n as i64));
        }
        Ok(WSeries { coeffs: e })
    }

    /// log of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        let t = self.order();
        let mut l: Vec<C> = vec![C::zero()];
        for n in 1..=t {
            // n a_n = n s_n - sum_{k=1}^{n-1} k a_k s_{n-k}
            let mut acc = self.coeffs[n].mul_int(n as i64);
            for k in 1..n {
                acc = acc.sub(&l[k].mul_int(k as i64).mul(&self.coeffs[n - k]));
            }
            l.push(acc.div_int(n as i64));
        }
        Ok(WSeries { coeffs: l })
    }
}

impl WSeries<QSeries> {
    pub fn agrees(&self, o: &Self) -> bool {
        let t = self.order().min(o.order());
        (0..=t).all(|i| self.coeffs[i].agrees(&o.coeffs[i]))
    }

    pub fn truncate_q(&self, order: i64) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(|c| c.truncate(order)).collect() }
    }
}

impl WSeries<RatQ> {
    pub fn to_qseries(&self, order: i64) -> WSeries<QSeries> {
        self.map(|c| QSeries::from_ratq(c, order))
    }
}

/// A monomial `coef * q^qexp * w^wexp`.
#[derive(Clone, Debug)]
pub struct Mono {
    pub coef: BigRational,
    pub qexp: i64,
    pub wexp: usize,
}

impl Mono {
    pub fn new(coef: i64, qexp: i64, wexp: usize) -> Self {
        Mono { coef: BigRational::from_integer(coef.into()), qexp, wexp }
    }
}

/// `(a; b)_inf = prod_{k>=0} (1 - a b^k)` to `w^t` and modulo `q^qorder`.
pub fn pochhammer(a: &Mono, b: &Mono, qorder: i64, t: usize) -> Result<WSeries<QSeries>> {
    if b.wexp != 0 || b.qexp <= 0 {
        return Err(Error::Divergent(format!("base q^{} w^{}", b.qexp, b.wexp)));
    }
    if a.wexp == 0 && a.qexp <= 0 {
        return Err(Error::Divergent(format!("argument q^{} w^0", a.qexp)));
    }
    let mut acc: WSeries<QSeries> = WSeries::new(vec![QSeries::one()], t).map(|c| c.truncate(qorder));
    if a.wexp > t {
        return Ok(acc);
    }
    // Lowest q-power any cofactor in the w-truncated product can carry.
    let factors = if a.wexp == 0 { 1 } else { (t / a.wexp).max(1) as i64 };
    let floor = (factors - 1) * a.qexp.min(0);
    let mut k: i64 = 0;
    let mut c = a.coef.clone();
    loop {
        let e = a.qexp + k * b.qexp;
        if e + floor >= qorder {
            break;
        }
        let mut f: Vec<QSeries> = vec![QSeries::one()];
        f.resize(a.wexp + 1, QSeries::zero());
        f[a.wexp] = f[a.wexp].add(&QSeries::monomial(-c.clone(), e));
        let fs = WSeries::new(f, t);
        acc = acc.mul(&fs).truncate_q(qorder);
        k += 1;
        c *= &b.coef;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inverse_of_one_plus_q2() {
        let x = RatQ::from_terms(&[(0, 1), (2, 1)]).inv().unwrap();
        let s = QSeries::from_ratq(&x, 8);
        let want: BTreeMap<i64, BigRational> = [(0, r(1)), (2, r(-1)), (4, r(1)), (6, r(-1))].into_iter().collect();
        assert_eq!(s.terms(), &want);
    }

    #[test]
    fn pochhammer_small_case() {
        let p = pochhammer(&Mono::new(1, 2, 1), &Mono::new(1, 4, 0), 10, 2).unwrap();
        assert!(p.coeffs[0].agrees(&QSeries::one()));
        let w1: BTreeMap<i64, BigRational> = [(2, r(-1)), (6, r(-1))].into_iter().collect();
        assert_eq!(p.coeffs[1].terms(), &w1);
        let w2: BTreeMap<i64, BigRational> = [(8, r(1))].into_iter().collect();
        assert_eq!(p.coeffs[2].terms(), &w2);
    }

    #[test]
    fn exp_log_inverse() {
        let s: WSeries<RatQ> = WSeries::new(vec![RatQ::one(), RatQ::one()], 6);
        let back = s.log().unwrap().exp().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn divergent_base_rejected() {
        assert!(pochhammer(&Mono::new(1, 0, 1), &Mono::new(1, 0, 0), 10, 2).is_err());
    }
}
