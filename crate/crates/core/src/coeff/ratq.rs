//! Exact elements of Q(q).
//!
//! A value is stored as `q^shift * num(q) / den(q)` with integer polynomials
//! `num`, `den` whose constant terms are nonzero. Canonical form: the two are
//! coprime, their contents are coprime and `den(0) > 0`. Two values are equal
//! iff their canonical forms agree, so `==` and hashing are structural.

use super::poly::{self, Poly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatQ {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl RatQ {
    pub fn zero() -> Self {
        RatQ { shift: 0, num: Vec::new(), den: poly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    /// `c q^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatQ { shift: e, num: vec![c], den: poly::one() }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalize(0, vec![r.numer().clone()], vec![r.denom().clone()])
    }

    /// Laurent polynomial `sum c_i q^(low+i)`.
    pub fn laurent(low: i64, coeffs: &[i64]) -> Self {
        let num: Poly = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Self::normalize(low, num, poly::one())
    }

    /// Laurent polynomial from (exponent, coefficient) pairs.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut acc = Self::zero();
        for &(e, c) in terms {
            acc = &acc + &Self::monomial(BigInt::from(c), e);
        }
        acc
    }

    /// Builds `q^shift * num / den` and reduces it.
    pub fn from_parts(shift: i64, num: Poly, den: Poly) -> Result<Self> {
        let mut d = den;
        poly::trim(&mut d);
        if d.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let k = poly::low_zeros(&d);
        let d: Poly = d[k..].to_vec();
        Ok(Self::normalize(shift - k as i64, num, d))
    }

    fn normalize(mut shift: i64, mut num: Poly, mut den: Poly) -> Self {
        poly::trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        let k = poly::low_zeros(&num);
        if k > 0 {
            num.drain(..k);
            shift += k as i64;
        }
        poly::trim(&mut den);
        debug_assert!(!den.is_empty() && !den[0].is_zero());
        if den.len() > 1 {
            let g = poly::gcd(&num, &den);
            if g.len() > 1 {
                num = poly::div_exact(&num, &g);
                den = poly::div_exact(&den, &g);
            }
        }
        let c = poly::content(&num).gcd(&poly::content(&den));
        if !c.is_one() {
            num = poly::div_scalar(&num, &c);
            den = poly::div_scalar(&den, &c);
        }
        if den[0].is_negative() {
            num = poly::neg(&num);
            den = poly::neg(&den);
        }
        RatQ { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && poly::is_one(&self.num) && poly::is_one(&self.den)
    }

    /// True when the denominator is 1, i.e. the value is in Z[q, q^-1].
    pub fn is_laurent(&self) -> bool {
        poly::is_one(&self.den)
    }

    /// q-adic valuation; `None` for zero.
    pub fn val(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.shift)
        }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Value at q = 0 when there is no pole there.
    pub fn at_zero(&self) -> Option<BigRational> {
        match self.val() {
            None => Some(BigRational::zero()),
            Some(v) if v > 0 => Some(BigRational::zero()),
            Some(0) => Some(BigRational::new(self.num[0].clone(), self.den[0].clone())),
            Some(_) => None,
        }
    }

    /// Laurent coefficients as (exponent, coefficient); requires den = 1.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        if !self.is_laurent() {
            return None;
        }
        Some(
            self.num
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.shift + i as i64, c.clone()))
                .collect(),
        )
    }

    /// Highest q-exponent of a Laurent value.
    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.shift + self.num.len() as i64 - 1)
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(-self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(
            self.shift - o.shift,
            poly::mul(&self.num, &o.den),
            poly::mul(&self.den, &o.num),
        ))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self * &Self::from_int(c)
    }

    /// Substitutes `q -> q^k` for k >= 1.
    pub fn subs_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let spread = |p: &Poly| -> Poly {
            let mut out: Poly = vec![BigInt::zero(); (p.len() - 1) * k + 1];
            for (i, c) in p.iter().enumerate() {
                out[i * k] = c.clone();
            }
            out
        };
        Self::normalize(self.shift * k as i64, spread(&self.num), spread(&self.den))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        let ev = |p: &Poly| -> BigRational {
            let mut acc = BigRational::zero();
            for c in p.iter().rev() {
                acc = acc * q + BigRational::from_integer(c.clone());
            }
            acc
        };
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let d = ev(&self.den);
        if d.is_zero() || q.is_zero() && self.shift < 0 {
            return Err(Error::Pole);
        }
        let qs = if self.shift >= 0 {
            pow_rat(q, self.shift as u64)
        } else {
            pow_rat(q, (-self.shift) as u64).recip()
        };
        Ok(ev(&self.num) / d * qs)
    }

    /// Coefficient of `q^e` in a Laurent value.
    pub fn coeff_of(&self, e: i64) -> BigInt {
        assert!(self.is_laurent());
        let i = e - self.shift;
        if i < 0 || i as usize >= self.num.len() {
            BigInt::zero()
        } else {
            self.num[i as usize].clone()
        }
    }
}

fn pow_rat(q: &BigRational, e: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= q;
    }
    acc
}

impl Default for RatQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a RatQ> for &'a RatQ {
    type Output = RatQ;
    fn add(self, o: &RatQ) -> RatQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let sa = (self.shift - m) as usize;
        let sb = (o.shift - m) as usize;
        if self.den == o.den {
            let a = shifted(&self.num, sa);
            let num = poly::add_shifted(&a, &o.num, sb);
            return RatQ::normalize(m, num, self.den.clone());
        }
        let a = shifted(&poly::mul(&self.num, &o.den), sa);
        let b = poly::mul(&o.num, &self.den);
        let num = poly::add_shifted(&a, &b, sb);
        RatQ::normalize(m, num, poly::mul(&self.den, &o.den))
    }
}

fn shifted(p: &Poly, s: usize) -> Poly {
    if s == 0 {
        return p.clone();
    }
    let mut out: Poly = vec![BigInt::zero(); s];
    out.extend(p.iter().cloned());
    out
}

impl<'a> Sub<&'a RatQ> for &'a RatQ {
    type Output = RatQ;
    fn sub(self, o: &RatQ) -> RatQ {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatQ> for &'a RatQ {
    type Output = RatQ;
    fn mul(self, o: &RatQ) -> RatQ {
        if self.is_zero() || o.is_zero() {
            return RatQ::zero();
        }
        if poly::is_one(&self.den) && poly::is_one(&o.den) {
            return RatQ { shift: self.shift + o.shift, num: poly::mul(&self.num, &o.num), den: poly::one() };
        }
        RatQ::normalize(
            self.shift + o.shift,
            poly::mul(&self.num, &o.num),
            poly::mul(&self.den, &o.den),
        )
    }
}

impl<'a> Div<&'a RatQ> for &'a RatQ {
    type Output = RatQ;
    fn div(self, o: &RatQ) -> RatQ {
        self.checked_div(o).expect("division by zero in Q(q)")
    }
}

impl Neg for &RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        RatQ { shift: self.shift, num: poly::neg(&self.num), den: self.den.clone() }
    }
}

impl Neg for RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<RatQ> for RatQ {
            type Output = RatQ;
            fn $f(self, o: RatQ) -> RatQ {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a RatQ> for RatQ {
            type Output = RatQ;
            fn $f(self, o: &RatQ) -> RatQ {
                (&self).$f(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

fn fmt_poly(p: &Poly, shift: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = shift + i as i64;
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = a.is_one();
        match e {
            0 => write!(f, "{}", a)?,
            _ => {
                if !unit {
                    write!(f, "{}*", a)?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", e)?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            return fmt_poly(&self.num, self.shift, f);
        }
        write!(f, "(")?;
        fmt_poly(&self.num, self.shift, f)?;
        write!(f, ")/(")?;
        fmt_poly(&self.den, 0, f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Serialize, Deserialize)]
struct RatQWire {
    num: Vec<(i64, BigIntStr, BigIntStr)>,
    den: Vec<(i64, BigIntStr, BigIntStr)>,
}

/// Integers travel as JSON numbers when they fit in i64, else as strings.
#[derive(Clone)]
struct BigIntStr(BigInt);

impl Serialize for BigIntStr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigIntStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(v) => Ok(BigIntStr(BigInt::from(v))),
            Raw::S(s) => s.parse().map(BigIntStr).map_err(serde::de::Error::custom),
        }
    }
}

fn wire_terms(p: &Poly, shift: i64) -> Vec<(i64, BigIntStr, BigIntStr)> {
    p.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (shift + i as i64, BigIntStr(c.clone()), BigIntStr(BigInt::one())))
        .collect()
}

/// Reads an exponent map with rational coefficients into (shift, integer poly).
fn from_wire_terms(t: &[(i64, BigIntStr, BigIntStr)]) -> std::result::Result<(i64, Poly, BigInt), String> {
    if t.is_empty() {
        return Ok((0, Vec::new(), BigInt::one()));
    }
    let lo = t.iter().map(|x| x.0).min().unwrap();
    let hi = t.iter().map(|x| x.0).max().unwrap();
    let mut l = BigInt::one();
    for (_, _, d) in t {
        if d.0.is_zero() {
            return Err("zero denominator in coefficient".into());
        }
        l = l.lcm(&d.0);
    }
    let mut p: Poly = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, n, d) in t {
        p[(e - lo) as usize] += &n.0 * (&l / &d.0);
    }
    Ok((lo, p, l))
}

impl Serialize for RatQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatQWire { num: wire_terms(&self.num, self.shift), den: wire_terms(&self.den, 0) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RatQWire::deserialize(d)?;
        let (sn, pn, ln) = from_wire_terms(&w.num).map_err(serde::de::Error::custom)?;
        let (sd, pd, ld) = from_wire_terms(&w.den).map_err(serde::de::Error::custom)?;
        if pd.is_empty() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        // num/ln over den/ld
        let pn = poly::scale(&pn, &ld);
        let pd = poly::scale(&pd, &ln);
        RatQ::from_parts(sn - sd, pn, pd).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> RatQ {
        RatQ::q_pow(e)
    }

    #[test]
    fn quantum_two_squared() {
        let two = &q(1) + &q(-1);
        assert_eq!(&two * &two, RatQ::from_terms(&[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn reduces_common_factor() {
        let a = RatQ::from_terms(&[(0, 1), (6, -1)]);
        let b = RatQ::from_terms(&[(0, 1), (4, -1)]);
        let r = &a / &b;
        assert_eq!(r.numerator(), &RatQ::laurent(0, &[1, 0, 1, 0, 1]).num);
        assert_eq!(r.denominator(), &RatQ::laurent(0, &[1, 0, 1]).num);
    }

    #[test]
    fn self_quotient_is_one() {
        let a = RatQ::from_terms(&[(-3, 2), (1, 5)]);
        assert!((&a / &a).is_one());
    }

    #[test]
    fn json_roundtrip() {
        let a = &RatQ::from_terms(&[(-1, 3), (2, -1)]) / &RatQ::from_terms(&[(0, 1), (3, 7)]);
        let s = serde_json::to_string(&a).unwrap();
        let b: RatQ = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_rational_coefficients() {
        let b: RatQ = serde_json::from_str(r#"{"num":[[0,1,2]],"den":[[0,1,1]]}"#).unwrap();
        assert_eq!(&b + &b, RatQ::one());
    }

    #[test]
    fn valuation_and_value_at_zero() {
        let a = &RatQ::from_terms(&[(2, 1)]) / &RatQ::from_terms(&[(0, 1), (1, 1)]);
        assert_eq!(a.val(), Some(2));
        let b = &RatQ::from_terms(&[(0, 3), (1, 1)]) / &RatQ::from_terms(&[(0, 2), (1, 1)]);
        assert_eq!(b.at_zero().unwrap(), BigRational::new(3.into(), 2.into()));
    }
}
