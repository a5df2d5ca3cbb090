//! Dense integer polynomials in one variable.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Poly = Vec<BigInt>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn is_one(p: &Poly) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub fn one() -> Poly {
    vec![BigInt::one()]
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    trim(&mut out);
    out
}

/// `a + q^s b` for `s >= 0`.
pub fn add_shifted(a: &Poly, b: &Poly, s: usize) -> Poly {
    let n = a.len().max(b.len() + s);
    let mut out: Poly = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i + s] += c;
    }
    trim(&mut out);
    out
}

pub fn neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if is_one(a) {
        return b.clone();
    }
    if is_one(b) {
        return a.clone();
    }
    let mut out: Poly = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &Poly, c: &BigInt) -> Poly {
    let mut out: Poly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub fn content(a: &Poly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn div_scalar(a: &Poly, c: &BigInt) -> Poly {
    a.iter().map(|x| x / c).collect()
}

pub fn primitive(a: &Poly) -> Poly {
    let c = content(a);
    if c.is_zero() || c.is_one() {
        a.clone()
    } else {
        div_scalar(a, &c)
    }
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn prem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            r = div_scalar(&r, &c);
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() {
        return normalize_sign(primitive(b));
    }
    if b.is_empty() {
        return normalize_sign(primitive(a));
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive(a), primitive(b))
    } else {
        (primitive(b), primitive(a))
    };
    while !y.is_empty() {
        if y.len() == 1 {
            return one();
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    normalize_sign(x)
}

fn normalize_sign(mut p: Poly) -> Poly {
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

/// Exact division; panics if `b` does not divide `a` over the integers.
pub fn div_exact(a: &Poly, b: &Poly) -> Poly {
    if is_one(b) {
        return a.clone();
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        assert!(r.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut qt: Poly = vec![BigInt::zero(); r.len() - db];
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &qc * c;
        }
        qt[shift] = qc;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut qt);
    qt
}

/// Number of leading zero coefficients (the q-adic valuation of `p`).
pub fn low_zeros(p: &Poly) -> usize {
    p.iter().take_while(|c| c.is_zero()).count()
}
