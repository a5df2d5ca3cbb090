//! Dense exact linear algebra over `Q(q)`.

use crate::coeff::poly::{self, Poly};
use crate::coeff::RatQ;
use num_traits::Zero;
use crate::error::{Error, Result};

/// Solves `A x = b` for square nonsingular `A`.
///
/// Rows are cleared of denominators and eliminated fraction-free (Bareiss)
/// over `Z[q]`; each unknown is then a single quotient by the determinant.
pub fn solve(a: &[Vec<RatQ>], b: &[RatQ]) -> Result<Vec<RatQ>> {
    let n = a.len();
    let mut m: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for (row, bi) in a.iter().zip(b) {
        let mut full = row.clone();
        full.push(bi.clone());
        m.push(clear_row(&full));
    }
    let mut prev = poly::one();
    for k in 0..n {
        let piv = (k..n).find(|&r| !m[r][k].is_empty()).ok_or_else(|| {
            Error::Contradiction(format!("singular {n}x{n} system at column {k}"))
        })?;
        m.swap(k, piv);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = poly::add(&poly::mul(&m[i][j], &m[k][k]), &poly::neg(&poly::mul(&m[i][k], &m[k][j])));
                m[i][j] = poly::div_exact(&t, &prev);
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    // y = det · x is polynomial; back-substitute fraction-free
    let det = prev;
    let mut y: Vec<Poly> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let mut acc = poly::mul(&det, &m[i][n]);
        for j in i + 1..n {
            acc = poly::add(&acc, &poly::neg(&poly::mul(&m[i][j], &y[j])));
        }
        y[i] = poly::div_exact(&acc, &m[i][i]);
    }
    y.into_iter().map(|yi| poly_ratio(yi, &det)).collect()
}

/// Multiplies a row by a common denominator and a power of `q` so every
/// entry is an integer polynomial.
fn clear_row(row: &[RatQ]) -> Vec<Poly> {
    let mut den = poly::one();
    for x in row {
        if !x.is_zero() && !poly::is_one(x.denominator()) {
            let g = poly::gcd(&den, x.denominator());
            den = poly::mul(&den, &poly::div_exact(x.denominator(), &g));
        }
    }
    let low = row.iter().filter(|x| !x.is_zero()).map(|x| x.shift()).min().unwrap_or(0);
    row
        .iter()
        .map(|x| {
            if x.is_zero() {
                return Vec::new();
            }
            let mut p: Poly = vec![Zero::zero(); (x.shift() - low) as usize];
            p.extend(poly::mul(x.numerator(), &poly::div_exact(&den, x.denominator())));
            poly::trim(&mut p);
            p
        })
        .collect()
}

fn poly_ratio(num: Poly, den: &Poly) -> Result<RatQ> {
    RatQ::from_parts(0, num, den.clone())
}

/// Incrementally maintained row-echelon basis of a subspace of `Q(q)^n`.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<RatQ>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, v: &[RatQ]) -> Vec<RatQ> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if *p < v.len() && !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[RatQ]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        let r: Vec<RatQ> = r.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn contains(&self, v: &[RatQ]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Rank of a matrix.
pub fn rank(rows: &[Vec<RatQ>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
