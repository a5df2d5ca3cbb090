//! q-integers, q-factorials and Gaussian binomials.

use super::ratq::RatQ;
use num_bigint::BigInt;

/// `[n]_i = (q_i^n - q_i^-n) / (q_i - q_i^-1)` with `q_i = q^scale`.
pub fn qint(n: i64, scale: i64) -> RatQ {
    if n == 0 {
        return RatQ::zero();
    }
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    let mut acc = RatQ::zero();
    for j in 0..m {
        let e = (m - 1 - 2 * j) * scale;
        acc = &acc + &RatQ::q_pow(e);
    }
    acc.scale_int(sign)
}

pub fn qfact(n: i64, scale: i64) -> RatQ {
    let mut acc = RatQ::one();
    for k in 1..=n {
        acc = &acc * &qint(k, scale);
    }
    acc
}

/// Gaussian binomial; zero unless `m >= n >= 0`.
pub fn qbinom(m: i64, n: i64) -> RatQ {
    qbinom_scaled(m, n, 1)
}

pub fn qbinom_scaled(m: i64, n: i64, scale: i64) -> RatQ {
    if !(m >= n && n >= 0) {
        return RatQ::zero();
    }
    let mut num = RatQ::one();
    for k in 0..n {
        num = &num * &qint(m - k, scale);
    }
    &num / &qfact(n, scale)
}

/// `sum_j (-eta)^j [n choose j]`.
pub fn alternating_qbinom_sum(n: i64, eta: &RatQ) -> RatQ {
    let mut acc = RatQ::zero();
    let mut p = RatQ::one();
    let meta = -eta;
    for j in 0..=n {
        acc = &acc + &(&p * &qbinom(n, j));
        p = &p * &meta;
    }
    acc
}

/// `prod_{i=0}^{n-1} (q^(n-1-2i) - eta)`.
pub fn alternating_qbinom_product(n: i64, eta: &RatQ) -> RatQ {
    let mut acc = RatQ::one();
    for i in 0..n {
        acc = &acc * &(&RatQ::q_pow(n - 1 - 2 * i) - eta);
    }
    acc
}

/// Integer binomial, used by combinatorial counts.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_recurrence() {
        for m in 1..7 {
            for n in 0..=m {
                let lhs = qbinom(m, n);
                let rhs = &(&RatQ::q_pow(n) * &qbinom(m - 1, n)) + &(&RatQ::q_pow(n - m) * &qbinom(m - 1, n - 1));
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn degenerate_binomials() {
        assert!(qbinom(1, 0).is_one());
        assert!(qbinom(1, 1).is_one());
        assert!(qbinom(2, 3).is_zero());
        assert!(qbinom(3, -1).is_zero());
    }

    #[test]
    fn qint_two() {
        assert_eq!(qint(2, 1), RatQ::from_terms(&[(1, 1), (-1, 1)]));
        assert_eq!(qint(2, 2), RatQ::from_terms(&[(2, 1), (-2, 1)]));
    }
}
