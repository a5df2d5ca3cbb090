//! Exact scalars: Q(q), q-integers, truncated q- and w-series.

pub mod poly;
pub mod qint;
pub mod ratq;
pub mod series;

pub use qint::{qbinom, qbinom_scaled, qfact, qint};
pub use ratq::RatQ;
pub use series::{pochhammer, Mono, QSeries, Ring, WSeries};

/// Shorthand for `q^e`.
pub fn q(e: i64) -> RatQ {
    RatQ::q_pow(e)
}

/// Shorthand for an integer constant.
pub fn c(n: i64) -> RatQ {
    RatQ::from_int(n)
}
