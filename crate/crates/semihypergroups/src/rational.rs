//! Exact rational scalars.
//!
//! Every coefficient in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. No operation
//! anywhere rounds; "equal" always means exactly equal.
//!
//! The canonical text form is `"p/q"`, with a bare `"p"` allowed when the
//! denominator is 1. That is what [`std::fmt::Display`] produces and what
//! [`std::str::FromStr`] accepts, so file formats reuse them directly.

use num::bigint::BigInt;

pub use num::BigRational as Rational;

/// Shorthand for `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The integer `p` as a rational.
pub fn rat_int(p: i64) -> Rational {
    Rational::from(BigInt::from(p))
}

/// Parses the canonical `"p/q"` (or `"p"`) form.
pub fn parse_rational(s: &str) -> Result<Rational, num::rational::ParseRatioError> {
    s.trim().parse()
}

/// Nearest `f64`, for report fields that are explicitly approximate.
pub fn to_f64(x: &Rational) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
