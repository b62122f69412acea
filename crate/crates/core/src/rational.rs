//! The coefficient field: arbitrary-precision signed rationals.
//!
//! All exact computation in this crate runs over `Rational`. Values are kept
//! in canonical form (`gcd(|num|, den) = 1`, `den >= 1`) by the underlying
//! `num` implementation. Serialized form is `"num"` or `"num/den"`, never a
//! float.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n/d` as a rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer shorthand.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"-3"`, `"3/4"`, `"-3/4"`. Whitespace around the string is ignored.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|e| format!("invalid rational {t:?}: {e}"))
}

/// Lossy conversion for the plotting layer.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range big rationals only appear through pathological input;
        // saturate rather than poison the float path with NaN.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `j!` as a big integer.
pub fn factorial(j: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=j {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}
