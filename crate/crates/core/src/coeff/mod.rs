//! Exact coefficients: arbitrary-precision rationals and truncated
//! multivariate power series over them.
//!
//! Every form in the crate stores its coefficients as [`Series`], i.e. the
//! Taylor data of a function on a star-shaped region, truncated at a single
//! total degree `N` shared by the whole problem.

mod multi_index;
mod series;

pub use multi_index::{MultiIndex, MAX_DIM};
pub use series::{variable_names, Series};
pub(crate) use series::fmt_monomial;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `num / den` as a [`Rational`].
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `1 / n!` for small `n`.
pub fn inv_factorial(n: u32) -> Rational {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    Rational::new(BigInt::one(), f)
}

/// Lossy conversion used only by the radius estimator.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else if q.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    })
}

/// Renders `p/q` (or `p` for integers), the literal syntax accepted by the
/// problem-file parser.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`. Decimal literals are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-4/6"), Some(rat(-2, 3)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1.5"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rational(&int(5)), "5");
    }

    #[test]
    fn factorials() {
        assert_eq!(inv_factorial(0), int(1));
        assert_eq!(inv_factorial(4), rat(1, 24));
    }
}
