//! Scalar traits shared by the polynomial and matrix types.
//!
//! The symbolic pipeline runs over [`Rational`](crate::Rational); the same
//! containers also work over `f64`/`f32` for quick numeric experiments.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring element with value semantics.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A field: every nonzero element is invertible.
pub trait Field: Scalar + Div<Output = Self> {
    fn from_i64(v: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

macro_rules! float_field {
    ($($t:ty),*) => {$(
        impl Field for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }
    )*};
}

float_field!(f32, f64);

/// Integral domain with exact division, the requirement for fraction-free
/// (Bareiss) elimination. `div_exact` may assume the quotient exists.
pub trait ExactDiv: Scalar {
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl<T: Field> ExactDiv for T {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.clone() / rhs.clone()
    }
}

/// Shorthand for building rationals in code and tests.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Renders a rational as `"p/q"` (or `"p"` for integers).
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a short decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches('-'), fp);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Nonnegative integer power of a field element (negative exponents invert).
pub fn powi<T: Field>(base: &T, exp: i32) -> T {
    let mut acc = T::one();
    for _ in 0..exp.unsigned_abs() {
        acc = acc * base.clone();
    }
    if exp < 0 {
        acc.inv()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip_text() {
        for s in ["3/4", "-7/2", "5", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(fmt_rational(&r), s);
        }
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn powers() {
        assert_eq!(powi(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(powi(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(powi(&2.0f64, 0), 1.0);
    }
}
