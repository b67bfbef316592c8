//! Dense univariate polynomials over a field.
//!
//! Coefficients are stored in ascending degree order. The vector is either
//! empty (the zero polynomial) or ends with a nonzero coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{ExactDiv, Field};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Polynomial<T> {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, deg: usize) -> Self {
        let mut v = vec![T::zero(); deg + 1];
        v[deg] = c;
        Self::from_coeffs(v)
    }

    /// `a + b x`.
    pub fn linear(a: T, b: T) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    /// The monic linear factor `x - r`.
    pub fn root_factor(r: &T) -> Self {
        Self::linear(-r.clone(), T::one())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `p(c x)`.
    pub fn rescale_arg(&self, c: &T) -> Self {
        let mut pow = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pow.clone());
            pow = pow * c.clone();
        }
        Self::from_coeffs(out)
    }

    /// `p(q(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv()),
            None => self.clone(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc_inv = d.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lc_inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Quotient when `d` divides `self` exactly, otherwise `None`.
    pub fn checked_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &T) -> usize {
        if self.is_zero() {
            return 0;
        }
        let f = Self::root_factor(r);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.checked_div(&f) {
            p = q;
            m += 1;
        }
        m
    }

    /// Product of `(x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a T>) -> Self
    where
        T: 'a,
    {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::root_factor(r))
    }
}

impl<T: Field> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Field> One for Polynomial<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Field> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Field> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Field> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl<T: Field> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<T: Field> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Self) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<T: Field> Neg for Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Field> ExactDiv for Polynomial<T> {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.div_rem(rhs).0
    }
}

impl<T: Field + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::RatPoly;

    fn p(c: &[i64]) -> RatPoly {
        Polynomial::from_coeffs(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn division_with_remainder() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2]));
        assert_eq!(q, Polynomial::from_coeffs(vec![int(0), rat(1, 2)]));
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 3]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[3]).gcd(&p(&[0, 1])), p(&[1]));
    }

    #[test]
    fn rescale_and_compose() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.rescale_arg(&int(2)), p(&[1, 4, 12]));
        assert_eq!(f.compose(&p(&[1, 1])), p(&[6, 8, 3]));
        assert_eq!(f.eval(&int(2)), int(17));
    }

    #[test]
    fn multiplicity() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[4, 1]);
        assert_eq!(f.root_multiplicity(&int(1)), 3);
        assert_eq!(f.root_multiplicity(&int(-4)), 1);
        assert_eq!(f.root_multiplicity(&int(0)), 0);
    }

    #[test]
    fn works_over_floats() {
        let f = Polynomial::<f64>::from_coeffs(vec![-2.0, 0.0, 1.0]);
        assert!((f.eval(&2f64.sqrt())).abs() < 1e-12);
        assert_eq!(f.derivative().coeffs(), &[0.0, 2.0]);
    }
}
