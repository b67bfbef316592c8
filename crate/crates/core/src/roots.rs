//! Exact rational roots of rational polynomials.
//!
//! Roots are isolated with a Sturm sequence and exact bisection, then each
//! isolating interval is shrunk below `1/N^2` (where `N` is the leading
//! coefficient of the primitive integer multiple). A rational root must have
//! denominator at most `N`, so it is the simplest rational in such an interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Polynomial;
use crate::{RatPoly, Rational};

/// Rational roots with multiplicities, ascending, plus the remaining factor.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalRoots {
    pub roots: Vec<(Rational, usize)>,
    /// `p / prod (x - r)^m`, which has no rational roots.
    pub cofactor: RatPoly,
}

impl RationalRoots {
    pub fn multiplicity(&self, r: &Rational) -> usize {
        self.roots
            .iter()
            .find(|(x, _)| x == r)
            .map_or(0, |(_, m)| *m)
    }

    pub fn total(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// Scales `p` to a primitive integer polynomial and returns its coefficients.
pub fn primitive_integer_coeffs(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn squarefree_part(p: &RatPoly) -> RatPoly {
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0.monic()
}

fn sturm_sequence(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn sign_variations(seq: &[RatPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in seq {
        let v = s.eval(x);
        let sg = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if sg != 0 {
            if last != 0 && sg != last {
                count += 1;
            }
            last = sg;
        }
    }
    count
}

fn cauchy_bound(p: &RatPoly) -> Rational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / lc.clone())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// Simplest rational (least denominator) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    let c = lo.ceil();
    if &c <= hi {
        // Prefer the integer of least magnitude.
        if c.is_negative() {
            let f = hi.floor();
            return if f.is_negative() { f } else { Rational::zero() };
        }
        return c;
    }
    let fl = lo.floor();
    let inner = simplest_between(
        &(Rational::one() / (hi - &fl)),
        &(Rational::one() / (lo - &fl)),
    );
    fl + Rational::one() / inner
}

/// Isolating intervals `(lo, hi]` for the real roots of a squarefree polynomial,
/// plus any roots hit exactly during bisection.
fn isolate(p: &RatPoly) -> (Vec<(Rational, Rational)>, Vec<Rational>) {
    let seq = sturm_sequence(p);
    let b = cauchy_bound(p);
    let mut stack = vec![(-b.clone(), b)];
    let mut intervals = Vec::new();
    let mut exact = Vec::new();
    let two = Rational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_variations(&seq, &lo) - sign_variations(&seq, &hi);
        match n {
            0 => {}
            1 => intervals.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / two.clone();
                if p.eval(&mid).is_zero() {
                    exact.push(mid.clone());
                }
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    // Roots found exactly are also counted inside an interval (lo, mid]; drop
    // any interval whose right end is such a root.
    intervals.retain(|(_, hi)| !exact.contains(hi));
    (intervals, exact)
}

fn refine_to_rational(p: &RatPoly, mut lo: Rational, mut hi: Rational, width: &Rational) -> Option<Rational> {
    let two = Rational::from_integer(BigInt::from(2));
    if p.eval(&hi).is_zero() {
        return Some(hi);
    }
    let s_hi = p.eval(&hi).is_positive();
    while &(&hi - &lo) >= width {
        let mid = (&lo + &hi) / two.clone();
        let v = p.eval(&mid);
        if v.is_zero() {
            return Some(mid);
        }
        if v.is_positive() != s_hi {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let cand = simplest_between(&lo, &hi);
    p.eval(&cand).is_zero().then_some(cand)
}

/// All rational roots of `p` with multiplicities. Panics on the zero polynomial.
pub fn rational_roots(p: &RatPoly) -> RationalRoots {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut found: Vec<Rational> = Vec::new();
    let mut rest = p.clone();
    // Factor out x first so zero is never an interval endpoint problem.
    if p.coeff(0).is_zero() {
        found.push(Rational::zero());
    }
    let x = RatPoly::x();
    while rest.coeff(0).is_zero() && !rest.is_zero() {
        rest = rest.div_rem(&x).0;
    }
    let sf = squarefree_part(&rest);
    if sf.degree().unwrap_or(0) > 0 {
        let n = primitive_integer_coeffs(&sf)
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
            .abs();
        let width = Rational::new(BigInt::one(), &n * &n);
        let (intervals, exact) = isolate(&sf);
        found.extend(exact);
        for (lo, hi) in intervals {
            if let Some(r) = refine_to_rational(&sf, lo, hi, &width) {
                found.push(r);
            }
        }
    }
    found.sort();
    found.dedup();
    let mut cofactor = p.clone();
    let mut roots = Vec::new();
    for r in found {
        let m = p.root_multiplicity(&r);
        debug_assert!(m > 0);
        cofactor = cofactor.div_rem(&Polynomial::root_factor(&r).pow(m)).0;
        roots.push((r, m));
    }
    RationalRoots { roots, cofactor }
}

/// Number of distinct real roots.
pub fn real_root_count(p: &RatPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let sf = squarefree_part(p);
    let seq = sturm_sequence(&sf);
    let b = cauchy_bound(&sf);
    sign_variations(&seq, &-b.clone()) - sign_variations(&seq, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn from_roots(rs: &[Rational]) -> RatPoly {
        Polynomial::from_roots(rs.iter())
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(2, 5)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-5, 2), &rat(-3, 2)), int(-2));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), int(0));
        assert_eq!(simplest_between(&rat(-7, 10), &rat(-6, 10)), rat(-2, 3));
    }

    #[test]
    fn finds_rational_roots_with_multiplicity() {
        let p = &from_roots(&[rat(1, 3), rat(1, 3), int(-2), rat(7, 5), int(0)])
            * &Polynomial::from_coeffs(vec![int(-2), int(0), int(1)]);
        let rr = rational_roots(&p.scale(&rat(-3, 7)));
        assert_eq!(
            rr.roots,
            vec![(int(-2), 1), (int(0), 1), (rat(1, 3), 2), (rat(7, 5), 1)]
        );
        assert_eq!(rr.cofactor.degree(), Some(2));
        assert_eq!(real_root_count(&p), 6);
    }

    #[test]
    fn huge_coefficients() {
        let big = Rational::new(BigInt::from(10).pow(25) + 7, BigInt::from(10).pow(12) + 1);
        let p = from_roots(&[big.clone(), rat(-1, 1_000_003), big.clone()]);
        let rr = rational_roots(&p);
        assert_eq!(rr.multiplicity(&big), 2);
        assert_eq!(rr.multiplicity(&rat(-1, 1_000_003)), 1);
        assert!(rr.cofactor.is_constant());
    }

    #[test]
    fn irreducible_has_none() {
        let p = Polynomial::from_coeffs(vec![int(1), int(1), int(1)]);
        let rr = rational_roots(&p);
        assert!(rr.roots.is_empty());
        assert_eq!(rr.cofactor, p);
    }
}
