//! The closed form `f = f₁/f₂` of the apparent singularity.

use num_traits::{One, Zero};

use crate::e8::{CubicSystem, ParamSet};
use crate::error::{Error, Result};
use crate::Rational;

/// `c · κ^k q^m ∏ a_i^{α_i} ∏ e_i^{β_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: i8,
    pub kappa: u8,
    pub q: u8,
    pub a: [u8; 6],
    pub e: [u8; 9],
}

const fn m(coeff: i8, kappa: u8, q: u8, a: [u8; 6], e: [u8; 9]) -> Monomial {
    Monomial { coeff, kappa, q, a, e }
}

impl Monomial {
    fn eval(&self, p: &ParamSet, a: &[Rational; 6]) -> Rational {
        let mut v = Rational::from_integer(i64::from(self.coeff).into());
        v *= p.kappa.pow(i32::from(self.kappa));
        v *= p.q.pow(i32::from(self.q));
        for (x, &k) in a.iter().zip(&self.a) {
            v *= x.pow(i32::from(k));
        }
        for (x, &k) in p.e.iter().zip(&self.e) {
            v *= x.pow(i32::from(k));
        }
        v
    }
}

/// Which reading of the printed formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FormulaVariant {
    /// `f₁/f₂` exactly as printed.
    AsPrinted,
    /// First monomial of `f₁` with coefficient `+1`, and `f = −f₁/f₂`.
    #[default]
    Corrected,
}

pub fn f1_terms() -> &'static [Monomial] {
    &F1
}

pub fn f2_terms() -> &'static [Monomial] {
    &F2
}

fn sum(terms: &[Monomial], p: &ParamSet, a: &[Rational; 6]) -> Rational {
    terms.iter().map(|t| t.eval(p, a)).fold(Rational::zero(), |s, v| s + v)
}

/// Evaluates `f` from the parameters and all six off-diagonal entries.
pub fn f_closed_form(p: &ParamSet, a: &[Rational; 6], variant: FormulaVariant) -> Result<Rational> {
    let den = sum(&F2, p, a);
    if den.is_zero() {
        return Err(Error::Degenerate("f₂ vanishes".into()));
    }
    let num = sum(&F1, p, a);
    Ok(match variant {
        FormulaVariant::AsPrinted => num / den,
        FormulaVariant::Corrected => {
            let first = F1[0].eval(p, a);
            let two = Rational::one() + Rational::one();
            -(num - two * first) / den
        }
    })
}

/// `f` for a system built from the triangular form.
pub fn f_closed_form_for(sys: &CubicSystem, variant: FormulaVariant) -> Result<Rational> {
    let acc = sys
        .accessory
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("system was not built from accessory parameters".into()))?;
    let a = crate::e8::solved_entries(&sys.params, acc)?;
    f_closed_form(&sys.params, &a, variant)
}

#[rustfmt::skip]
const F1: [Monomial; 71] = [
    m(-1, 2, 0, [2, 0, 3, 0, 0, 2], [2, 3, 3, 0, 0, 0, 0, 3, 3]),
    m(-1, 3, 0, [1, 1, 1, 0, 0, 1], [2, 3, 3, 0, 0, 0, 0, 3, 3]),
    m(1, 2, 0, [1, 1, 2, 0, 0, 2], [1, 3, 3, 0, 0, 0, 0, 3, 3]),
    m(-1, 3, 0, [2, 0, 1, 0, 0, 0], [2, 3, 3, 0, 0, 0, 0, 2, 3]),
    m(1, 2, 0, [2, 0, 2, 0, 0, 1], [1, 3, 3, 0, 0, 0, 0, 2, 3]),
    m(-1, 2, 0, [2, 0, 2, 0, 0, 1], [2, 3, 2, 0, 0, 0, 0, 2, 3]),
    m(-1, 3, 0, [1, 1, 0, 0, 0, 0], [2, 3, 2, 0, 0, 0, 0, 3, 2]),
    m(2, 2, 0, [2, 0, 2, 0, 0, 1], [2, 3, 2, 0, 0, 0, 0, 3, 2]),
    m(2, 2, 0, [1, 1, 1, 0, 0, 1], [1, 3, 2, 0, 0, 0, 0, 3, 2]),
    m(-1, 2, 1, [2, 0, 2, 0, 0, 1], [2, 3, 3, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 0, [2, 0, 1, 0, 0, 0], [1, 3, 2, 0, 0, 0, 0, 2, 2]),
    m(-1, 2, 0, [2, 0, 1, 0, 0, 0], [2, 3, 1, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 1, [2, 0, 1, 0, 0, 0], [2, 3, 2, 0, 0, 0, 0, 1, 2]),
    m(1, 2, 0, [2, 0, 1, 0, 0, 0], [2, 3, 1, 0, 0, 0, 0, 3, 1]),
    m(1, 2, 0, [1, 1, 0, 0, 0, 0], [1, 3, 1, 0, 0, 0, 0, 3, 1]),
    m(-1, 2, 1, [2, 0, 1, 0, 0, 0], [2, 3, 2, 0, 0, 0, 0, 2, 1]),
    m(-2, 2, 0, [1, 1, 2, 0, 0, 2], [2, 2, 3, 0, 0, 0, 0, 3, 3]),
    m(1, 3, 0, [0, 2, 0, 0, 0, 1], [2, 2, 3, 0, 0, 0, 0, 3, 3]),
    m(-1, 2, 0, [0, 2, 1, 0, 0, 2], [1, 2, 3, 0, 0, 0, 0, 3, 3]),
    m(1, 3, 0, [1, 1, 0, 0, 0, 0], [2, 2, 3, 0, 0, 0, 0, 2, 3]),
    m(1, 2, 0, [2, 0, 2, 0, 0, 1], [2, 2, 3, 0, 0, 0, 0, 2, 3]),
    m(2, 2, 0, [1, 1, 1, 0, 0, 1], [2, 2, 2, 0, 0, 0, 0, 2, 3]),
    m(1, 2, 0, [2, 0, 1, 0, 0, 0], [1, 2, 3, 0, 0, 0, 0, 1, 3]),
    m(-1, 1, 1, [1, 1, 0, 0, 0, 0], [1, 2, 1, 0, 0, 0, 0, 2, 0]),
    m(-2, 2, 0, [1, 1, 1, 0, 0, 1], [2, 2, 2, 0, 0, 0, 0, 3, 2]),
    m(-1, 2, 0, [0, 2, 0, 0, 0, 1], [1, 2, 2, 0, 0, 0, 0, 3, 2]),
    m(-1, 1, 1, [2, 0, 1, 0, 0, 0], [1, 2, 2, 0, 0, 0, 0, 0, 2]),
    m(2, 2, 1, [1, 1, 1, 0, 0, 1], [2, 2, 3, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 0, [2, 0, 1, 0, 0, 0], [2, 2, 2, 0, 0, 0, 0, 2, 2]),
    m(-1, 1, 0, [1, 1, 1, 0, 0, 1], [0, 2, 2, 0, 0, 0, 0, 2, 2]),
    m(-2, 1, 0, [2, 0, 2, 0, 0, 1], [1, 2, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 0, [1, 1, 0, 0, 0, 0], [2, 2, 1, 0, 0, 0, 0, 2, 2]),
    m(-1, 1, 0, [1, 1, 1, 0, 0, 1], [1, 2, 1, 0, 0, 0, 0, 2, 2]),
    m(-1, 2, 1, [1, 1, 0, 0, 0, 0], [2, 2, 2, 0, 0, 0, 0, 1, 2]),
    m(-1, 1, 0, [2, 0, 1, 0, 0, 0], [0, 2, 2, 0, 0, 0, 0, 1, 2]),
    m(-1, 1, 1, [1, 1, 1, 0, 0, 1], [1, 2, 2, 0, 0, 0, 0, 1, 2]),
    m(1, 1, 0, [2, 0, 1, 0, 0, 0], [1, 2, 1, 0, 0, 0, 0, 1, 2]),
    m(1, 2, 1, [1, 1, 0, 0, 0, 0], [2, 2, 2, 0, 0, 0, 0, 2, 1]),
    m(-1, 1, 1, [1, 1, 1, 0, 0, 1], [1, 2, 2, 0, 0, 0, 0, 2, 1]),
    m(-1, 1, 0, [1, 1, 0, 0, 0, 0], [1, 2, 0, 0, 0, 0, 0, 2, 1]),
    m(-1, 1, 0, [1, 1, 0, 0, 0, 0], [0, 2, 1, 0, 0, 0, 0, 2, 1]),
    m(-2, 1, 0, [2, 0, 1, 0, 0, 0], [1, 2, 1, 0, 0, 0, 0, 2, 1]),
    m(1, 1, 1, [2, 0, 1, 0, 0, 0], [1, 2, 2, 0, 0, 0, 0, 1, 1]),
    m(1, 1, 1, [1, 1, 0, 0, 0, 0], [1, 2, 1, 0, 0, 0, 0, 1, 1]),
    m(1, 2, 0, [0, 2, 1, 0, 0, 2], [2, 1, 3, 0, 0, 0, 0, 3, 3]),
    m(-2, 2, 0, [1, 1, 1, 0, 0, 1], [2, 1, 3, 0, 0, 0, 0, 2, 3]),
    m(-1, 2, 0, [0, 2, 0, 0, 0, 1], [1, 1, 3, 0, 0, 0, 0, 2, 3]),
    m(-1, 2, 0, [0, 2, 0, 0, 0, 1], [2, 1, 2, 0, 0, 0, 0, 2, 3]),
    m(-1, 2, 0, [1, 1, 0, 0, 0, 0], [1, 1, 3, 0, 0, 0, 0, 1, 3]),
    m(1, 1, 1, [1, 1, 0, 0, 0, 0], [1, 1, 2, 0, 0, 0, 0, 0, 2]),
    m(-1, 2, 1, [0, 2, 0, 0, 0, 1], [2, 1, 3, 0, 0, 0, 0, 2, 2]),
    m(-1, 2, 0, [1, 1, 0, 0, 0, 0], [2, 1, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 1, 0, [0, 2, 0, 0, 0, 1], [0, 1, 2, 0, 0, 0, 0, 2, 2]),
    m(3, 1, 0, [1, 1, 1, 0, 0, 1], [1, 1, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 1, 0, [0, 2, 0, 0, 0, 1], [1, 1, 1, 0, 0, 0, 0, 2, 2]),
    m(1, 1, 0, [1, 1, 0, 0, 0, 0], [0, 1, 2, 0, 0, 0, 0, 1, 2]),
    m(-1, 1, 0, [2, 0, 1, 0, 0, 0], [1, 1, 2, 0, 0, 0, 0, 1, 2]),
    m(1, 1, 1, [0, 2, 0, 0, 0, 1], [1, 1, 2, 0, 0, 0, 0, 1, 2]),
    m(-1, 1, 0, [1, 1, 0, 0, 0, 0], [1, 1, 1, 0, 0, 0, 0, 1, 2]),
    m(1, 0, 1, [1, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 1, 0]),
    m(1, 1, 1, [0, 2, 0, 0, 0, 1], [1, 1, 2, 0, 0, 0, 0, 2, 1]),
    m(1, 1, 0, [1, 1, 0, 0, 0, 0], [1, 1, 1, 0, 0, 0, 0, 2, 1]),
    m(-1, 0, 1, [1, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0, 1]),
    m(-1, 1, 1, [1, 1, 0, 0, 0, 0], [1, 1, 2, 0, 0, 0, 0, 1, 1]),
    m(1, 0, 0, [1, 1, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 1, 1]),
    m(1, 0, 0, [2, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 1, 1]),
    m(-1, 0, 1, [0, 2, 0, 0, 0, 1], [0, 1, 1, 0, 0, 0, 0, 1, 1]),
    m(1, 2, 0, [0, 2, 0, 0, 0, 1], [2, 0, 3, 0, 0, 0, 0, 2, 3]),
    m(-1, 1, 0, [0, 2, 0, 0, 0, 1], [1, 0, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 1, 0, [1, 1, 0, 0, 0, 0], [1, 0, 2, 0, 0, 0, 0, 1, 2]),
    m(-1, 0, 0, [1, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 1, 1]),
];

#[rustfmt::skip]
const F2: [Monomial; 60] = [
    m(1, 3, 0, [2, 0, 2, 0, 0, 1], [2, 3, 3, 0, 0, 0, 0, 3, 3]),
    m(-1, 3, 0, [2, 0, 1, 0, 0, 0], [2, 3, 2, 0, 0, 0, 0, 2, 3]),
    m(1, 3, 0, [2, 0, 1, 0, 0, 0], [2, 3, 2, 0, 0, 0, 0, 3, 2]),
    m(-1, 3, 1, [2, 0, 1, 0, 0, 0], [2, 3, 3, 0, 0, 0, 0, 2, 2]),
    m(-1, 3, 1, [1, 1, 0, 0, 0, 0], [2, 3, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 1, [1, 1, 1, 0, 0, 1], [1, 3, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 1, [2, 0, 1, 0, 0, 0], [1, 3, 2, 0, 0, 0, 0, 1, 2]),
    m(1, 2, 1, [1, 1, 0, 0, 0, 0], [1, 3, 1, 0, 0, 0, 0, 2, 1]),
    m(-2, 3, 0, [1, 1, 1, 0, 0, 1], [2, 2, 3, 0, 0, 0, 0, 3, 3]),
    m(1, 3, 0, [1, 1, 0, 0, 0, 0], [2, 2, 2, 0, 0, 0, 0, 2, 3]),
    m(1, 2, 0, [1, 1, 1, 0, 0, 1], [1, 2, 2, 0, 0, 0, 0, 2, 3]),
    m(1, 2, 0, [2, 0, 1, 0, 0, 0], [1, 2, 2, 0, 0, 0, 0, 1, 3]),
    m(-1, 1, 1, [1, 1, 0, 0, 0, 0], [1, 2, 0, 0, 0, 0, 0, 2, 0]),
    m(-1, 3, 0, [1, 1, 0, 0, 0, 0], [2, 2, 2, 0, 0, 0, 0, 3, 2]),
    m(1, 2, 0, [1, 1, 1, 0, 0, 1], [1, 2, 2, 0, 0, 0, 0, 3, 2]),
    m(-1, 1, 1, [2, 0, 1, 0, 0, 0], [0, 2, 2, 0, 0, 0, 0, 0, 2]),
    m(1, 3, 1, [1, 1, 0, 0, 0, 0], [2, 2, 3, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 1, [1, 1, 1, 0, 0, 1], [1, 2, 3, 0, 0, 0, 0, 2, 2]),
    m(-1, 1, 1, [0, 2, 1, 0, 0, 2], [0, 2, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 1, [1, 1, 1, 0, 0, 1], [2, 2, 2, 0, 0, 0, 0, 2, 2]),
    m(-1, 1, 1, [1, 1, 2, 0, 0, 2], [1, 2, 2, 0, 0, 0, 0, 2, 2]),
    m(-1, 2, 0, [2, 0, 1, 0, 0, 0], [1, 2, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 1, [0, 2, 0, 0, 0, 1], [1, 2, 2, 0, 0, 0, 0, 2, 2]),
    m(-1, 2, 0, [1, 1, 0, 0, 0, 0], [1, 2, 1, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 1, [2, 0, 1, 0, 0, 0], [1, 2, 3, 0, 0, 0, 0, 1, 2]),
    m(1, 2, 1, [2, 0, 1, 0, 0, 0], [2, 2, 2, 0, 0, 0, 0, 1, 2]),
    m(-2, 1, 1, [1, 1, 1, 0, 0, 1], [0, 2, 2, 0, 0, 0, 0, 1, 2]),
    m(1, 2, 1, [1, 1, 0, 0, 0, 0], [1, 2, 2, 0, 0, 0, 0, 1, 2]),
    m(-1, 1, 1, [2, 0, 2, 0, 0, 1], [1, 2, 2, 0, 0, 0, 0, 1, 2]),
    m(1, 2, 0, [1, 1, 0, 0, 0, 0], [1, 2, 1, 0, 0, 0, 0, 3, 1]),
    m(-1, 2, 1, [1, 1, 0, 0, 0, 0], [1, 2, 2, 0, 0, 0, 0, 2, 1]),
    m(1, 2, 1, [1, 1, 0, 0, 0, 0], [2, 2, 1, 0, 0, 0, 0, 2, 1]),
    m(-1, 1, 1, [0, 2, 0, 0, 0, 1], [0, 2, 1, 0, 0, 0, 0, 2, 1]),
    m(-2, 1, 1, [1, 1, 1, 0, 0, 1], [1, 2, 1, 0, 0, 0, 0, 2, 1]),
    m(-1, 1, 1, [1, 1, 0, 0, 0, 0], [0, 2, 1, 0, 0, 0, 0, 1, 1]),
    m(-1, 1, 1, [2, 0, 1, 0, 0, 0], [1, 2, 1, 0, 0, 0, 0, 1, 1]),
    m(1, 3, 0, [0, 2, 0, 0, 0, 1], [2, 1, 3, 0, 0, 0, 0, 3, 3]),
    m(-1, 2, 0, [0, 2, 0, 0, 0, 1], [1, 1, 2, 0, 0, 0, 0, 2, 3]),
    m(-1, 2, 0, [1, 1, 0, 0, 0, 0], [1, 1, 2, 0, 0, 0, 0, 1, 3]),
    m(-1, 2, 0, [0, 2, 0, 0, 0, 1], [1, 1, 2, 0, 0, 0, 0, 3, 2]),
    m(-1, 1, 1, [2, 0, 1, 0, 0, 0], [1, 1, 2, 0, 0, 0, 0, 0, 2]),
    m(-1, 2, 1, [0, 2, 0, 0, 0, 1], [1, 1, 3, 0, 0, 0, 0, 2, 2]),
    m(-1, 2, 1, [0, 2, 0, 0, 0, 1], [2, 1, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 1, 1, [0, 2, 1, 0, 0, 2], [1, 1, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 2, 0, [1, 1, 0, 0, 0, 0], [1, 1, 2, 0, 0, 0, 0, 2, 2]),
    m(1, 1, 0, [0, 2, 0, 0, 0, 1], [0, 1, 1, 0, 0, 0, 0, 2, 2]),
    m(-1, 2, 1, [1, 1, 0, 0, 0, 0], [1, 1, 3, 0, 0, 0, 0, 1, 2]),
    m(-1, 2, 1, [1, 1, 0, 0, 0, 0], [2, 1, 2, 0, 0, 0, 0, 1, 2]),
    m(1, 1, 0, [1, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 1, 2]),
    m(1, 0, 1, [1, 1, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 1, 0]),
    m(1, 1, 1, [0, 2, 0, 0, 0, 1], [0, 1, 2, 0, 0, 0, 0, 2, 1]),
    m(-1, 1, 0, [1, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 2, 1]),
    m(1, 1, 1, [0, 2, 0, 0, 0, 1], [1, 1, 1, 0, 0, 0, 0, 2, 1]),
    m(1, 0, 1, [2, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0, 0, 0, 1]),
    m(1, 1, 1, [1, 1, 0, 0, 0, 0], [0, 1, 2, 0, 0, 0, 0, 1, 1]),
    m(1, 0, 1, [1, 1, 1, 0, 0, 1], [0, 1, 1, 0, 0, 0, 0, 1, 1]),
    m(1, 1, 1, [1, 1, 0, 0, 0, 0], [1, 0, 2, 0, 0, 0, 0, 0, 2]),
    m(1, 1, 1, [0, 2, 0, 0, 0, 1], [1, 0, 2, 0, 0, 0, 0, 1, 2]),
    m(-1, 0, 1, [1, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0, 1]),
    m(-1, 0, 1, [0, 2, 0, 0, 0, 1], [0, 0, 1, 0, 0, 0, 0, 1, 1]),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcription_counts() {
        assert_eq!(f1_terms().len(), 71);
        assert_eq!(f2_terms().len(), 60);
    }
}
