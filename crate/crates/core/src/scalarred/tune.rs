use num_traits::Zero;

use super::{apparent_point, ScalarOperator};
use crate::e8::{build_system, CubicSystem, ParamSet};
use crate::error::{Error, Result};
use crate::linalg;
use crate::roots::rational_roots;
use crate::{Matrix, RatPoly, Rational};

/// The parameter varied to reach `f = −e_7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TuneVariable {
    /// Index into `(a_3, a_4, a_5, a_6)`.
    Accessory(usize),
    Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tuned {
    pub system: CubicSystem,
    pub variable: TuneVariable,
    pub value: Rational,
    /// Numerator of `f(t) + e_7` as a polynomial in the tuned variable.
    pub numerator: RatPoly,
}

/// Bi-degree after dividing every `P_j` by `x + e_7`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiDegree {
    pub x_degree: usize,
    pub t_degree: usize,
    pub remainders: Vec<RatPoly>,
}

impl BiDegree {
    pub fn divisible(&self) -> bool {
        self.remainders.iter().all(Zero::is_zero)
    }
}

pub fn autonomize(op: &ScalarOperator, params: &ParamSet) -> BiDegree {
    let factor = RatPoly::linear(params.e[6].clone(), Rational::from_integer(1.into()));
    let (quotients, remainders): (Vec<RatPoly>, Vec<RatPoly>) = op.p.iter().map(|p| p.div_rem(&factor)).unzip();
    BiDegree {
        x_degree: quotients.iter().filter_map(RatPoly::degree).max().unwrap_or(0),
        t_degree: op.t_degree(),
        remainders,
    }
}

const MAX_DEGREE: usize = 18;

fn instance(params: &ParamSet, acc: &[Rational; 4], var: TuneVariable, t: &Rational) -> Result<CubicSystem> {
    match var {
        TuneVariable::Accessory(i) => {
            let mut acc = acc.clone();
            acc[i] = t.clone();
            build_system(params, &acc)
        }
        TuneVariable::Q => {
            let p = ParamSet::new(params.e.clone(), params.kappa.clone(), t.clone())?;
            build_system(&p, acc)
        }
    }
}

fn sample_point(var: TuneVariable, k: i64) -> Rational {
    match var {
        TuneVariable::Accessory(_) => Rational::new((k - 40).into(), 7.into()),
        TuneVariable::Q => Rational::new(k.into(), 97.into()),
    }
}

/// Recovers `g(t) = N(t)/D(t)` with `deg N, deg D ≤ d` for the least `d`.
fn rational_fit(points: &[(Rational, Rational)]) -> Option<(RatPoly, RatPoly)> {
    for d in 0..=MAX_DEGREE {
        let unknowns = 2 * d + 2;
        if points.len() < unknowns + 2 {
            return None;
        }
        let rows: Vec<Vec<Rational>> = points
            .iter()
            .map(|(t, g)| {
                let pows: Vec<Rational> = (0..=d).map(|k| t.pow(k as i32)).collect();
                pows.iter().cloned().chain(pows.iter().map(|p| -(p * g))).collect()
            })
            .collect();
        let kernel = linalg::kernel(&Matrix::from_rows(rows));
        if let Some(v) = kernel.first() {
            let num = RatPoly::from_coeffs(v[..=d].to_vec());
            let den = RatPoly::from_coeffs(v[d + 1..].to_vec());
            if !den.is_zero() {
                return Some((num, den));
            }
        }
    }
    None
}

/// Solves `f = −e_7` in one variable, keeping the others fixed.
pub fn tune_for_autonomization(params: &ParamSet, acc: &[Rational; 4], var: TuneVariable) -> Result<Tuned> {
    if let TuneVariable::Accessory(i) = var {
        if i > 3 {
            return Err(Error::InvalidParameter(format!("accessory index {i}")));
        }
    }
    let target = -params.e[6].clone();
    let needed = 2 * MAX_DEGREE + 4;
    let mut points = Vec::with_capacity(needed);
    for k in 1..400 {
        if points.len() == needed {
            break;
        }
        let t = sample_point(var, k);
        let Ok(sys) = instance(params, acc, var, &t) else { continue };
        if let Ok(f) = apparent_point(&sys) {
            points.push((t, f - &target));
        }
    }
    let (num, den) = rational_fit(&points)
        .ok_or_else(|| Error::Unsupported("f is not a low-degree rational function of the variable".into()))?;
    if num.is_zero() {
        return Err(Error::Degenerate("f = −e₇ identically".into()));
    }
    for (t, _) in rational_roots(&num).roots {
        if den.eval(&t).is_zero() {
            continue;
        }
        let Ok(system) = instance(params, acc, var, &t) else { continue };
        if apparent_point(&system).ok().as_ref() == Some(&target) {
            return Ok(Tuned { system, variable: var, value: t, numerator: num });
        }
    }
    Err(Error::Unsupported(format!(
        "no admissible rational solution of f = −e₇; numerator {num}"
    )))
}
