use num_traits::{One, Zero};

use super::params::{accessory_rng, sample_accessory, sample_params, ParamSet};
use crate::error::{consistency, Error, Result};
use crate::linalg;
use crate::mconv::FuchsianSystem;
use crate::{Matrix, PolyMatrix, RatMatrix, RatPoly, Rational};

/// `T_x y = A(x) y` with `A(x) = I + A1 x + A2 x² + κ I x³`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicSystem {
    pub params: ParamSet,
    pub a1: RatMatrix,
    pub a2: RatMatrix,
    /// `a_3..a_6` when built from the triangular form.
    pub accessory: Option<[Rational; 4]>,
}

/// `∏ (x + r)` over the given roots, times `c`.
pub(crate) fn shifted_product<'a>(c: Rational, roots: impl IntoIterator<Item = &'a Rational>) -> RatPoly {
    roots
        .into_iter()
        .fold(RatPoly::constant(c), |acc, r| &acc * &RatPoly::linear(r.clone(), Rational::one()))
}

impl CubicSystem {
    pub fn matrix(&self) -> PolyMatrix {
        PolyMatrix::from_coeff_matrices(&[
            RatMatrix::identity(3),
            self.a1.clone(),
            self.a2.clone(),
            RatMatrix::scalar(3, self.params.kappa.clone()),
        ])
    }

    /// `κ³ ∏ (x + e_i)`.
    pub fn expected_det(params: &ParamSet) -> RatPoly {
        shifted_product(params.kappa.pow(3), params.e.iter())
    }

    /// Reads a polynomial matrix back, checking `A(0) = I`, degree three with
    /// leading coefficient `κ I` and the determinant.
    pub fn from_matrix(params: ParamSet, a: &PolyMatrix) -> Result<Self> {
        if !a.coeff_matrix(0).is_identity() {
            return Err(consistency("A(0) = I", a.coeff_matrix(0)));
        }
        if a.max_degree() != Some(3) {
            return Err(consistency("deg A = 3", format!("{:?}", a.max_degree())));
        }
        let lead = a.coeff_matrix(3);
        if !linalg::is_scalar_matrix(&lead, &params.kappa) {
            return Err(consistency("leading coefficient κ I", lead));
        }
        let sys = CubicSystem {
            a1: a.coeff_matrix(1),
            a2: a.coeff_matrix(2),
            params,
            accessory: None,
        };
        sys.check_det()?;
        Ok(sys)
    }

    pub fn check_det(&self) -> Result<()> {
        let diff = &self.matrix().det() - &Self::expected_det(&self.params);
        if diff.is_zero() {
            Ok(())
        } else {
            Err(consistency("det A = κ³∏(x+e_i)", diff))
        }
    }

    /// The same matrix with relabelled parameters.
    pub fn with_params(&self, params: ParamSet) -> Self {
        CubicSystem {
            params,
            a1: self.a1.clone(),
            a2: self.a2.clone(),
            accessory: None,
        }
    }

    /// `G⁻¹ A(x) G` for a constant invertible `G`.
    pub fn conjugate(&self, g: &RatMatrix) -> Result<Self> {
        let gi = linalg::inverse(g).ok_or_else(|| Error::InvalidParameter("singular gauge".into()))?;
        Ok(CubicSystem {
            params: self.params.clone(),
            a1: &(&gi * &self.a1) * g,
            a2: &(&gi * &self.a2) * g,
            accessory: None,
        })
    }
}

/// Upper triangular `X1` and lower triangular `X3` of the triangular form.
fn triangular_factors(p: &ParamSet, a: &[Rational; 6]) -> (RatMatrix, RatMatrix) {
    let inv = |i: usize| p.e[i].recip();
    let z = Rational::zero;
    let x1 = Matrix::from_rows(vec![
        vec![inv(0), a[0].clone(), a[1].clone()],
        vec![z(), inv(1), a[2].clone()],
        vec![z(), z(), inv(2)],
    ]);
    let x3 = Matrix::from_rows(vec![
        vec![inv(6), z(), z()],
        vec![a[3].clone(), inv(7), z()],
        vec![a[4].clone(), a[5].clone(), inv(8)],
    ]);
    (x1, x3)
}

/// Residuals of the two conditions fixing `(a_1, a_2)`: `tr X2 = Σ_{4..6} 1/e_i`
/// and `tr(X3 X1) = κ(e_4 + e_5 + e_6)`. Both are affine in `(a_1, a_2)`.
fn conditions(p: &ParamSet, a: &[Rational; 6]) -> Option<[Rational; 2]> {
    let (x1, x3) = triangular_factors(p, a);
    let x2 = (&linalg::inverse(&x1)? * &linalg::inverse(&x3)?).scale(&p.kappa);
    let t1 = x2.trace() - p.e[3..6].iter().map(Rational::recip).sum::<Rational>();
    let t2 = (&x3 * &x1).trace() - &p.kappa * p.e[3..6].iter().sum::<Rational>();
    Some([t1, t2])
}

fn with_head(a1: Rational, a2: Rational, acc: &[Rational; 4]) -> [Rational; 6] {
    [a1, a2, acc[0].clone(), acc[1].clone(), acc[2].clone(), acc[3].clone()]
}

/// `(a_1, …, a_6)` with `(a_1, a_2)` solved from the affine conditions.
pub fn solved_entries(params: &ParamSet, acc: &[Rational; 4]) -> Result<[Rational; 6]> {
    let int = |v: i64| Rational::from_integer(v.into());
    let at = |a1: i64, a2: i64| {
        conditions(params, &with_head(int(a1), int(a2), acc))
            .ok_or_else(|| Error::Degenerate("singular triangular factor".into()))
    };
    let f0 = at(0, 0)?;
    let f1 = at(1, 0)?;
    let f2 = at(0, 1)?;
    let c1 = [&f1[0] - &f0[0], &f1[1] - &f0[1]];
    let c2 = [&f2[0] - &f0[0], &f2[1] - &f0[1]];
    let probe = at(2, 3)?;
    for k in 0..2 {
        let predicted = &f0[k] + &c1[k] * int(2) + &c2[k] * int(3);
        if predicted != probe[k] {
            return Err(consistency("affine dependence on (a1, a2)", &predicted - &probe[k]));
        }
    }
    let m = Matrix::from_rows(vec![vec![c1[0].clone(), c2[0].clone()], vec![c1[1].clone(), c2[1].clone()]]);
    match linalg::solve(&m, &[-f0[0].clone(), -f0[1].clone()]) {
        linalg::LinearSolution::Consistent { particular, kernel } if kernel.is_empty() => {
            Ok(with_head(particular[0].clone(), particular[1].clone(), acc))
        }
        _ => Err(Error::Degenerate("the linear system for (a1, a2) is singular".into())),
    }
}

/// Builds the cubic system from `a_3..a_6`, solving `(a_1, a_2)` so that
/// `det(I + x X2) = ∏_{i=4..6}(1 + x/e_i)`.
pub fn build_system(params: &ParamSet, acc: &[Rational; 4]) -> Result<CubicSystem> {
    let a = solved_entries(params, acc)?;
    let (x1, x3) = triangular_factors(params, &a);
    let x1i = linalg::inverse(&x1).ok_or_else(|| Error::Degenerate("X1 singular".into()))?;
    let x3i = linalg::inverse(&x3).ok_or_else(|| Error::Degenerate("X3 singular".into()))?;
    let x2 = (&x1i * &x3i).scale(&params.kappa);
    let det_x2 = PolyMatrix::from_coeff_matrices(&[RatMatrix::identity(3), x2.clone()]).det();
    let target = params.e[3..6]
        .iter()
        .fold(RatPoly::one(), |acc, e| &acc * &RatPoly::linear(Rational::one(), e.recip()));
    if det_x2 != target {
        return Err(Error::Inadmissible(format!(
            "det(I + x X2) does not match: difference {}",
            &det_x2 - &target
        )));
    }
    let a1 = &(&x1 + &x2) + &x3;
    let a2 = &(&(&x1 * &x2) + &(&x1 * &x3)) + &(&x2 * &x3);
    let sys = CubicSystem {
        params: params.clone(),
        a1,
        a2,
        accessory: Some(acc.clone()),
    };
    sys.check_det()?;
    Ok(sys)
}

/// A sampled admissible system whose construction succeeds.
pub fn sample_system(seed: u64) -> Result<CubicSystem> {
    let params = sample_params(seed)?;
    let mut rng = accessory_rng(seed);
    let mut last = None;
    for _ in 0..50 {
        let acc = sample_accessory(&mut rng);
        match build_system(&params, &acc) {
            Ok(s) => return Ok(s),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(Error::SamplingExhausted(50)))
}

/// The Fuchsian form `D_x y = Σ A_i/(x + e_i) y` after the gauge by
/// `∏_{i≤3} (−x/e_i)_∞`, with poles `t_i = −e_i`.
pub fn to_fuchs(sys: &CubicSystem) -> Result<FuchsianSystem> {
    let p = &sys.params;
    let a = sys.matrix();
    let one = Rational::one();
    let residues: Vec<RatMatrix> = (0..3)
        .map(|i| {
            let ei = &p.e[i];
            let denom = (0..3)
                .filter(|&j| j != i)
                .fold(&one - &p.q, |acc, j| acc * (&one - ei / &p.e[j]));
            a.eval(&-ei.clone()).scale(&denom.recip())
        })
        .collect();
    let sum = residues.iter().fold(RatMatrix::zeros(3, 3), |acc, r| &acc + r);
    let expected = (&one - p.head_product()) / (&one - &p.q);
    if !linalg::is_scalar_matrix(&sum, &expected) {
        return Err(consistency("Σ A_i = (1 − κe1e2e3)/(1 − q) I", &sum - &RatMatrix::scalar(3, expected)));
    }
    FuchsianSystem::new(p.e[..3].iter().map(|e| -e.clone()).collect(), residues, p.q.clone())
}

/// `∏_{i≤3}(1 + x/e_i) [I − (1 − q) x Σ G_i/(x + e_i)]` as a polynomial matrix,
/// where the poles of `fs` are `−e_1, −e_2, −e_3`.
pub fn ungauge(fs: &FuchsianSystem) -> PolyMatrix {
    let n = fs.rank();
    let es: Vec<Rational> = fs.poles.iter().map(|t| -t.clone()).collect();
    let d = es
        .iter()
        .fold(RatPoly::one(), |acc, e| &acc * &RatPoly::linear(Rational::one(), e.recip()));
    let mut out = PolyMatrix::scalar(n, d);
    let one = Rational::one();
    for (i, g) in fs.residues.iter().enumerate() {
        // x ∏_{k≠i}(1 + x/e_k) / e_i, times (1 − q).
        let mut w = RatPoly::monomial((&one - &fs.q) / &es[i], 1);
        for (k, e) in es.iter().enumerate() {
            if k != i {
                w = &w * &RatPoly::linear(one.clone(), e.recip());
            }
        }
        out = &out - &g.map(|c| w.scale(c));
    }
    out
}

/// Inverse of [`to_fuchs`] for a given parameter set.
pub fn from_fuchs(fs: &FuchsianSystem, params: ParamSet) -> Result<CubicSystem> {
    CubicSystem::from_matrix(params, &ungauge(fs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_system_has_the_prescribed_determinant() {
        for seed in 0..5 {
            let sys = sample_system(seed).unwrap();
            assert_eq!(sys.matrix().det(), CubicSystem::expected_det(&sys.params));
            assert!(sys.matrix().coeff_matrix(0).is_identity());
        }
    }

    #[test]
    fn fuchs_round_trip() {
        let sys = sample_system(11).unwrap();
        let fs = to_fuchs(&sys).unwrap();
        let back = from_fuchs(&fs, sys.params.clone()).unwrap();
        assert_eq!((back.a1, back.a2), (sys.a1.clone(), sys.a2.clone()));
        // Residue at −e_1 is proportional to A(−e_1).
        let a_at = sys.matrix().eval(&-sys.params.e[0].clone());
        let ratio = &fs.residues[0][(0, 0)] / &a_at[(0, 0)];
        assert_eq!(fs.residues[0], a_at.scale(&ratio));
    }

    #[test]
    fn triangular_product_is_kappa() {
        let sys = sample_system(2).unwrap();
        let a = solved_entries(&sys.params, sys.accessory.as_ref().unwrap()).unwrap();
        let (x1, x3) = triangular_factors(&sys.params, &a);
        let x2 = (&linalg::inverse(&x1).unwrap() * &linalg::inverse(&x3).unwrap()).scale(&sys.params.kappa);
        assert!(linalg::is_scalar_matrix(&(&(&x1 * &x2) * &x3), &sys.params.kappa));
        let det_x1 = PolyMatrix::from_coeff_matrices(&[RatMatrix::identity(3), x1]).det();
        let e = &sys.params.e;
        let expected = (0..3).fold(RatPoly::one(), |acc, i| &acc * &RatPoly::linear(Rational::one(), e[i].recip()));
        assert_eq!(det_x1, expected);
    }
}
