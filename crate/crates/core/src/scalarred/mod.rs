//! Reduction of the cubic system to a third-order scalar q-difference
//! operator `Σ P_j(x) T_x^j`, with its point configuration, the apparent
//! singularity `f` and the autonomous specialization `f = −e_7`.

mod closed_form;
mod config;
mod tune;

use num_traits::{One, Zero};

pub use closed_form::{f1_terms, f2_terms, f_closed_form, f_closed_form_for, FormulaVariant, Monomial};
pub use config::{point_configuration, qfuchs_check, CharRoot, PointConfiguration};
pub use tune::{autonomize, tune_for_autonomization, BiDegree, TuneVariable, Tuned};

use crate::e8::system::shifted_product;
use crate::e8::CubicSystem;
use crate::error::{consistency, Error, Result};
use crate::{PolyMatrix, RatPoly, Rational};

/// `Σ_{j=0}^{3} P_j(x) T_x^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarOperator {
    /// `P_0, …, P_3`.
    pub p: Vec<RatPoly>,
}

impl ScalarOperator {
    pub fn new(p: Vec<RatPoly>) -> Result<Self> {
        if p.len() < 2 || p[0].is_zero() || p.last().is_some_and(Zero::is_zero) {
            return Err(Error::InvalidParameter(
                "first and last coefficient of a scalar operator must be nonzero".into(),
            ));
        }
        Ok(ScalarOperator { p })
    }

    /// Order in `T_x`.
    pub fn t_degree(&self) -> usize {
        self.p.len() - 1
    }

    pub fn x_degree(&self) -> usize {
        self.p.iter().filter_map(RatPoly::degree).max().unwrap_or(0)
    }

    /// `a_{i,j}`, the coefficient of `x^i T_x^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.p[j].coeff(i)
    }

    /// `L_i(T) = Σ_j a_{i,j} T^j`.
    pub fn x_slice(&self, i: usize) -> RatPoly {
        RatPoly::from_coeffs((0..self.p.len()).map(|j| self.coeff(i, j)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ScalarOperator {
            p: self.p.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Divides by the leading coefficient of the top `P_j`.
    pub fn normalized(&self) -> Self {
        let lc = self.p.last().and_then(RatPoly::leading).cloned().unwrap_or_else(Rational::one);
        self.scale(&lc.recip())
    }
}

/// Output of [`reduce_to_scalar`].
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    /// Normalized so that `P_3` is monic.
    pub op: ScalarOperator,
    /// Apparent singularity: the root of `p_3″`.
    pub f: Rational,
    /// `p_0, …, p_3` before any division, annihilating `y_1`.
    pub minors: Vec<RatPoly>,
}

fn exact_div(num: &RatPoly, den: &RatPoly, what: &str) -> Result<RatPoly> {
    let (quo, rem) = num.div_rem(den);
    if rem.is_zero() {
        Ok(quo)
    } else {
        Err(consistency(what, rem))
    }
}

fn minor(u: &[RatPoly], v: &[RatPoly]) -> RatPoly {
    &(&u[1] * &v[2]) - &(&u[2] * &v[1])
}

/// The rows `b`, `c`, `d` of `A`, `A(qx)A`, `A(q²x)A(qx)A`.
fn first_rows(a: &PolyMatrix, q: &Rational) -> [Vec<RatPoly>; 3] {
    let c = &a.rescale_arg(q) * a;
    let d = &a.rescale_arg(&(q * q)) * &c;
    [a.row(0), c.row(0), d.row(0)]
}

/// `p_3 = b_2c_3 − b_3c_2` and its reduced form `p_3″ = p_3 / (x³(x+e_8)(x+e_9))`.
fn reduced_p3(sys: &CubicSystem, a: &PolyMatrix) -> Result<(RatPoly, RatPoly)> {
    let p = &sys.params;
    let c = &a.rescale_arg(&p.q) * a;
    let p3 = minor(&a.row(0), &c.row(0));
    if p3.is_zero() {
        return Err(Error::Degenerate("the minor p₃ vanishes identically".into()));
    }
    let den = shifted_product(Rational::one(), [&Rational::zero(); 3].into_iter().chain(&p.e[7..9]));
    let red = exact_div(&p3, &den, "x³(x+e₈)(x+e₉) divides p₃")?;
    Ok((p3, red))
}

fn root_of_linear(p: &RatPoly) -> Result<Rational> {
    if p.degree() != Some(1) {
        return Err(Error::Degenerate(format!("p₃″ = {p} is not of degree one")));
    }
    Ok(-p.coeff(0) / p.coeff(1))
}

/// The apparent singularity `f`, from `p_3` alone.
pub fn apparent_point(sys: &CubicSystem) -> Result<Rational> {
    let (_, red) = reduced_p3(sys, &sys.matrix())?;
    root_of_linear(&red)
}

/// `∏_{i≤3} (1 + c x/e_i)`.
fn head_gauge(sys: &CubicSystem, c: &Rational) -> RatPoly {
    sys.params.e[..3]
        .iter()
        .fold(RatPoly::one(), |acc, e| &acc * &RatPoly::linear(Rational::one(), c / e))
}

pub fn reduce_to_scalar(sys: &CubicSystem) -> Result<Reduction> {
    let p = &sys.params;
    let q = &p.q;
    let a = sys.matrix();
    let [b, c, d] = first_rows(&a, q);
    let p3 = minor(&b, &c);
    let p2 = -minor(&b, &d);
    let p1 = minor(&c, &d);
    let p0 = -PolyMatrix::from_rows(vec![b.clone(), c.clone(), d.clone()]).det();
    let minors = vec![p0, p1, p2, p3];
    if minors[3].is_zero() {
        return Err(Error::Degenerate("the minor p₃ vanishes identically".into()));
    }

    // Σ p_j (T^j y)_1 = 0 as a row identity.
    let rows = [None, Some(&b), Some(&c), Some(&d)];
    for col in 0..3 {
        let mut acc = RatPoly::zero();
        for (pj, row) in minors.iter().zip(rows) {
            let entry = match row {
                Some(r) => r[col].clone(),
                None if col == 0 => RatPoly::one(),
                None => RatPoly::zero(),
            };
            acc = &acc + &(pj * &entry);
        }
        if !acc.is_zero() {
            return Err(consistency("the minors annihilate y₁", acc));
        }
    }

    exact_div(&minors[0], &a.det(), "det A divides p₀")?;

    let x3 = RatPoly::monomial(Rational::one(), 3);
    let expected = [12, 9, 6, 3];
    let mut primed = Vec::with_capacity(4);
    for (j, pj) in minors.iter().enumerate() {
        let v = exact_div(pj, &x3, "x³ divides p_j")?;
        if v.degree() != Some(expected[j]) {
            return Err(consistency(
                "deg p_j′ = (12, 9, 6, 3)",
                format!("deg p_{j}′ = {:?}", v.degree()),
            ));
        }
        primed.push(v);
    }
    let tail = shifted_product(Rational::one(), &p.e[7..9]);
    let reduced: Vec<RatPoly> = primed
        .iter()
        .map(|v| exact_div(v, &tail, "(x+e₈)(x+e₉) divides p_j′"))
        .collect::<Result<_>>()?;
    for e in &p.e[7..9] {
        let r = -(e / q);
        let v = reduced[0].eval(&r);
        if !v.is_zero() {
            return Err(consistency("p₀″(−e/q) = 0 for e = e₈, e₉", v));
        }
    }

    let f = root_of_linear(&reduced[3])?;
    let lc = reduced[3].coeff(1);
    let unit = |v: &RatPoly| v.scale(&lc.recip());
    let q2 = q * q;
    let p3_display = &(&RatPoly::root_factor(&f) * &head_gauge(sys, q)) * &head_gauge(sys, &q2);
    let big = vec![
        exact_div(&unit(&reduced[0]), &head_gauge(sys, &Rational::one()), "∏(1+x/e_i) divides p₀″")?,
        unit(&reduced[1]),
        &unit(&reduced[2]) * &head_gauge(sys, q),
        p3_display,
    ];
    if let Some(j) = big.iter().position(|pj| pj.degree() != Some(7)) {
        return Err(consistency("deg P_j = 7", format!("deg P_{j} = {:?}", big[j].degree())));
    }

    let mut p0_roots: Vec<Rational> = p.e[3..7].iter().map(|e| -e.clone()).collect();
    p0_roots.extend(p.e[7..9].iter().map(|e| -(e / q)));
    p0_roots.push(&f / q);
    let p0_expected = RatPoly::from_roots(&p0_roots);
    if !p0_expected.divides(&big[0]) {
        return Err(consistency("P₀ ∝ (x+e₄)⋯(x+e₇)(qx+e₈)(qx+e₉)(qx−f)", &big[0]));
    }

    let op = ScalarOperator::new(big)?.normalized();
    Ok(Reduction { op, f, minors })
}

/// The `c` with `P_3(f/q) = cP_2(f)`, `P_2(f/q) = cP_1(f)`, `P_1(f/q) = cP_0(f)`.
pub fn apparent_check(op: &ScalarOperator, f: &Rational, q: &Rational) -> Result<Rational> {
    if op.p.len() != 4 {
        return Err(Error::InvalidParameter("apparent condition needs a third-order operator".into()));
    }
    let fq = f / q;
    let lhs: Vec<Rational> = (1..4).map(|j| op.p[j].eval(&fq)).collect();
    let rhs: Vec<Rational> = (0..3).map(|j| op.p[j].eval(f)).collect();
    let Some(k) = rhs.iter().position(|v| !v.is_zero()) else {
        return Err(Error::Degenerate("P₀(f), P₁(f), P₂(f) all vanish".into()));
    };
    let c = &lhs[k] / &rhs[k];
    if lhs.iter().zip(&rhs).all(|(l, r)| *l == &c * r) {
        return Ok(c);
    }
    let ratios = lhs
        .iter()
        .zip(&rhs)
        .rev()
        .map(|(l, r)| if r.is_zero() { format!("{l}/0") } else { (l / r).to_string() })
        .collect();
    Err(Error::NotApparent(ratios))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::e8::sample_system;
    use crate::Matrix;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn reduction_structure() {
        let sys = sample_system(3).unwrap();
        let red = reduce_to_scalar(&sys).unwrap();
        assert!(red.op.p.iter().all(|p| p.degree() == Some(7)));
        assert!(red.op.p[3].leading().unwrap().is_one());
        assert_eq!(red.op.p[3].root_multiplicity(&red.f), 1);
        let c = apparent_check(&red.op, &red.f, &sys.params.q).unwrap();
        assert_eq!(apparent_check(&red.op.scale(&int(-5)), &red.f, &sys.params.q).unwrap(), c);
        assert_eq!(apparent_point(&sys).unwrap(), red.f);
    }

    #[test]
    fn perturbed_p2_is_not_apparent() {
        let sys = sample_system(5).unwrap();
        let red = reduce_to_scalar(&sys).unwrap();
        let mut op = red.op.clone();
        op.p[2] = &op.p[2] + &RatPoly::monomial(Rational::new(1.into(), 7.into()), 4);
        match apparent_check(&op, &red.f, &sys.params.q) {
            Err(Error::NotApparent(r)) => assert_eq!(r.len(), 3),
            other => panic!("expected a not-apparent error, got {other:?}"),
        }
    }

    #[test]
    fn block_gauge_keeps_the_operator() {
        let sys = sample_system(6).unwrap();
        let g = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(2), int(1)],
            vec![int(0), int(-1), int(3)],
        ]);
        let base = reduce_to_scalar(&sys).unwrap();
        let other = reduce_to_scalar(&sys.conjugate(&g).unwrap()).unwrap();
        assert_eq!(base.op, other.op);
        assert_eq!(base.f, other.f);
    }

    #[test]
    fn minor_degrees() {
        let sys = sample_system(2).unwrap();
        let red = reduce_to_scalar(&sys).unwrap();
        let degs: Vec<_> = red.minors.iter().map(RatPoly::degree).collect();
        assert_eq!(degs, vec![Some(15), Some(12), Some(9), Some(6)]);
    }
}
