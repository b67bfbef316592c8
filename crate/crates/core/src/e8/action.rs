use num_traits::One;

use super::system::{to_fuchs, ungauge, CubicSystem};
use crate::error::{consistency, Error, Result};
use crate::linalg::{self, Intertwiner};
use crate::mconv::{self, q_bracket, Complement, FuchsianSystem, MCResult};
use crate::{RatMatrix, Rational};

/// Result of `s_0`: the transformed system together with the middle
/// convolution that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct S0Output {
    pub system: CubicSystem,
    pub fuchs: FuchsianSystem,
    pub mc: MCResult,
}

/// Sample points used for rational-function identities. Thirty points exceed
/// the degree of every cleared identity checked here, so agreement is a proof.
const IDENTITY_POINTS: usize = 30;

fn sample_points(avoid: &[Rational]) -> Vec<Rational> {
    (1..)
        .map(|k: i64| Rational::new(k.into(), 7.into()))
        .filter(|x| !avoid.iter().any(|a| a == x))
        .take(IDENTITY_POINTS)
        .collect()
}

/// `s_0 = g⁻¹ ∘ mc_λ ∘ g` with `q^λ = (κ e_1 e_2 e_3)⁻¹`.
pub fn s0_action(sys: &CubicSystem) -> Result<S0Output> {
    s0_action_with(sys, Complement::Standard)
}

pub fn s0_action_with(sys: &CubicSystem, policy: Complement) -> Result<S0Output> {
    let params = &sys.params;
    params.validate()?;
    let fuchs = to_fuchs(sys)?;
    let qlam = params.qlam();
    let mc = mconv::middle_convolution_with(&fuchs, &qlam, policy)?;
    let (dk, dl) = (mc.k_basis.len(), mc.l_basis.len());
    let sum = linalg::span_dim(&[mc.k_basis.clone(), mc.l_basis.clone()].concat());
    if (dk, dl, sum) != (3, 3, 6) {
        return Err(Error::Degenerate(format!(
            "dim K = {dk}, dim L = {dl}, dim(K + L) = {sum}; expected 3, 3, 6"
        )));
    }
    let new_params = params.s0()?;
    let a = ungauge(&mc.system);
    let out = CubicSystem::from_matrix(new_params, &a)?;
    Ok(S0Output { system: out, fuchs, mc })
}

/// `s_i` for `i ≠ 0`: relabel the parameters, keep the matrix.
pub fn si_action(sys: &CubicSystem, i: usize) -> Result<CubicSystem> {
    Ok(sys.with_params(sys.params.swap(i)?))
}

/// Exact checks of the intermediate identities behind `s_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S0Witness {
    pub dim_k: usize,
    pub dim_l: usize,
    pub dim_sum: usize,
    /// `ℒ = {(v, v, v)}`.
    pub l_is_diagonal: bool,
    /// `Σ Ḡ_i = [λ] I`.
    pub g_sum_scalar: bool,
    /// `H_i` has `[λ]` at `(i, i)` and zeros elsewhere.
    pub h_structure: bool,
    /// `R⁻¹ G_i R` is block lower triangular.
    pub upper_right_zero: bool,
    /// `det[I − (1−q)x Σ G_i/(x+e_i)] = (κe1e2e3)³ ∏_{i≤9}(q^λx+e_i) / ∏_{i≤3}(x+e_i)³`.
    pub det_full: bool,
    /// The full determinant splits into the quotient part and `∏_{i≤3}(q^λx+e_i)/(x+e_i)`.
    pub det_split: bool,
    /// `det[I − (1−q)x Σ Ḡ_i/(x+e_i)] = (κe1e2e3)³ ∏_{i≥4}(q^λx+e_i) / ∏_{i≤3}(x+e_i)²`.
    pub det_quotient: bool,
}

impl S0Witness {
    pub fn all(&self) -> bool {
        (self.dim_k, self.dim_l, self.dim_sum) == (3, 3, 6)
            && self.l_is_diagonal
            && self.g_sum_scalar
            && self.h_structure
            && self.upper_right_zero
            && self.det_full
            && self.det_split
            && self.det_quotient
    }
}

fn shift_det(residues: &[RatMatrix], es: &[Rational], q: &Rational, x: &Rational) -> Rational {
    let n = residues[0].nrows();
    let mut acc = RatMatrix::zeros(n, n);
    for (g, e) in residues.iter().zip(es) {
        acc = &acc + &g.scale(&(x / (x + e)));
    }
    (&RatMatrix::identity(n) - &acc.scale(&(Rational::one() - q))).det()
}

pub fn s0_witness(sys: &CubicSystem, out: &S0Output) -> S0Witness {
    let p = &sys.params;
    let mc = &out.mc;
    let qlam = &mc.qlam;
    let lam = q_bracket(qlam, &p.q);
    let dim_sum = linalg::span_dim(&[mc.k_basis.clone(), mc.l_basis.clone()].concat());
    let l_is_diagonal = mc.l_basis.len() == 3
        && mc
            .l_basis
            .iter()
            .all(|v| v[0..3] == v[3..6] && v[3..6] == v[6..9]);
    let g_sum = mc
        .system
        .residues
        .iter()
        .fold(RatMatrix::zeros(3, 3), |acc, g| &acc + g);
    let h_structure = mc.h_blocks().iter().enumerate().all(|(i, h)| {
        let mut expected = RatMatrix::zeros(h.nrows(), h.ncols());
        if h.nrows() > i {
            expected[(i, i)] = lam.clone();
        }
        *h == expected
    });
    let es: Vec<Rational> = p.e[..3].to_vec();
    let poles: Vec<Rational> = es.iter().map(|e| -e.clone()).collect();
    let hp = p.head_product();
    let mut det_full = true;
    let mut det_split = true;
    let mut det_quotient = true;
    for x in sample_points(&poles) {
        let full = shift_det(&mc.g_full, &es, &p.q, &x);
        let quotient = shift_det(&mc.system.residues, &es, &p.q, &x);
        let h = shift_det(&mc.h_blocks(), &es, &p.q, &x);
        let qx = qlam * &x;
        let head: Rational = es.iter().map(|e| (&qx + e) / (&x + e)).product();
        let denom: Rational = es.iter().map(|e| &x + e).product();
        let tail: Rational = p.e[3..].iter().map(|e| &qx + e).product();
        let cube = hp.pow(3);
        det_full &= full == &cube * &tail * &head / (&denom * &denom);
        det_split &= h == head && full == &quotient * &h;
        det_quotient &= quotient == &cube * &tail / (&denom * &denom);
    }
    S0Witness {
        dim_k: mc.k_basis.len(),
        dim_l: mc.l_basis.len(),
        dim_sum,
        l_is_diagonal,
        g_sum_scalar: linalg::is_scalar_matrix(&g_sum, &lam),
        h_structure,
        upper_right_zero: mc.upper_right_is_zero(),
        det_full,
        det_split,
        det_quotient,
    }
}

/// Checks on the transformed matrix itself.
pub fn s0_post_checks(out: &S0Output) -> Result<()> {
    let a = out.system.matrix();
    if !a.coeff_matrix(0).is_identity() {
        return Err(consistency("Ã(0) = I", a.coeff_matrix(0)));
    }
    if !linalg::is_scalar_matrix(&a.coeff_matrix(3), &out.system.params.kappa) {
        return Err(consistency("leading coefficient κ̃ I", a.coeff_matrix(3)));
    }
    out.system.check_det()
}

/// Constant `G` with `A(x) G = G B(x)`, scaled so that its first nonzero
/// entry is one.
pub fn find_conjugator(a: &CubicSystem, b: &CubicSystem) -> Intertwiner<Rational> {
    let ca = [a.a1.clone(), a.a2.clone()];
    let cb = [b.a1.clone(), b.a2.clone()];
    if a.params.kappa != b.params.kappa {
        return Intertwiner::None;
    }
    linalg::find_intertwiner(&cb, &ca, 8)
}

/// Whether `G` really conjugates: `A(x) G − G B(x)` is the zero matrix.
pub fn conjugator_residual(a: &CubicSystem, b: &CubicSystem, g: &RatMatrix) -> crate::PolyMatrix {
    let gp = crate::PolyMatrix::constant(g);
    &(&a.matrix() * &gp) - &(&gp * &b.matrix())
}

#[derive(Clone, Debug, PartialEq)]
pub enum BraidOutcome {
    Conjugate(RatMatrix),
    NotConjugate,
    Inconclusive { dim: usize },
    /// Relations involving `s_3` at matrix level are not implemented.
    Unverified,
}

impl BraidOutcome {
    /// Re-checks a found conjugator: invertible, with `A G − G B = 0`.
    fn from_search(a: &CubicSystem, b: &CubicSystem, r: Intertwiner<Rational>) -> Result<Self> {
        Ok(match r {
            Intertwiner::Found(g) => {
                if !linalg::is_invertible(&g) {
                    return Err(consistency("conjugator invertible", &g));
                }
                let res = conjugator_residual(a, b, &g);
                if !res.is_zero() {
                    return Err(consistency("A(x) G − G Ã(x) = 0", res));
                }
                BraidOutcome::Conjugate(g)
            }
            Intertwiner::None => BraidOutcome::NotConjugate,
            Intertwiner::Inconclusive { dim } => BraidOutcome::Inconclusive { dim },
        })
    }

    pub fn passed(&self) -> bool {
        matches!(self, BraidOutcome::Conjugate(_))
    }
}

/// `s_0 s_i A ≅ s_i s_0 A`.
pub fn braid_check(sys: &CubicSystem, i: usize) -> Result<BraidOutcome> {
    if i == 3 {
        return Ok(BraidOutcome::Unverified);
    }
    if i == 0 || i > 8 {
        return Err(Error::InvalidParameter(format!("braid relation with s_{i}")));
    }
    let lhs = s0_action(&si_action(sys, i)?)?.system;
    let rhs = si_action(&s0_action(sys)?.system, i)?;
    if lhs.params != rhs.params {
        return Err(consistency("parameters of s0 s_i and s_i s0", "differ"));
    }
    BraidOutcome::from_search(&lhs, &rhs, find_conjugator(&lhs, &rhs))
}

/// `s_0 s_0 A ≅ A`.
pub fn involution_check(sys: &CubicSystem) -> Result<BraidOutcome> {
    let twice = s0_action(&s0_action(sys)?.system)?.system;
    if twice.params != sys.params {
        return Err(consistency("s0 s0 on parameters", "not the identity"));
    }
    BraidOutcome::from_search(&twice, sys, find_conjugator(&twice, sys))
}

/// Whether the gauged Fuchsian form satisfies (*) and (**).
pub fn star_conditions(sys: &CubicSystem) -> Result<(bool, bool)> {
    let fs = to_fuchs(sys)?;
    Ok((mconv::check_star(&fs), mconv::check_starstar(&fs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::e8::system::sample_system;
    use crate::Matrix;
    use num_traits::Zero;

    #[test]
    fn s0_preserves_the_form() {
        let sys = sample_system(1).unwrap();
        let out = s0_action(&sys).unwrap();
        s0_post_checks(&out).unwrap();
        assert!(s0_witness(&sys, &out).all());
    }

    #[test]
    fn conjugator_of_similar_systems() {
        let sys = sample_system(4).unwrap();
        let p = Matrix::from_rows(vec![
            vec![Rational::one(), Rational::from_integer(2.into()), Rational::zero()],
            vec![Rational::zero(), Rational::one(), Rational::from_integer(3.into())],
            vec![Rational::from_integer(1.into()), Rational::zero(), Rational::one()],
        ]);
        let b = sys.conjugate(&p).unwrap();
        let g = find_conjugator(&sys, &b);
        let g = g.found().unwrap();
        assert!(conjugator_residual(&sys, &b, g).is_zero());
        let id = find_conjugator(&sys, &sys);
        assert!(linalg::is_invertible(id.found().unwrap()));
    }
}
