//! Middle convolution of Fuchsian q-difference systems
//! `D_x y = Σ B_i/(x − t_i) y`, together with the addition and the
//! irreducibility-type conditions (*) and (**).
//!
//! The multiplier `qlam` stands for `q^λ`; `[λ]` is always `(1 − qlam)/(1 − q)`.

use num_traits::{One, Zero};

use crate::error::{consistency, Error, Result};
use crate::linalg::{self, Intertwiner, Vector};
use crate::{RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct FuchsianSystem {
    pub poles: Vec<Rational>,
    pub residues: Vec<RatMatrix>,
    pub q: Rational,
}

impl FuchsianSystem {
    pub fn new(poles: Vec<Rational>, residues: Vec<RatMatrix>, q: Rational) -> Result<Self> {
        if poles.len() != residues.len() || poles.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "{} poles but {} residues",
                poles.len(),
                residues.len()
            )));
        }
        if !(q > Rational::zero() && q < Rational::one()) {
            return Err(Error::InvalidParameter(format!("q = {q} is not in (0, 1)")));
        }
        let m = residues[0].nrows();
        if residues.iter().any(|b| b.nrows() != m || b.ncols() != m) {
            return Err(Error::InvalidParameter("residues differ in size".into()));
        }
        for i in 0..poles.len() {
            if poles[i + 1..].contains(&poles[i]) {
                return Err(Error::InvalidParameter(format!("repeated pole {}", poles[i])));
            }
        }
        Ok(FuchsianSystem { poles, residues, q })
    }

    /// Size `M` of the residues.
    pub fn rank(&self) -> usize {
        self.residues[0].nrows()
    }

    pub fn pole_count(&self) -> usize {
        self.poles.len()
    }

    /// `I − (1 − q) x Σ B_i/(x − t_i)`, the matrix with `y(qx) = A(x) y(x)`.
    pub fn shift_matrix(&self, x: &Rational) -> RatMatrix {
        let m = self.rank();
        let mut acc = RatMatrix::zeros(m, m);
        for (t, b) in self.poles.iter().zip(&self.residues) {
            acc = &acc + &b.scale(&(x.clone() / (x - t)));
        }
        &RatMatrix::identity(m) - &acc.scale(&(Rational::one() - &self.q))
    }

    pub fn transpose(&self) -> Self {
        FuchsianSystem {
            poles: self.poles.clone(),
            residues: self.residues.iter().map(RatMatrix::transpose).collect(),
            q: self.q.clone(),
        }
    }

    fn with_residues(&self, residues: Vec<RatMatrix>) -> Self {
        FuchsianSystem {
            poles: self.poles.clone(),
            residues,
            q: self.q.clone(),
        }
    }
}

/// `(x I − S) D_x Y = B Y` data.
#[derive(Clone, Debug, PartialEq)]
pub struct OkuboSystem {
    pub s: RatMatrix,
    pub b: RatMatrix,
}

/// `[λ] = (1 − q^λ)/(1 − q)`.
pub fn q_bracket(qlam: &Rational, q: &Rational) -> Rational {
    (Rational::one() - qlam) / (Rational::one() - q)
}

pub fn to_okubo(sys: &FuchsianSystem) -> OkuboSystem {
    let m = sys.rank();
    let blocks: Vec<RatMatrix> = sys
        .poles
        .iter()
        .map(|t| RatMatrix::scalar(m, t.clone()))
        .collect();
    let s = RatMatrix::block_diag(&blocks.iter().collect::<Vec<_>>());
    let row = RatMatrix::hstack(&sys.residues.iter().collect::<Vec<_>>());
    let b = RatMatrix::vstack(&vec![&row; sys.pole_count()]);
    OkuboSystem { s, b }
}

/// The convolution `c_λ`: residues `G_i` of size `MN` whose only nonzero
/// block row `i` is `(qlam B_1, …, qlam B_i + [λ] I, …, qlam B_N)`.
pub fn convolution(sys: &FuchsianSystem, qlam: &Rational) -> Result<FuchsianSystem> {
    if qlam.is_zero() {
        return Err(Error::InvalidParameter("q^λ must be nonzero".into()));
    }
    let (m, n) = (sys.rank(), sys.pole_count());
    let lam = q_bracket(qlam, &sys.q);
    let residues = (0..n)
        .map(|i| {
            let mut g = RatMatrix::zeros(m * n, m * n);
            for (j, b) in sys.residues.iter().enumerate() {
                let mut block = b.scale(qlam);
                if i == j {
                    block = &block + &RatMatrix::scalar(m, lam.clone());
                }
                g.set_block(i * m, j * m, &block);
            }
            g
        })
        .collect();
    Ok(sys.with_residues(residues))
}

/// Bases of `𝒦 = ⊕ Ker B_i` and `ℒ = Ker Σ G_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSpaces {
    pub k_basis: Vec<Vector<Rational>>,
    pub l_basis: Vec<Vector<Rational>>,
}

impl InvariantSpaces {
    /// `𝒦` basis followed by the `ℒ` vectors that enlarge the span.
    pub fn combined(&self) -> Vec<Vector<Rational>> {
        let mut acc = self.k_basis.clone();
        for l in &self.l_basis {
            if !linalg::in_span(l, &acc) {
                acc.push(l.clone());
            }
        }
        acc
    }
}

pub fn invariant_spaces(sys: &FuchsianSystem, conv: &FuchsianSystem) -> Result<InvariantSpaces> {
    let (m, n) = (sys.rank(), sys.pole_count());
    let dim = m * n;
    let mut k_basis = Vec::new();
    for (i, b) in sys.residues.iter().enumerate() {
        for v in linalg::kernel(b) {
            let mut w = vec![Rational::zero(); dim];
            w[i * m..(i + 1) * m].clone_from_slice(&v);
            k_basis.push(w);
        }
    }
    let sum = conv
        .residues
        .iter()
        .fold(RatMatrix::zeros(dim, dim), |acc, g| &acc + g);
    let l_basis = linalg::kernel(&sum);
    let spaces = InvariantSpaces { k_basis, l_basis };
    let span = spaces.combined();
    for g in &conv.residues {
        for v in &span {
            let image = g.mul_vec(v);
            if !linalg::in_span(&image, &span) {
                return Err(consistency(
                    "G_i-invariance of K + L",
                    RatMatrix::from_columns(&[image], dim),
                ));
            }
        }
    }
    Ok(spaces)
}

/// Choice of the complement of `𝒦 + ℒ` used to realize the quotient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Complement {
    /// Unit vectors at the non-pivot columns of the echelon form of `𝒦 + ℒ`.
    #[default]
    Standard,
    /// Greedy completion by unit vectors taken from the last coordinate down.
    Reversed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MCResult {
    /// The quotient system with residues `Ḡ_i`.
    pub system: FuchsianSystem,
    pub qlam: Rational,
    pub k_basis: Vec<Vector<Rational>>,
    pub l_basis: Vec<Vector<Rational>>,
    /// `[u | k | l]`.
    pub r: RatMatrix,
    /// Residues of the convolution before the quotient.
    pub g_full: Vec<RatMatrix>,
    /// `R⁻¹ G_i R`.
    pub transformed: Vec<RatMatrix>,
}

impl MCResult {
    pub fn quotient_dim(&self) -> usize {
        self.system.rank()
    }

    /// Lower-right blocks `H_i`, the action on `𝒦 + ℒ`.
    pub fn h_blocks(&self) -> Vec<RatMatrix> {
        let d = self.quotient_dim();
        let n = self.r.nrows();
        self.transformed
            .iter()
            .map(|t| t.submatrix(d, d, n - d, n - d))
            .collect()
    }

    /// Whether every `R⁻¹ G_i R` is block lower triangular.
    pub fn upper_right_is_zero(&self) -> bool {
        let d = self.quotient_dim();
        let n = self.r.nrows();
        self.transformed
            .iter()
            .all(|t| t.submatrix(0, d, d, n - d).is_zero())
    }
}

pub fn middle_convolution(sys: &FuchsianSystem, qlam: &Rational) -> Result<MCResult> {
    middle_convolution_with(sys, qlam, Complement::Standard)
}

pub fn middle_convolution_with(
    sys: &FuchsianSystem,
    qlam: &Rational,
    policy: Complement,
) -> Result<MCResult> {
    let conv = convolution(sys, qlam)?;
    let spaces = invariant_spaces(sys, &conv)?;
    let sub = spaces.combined();
    let dim = sys.rank() * sys.pole_count();
    let u = match policy {
        Complement::Standard => linalg::standard_complement(&sub, dim),
        Complement::Reversed => linalg::reversed_complement(&sub, dim),
    };
    let d = u.len();
    if d == 0 {
        return Err(Error::Degenerate(
            "𝒦 + ℒ is the whole space; the quotient is zero".into(),
        ));
    }
    let mut cols = u;
    cols.extend(sub);
    let r = RatMatrix::from_columns(&cols, dim);
    let rinv = linalg::inverse(&r).ok_or_else(|| consistency("R invertible", &r))?;
    let transformed: Vec<RatMatrix> = conv.residues.iter().map(|g| &(&rinv * g) * &r).collect();
    let quotient = transformed.iter().map(|t| t.submatrix(0, 0, d, d)).collect();
    let out = MCResult {
        system: sys.with_residues(quotient),
        qlam: qlam.clone(),
        k_basis: spaces.k_basis,
        l_basis: spaces.l_basis,
        r,
        g_full: conv.residues,
        transformed,
    };
    if !out.upper_right_is_zero() {
        return Err(consistency("upper-right block of R⁻¹G_iR", "nonzero"));
    }
    Ok(out)
}

/// Gauge by `(x/t_j')_∞/(x/t_j)_∞`, moving the pole `t_j` to `tj_new`.
pub fn addition(sys: &FuchsianSystem, j: usize, tj_new: &Rational) -> Result<FuchsianSystem> {
    let tj = sys
        .poles
        .get(j)
        .ok_or_else(|| Error::InvalidParameter(format!("no pole with index {j}")))?;
    if tj.is_zero() {
        return Err(Error::InvalidParameter(
            "pole at 0: use addition_at_zero".into(),
        ));
    }
    if tj_new.is_zero() || sys.poles.iter().enumerate().any(|(i, t)| i != j && t == tj_new) {
        return Err(Error::InvalidParameter(format!(
            "new pole {tj_new} collides with an existing pole or 0"
        )));
    }
    let m = sys.rank();
    let ratio = tj_new / tj;
    let mut bj = sys.residues[j].scale(&ratio);
    let mut residues = sys.residues.clone();
    for (i, (ti, bi)) in sys.poles.iter().zip(&sys.residues).enumerate() {
        if i == j {
            continue;
        }
        residues[i] = bi.scale(&(&ratio * (ti - tj) / (ti - tj_new)));
        bj = &bj + &bi.scale(&(&ratio * (tj_new - tj) / (tj_new - ti)));
    }
    let shift = (tj - tj_new) / (tj * (Rational::one() - &sys.q));
    residues[j] = &bj + &RatMatrix::scalar(m, shift);
    let mut poles = sys.poles.clone();
    poles[j] = tj_new.clone();
    FuchsianSystem::new(poles, residues, sys.q.clone())
}

/// Gauge by `x^α` for a system with a pole at the origin; `alpha_mult = q^α`.
pub fn addition_at_zero(sys: &FuchsianSystem, alpha_mult: &Rational) -> Result<FuchsianSystem> {
    let j = sys
        .poles
        .iter()
        .position(Zero::is_zero)
        .ok_or_else(|| Error::InvalidParameter("0 is not a pole".into()))?;
    if alpha_mult.is_zero() {
        return Err(Error::InvalidParameter("q^α must be nonzero".into()));
    }
    let m = sys.rank();
    let mut residues: Vec<RatMatrix> = sys.residues.iter().map(|b| b.scale(alpha_mult)).collect();
    residues[j] = &residues[j] + &RatMatrix::scalar(m, q_bracket(alpha_mult, &sys.q));
    Ok(sys.with_residues(residues))
}

/// Largest `b`-invariant subspace contained in `w`.
fn invariant_core(b: &RatMatrix, w: Vec<Vector<Rational>>) -> Vec<Vector<Rational>> {
    let dim = b.ncols();
    let mut cur = w;
    loop {
        if cur.is_empty() {
            return cur;
        }
        let next = linalg::intersect(&cur, &linalg::preimage(b, &cur), dim);
        if next.len() == cur.len() {
            return cur;
        }
        cur = next;
    }
}

/// (*): no `j` and `τ` admit a common vector of `⋂_{i≠j} Ker B_i` and `Ker(B_j + τ)`.
pub fn check_star(sys: &FuchsianSystem) -> bool {
    let m = sys.rank();
    (0..sys.pole_count()).all(|j| {
        let mut w: Vec<Vector<Rational>> = (0..m).map(|c| linalg::unit(m, c)).collect();
        for (i, b) in sys.residues.iter().enumerate() {
            if i != j {
                w = linalg::intersect(&w, &linalg::kernel(b), m);
            }
        }
        invariant_core(&sys.residues[j], w).is_empty()
    })
}

/// (**): `Σ_{i≠j} Im B_i + Im(B_j + τ)` is the whole space for all `j`, `τ`.
pub fn check_starstar(sys: &FuchsianSystem) -> bool {
    check_star(&sys.transpose())
}

/// Invertible `P` with `a.residues[i] P = P b.residues[i]` for all `i`.
pub fn isomorphism(a: &FuchsianSystem, b: &FuchsianSystem) -> Intertwiner<Rational> {
    if a.poles != b.poles || a.rank() != b.rank() {
        return Intertwiner::None;
    }
    linalg::find_intertwiner(&b.residues, &a.residues, 8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::Matrix;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    fn two_by_two() -> FuchsianSystem {
        FuchsianSystem::new(
            vec![int(1), int(3)],
            vec![m(&[&[1, 2], &[0, 1]]), m(&[&[0, 1], &[3, 2]])],
            rat(1, 3),
        )
        .unwrap()
    }

    #[test]
    fn okubo_blocks() {
        let sys = FuchsianSystem::new(
            vec![int(2), int(5)],
            vec![m(&[&[7]]), m(&[&[11]])],
            rat(1, 2),
        )
        .unwrap();
        let ok = to_okubo(&sys);
        assert_eq!(ok.s, m(&[&[2, 0], &[0, 5]]));
        assert_eq!(ok.b, m(&[&[7, 11], &[7, 11]]));
    }

    #[test]
    fn single_pole_convolution() {
        let sys = FuchsianSystem::new(vec![int(1)], vec![m(&[&[2, 1], &[0, 3]])], rat(1, 2)).unwrap();
        let qlam = rat(1, 3);
        let g = convolution(&sys, &qlam).unwrap();
        let lam = q_bracket(&qlam, &sys.q);
        assert_eq!(
            g.residues[0],
            &sys.residues[0].scale(&qlam) + &RatMatrix::scalar(2, lam)
        );
        assert!(convolution(&sys, &int(0)).is_err());
    }

    #[test]
    fn addition_is_a_gauge_transform() {
        let sys = two_by_two();
        let tnew = rat(7, 2);
        let moved = addition(&sys, 1, &tnew).unwrap();
        let tj = &sys.poles[1];
        for k in 0..20 {
            let x = rat(k * k + 1, 97);
            let factor = (Rational::one() - &x / tj) / (Rational::one() - &x / &tnew);
            assert_eq!(moved.shift_matrix(&x), sys.shift_matrix(&x).scale(&factor));
        }
        assert_eq!(addition(&sys, 1, &sys.poles[1].clone()).unwrap(), sys);
        assert!(addition(&sys, 1, &int(1)).is_err());
    }

    #[test]
    fn addition_single_scalar() {
        let (b, t, t2, q) = (rat(2, 3), int(2), int(5), rat(1, 4));
        let sys = FuchsianSystem::new(vec![t.clone()], vec![RatMatrix::scalar(1, b.clone())], q.clone()).unwrap();
        let out = addition(&sys, 0, &t2).unwrap();
        let expected = &t2 / &t * &b + (&t - &t2) / (&t * (Rational::one() - &q));
        assert_eq!(out.residues[0][(0, 0)], expected);
    }

    #[test]
    fn addition_at_origin() {
        let sys = FuchsianSystem::new(
            vec![int(0), int(2)],
            vec![m(&[&[1, 1], &[0, 2]]), m(&[&[3, 0], &[1, 1]])],
            rat(1, 2),
        )
        .unwrap();
        let a = rat(3, 5);
        let out = addition_at_zero(&sys, &a).unwrap();
        for k in 1..=20 {
            let x = rat(k * k + 1, 97);
            assert_eq!(out.shift_matrix(&x), sys.shift_matrix(&x).scale(&a));
        }
        assert_eq!(addition_at_zero(&sys, &int(1)).unwrap(), sys);
        let back = addition_at_zero(&out, &(Rational::one() / &a)).unwrap();
        assert_eq!(back, sys);
        assert!(addition_at_zero(&two_by_two(), &a).is_err());
    }

    #[test]
    fn star_conditions() {
        let sys = two_by_two();
        assert!(check_star(&sys) && check_starstar(&sys));
        let bad = FuchsianSystem::new(
            vec![int(1), int(2)],
            vec![m(&[&[0, 0], &[0, 0]]), m(&[&[1, 0], &[0, 0]])],
            rat(1, 2),
        )
        .unwrap();
        assert!(!check_star(&bad));
        let single = FuchsianSystem::new(vec![int(1)], vec![m(&[&[1]])], rat(1, 2)).unwrap();
        assert!(!check_star(&single));
    }

    #[test]
    fn middle_convolution_with_unit_multiplier_is_trivial() {
        let sys = two_by_two();
        let mc = middle_convolution(&sys, &int(1)).unwrap();
        assert_eq!(mc.quotient_dim(), 2);
        assert!(isomorphism(&sys, &mc.system).found().is_some());
    }

    #[test]
    fn complement_policies_agree() {
        let sys = two_by_two();
        let qlam = rat(2, 7);
        let a = middle_convolution_with(&sys, &qlam, Complement::Standard).unwrap();
        let b = middle_convolution_with(&sys, &qlam, Complement::Reversed).unwrap();
        assert_ne!(a.r, b.r);
        assert!(isomorphism(&a.system, &b.system).found().is_some());
    }
}
