//! Exact linear algebra over a field: echelon forms, kernels, subspaces.
//!
//! Subspaces are passed around as lists of basis column vectors.

use crate::matrix::Matrix;
use crate::scalar::Field;

pub type Vector<T> = Vec<T>;

/// Result of solving `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<T> {
    Consistent {
        particular: Vector<T>,
        kernel: Vec<Vector<T>>,
    },
    Inconsistent,
}

/// Reduced row echelon form and pivot columns.
///
/// Forward elimination is fraction-free; only the final back substitution divides.
pub fn rref<T: Field>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let (mut a, pivots) = m.fraction_free_echelon();
    let cols = a.ncols();
    for (r, &c) in pivots.iter().enumerate().rev() {
        let inv = a[(r, c)].inv();
        for j in c..cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..r {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    (a, pivots)
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    m.rank()
}

/// Scales a nonzero vector so that its first nonzero entry is one.
pub fn normalize<T: Field>(v: &[T]) -> Vector<T> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let inv = lead.inv();
            v.iter().map(|c| c.clone() * inv.clone()).collect()
        }
        None => v.to_vec(),
    }
}

/// Basis of the right kernel, one vector per free column, each normalized.
pub fn kernel<T: Field>(m: &Matrix<T>) -> Vec<Vector<T>> {
    let (r, pivots) = rref(m);
    let n = m.ncols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); n];
        v[free] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, free)].clone();
        }
        basis.push(normalize(&v));
    }
    basis
}

pub fn inverse<T: Field>(m: &Matrix<T>) -> Option<Matrix<T>> {
    if !m.is_square() {
        return None;
    }
    let n = m.nrows();
    let aug = Matrix::hstack(&[m, &Matrix::identity(n)]);
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.submatrix(0, n, n, n))
}

pub fn solve<T: Field>(a: &Matrix<T>, b: &[T]) -> LinearSolution<T> {
    let n = a.ncols();
    let col = Matrix::from_columns(&[b.to_vec()], a.nrows());
    let (r, pivots) = rref(&Matrix::hstack(&[a, &col]));
    if pivots.last() == Some(&n) {
        return LinearSolution::Inconsistent;
    }
    let mut particular = vec![T::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = r[(i, n)].clone();
    }
    LinearSolution::Consistent {
        particular,
        kernel: kernel(a),
    }
}

/// Canonical basis of the span: the nonzero rows of the rref of the stacked vectors.
pub fn span_basis<T: Field>(vectors: &[Vector<T>], dim: usize) -> Vec<Vector<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.ncols(), dim);
    let (r, pivots) = rref(&m);
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

pub fn span_dim<T: Field>(vectors: &[Vector<T>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(vectors.to_vec()))
}

pub fn in_span<T: Field>(v: &[T], basis: &[Vector<T>]) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_dim(&all) == span_dim(basis)
}

/// Basis of `U ∩ W` inside `T^dim`.
pub fn intersect<T: Field>(u: &[Vector<T>], w: &[Vector<T>], dim: usize) -> Vec<Vector<T>> {
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    // Solve sum a_i u_i - sum b_j w_j = 0.
    let mut cols = u.to_vec();
    cols.extend(w.iter().map(|v| v.iter().map(|c| -c.clone()).collect::<Vec<_>>()));
    let m = Matrix::from_columns(&cols, dim);
    let vecs: Vec<_> = kernel(&m)
        .into_iter()
        .map(|k| {
            (0..dim)
                .map(|r| {
                    u.iter()
                        .zip(&k)
                        .fold(T::zero(), |acc, (ui, ki)| acc + ui[r].clone() * ki.clone())
                })
                .collect()
        })
        .collect();
    span_basis(&vecs, dim)
}

/// `{ v : M v ∈ W }`.
pub fn preimage<T: Field>(m: &Matrix<T>, w: &[Vector<T>]) -> Vec<Vector<T>> {
    let dim_in = m.ncols();
    if w.is_empty() {
        return kernel(m);
    }
    // Solve M v - W c = 0 and keep the v part.
    let wm = Matrix::from_columns(w, m.nrows());
    let sys = Matrix::hstack(&[m, &-&wm]);
    let vecs: Vec<_> = kernel(&sys)
        .into_iter()
        .map(|k| k[..dim_in].to_vec())
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    span_basis(&vecs, dim_in)
}

/// Standard basis vectors completing `basis` to the whole space, chosen as the
/// non-pivot positions of its echelon form.
pub fn standard_complement<T: Field>(basis: &[Vector<T>], dim: usize) -> Vec<Vector<T>> {
    let pivots = if basis.is_empty() {
        Vec::new()
    } else {
        rref(&Matrix::from_rows(basis.to_vec())).1
    };
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|c| unit(dim, c))
        .collect()
}

/// Greedy completion scanning the standard basis in reverse order.
pub fn reversed_complement<T: Field>(basis: &[Vector<T>], dim: usize) -> Vec<Vector<T>> {
    let mut acc = basis.to_vec();
    let mut out = Vec::new();
    for c in (0..dim).rev() {
        let e = unit(dim, c);
        if !in_span(&e, &acc) {
            acc.push(e.clone());
            out.push(e);
        }
    }
    out
}

pub fn unit<T: Field>(dim: usize, i: usize) -> Vector<T> {
    let mut v = vec![T::zero(); dim];
    v[i] = T::one();
    v
}

/// Deterministic search for an invertible element in the span of `basis`.
///
/// Tries each basis element, then linear combinations with coefficients
/// `(j + 1)^t` and `(-1)^j (j + 2)^t`. Returns `None` when nothing invertible
/// is found within the sweep, which does not prove that none exists.
pub fn find_invertible_combination<T: Field>(basis: &[Matrix<T>], rounds: usize) -> Option<Matrix<T>> {
    let first = basis.first()?;
    let nonsingular = |m: &Matrix<T>| !m.det().is_zero();
    for b in basis {
        if nonsingular(b) {
            return Some(b.clone());
        }
    }
    let n = first.nrows();
    for t in 0..rounds as i64 {
        for variant in 0..2 {
            let mut acc = Matrix::zeros(n, first.ncols());
            for (j, b) in basis.iter().enumerate() {
                let j = j as i64;
                let c = if variant == 0 {
                    T::from_i64((j + 1).pow(t as u32))
                } else {
                    let base = T::from_i64((j + 2).pow(t as u32));
                    if j % 2 == 1 {
                        -base
                    } else {
                        base
                    }
                };
                acc = &acc + &b.scale(&c);
            }
            if nonsingular(&acc) {
                return Some(acc);
            }
        }
    }
    None
}

/// Outcome of searching for an invertible intertwiner.
#[derive(Clone, Debug, PartialEq)]
pub enum Intertwiner<T> {
    Found(Matrix<T>),
    /// Only the zero map intertwines.
    None,
    /// Nonzero intertwiners exist but the sweep found no invertible one.
    Inconclusive { dim: usize },
}

impl<T> Intertwiner<T> {
    pub fn found(&self) -> Option<&Matrix<T>> {
        match self {
            Intertwiner::Found(p) => Some(p),
            _ => None,
        }
    }
}

/// Basis of `{ P : ys[k] P = P xs[k] for all k }`.
pub fn intertwiner_space<T: Field>(xs: &[Matrix<T>], ys: &[Matrix<T>]) -> Vec<Matrix<T>> {
    assert_eq!(xs.len(), ys.len());
    let Some(x0) = xs.first() else {
        return Vec::new();
    };
    let (m, n) = (ys[0].nrows(), x0.nrows());
    let unknowns = m * n;
    let mut rows = Vec::new();
    for (x, y) in xs.iter().zip(ys) {
        for r in 0..m {
            for c in 0..n {
                let mut row = vec![T::zero(); unknowns];
                // (P X)[r][c] - (Y P)[r][c]
                for b in 0..n {
                    row[r * n + b] = row[r * n + b].clone() + x[(b, c)].clone();
                }
                for a in 0..m {
                    row[a * n + c] = row[a * n + c].clone() - y[(r, a)].clone();
                }
                rows.push(row);
            }
        }
    }
    kernel(&Matrix::from_rows(rows))
        .into_iter()
        .map(|v| Matrix::from_fn(m, n, |i, j| v[i * n + j].clone()))
        .collect()
}

/// Invertible `P` with `ys[k] P = P xs[k]`, scaled so that its first nonzero
/// entry in row-major order is one.
pub fn find_intertwiner<T: Field>(xs: &[Matrix<T>], ys: &[Matrix<T>], rounds: usize) -> Intertwiner<T> {
    if xs.is_empty() || xs[0].nrows() != ys[0].nrows() {
        return Intertwiner::None;
    }
    let space = intertwiner_space(xs, ys);
    if space.is_empty() {
        return Intertwiner::None;
    }
    match find_invertible_combination(&space, rounds) {
        Some(p) => {
            let flat: Vec<T> = p.entries().cloned().collect();
            let lead = flat.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(T::one);
            Intertwiner::Found(p.scale(&lead.inv()))
        }
        None => Intertwiner::Inconclusive { dim: space.len() },
    }
}

/// `P^{-1} M P`.
pub fn conjugate<T: Field>(m: &Matrix<T>, p: &Matrix<T>) -> Option<Matrix<T>> {
    let pinv = inverse(p)?;
    Some(&(&pinv * m) * p)
}

pub fn is_invertible<T: Field>(m: &Matrix<T>) -> bool {
    m.is_square() && !m.det().is_zero()
}

/// Identity check helper usable on non-`Eq` scalars.
pub fn is_scalar_matrix<T: Field>(m: &Matrix<T>, c: &T) -> bool {
    m.is_square()
        && (0..m.nrows()).all(|i| {
            (0..m.ncols()).all(|j| {
                if i == j {
                    m[(i, j)] == *c
                } else {
                    m[(i, j)].is_zero()
                }
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::scalar::{int, rat};
    use crate::{RatMatrix, Rational};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn kernel_is_normalized_and_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for b in &k {
            assert!(a.mul_vec(b).iter().all(Zero::is_zero));
            assert!(b.iter().find(|c| !c.is_zero()).unwrap().is_one());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).is_identity());
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&a, &v(&[1, 2])), LinearSolution::Inconsistent);
        match solve(&a, &v(&[2, 2])) {
            LinearSolution::Consistent { particular, kernel } => {
                assert_eq!(a.mul_vec(&particular), v(&[2, 2]));
                assert_eq!(kernel.len(), 1);
            }
            LinearSolution::Inconsistent => panic!(),
        }
    }

    #[test]
    fn subspace_operations() {
        let u = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let w = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let i = intersect(&u, &w, 3);
        assert_eq!(i, vec![v(&[0, 1, 0])]);
        let proj = m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        // Preimage of span(e1) under projection onto e1 is everything.
        assert_eq!(preimage(&proj, &[v(&[1, 0, 0])]).len(), 3);
        assert_eq!(standard_complement(&u, 3), vec![v(&[0, 0, 1])]);
        assert_eq!(reversed_complement(&[v(&[1, 1, 1])], 3), vec![v(&[0, 0, 1]), v(&[0, 1, 0])]);
    }

    #[test]
    fn intertwiner_recovers_conjugation() {
        let a = m(&[&[1, 2], &[0, 3]]);
        let p = m(&[&[2, 1], &[1, 1]]);
        let b = conjugate(&a, &p).unwrap();
        let g = find_intertwiner(std::slice::from_ref(&b), std::slice::from_ref(&a), 4);
        let g = g.found().expect("conjugator");
        assert_eq!(&a * g, g * &b);
        assert!(is_invertible(g));
        assert_eq!(
            find_intertwiner(&[m(&[&[1, 0], &[0, 1]])], &[m(&[&[2, 0], &[0, 2]])], 4),
            Intertwiner::None
        );
    }

    #[test]
    fn invertible_sweep() {
        let e11 = m(&[&[1, 0], &[0, 0]]);
        let e22 = m(&[&[0, 0], &[0, 1]]);
        let found = find_invertible_combination(&[e11, e22], 3).unwrap();
        assert!(is_invertible(&found));
        assert!(is_scalar_matrix(&RatMatrix::scalar(2, rat(1, 2)), &rat(1, 2)));
    }
}
