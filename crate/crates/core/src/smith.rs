//! Smith normal form of polynomial matrices.

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::Field;

/// `u * m * v = diag(factors)` with `u`, `v` unimodular.
///
/// The nonzero invariant factors are monic and ordered so that each one is
/// divisible by the next (`d_{k+1} | d_k`); zero factors come last.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<T> {
    pub factors: Vec<Polynomial<T>>,
    pub u: Matrix<Polynomial<T>>,
    pub v: Matrix<Polynomial<T>>,
}

impl<T: Field> SmithForm<T> {
    pub fn diagonal(&self, rows: usize, cols: usize) -> Matrix<Polynomial<T>> {
        let mut d = Matrix::zeros(rows, cols);
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|f| !f.is_zero()).count()
    }
}

fn add_row_multiple<T: Field>(m: &mut Matrix<Polynomial<T>>, target: usize, src: usize, c: &Polynomial<T>) {
    for j in 0..m.ncols() {
        let v = &m[(target, j)] + &(c * &m[(src, j)]);
        m[(target, j)] = v;
    }
}

fn add_col_multiple<T: Field>(m: &mut Matrix<Polynomial<T>>, target: usize, src: usize, c: &Polynomial<T>) {
    for i in 0..m.nrows() {
        let v = &m[(i, target)] + &(c * &m[(i, src)]);
        m[(i, target)] = v;
    }
}

/// Smith normal form over `T[x]` with recorded transforms.
///
/// Pivot: the nonzero entry of least degree in the active block, ties broken
/// by the lowest `(row, col)`.
pub fn smith_normal_form<T: Field>(m: &Matrix<Polynomial<T>>) -> SmithForm<T> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = Matrix::<Polynomial<T>>::identity(rows);
    let mut v = Matrix::<Polynomial<T>>::identity(cols);
    let r = rows.min(cols);
    for k in 0..r {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if let Some(d) = a[(i, j)].degree() {
                        if best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let piv = a[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = -&a[(i, k)].div_rem(&piv).0;
                add_row_multiple(&mut a, i, k, &q);
                add_row_multiple(&mut u, i, k, &q);
                dirty |= !a[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = -&a[(k, j)].div_rem(&piv).0;
                add_col_multiple(&mut a, j, k, &q);
                add_col_multiple(&mut v, j, k, &q);
                dirty |= !a[(k, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !piv.divides(&a[(i, j)]));
            match offender {
                Some((i, _)) => {
                    let one = Polynomial::one();
                    add_row_multiple(&mut a, k, i, &one);
                    add_row_multiple(&mut u, k, i, &one);
                }
                None => break,
            }
        }
        if let Some(lc) = a[(k, k)].leading().cloned() {
            let s = Polynomial::constant(lc.inv());
            for j in 0..cols {
                a[(k, j)] = &a[(k, j)] * &s;
            }
            for j in 0..rows {
                u[(k, j)] = &u[(k, j)] * &s;
            }
        }
    }

    // Ascending chain d_1 | d_2 | ... internally; reverse the nonzero part.
    let nz = (0..r).take_while(|&k| !a[(k, k)].is_zero()).count();
    let mut factors: Vec<_> = (0..r).map(|k| a[(k, k)].clone()).collect();
    factors[..nz].reverse();
    for k in 0..nz / 2 {
        u.swap_rows(k, nz - 1 - k);
        v.swap_cols(k, nz - 1 - k);
    }
    SmithForm { factors, u, v }
}

/// Product of the invariant factors divided by the determinant; a nonzero
/// constant when the input is square and nonsingular.
pub fn determinant_unit<T: Field>(m: &Matrix<Polynomial<T>>, snf: &SmithForm<T>) -> Option<T> {
    let det = m.det();
    let prod = snf
        .factors
        .iter()
        .fold(Polynomial::one(), |acc, f| &acc * f);
    if det.is_zero() {
        return None;
    }
    let (q, rem) = prod.div_rem(&det);
    (rem.is_zero() && q.is_constant() && !q.is_zero()).then(|| q.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::{PolyMatrix, RatPoly};

    fn p(c: &[i64]) -> RatPoly {
        Polynomial::from_coeffs(c.iter().map(|&v| int(v)).collect())
    }

    fn check_transform(m: &PolyMatrix, s: &SmithForm<crate::Rational>) {
        let d = s.diagonal(m.nrows(), m.ncols());
        assert_eq!(&(&s.u * m) * &s.v, d);
        assert!(s.u.det().is_constant() && !s.u.det().is_zero());
        assert!(s.v.det().is_constant() && !s.v.det().is_zero());
    }

    #[test]
    fn diagonal_input_is_reordered() {
        let m = Matrix::diag(&[p(&[0, 1]), p(&[0, -1, 1])]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![p(&[0, -1, 1]), p(&[0, 1])]);
        check_transform(&m, &s);
    }

    #[test]
    fn identity_gives_ones() {
        let m = PolyMatrix::identity(3);
        let s = smith_normal_form(&m);
        assert!(s.factors.iter().all(|f| f.is_one()));
    }

    #[test]
    fn coprime_diagonal_merges() {
        // diag(x, x+1) has invariant factors x(x+1), 1.
        let m = Matrix::diag(&[p(&[0, 1]), p(&[1, 1])]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![p(&[0, 1, 1]), p(&[1])]);
        check_transform(&m, &s);
        assert!(determinant_unit(&m, &s).is_some());
    }

    #[test]
    fn dense_example() {
        let m = Matrix::from_rows(vec![
            vec![p(&[1, 1]), p(&[0, 2]), p(&[3])],
            vec![p(&[0, 0, 1]), p(&[1, 1]), p(&[0, 1])],
            vec![p(&[2]), p(&[0, 1, 1]), p(&[1, 0, 1])],
        ]);
        let s = smith_normal_form(&m);
        check_transform(&m, &s);
        for w in s.factors.windows(2) {
            assert!(w[1].divides(&w[0]));
        }
        assert_eq!(s.factors[0], m.det().monic());
    }

    #[test]
    fn singular_matrix_has_zero_factor() {
        let m = Matrix::from_rows(vec![vec![p(&[0, 1]), p(&[0, 1])], vec![p(&[0, 1]), p(&[0, 1])]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.rank(), 1);
        assert!(s.factors[1].is_zero());
        check_transform(&m, &s);
    }
}
