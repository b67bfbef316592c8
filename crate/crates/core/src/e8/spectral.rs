use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::roots::rational_roots;
use crate::smith::smith_normal_form;
use crate::{PolyMatrix, RatMatrix, RatPoly, Rational};

/// `(S_0; S_∞; S_div)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralType {
    /// One conjugate partition per eigenvalue of `A(0)`.
    pub at_zero: Vec<Vec<usize>>,
    /// The same for the leading coefficient.
    pub at_infinity: Vec<Vec<usize>>,
    /// Roots of `det A` in increasing order with their conjugate partitions.
    pub divisor: Vec<(Rational, Vec<usize>)>,
}

fn join(parts: &[Vec<usize>], inner: &str) -> String {
    parts
        .iter()
        .map(|p| p.iter().map(usize::to_string).collect::<Vec<_>>().join(inner))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for SpectralType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let div: Vec<Vec<usize>> = self.divisor.iter().map(|(_, p)| p.clone()).collect();
        let div = if div.is_empty() { "∅".to_string() } else { join(&div, ",") };
        write!(f, "({};{};{})", join(&self.at_zero, ""), join(&self.at_infinity, ""), div)
    }
}

/// Conjugate of a partition given as a nonincreasing list.
fn conjugate(p: &[usize]) -> Vec<usize> {
    let top = p.first().copied().unwrap_or(0);
    (1..=top).map(|j| p.iter().filter(|&&v| v >= j).count()).collect()
}

/// Conjugate Jordan partitions of a constant matrix, eigenvalues ascending.
fn jordan_data(m: &RatMatrix, label: &str) -> Result<Vec<Vec<usize>>> {
    let n = m.nrows();
    let char_poly = (&PolyMatrix::scalar(n, RatPoly::x()) - &PolyMatrix::constant(m)).det();
    let roots = rational_roots(&char_poly);
    if !roots.cofactor.is_constant() {
        return Err(Error::Unsupported(format!(
            "irrational eigenvalues at {label}: factor {}",
            roots.cofactor
        )));
    }
    Ok(roots
        .roots
        .iter()
        .map(|(alpha, mult)| {
            let shifted = m - &RatMatrix::scalar(n, alpha.clone());
            let mut ranks = vec![n];
            let mut power = RatMatrix::identity(n);
            // Blocks of size ≥ k number r_{k−1} − r_k; the list is already conjugate.
            while n - ranks.last().copied().unwrap() < *mult {
                power = &power * &shifted;
                ranks.push(power.rank());
            }
            ranks.windows(2).map(|w| w[0] - w[1]).filter(|&d| d > 0).collect()
        })
        .collect())
}

pub fn spectral_type(a: &PolyMatrix) -> Result<SpectralType> {
    let deg = a.max_degree().unwrap_or(0);
    let at_zero = jordan_data(&a.coeff_matrix(0), "x = 0")?;
    let at_infinity = jordan_data(&a.coeff_matrix(deg), "x = ∞")?;
    let det = a.det();
    if det.is_zero() {
        return Err(Error::Unsupported("singular matrix".into()));
    }
    let roots = rational_roots(&det);
    if !roots.cofactor.is_constant() {
        return Err(Error::Unsupported(format!(
            "irrational divisor roots: factor {}",
            roots.cofactor
        )));
    }
    let snf = smith_normal_form(a);
    let divisor = roots
        .roots
        .iter()
        .map(|(r, _)| {
            let orders: Vec<usize> = snf.factors.iter().map(|d| d.root_multiplicity(r)).collect();
            (r.clone(), conjugate(&orders))
        })
        .collect();
    Ok(SpectralType {
        at_zero,
        at_infinity,
        divisor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::e8::system::sample_system;
    use crate::scalar::int;
    use crate::Polynomial;

    #[test]
    fn e8_system_type() {
        let sys = sample_system(0).unwrap();
        let st = spectral_type(&sys.matrix()).unwrap();
        assert_eq!(st.to_string(), "(3;3;1,1,1,1,1,1,1,1,1)");
    }

    #[test]
    fn identity_type() {
        let st = spectral_type(&PolyMatrix::identity(4)).unwrap();
        assert_eq!(st.to_string(), "(4;4;∅)");
    }

    #[test]
    fn repeated_divisor() {
        // diag(x − 1, (x − 1)²): invariant factors (x−1)², x−1, so the orders
        // at 1 are (2, 1) and their conjugate is (2, 1).
        let xm1 = Polynomial::from_coeffs(vec![int(-1), int(1)]);
        let a = PolyMatrix::diag(&[xm1.clone(), &xm1 * &xm1]);
        let st = spectral_type(&a).unwrap();
        assert_eq!(st.divisor, vec![(int(1), vec![2, 1])]);
        // A(0) = diag(−1, 1) and the x² coefficient is diag(0, 1).
        assert_eq!(st.at_zero, vec![vec![1], vec![1]]);
        assert_eq!(st.at_infinity, vec![vec![1], vec![1]]);
    }

    #[test]
    fn jordan_block_at_zero() {
        let a = RatMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        assert_eq!(jordan_data(&a, "0").unwrap(), vec![vec![1, 1]]);
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
    }
}
