use std::fmt;

use num_traits::{One, Zero};

use super::ScalarOperator;
use crate::error::{Error, Result};
use crate::roots::rational_roots;
use crate::{RatPoly, Rational};

/// A characteristic root on one boundary line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharRoot {
    pub root: Rational,
    pub multiplicity: usize,
    /// Number of leading slices in the cascade that vanish at the root; the
    /// head of a `k`-th root chain has depth `k`.
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub q: Rational,
    pub x0: Vec<CharRoot>,
    pub x_inf: Vec<CharRoot>,
    pub t0: Vec<CharRoot>,
    pub t_inf: Vec<CharRoot>,
}

fn line(cascade: &[RatPoly], label: &str) -> Result<Vec<CharRoot>> {
    let head = &cascade[0];
    let roots = rational_roots(head);
    if !roots.cofactor.is_constant() {
        return Err(Error::Unsupported(format!(
            "irrational characteristic roots at {label}: factor {}",
            roots.cofactor
        )));
    }
    Ok(roots
        .roots
        .into_iter()
        .map(|(root, multiplicity)| {
            let depth = cascade.iter().take_while(|p| p.eval(&root).is_zero()).count();
            CharRoot { root, multiplicity, depth }
        })
        .collect())
}

pub fn point_configuration(op: &ScalarOperator, q: &Rational) -> Result<PointConfiguration> {
    let m = op.x_degree();
    let slices: Vec<RatPoly> = (0..=m).map(|i| op.x_slice(i)).collect();
    let rev = |v: &[RatPoly]| v.iter().rev().cloned().collect::<Vec<_>>();
    for (label, p) in [("x=0", &slices[0]), ("x=∞", &slices[m])] {
        if p.degree() != Some(op.t_degree()) || p.coeff(0).is_zero() {
            return Err(Error::InvalidParameter(format!("operator is not Fuchsian at {label}")));
        }
    }
    Ok(PointConfiguration {
        q: q.clone(),
        x0: line(&slices, "x=0")?,
        x_inf: line(&rev(&slices), "x=∞")?,
        t0: line(&op.p, "T_x=0")?,
        t_inf: line(&rev(&op.p), "T_x=∞")?,
    })
}

fn product(roots: &[CharRoot]) -> Rational {
    roots
        .iter()
        .fold(Rational::one(), |acc, r| acc * r.root.pow(r.multiplicity as i32))
}

/// `a_1⋯a_N d_1⋯d_M = b_1⋯b_N c_1⋯c_M`.
pub fn qfuchs_check(cfg: &PointConfiguration) -> bool {
    product(&cfg.x0) * product(&cfg.t_inf) == product(&cfg.x_inf) * product(&cfg.t0)
}

impl PointConfiguration {
    pub fn total(roots: &[CharRoot]) -> usize {
        roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Groups roots into chains `{e, e q^s, …}` with `s = 1` at `x=0`,
    /// `T_x=0` and `s = −1` at the infinite ends.
    pub fn chains(roots: &[CharRoot], q: &Rational, ascending: bool) -> Vec<Vec<Rational>> {
        let step = if ascending { q.clone() } else { q.recip() };
        let mut order: Vec<&CharRoot> = roots.iter().collect();
        order.sort_by(|a, b| b.depth.cmp(&a.depth).then(a.root.cmp(&b.root)));
        let mut used: Vec<Rational> = Vec::new();
        let mut out = Vec::new();
        for r in order {
            if used.contains(&r.root) {
                continue;
            }
            let mut chain = vec![r.root.clone()];
            let mut next = &r.root * &step;
            for d in (1..r.depth).rev() {
                match roots.iter().find(|c| c.root == next && c.depth == d) {
                    Some(c) if !used.contains(&c.root) => chain.push(c.root.clone()),
                    _ => break,
                }
                next = &next * &step;
            }
            used.extend(chain.iter().cloned());
            for _ in 0..r.multiplicity {
                out.push(chain.clone());
            }
        }
        out
    }

    fn render(roots: &[CharRoot], q: &Rational, ascending: bool) -> String {
        Self::chains(roots, q, ascending)
            .iter()
            .map(|c| {
                let items: Vec<String> = c.iter().map(Rational::to_string).collect();
                if c.len() == 1 {
                    items[0].clone()
                } else {
                    format!("{{{}}}", items.join(", "))
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    }
}

impl fmt::Display for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            ("T_x=∞", &self.t_inf, false),
            ("x=0", &self.x0, true),
            ("x=∞", &self.x_inf, false),
            ("T_x=0", &self.t0, true),
        ];
        for (label, roots, asc) in rows {
            writeln!(f, "{label:<6}| {}", Self::render(roots, &self.q, asc))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn constant_coefficient_first_order() {
        // (T − a) with P_j constant: one root a at both x-ends.
        let a = r(3, 5);
        let op = ScalarOperator::new(vec![RatPoly::constant(-a.clone()), RatPoly::one()]).unwrap();
        let cfg = point_configuration(&op, &r(1, 2)).unwrap();
        assert_eq!(cfg.x0, vec![CharRoot { root: a.clone(), multiplicity: 1, depth: 1 }]);
        assert_eq!(cfg.x_inf, cfg.x0);
        assert!(cfg.t0.is_empty() && cfg.t_inf.is_empty());
        assert!(qfuchs_check(&cfg));
    }

    #[test]
    fn chain_detection() {
        // L = (1−T)(1−T/q) + x(1−T) + x²: a double root {1, q} at x=0.
        let q = r(1, 3);
        let t = |c0: Rational, c1: Rational, c2: Rational| vec![c0, c1, c2];
        let l0 = t(r(1, 1), -(r(1, 1) + q.recip()), q.recip());
        let l1 = t(r(1, 1), r(-1, 1), r(0, 1));
        let l2 = t(r(1, 1), r(0, 1), r(0, 1));
        let p: Vec<RatPoly> = (0..3)
            .map(|j| RatPoly::from_coeffs(vec![l0[j].clone(), l1[j].clone(), l2[j].clone()]))
            .collect();
        let op = ScalarOperator { p };
        let slices: Vec<RatPoly> = (0..3).map(|i| op.x_slice(i)).collect();
        let roots = line(&slices, "x=0").unwrap();
        assert_eq!(roots.iter().find(|c| c.root == r(1, 1)).unwrap().depth, 2);
        assert_eq!(roots.iter().find(|c| c.root == q).unwrap().depth, 1);
        let chains = PointConfiguration::chains(&roots, &q, true);
        assert_eq!(chains, vec![vec![r(1, 1), q]]);
    }

    #[test]
    fn worked_example_relation() {
        // Roots e_1..e_15 chosen freely; only the products matter.
        let q = r(2, 7);
        let e: Vec<Rational> = (1..=15).map(|i| r(i + 1, 3)).collect();
        let simple = |v: &Rational| CharRoot { root: v.clone(), multiplicity: 1, depth: 1 };
        let x0 = vec![simple(&e[0]), simple(&e[1]), simple(&e[2]), simple(&(&e[2] * &q))];
        let x_inf: Vec<CharRoot> = e[3..7].iter().map(simple).collect();
        let mut t0: Vec<CharRoot> = e[7..9].iter().map(simple).collect();
        t0.extend([&e[9], &e[10]].iter().flat_map(|v| [simple(v), simple(&(*v * &q))]));
        let mut t_inf: Vec<CharRoot> = e[11..14].iter().map(simple).collect();
        t_inf.extend((0..3).map(|k| simple(&(&e[14] / q.pow(k)))));
        let cfg = PointConfiguration { q: q.clone(), x0, x_inf, t0, t_inf };
        let lhs = &e[0] * &e[1] * e[2].pow(2) * &q * &e[11] * &e[12] * &e[13] * e[14].pow(3) / q.pow(3);
        let rhs = &e[3] * &e[4] * &e[5] * &e[6] * &e[7] * &e[8] * e[9].pow(2) * &q * e[10].pow(2) * &q;
        assert_eq!(product(&cfg.x0) * product(&cfg.t_inf), lhs);
        assert_eq!(product(&cfg.x_inf) * product(&cfg.t0), rhs);
    }
}
