use super::params::ParamSet;
use crate::error::Result;

/// Edges of the affine `E8` Dynkin diagram: `s_0–s_3` and the chain `s_1–…–s_8`.
pub fn adjacent(i: usize, j: usize) -> bool {
    let (a, b) = (i.min(j), i.max(j));
    (a == 0 && b == 3) || (a >= 1 && b == a + 1)
}

/// Order of `s_i s_j`.
pub fn coxeter_order(i: usize, j: usize) -> usize {
    if i == j {
        1
    } else if adjacent(i, j) {
        3
    } else {
        2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub i: usize,
    pub j: usize,
    pub order: usize,
    /// `None` when the relation holds; otherwise what went wrong.
    pub failure: Option<String>,
    /// First intermediate point of the word that leaves the admissible set.
    pub guard: Option<String>,
}

impl RelationCheck {
    pub fn word(&self) -> String {
        if self.i == self.j {
            format!("s{}^2", self.i)
        } else {
            format!("(s{} s{})^{}", self.i, self.j, self.order)
        }
    }

    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

fn apply_word(p: &ParamSet, word: &[usize]) -> Result<(ParamSet, Option<String>)> {
    let mut cur = p.clone();
    let mut guard = None;
    for (k, &g) in word.iter().enumerate() {
        cur = cur.act_formal(g)?;
        if guard.is_none() {
            if let Err(e) = cur.validate() {
                guard = Some(format!("step {} (s{g}): {e}", k + 1));
            }
        }
    }
    Ok((cur, guard))
}

/// Checks `s_i² = 1` and `(s_i s_j)^{m_ij} = 1` for all generators, as maps on parameters.
/// Intermediate points of a word may leave the admissible set.
pub fn check_coxeter(p: &ParamSet) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for i in 0..9 {
        for j in i..9 {
            let order = if i == j { 2 } else { coxeter_order(i, j) };
            let word: Vec<usize> = if i == j {
                vec![i, i]
            } else {
                (0..order).flat_map(|_| [j, i]).collect()
            };
            let (failure, guard) = match apply_word(p, &word) {
                Ok((r, g)) if r == *p => (None, g),
                Ok((_, g)) => (Some("word does not return to the start".to_string()), g),
                Err(e) => (Some(e.to_string()), None),
            };
            out.push(RelationCheck { i, j, order, failure, guard });
        }
    }
    out
}

/// Finite order of `s_i s_j` as observed, up to `limit`.
pub fn observed_order(p: &ParamSet, i: usize, j: usize, limit: usize) -> Result<Option<usize>> {
    let mut cur = p.clone();
    for k in 1..=limit {
        cur = cur.act_formal(j)?.act_formal(i)?;
        if cur == *p {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::e8::params::sample_params;

    #[test]
    fn all_relations_hold() {
        let p = sample_params(7).unwrap();
        let checks = check_coxeter(&p);
        assert_eq!(checks.len(), 45);
        assert!(checks.iter().all(RelationCheck::holds), "{checks:?}");
    }

    #[test]
    fn orders_are_exact() {
        let p = sample_params(8).unwrap();
        assert_eq!(observed_order(&p, 0, 3, 6).unwrap(), Some(3));
        assert_eq!(observed_order(&p, 0, 1, 6).unwrap(), Some(2));
        assert_eq!(observed_order(&p, 3, 4, 6).unwrap(), Some(3));
        assert_eq!(observed_order(&p, 1, 5, 6).unwrap(), Some(2));
    }

    #[test]
    fn words_may_cross_the_excluded_locus() {
        let p = sample_params(14).unwrap();
        let checks = check_coxeter(&p);
        assert!(checks.iter().all(RelationCheck::holds));
        let guarded: Vec<String> = checks.iter().filter(|c| c.guard.is_some()).map(RelationCheck::word).collect();
        assert_eq!(guarded, ["(s0 s3)^3"]);
        let guard = checks.iter().find_map(|c| c.guard.clone()).unwrap();
        assert!(guard.contains("= q"), "{guard}");
    }
}
