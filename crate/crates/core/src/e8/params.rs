use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, rat};
use crate::Rational;

const MAX_ATTEMPTS: usize = 1000;

/// Parameters `e_1..e_9`, `κ` and `q` of the cubic system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamSet {
    pub e: [Rational; 9],
    pub kappa: Rational,
    pub q: Rational,
}

impl ParamSet {
    pub fn new(e: [Rational; 9], kappa: Rational, q: Rational) -> Result<Self> {
        let p = ParamSet { e, kappa, q };
        p.validate()?;
        Ok(p)
    }

    /// `κ e_1 e_2 e_3`.
    pub fn head_product(&self) -> Rational {
        &self.kappa * &self.e[0] * &self.e[1] * &self.e[2]
    }

    /// The multiplier `q^λ = (κ e_1 e_2 e_3)⁻¹` used by `s_0`.
    pub fn qlam(&self) -> Rational {
        self.head_product().recip()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Inadmissible(msg));
        if !(self.q > Rational::zero() && self.q < Rational::one()) {
            return bad(format!("q = {} is not in (0, 1)", fmt_rational(&self.q)));
        }
        if self.kappa.is_zero() || self.e.iter().any(Zero::is_zero) {
            return bad("κ and all e_i must be nonzero".into());
        }
        let prod = self.e.iter().fold(self.kappa.pow(3), |acc, e| acc * e);
        if !prod.is_one() {
            return bad(format!("κ³∏e_i = {} ≠ 1", fmt_rational(&prod)));
        }
        for i in 0..9 {
            for j in i + 1..9 {
                if self.e[i] == self.e[j] {
                    return bad(format!("e_{} = e_{}", i + 1, j + 1));
                }
                for k in j + 1..9 {
                    if (&self.kappa * &self.e[i] * &self.e[j] * &self.e[k]).is_one() {
                        return bad(format!("κ e_{} e_{} e_{} = 1", i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        if self.qlam() == self.q {
            return bad("(κ e_1 e_2 e_3)⁻¹ = q".into());
        }
        Ok(())
    }

    /// `s_i`, swapping `e_i` and `e_{i+1}` (`i = 1..8`).
    pub fn swap(&self, i: usize) -> Result<Self> {
        if !(1..=8).contains(&i) {
            return Err(Error::InvalidParameter(format!("s_{i} is not a transposition")));
        }
        self.act(i)
    }

    /// Parameter part of `s_0`.
    pub fn s0(&self) -> Result<Self> {
        self.act(0)
    }

    /// Generator `s_i` for `i = 0..8`.
    pub fn act(&self, i: usize) -> Result<Self> {
        let p = self.act_formal(i)?;
        p.validate()?;
        Ok(p)
    }

    /// `s_i` as a map on parameters, without the admissibility check on the image.
    pub fn act_formal(&self, i: usize) -> Result<Self> {
        if i > 8 {
            return Err(Error::InvalidParameter(format!("no generator s_{i}")));
        }
        let mut e = self.e.clone();
        if i > 0 {
            e.swap(i - 1, i);
            return Ok(ParamSet { e, kappa: self.kappa.clone(), q: self.q.clone() });
        }
        let m = self.head_product();
        let e123 = &self.e[0] * &self.e[1] * &self.e[2];
        for x in e.iter_mut().skip(3) {
            *x = &m * &*x;
        }
        let kappa = (&self.kappa * &e123 * &e123).recip();
        Ok(ParamSet { e, kappa, q: self.q.clone() })
    }
}

fn small_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    let n = rng.gen_range(1..=max_num);
    let d = rng.gen_range(1..=max_den);
    let r = rat(n, d);
    if rng.gen_bool(0.5) {
        -r
    } else {
        r
    }
}

/// Deterministic admissible parameters: `e_1..e_8`, `κ` and `q` drawn from
/// small rationals, `e_9` fixed by `κ³∏e_i = 1`.
pub fn sample_params(seed: u64) -> Result<ParamSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut e: [Rational; 9] = std::array::from_fn(|_| Rational::zero());
        for x in e.iter_mut().take(8) {
            *x = small_rational(&mut rng, 9, 4);
        }
        let kappa = small_rational(&mut rng, 3, 3);
        let qd = rng.gen_range(2..=7);
        let q = rat(rng.gen_range(1..qd), qd);
        let partial = e[..8].iter().fold(kappa.pow(3), |acc, x| acc * x);
        e[8] = partial.recip();
        if let Ok(p) = ParamSet::new(e, kappa, q) {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Four small rationals for the free entries `a_3..a_6`.
pub fn sample_accessory(rng: &mut ChaCha8Rng) -> [Rational; 4] {
    std::array::from_fn(|_| small_rational(rng, 5, 3))
}

pub(crate) fn accessory_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15)
}
