//! Numeric q-calculus: Jackson integrals, infinite q-Pochhammer symbols, the
//! q-Euler transform and residual checks of the basic identities.
//!
//! Everything is generic over a floating type `F` and works on `Complex<F>`.
//! The Euler transform is evaluated without its `x^λ` prefactor unless asked;
//! the identities checked here are homogeneous in it.

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QCalcError {
    #[error("q must satisfy 0 < |q| < 1 (got |q| = {0})")]
    InvalidQ(f64),
    #[error("truncation tolerance must be positive")]
    InvalidTolerance,
    #[error("series did not converge within {terms} terms (last term magnitude {last_term:e})")]
    Truncation { terms: usize, last_term: f64 },
    #[error("integrand does not decay along the ray through {node}")]
    NonDecayingRay { node: String },
    #[error("kernel pole at lattice node t = {node}")]
    Pole { node: String },
    #[error("path coefficients must be finite and nonzero")]
    BadCoefficient,
}

pub type QResult<T> = Result<T, QCalcError>;

/// Number of consecutive negligible terms required before a series is cut.
const SMALL_RUN: usize = 3;
/// Window of trailing terms that must shrink monotonically along a ray.
const RAY_PROBE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QContext<F> {
    pub q: Complex<F>,
    pub trunc_tol: F,
    pub max_terms: usize,
}

impl<F: Float + Debug> QContext<F> {
    pub fn new(q: Complex<F>, trunc_tol: F) -> QResult<Self> {
        Self::with_max_terms(q, trunc_tol, 1_000_000)
    }

    pub fn with_max_terms(q: Complex<F>, trunc_tol: F, max_terms: usize) -> QResult<Self> {
        let m = q.norm();
        if !(m > F::zero() && m < F::one()) {
            return Err(QCalcError::InvalidQ(m.to_f64().unwrap_or(f64::NAN)));
        }
        if trunc_tol.is_nan() || trunc_tol <= F::zero() {
            return Err(QCalcError::InvalidTolerance);
        }
        Ok(QContext { q, trunc_tol, max_terms })
    }

    pub fn real(q: F, trunc_tol: F) -> QResult<Self> {
        Self::new(Complex::new(q, F::zero()), trunc_tol)
    }

    fn one_minus_q(&self) -> Complex<F> {
        Complex::<F>::one() - self.q
    }

    /// `T_x f(x) = f(qx)`.
    pub fn shift<G: Fn(Complex<F>) -> Complex<F>>(&self, f: &G, x: Complex<F>) -> Complex<F> {
        f(self.q * x)
    }

    /// `D_x f(x) = (f(x) - f(qx)) / ((1 - q) x)`.
    pub fn dq<G: Fn(Complex<F>) -> Complex<F>>(&self, f: &G, x: Complex<F>) -> Complex<F> {
        (f(x) - f(self.q * x)) / (self.one_minus_q() * x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Endpoint<F> {
    Finite(Complex<F>),
    /// The ray marker `τ∞`.
    Ray(Complex<F>),
}

impl<F: Float> Endpoint<F> {
    fn is_origin(&self) -> bool {
        matches!(self, Endpoint::Finite(z) if z.is_zero())
    }
}

/// A formal linear combination of q-intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct JacksonPath<F> {
    terms: Vec<(Complex<F>, Endpoint<F>, Endpoint<F>)>,
}

impl<F: Float + Debug> JacksonPath<F> {
    pub fn new() -> Self {
        JacksonPath { terms: Vec::new() }
    }

    /// `[a, b]` with real finite endpoints.
    pub fn interval(a: F, b: F) -> Self {
        Self::new()
            .with_term(
                Complex::<F>::one(),
                Endpoint::Finite(Complex::new(a, F::zero())),
                Endpoint::Finite(Complex::new(b, F::zero())),
            )
            .expect("unit coefficient")
    }

    pub fn with_term(mut self, c: Complex<F>, lower: Endpoint<F>, upper: Endpoint<F>) -> QResult<Self> {
        if c.is_zero() || !c.re.is_finite() || !c.im.is_finite() {
            return Err(QCalcError::BadCoefficient);
        }
        self.terms.push((c, lower, upper));
        Ok(self)
    }

    /// `self + c * other`.
    pub fn combine(mut self, c: Complex<F>, other: &Self) -> QResult<Self> {
        for (k, lo, hi) in &other.terms {
            self = self.with_term(c * k, *lo, *hi)?;
        }
        Ok(self)
    }

    pub fn terms(&self) -> &[(Complex<F>, Endpoint<F>, Endpoint<F>)] {
        &self.terms
    }

    /// Expansion into signed `[0, τ]` pieces, in path order.
    pub fn pieces(&self) -> Vec<(Complex<F>, Endpoint<F>)> {
        let mut out = Vec::new();
        for (c, lo, hi) in &self.terms {
            if !hi.is_origin() {
                out.push((*c, *hi));
            }
            if !lo.is_origin() {
                out.push((-*c, *lo));
            }
        }
        out
    }
}

impl<F: Float + Debug> Default for JacksonPath<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// Truncated Jackson sum together with the magnitude of the last included term.
#[derive(Clone, Debug, PartialEq)]
pub struct JacksonValue<F> {
    pub value: Vec<Complex<F>>,
    pub last_term: F,
}

fn norm_vec<F: Float>(v: &[Complex<F>]) -> F {
    v.iter().fold(F::zero(), |m, z| m.max(z.norm()))
}

fn to_f64<F: Float>(x: F) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn fmt_c<F: Float + Debug>(z: Complex<F>) -> String {
    format!("{:?}{:+?}i", to_f64(z.re), to_f64(z.im))
}

/// Sums `g(τ q^{±n}) τ q^{±n}` for n = start, start+1, ... until negligible.
fn lattice_sum<F, G>(
    g: &G,
    tau: Complex<F>,
    step: Complex<F>,
    start: Complex<F>,
    ctx: &QContext<F>,
    watch_decay: bool,
) -> QResult<(Vec<Complex<F>>, F)>
where
    F: Float + Debug,
    G: Fn(Complex<F>) -> Vec<Complex<F>>,
{
    let mut acc: Option<Vec<Complex<F>>> = None;
    let mut t = tau * start;
    let mut small = 0;
    let mut last = F::zero();
    let mut recent: Vec<F> = Vec::new();
    for n in 0..ctx.max_terms {
        let term: Vec<Complex<F>> = g(t).into_iter().map(|v| v * t).collect();
        let mag = norm_vec(&term);
        if !mag.is_finite() {
            return Err(QCalcError::NonDecayingRay { node: fmt_c(t) });
        }
        let sum = acc.get_or_insert_with(|| vec![Complex::<F>::zero(); term.len()]);
        for (s, v) in sum.iter_mut().zip(&term) {
            *s = *s + *v;
        }
        last = mag;
        if watch_decay {
            recent.push(mag);
            if recent.len() > RAY_PROBE {
                recent.remove(0);
            }
        }
        if mag < ctx.trunc_tol * (F::one() + norm_vec(sum)) {
            small += 1;
            if small >= SMALL_RUN {
                if watch_decay && n >= RAY_PROBE && recent.windows(2).any(|w| w[1] > w[0]) {
                    return Err(QCalcError::NonDecayingRay { node: fmt_c(tau) });
                }
                return Ok((acc.unwrap_or_default(), last));
            }
        } else {
            small = 0;
        }
        t = t * step;
    }
    Err(QCalcError::Truncation {
        terms: ctx.max_terms,
        last_term: to_f64(last),
    })
}

/// `∫_C f(t) d_q t` for a vector-valued integrand.
pub fn jackson_integral_vec<F, G>(f: &G, path: &JacksonPath<F>, ctx: &QContext<F>) -> QResult<JacksonValue<F>>
where
    F: Float + Debug,
    G: Fn(Complex<F>) -> Vec<Complex<F>>,
{
    let mut total: Option<Vec<Complex<F>>> = None;
    let mut last_term = F::zero();
    let w = ctx.one_minus_q();
    for (c, end) in path.pieces() {
        let (mut part, tail) = match end {
            Endpoint::Finite(tau) => lattice_sum(f, tau, ctx.q, Complex::<F>::one(), ctx, false)?,
            Endpoint::Ray(tau) => {
                let qi = ctx.q.inv();
                let (pos, t1) = lattice_sum(f, tau, ctx.q, Complex::<F>::one(), ctx, false)?;
                let (neg, t2) = lattice_sum(f, tau, qi, qi, ctx, true)?;
                (pos.iter().zip(&neg).map(|(a, b)| *a + *b).collect(), t1.max(t2))
            }
        };
        last_term = last_term.max(tail);
        for v in part.iter_mut() {
            *v = *v * w * c;
        }
        match total.as_mut() {
            None => total = Some(part),
            Some(acc) => {
                for (a, b) in acc.iter_mut().zip(&part) {
                    *a = *a + *b;
                }
            }
        }
    }
    let dim = total.as_ref().map_or(0, Vec::len);
    Ok(JacksonValue {
        value: total.unwrap_or_else(|| vec![Complex::<F>::zero(); dim]),
        last_term,
    })
}

/// Scalar Jackson integral.
pub fn jackson_integral<F, G>(f: &G, path: &JacksonPath<F>, ctx: &QContext<F>) -> QResult<Complex<F>>
where
    F: Float + Debug,
    G: Fn(Complex<F>) -> Complex<F>,
{
    let v = jackson_integral_vec(&|t| vec![f(t)], path, ctx)?;
    Ok(v.value.first().copied().unwrap_or_else(Complex::zero))
}

/// `(x)_∞ = ∏_{k≥0} (1 - x q^k)`, cut once `|x q^k| < trunc_tol`.
pub fn qpochhammer_inf<F: Float + Debug>(x: Complex<F>, ctx: &QContext<F>) -> Complex<F> {
    let mut prod = Complex::<F>::one();
    let mut term = x;
    for _ in 0..ctx.max_terms {
        if term.norm() < ctx.trunc_tol {
            break;
        }
        prod = prod * (Complex::<F>::one() - term);
        if prod.is_zero() {
            break;
        }
        term = term * ctx.q;
    }
    prod
}

/// `(q t/(qlam x))_∞ / (q t/x)_∞`, the Euler kernel without `x^λ`.
pub fn euler_kernel<F: Float + Debug>(t: Complex<F>, x: Complex<F>, qlam: Complex<F>, ctx: &QContext<F>) -> QResult<Complex<F>> {
    let den = qpochhammer_inf(ctx.q * t / x, ctx);
    let scale = F::one() + (ctx.q * t / x).norm();
    if den.norm() <= F::epsilon() * scale * F::from(16.0).unwrap() {
        return Err(QCalcError::Pole { node: fmt_c(t) });
    }
    Ok(qpochhammer_inf(ctx.q * t / (qlam * x), ctx) / den)
}

/// `∫_C f(t) K(t, x) d_q t`; the `x^λ` prefactor is omitted.
pub fn euler_transform<F, G>(f: &G, qlam: Complex<F>, path: &JacksonPath<F>, x: Complex<F>, ctx: &QContext<F>) -> QResult<Complex<F>>
where
    F: Float + Debug,
    G: Fn(Complex<F>) -> Complex<F>,
{
    let pole: std::cell::Cell<Option<QCalcError>> = std::cell::Cell::new(None);
    let g = |t: Complex<F>| match euler_kernel(t, x, qlam, ctx) {
        Ok(k) => f(t) * k,
        Err(e) => {
            pole.set(Some(e));
            Complex::<F>::zero()
        }
    };
    let v = jackson_integral(&g, path, ctx)?;
    match pole.take() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// Full transform with `x^λ = exp(λ log x)` on the principal branch.
pub fn euler_transform_with_prefactor<F, G>(
    f: &G,
    lambda: Complex<F>,
    path: &JacksonPath<F>,
    x: Complex<F>,
    ctx: &QContext<F>,
) -> QResult<Complex<F>>
where
    F: Float + Debug,
    G: Fn(Complex<F>) -> Complex<F>,
{
    let qlam = (lambda * ctx.q.ln()).exp();
    let stripped = euler_transform(f, qlam, path, x, ctx)?;
    Ok((lambda * x.ln()).exp() * stripped)
}

/// `f(τ∞) = lim_{n→-∞} f(τ q^n)`, or `f(τ)` for a finite endpoint.
pub fn endpoint_value<F, G>(g: &G, end: Endpoint<F>, ctx: &QContext<F>) -> QResult<Complex<F>>
where
    F: Float + Debug,
    G: Fn(Complex<F>) -> Complex<F>,
{
    match end {
        Endpoint::Finite(t) => Ok(g(t)),
        Endpoint::Ray(tau) => {
            let qi = ctx.q.inv();
            let mut t = tau;
            let mut prev = g(t);
            let mut small = 0;
            for _ in 0..ctx.max_terms {
                t = t * qi;
                let v = g(t);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    break;
                }
                if (v - prev).norm() < ctx.trunc_tol * (F::one() + v.norm()) {
                    small += 1;
                    if small >= SMALL_RUN {
                        return Ok(v);
                    }
                } else {
                    small = 0;
                }
                prev = v;
            }
            Err(QCalcError::NonDecayingRay { node: fmt_c(tau) })
        }
    }
}

/// `[g(t)]_{t ∈ ∂C}`.
pub fn boundary<F, G>(g: &G, path: &JacksonPath<F>, ctx: &QContext<F>) -> QResult<Complex<F>>
where
    F: Float + Debug,
    G: Fn(Complex<F>) -> Complex<F>,
{
    let mut acc = Complex::<F>::zero();
    for (c, lo, hi) in path.terms() {
        acc = acc + *c * (endpoint_value(g, *hi, ctx)? - endpoint_value(g, *lo, ctx)?);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaId {
    QLeibniz,
    JacksonD,
    JacksonT,
    EulerT,
    EulerD,
}

impl LemmaId {
    pub const ALL: [LemmaId; 5] = [
        LemmaId::QLeibniz,
        LemmaId::JacksonD,
        LemmaId::JacksonT,
        LemmaId::EulerT,
        LemmaId::EulerD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::QLeibniz => "q_leibniz",
            LemmaId::JacksonD => "jackson_D",
            LemmaId::JacksonT => "jackson_T",
            LemmaId::EulerT => "euler_T",
            LemmaId::EulerD => "euler_D",
        }
    }
}

/// Inputs for [`verify_lemma`]. `g` is only used by the q-Leibniz rule; `xs` is
/// the sample grid for identities in `x`.
pub struct LemmaInput<'a, F> {
    pub f: &'a dyn Fn(Complex<F>) -> Complex<F>,
    pub g: &'a dyn Fn(Complex<F>) -> Complex<F>,
    pub path: JacksonPath<F>,
    pub qlam: Complex<F>,
    pub xs: Vec<Complex<F>>,
}

/// Largest `|LHS - RHS|` of the chosen identity over the sample grid.
pub fn verify_lemma<F: Float + Debug>(id: LemmaId, input: &LemmaInput<'_, F>, ctx: &QContext<F>) -> QResult<F> {
    let q = ctx.q;
    let w = ctx.one_minus_q();
    let f = input.f;
    let path = &input.path;
    let qlam = input.qlam;
    let mut worst = F::zero();
    let mut record = |lhs: Complex<F>, rhs: Complex<F>| worst = worst.max((lhs - rhs).norm());
    match id {
        LemmaId::QLeibniz => {
            let g = input.g;
            let fg = |x: Complex<F>| f(x) * g(x);
            for &x in &input.xs {
                let lhs = ctx.dq(&fg, x);
                record(lhs, f(x) * ctx.dq(&g, x) + ctx.dq(&f, x) * g(q * x));
                record(lhs, f(q * x) * ctx.dq(&g, x) + ctx.dq(&f, x) * g(x));
            }
        }
        LemmaId::JacksonD => {
            let df = |t: Complex<F>| ctx.dq(&f, t);
            record(jackson_integral(&df, path, ctx)?, boundary(&f, path, ctx)?);
        }
        LemmaId::JacksonT => {
            let tf = |t: Complex<F>| f(q * t);
            let tfb = |t: Complex<F>| t * f(t);
            let rhs = jackson_integral(&f, path, ctx)? / q - boundary(&tfb, path, ctx)? * w / q;
            record(jackson_integral(&tf, path, ctx)?, rhs);
        }
        LemmaId::EulerT => {
            let tf = |t: Complex<F>| f(q * t);
            for &x in &input.xs {
                let lhs = euler_transform(&tf, qlam, path, x, ctx)?;
                let bracket = |t: Complex<F>| {
                    let k = euler_kernel(t, x, qlam, ctx).unwrap_or_else(|_| Complex::new(F::nan(), F::nan()));
                    t * (Complex::<F>::one() - t / (qlam * x)) / (Complex::<F>::one() - t / x) * f(t) * k
                };
                let rhs = euler_transform(&f, qlam, path, q * x, ctx)? / q - boundary(&bracket, path, ctx)? * w / q;
                record(lhs, rhs);
            }
        }
        LemmaId::EulerD => {
            let df = |t: Complex<F>| ctx.dq(&f, t);
            for &x in &input.xs {
                let lhs = euler_transform(&df, qlam, path, x, ctx)?;
                let i0 = euler_transform(&f, qlam, path, x, ctx)?;
                let i1 = euler_transform(&f, qlam, path, q * x, ctx)?;
                let bracket = |t: Complex<F>| {
                    let k = euler_kernel(t, x, qlam, ctx).unwrap_or_else(|_| Complex::new(F::nan(), F::nan()));
                    (Complex::<F>::one() - t / (qlam * x)) / (Complex::<F>::one() - t / x) * f(t) * k
                };
                let rhs = (i0 / qlam - i1) / (w * x) + boundary(&bracket, path, ctx)?;
                record(lhs, rhs);
            }
        }
    }
    Ok(worst)
}

/// One row of [`lemma_bench`].
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaResidual<F> {
    pub lemma: LemmaId,
    pub path: &'static str,
    pub residual: F,
}

/// Truncation tolerance used by [`lemma_bench`].
pub const BENCH_TRUNCATION: f64 = 1e-16;

/// Residuals of every lemma on `[0,1]` and `[0,1] − [0,1/2]` with
/// `f = 1 + 2t − t² + t³`, `g = t³ − t`, `q^λ = 0.7`.
pub fn lemma_bench(q: Complex<f64>) -> QResult<Vec<LemmaResidual<f64>>> {
    type C = Complex<f64>;
    let ctx = QContext::new(q, BENCH_TRUNCATION)?;
    let f = |t: C| C::one() + t * 2.0 - t * t + t * t * t;
    let g = |t: C| t * t * t - t;
    let split = JacksonPath::interval(0.0, 1.0).combine(C::new(-1.0, 0.0), &JacksonPath::interval(0.0, 0.5))?;
    let paths = [("[0,1]", JacksonPath::interval(0.0, 1.0)), ("[0,1]-[0,1/2]", split)];
    let xs = vec![C::new(0.77, 0.0), C::new(1.9, 0.0), C::new(-0.6, 0.0), C::new(0.4, 0.5)];
    let mut out = Vec::new();
    for (name, path) in paths {
        let input = LemmaInput {
            f: &f,
            g: &g,
            path,
            qlam: C::new(0.7, 0.0),
            xs: xs.clone(),
        };
        for lemma in LemmaId::ALL {
            out.push(LemmaResidual {
                lemma,
                path: name,
                residual: verify_lemma(lemma, &input, &ctx)?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn ctx(q: f64) -> QContext<f64> {
        QContext::real(q, 1e-16).unwrap()
    }

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn rejects_bad_context() {
        assert!(QContext::real(1.0, 1e-10).is_err());
        assert!(QContext::real(0.0, 1e-10).is_err());
        assert!(QContext::real(0.5, 0.0).is_err());
    }

    #[test]
    fn geometric_integral() {
        let q = 0.3;
        let v = jackson_integral(&|t: C| t, &JacksonPath::interval(0.0, 1.0), &ctx(q)).unwrap();
        assert!((v - c(1.0 / (1.0 + q))).norm() < 1e-14);
        let z = jackson_integral(&|_t: C| C::zero(), &JacksonPath::interval(0.5, 2.0), &ctx(q)).unwrap();
        assert_eq!(z, C::zero());
    }

    #[test]
    fn pochhammer_values() {
        let k = ctx(0.5);
        assert_eq!(qpochhammer_inf(C::zero(), &k), C::one());
        assert_eq!(qpochhammer_inf(C::one(), &k), C::zero());
        // Independent 200-factor product.
        let direct: f64 = (0..200).map(|j| 1.0 - 0.5 * 0.5f64.powi(j)).product();
        assert!((qpochhammer_inf(c(0.5), &k).re - direct).abs() < 1e-15);
        assert!((direct - 0.288_788_095_1).abs() < 1e-10);
    }

    #[test]
    fn kernel_is_one_when_qlam_is_one() {
        let k = ctx(0.3);
        for n in 0..20 {
            let t = c(0.3f64.powi(n));
            let v = euler_kernel(t, c(0.77), C::one(), &k).unwrap();
            assert!((v - C::one()).norm() < 1e-14);
        }
    }

    #[test]
    fn kernel_pole_is_reported() {
        let k = ctx(0.5);
        // x = q t puts a zero in (q t / x)_∞.
        let e = euler_kernel(c(1.0), c(0.5), c(0.7), &k).unwrap_err();
        assert!(matches!(e, QCalcError::Pole { .. }));
        let r = euler_transform(&|t: C| t, c(0.7), &JacksonPath::interval(0.0, 1.0), c(0.25), &k);
        assert!(matches!(r, Err(QCalcError::Pole { .. })));
    }

    #[test]
    fn ray_integral_converges_for_decaying_integrand() {
        let k = ctx(0.5);
        let path = JacksonPath::new()
            .with_term(C::one(), Endpoint::Finite(C::zero()), Endpoint::Ray(C::one()))
            .unwrap();
        let f = |t: C| C::one() / (C::one() + t * t * t);
        assert!(jackson_integral(&f, &path, &k).is_ok());
        let bad = jackson_integral(&|t: C| t, &path, &k);
        assert!(bad.is_err());
    }

    #[test]
    fn truncation_error_carries_tail() {
        let k = QContext::with_max_terms(c(0.99), 1e-300, 5).unwrap();
        match jackson_integral(&|t: C| t, &JacksonPath::interval(0.0, 1.0), &k) {
            Err(QCalcError::Truncation { terms, last_term }) => {
                assert_eq!(terms, 5);
                assert!(last_term > 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn works_in_single_precision() {
        let k = QContext::<f32>::real(0.3, 1e-7).unwrap();
        let v = jackson_integral(&|t: Complex<f32>| t, &JacksonPath::interval(0.0, 1.0), &k).unwrap();
        assert!((v.re - 1.0 / 1.3).abs() < 1e-6);
    }

    fn lemma_input<'a>(f: &'a dyn Fn(C) -> C, g: &'a dyn Fn(C) -> C, path: JacksonPath<f64>) -> LemmaInput<'a, f64> {
        LemmaInput {
            f,
            g,
            path,
            qlam: c(0.7),
            xs: vec![c(0.77), c(1.9), c(-0.6), C::new(0.4, 0.5)],
        }
    }

    #[test]
    fn all_lemmas_hold_on_both_paths() {
        let k = ctx(0.3);
        let f = |t: C| t;
        let g = |t: C| t * t * t;
        let split = JacksonPath::interval(0.0, 1.0)
            .combine(c(-1.0), &JacksonPath::interval(0.0, 0.5))
            .unwrap();
        for path in [JacksonPath::interval(0.0, 1.0), split] {
            for id in LemmaId::ALL {
                let r = verify_lemma(id, &lemma_input(&f, &g, path.clone()), &k).unwrap();
                assert!(r < 1e-10, "{} residual {r}", id.name());
            }
        }
    }

    #[test]
    fn bench_residuals_are_small() {
        let rows = lemma_bench(c(0.3)).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.residual < 1e-10), "{rows:?}");
    }

    #[test]
    fn jackson_d_of_square_is_one() {
        let k = ctx(0.3);
        let v = jackson_integral(&|t: C| k.dq(&|s: C| s * s, t), &JacksonPath::interval(0.0, 1.0), &k).unwrap();
        assert!((v - C::one()).norm() < 1e-12);
    }
}
