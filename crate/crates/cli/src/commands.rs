use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use qmc_core::e8::action::{
    braid_check, involution_check, s0_post_checks, s0_witness, si_action, star_conditions, BraidOutcome,
};
use qmc_core::e8::coxeter::check_coxeter;
use qmc_core::e8::spectral::spectral_type;
use qmc_core::e8::{build_system, s0_action, sample_params, sample_system, CubicSystem, ParamSet};
use qmc_core::qcalc::lemma_bench;
use qmc_core::scalar::fmt_rational;
use qmc_core::scalarred::{
    apparent_check, f_closed_form_for, point_configuration, qfuchs_check, reduce_to_scalar, FormulaVariant,
};
use qmc_core::{Error, Result};

use crate::config::{params_json, Command, RunConfig};
use crate::report::{matrix_json, poly_json, Check, Status};

pub const EXPECTED_SPECTRAL: &str = "(3;3;1,1,1,1,1,1,1,1,1)";

/// One input instance: a sampled seed or the explicit config.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Seed(u64),
    Explicit,
}

impl Source {
    fn label(self) -> Option<u64> {
        match self {
            Source::Seed(s) => Some(s),
            Source::Explicit => None,
        }
    }
}

fn params_for(cfg: &RunConfig, src: Source) -> Result<ParamSet> {
    match src {
        Source::Seed(s) => sample_params(s),
        Source::Explicit => Ok(cfg.explicit.as_ref().expect("explicit source").params.clone()),
    }
}

fn system_for(cfg: &RunConfig, src: Source) -> Result<CubicSystem> {
    match src {
        Source::Seed(s) => sample_system(s),
        Source::Explicit => {
            let x = cfg.explicit.as_ref().expect("explicit source");
            let acc = x
                .accessory
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("config has no `accessory` entries".into()))?;
            build_system(&x.params, acc)
        }
    }
}

pub fn sources(cfg: &RunConfig) -> Vec<Source> {
    if cfg.explicit.is_some() {
        vec![Source::Explicit]
    } else {
        (cfg.seed..cfg.seed + cfg.samples).map(Source::Seed).collect()
    }
}

fn system_json(sys: &CubicSystem) -> serde_json::Value {
    json!({
        "params": params_json(&sys.params),
        "a1": matrix_json(&sys.a1),
        "a2": matrix_json(&sys.a2),
        "accessory": sys.accessory.as_ref().map(|a| a.iter().map(fmt_rational).collect::<Vec<_>>()),
    })
}

fn build(sys: &CubicSystem, s: Option<u64>) -> Vec<Check> {
    let det = sys.matrix().det();
    let expected = CubicSystem::expected_det(&sys.params);
    let residual = &det - &expected;
    let w = json!({ "system": system_json(sys), "det": poly_json(&det) });
    vec![Check::from_bool("det A = κ³∏(x+e_i)", s, residual.is_zero(), "exact polynomial identity", || residual.to_string())
        .with_witness(w)]
}

fn s0(sys: &CubicSystem, s: Option<u64>) -> Vec<Check> {
    let out = match s0_action(sys) {
        Ok(o) => o,
        Err(e) => return vec![Check::error("s0", s, &e)],
    };
    let post = match s0_post_checks(&out) {
        Ok(()) => Check::pass("s0 preserves the cubic form", s, "A(0) = I, leading κ̃ I, det Ã identity"),
        Err(e) => Check::error("s0 preserves the cubic form", s, &e),
    };
    let w = s0_witness(sys, &out);
    let inter = Check::from_bool("intermediate identities", s, w.all(), format!("{w:?}"), || format!("{w:?}"));
    let post = post.with_witness(json!({
        "system": system_json(&out.system),
        "qlam": fmt_rational(&out.mc.qlam),
        "basis_r": matrix_json(&out.mc.r),
    }));
    vec![post, inter]
}

fn orbit(sys: &CubicSystem, word: &[usize], s: Option<u64>) -> Vec<Check> {
    let mut cur = sys.clone();
    let mut checks = Vec::new();
    for (k, &g) in word.iter().enumerate() {
        let name = format!("step {}: s{g}", k + 1);
        let next = if g == 0 { s0_action(&cur).map(|o| o.system) } else { si_action(&cur, g) };
        cur = match next {
            Ok(n) => n,
            Err(e) => {
                checks.push(Check::error(name, s, &e));
                return checks;
            }
        };
        let det = cur.check_det();
        let spec = spectral_type(&cur.matrix()).map_or_else(|e| e.to_string(), |t| t.to_string());
        let ok = det.is_ok() && spec == EXPECTED_SPECTRAL;
        let detail = format!("det identity {}, spectral type {spec}", if det.is_ok() { "holds" } else { "fails" });
        checks.push(
            Check::from_bool(name, s, ok, detail, || det.err().map_or(spec.clone(), |e| e.to_string()))
                .with_witness(json!({ "params": params_json(&cur.params) })),
        );
    }
    checks
}

fn coxeter(p: &ParamSet, s: Option<u64>) -> Vec<Check> {
    check_coxeter(p)
        .into_iter()
        .map(|c| {
            let detail = match &c.guard {
                Some(g) => format!("order {}; intermediate point inadmissible at {g}", c.order),
                None => format!("order {}", c.order),
            };
            match &c.failure {
                None => Check::pass(c.word(), s, detail),
                Some(f) => Check::fail(c.word(), s, detail, f.clone()),
            }
        })
        .collect()
}

fn braid_outcome(name: String, s: Option<u64>, r: Result<BraidOutcome>) -> Check {
    match r {
        Ok(BraidOutcome::Conjugate(g)) => {
            Check::pass(name, s, "conjugator G with A G = G Ã, det G ≠ 0").with_witness(json!({ "conjugator": matrix_json(&g) }))
        }
        Ok(BraidOutcome::NotConjugate) => Check::fail(name, s, "no nonzero intertwiner", "solution space of A(x) G = G Ã(x) is {0}"),
        Ok(BraidOutcome::Inconclusive { dim }) => {
            Check::new(name, s, Status::Inconclusive, format!("intertwiner space of dimension {dim} without an invertible element found"))
        }
        Ok(BraidOutcome::Unverified) => Check::new(name, s, Status::Unverified, "relations involving s3 are unverified by design"),
        Err(e) => Check::error(name, s, &e),
    }
}

fn braid(sys: &CubicSystem, s: Option<u64>) -> Vec<Check> {
    match star_conditions(sys) {
        Ok((true, true)) => {}
        Ok(stars) => {
            return vec![Check::new("(*) and (**)", s, Status::Inconclusive, format!("conditions (*), (**) = {stars:?}; braid relations not tested"))]
        }
        Err(e) => return vec![Check::error("(*) and (**)", s, &e)],
    }
    let mut checks: Vec<Check> = (1..=8).map(|i| braid_outcome(format!("s0 s{i} ≅ s{i} s0"), s, braid_check(sys, i))).collect();
    checks.push(braid_outcome("s0² ≅ id".into(), s, involution_check(sys)));
    checks
}

fn reduce(sys: &CubicSystem, s: Option<u64>) -> Vec<Check> {
    let red = match reduce_to_scalar(sys) {
        Ok(r) => r,
        Err(e) => return vec![Check::error("scalar reduction", s, &e)],
    };
    let q = &sys.params.q;
    let degs: Vec<Option<usize>> = red.op.p.iter().map(|p| p.degree()).collect();
    let mut checks = vec![Check::from_bool("deg P_j = 7", s, degs.iter().all(|d| *d == Some(7)), format!("{degs:?}"), || format!("{degs:?}"))];
    let witness = json!({
        "f": fmt_rational(&red.f),
        "p": red.op.p.iter().map(poly_json).collect::<Vec<_>>(),
    });
    match point_configuration(&red.op, q) {
        Ok(cfg) => {
            let diagram: Vec<String> = cfg.to_string().lines().map(str::to_string).collect();
            checks.push(
                Check::from_bool("q-Fuchs relation", s, qfuchs_check(&cfg), "products of characteristic roots", || cfg.to_string())
                    .with_witness(json!({ "diagram": diagram })),
            );
        }
        Err(e) => checks.push(Check::error("point configuration", s, &e)),
    }
    checks.push(match apparent_check(&red.op, &red.f, q) {
        Ok(c) => Check::pass("apparent singularity at f", s, format!("c = {}", fmt_rational(&c))),
        Err(e) => Check::error("apparent singularity at f", s, &e),
    });
    checks.push(match f_closed_form_for(sys, FormulaVariant::Corrected) {
        Ok(v) => Check::from_bool("closed form of f", s, v == red.f, "f = −f1/f2", || fmt_rational(&(&v - &red.f))),
        Err(e) => Check::error("closed form of f", s, &e),
    });
    checks[0] = checks[0].clone().with_witness(witness);
    checks
}

fn spectral(sys: &CubicSystem, s: Option<u64>) -> Vec<Check> {
    let check = match spectral_type(&sys.matrix()) {
        Ok(t) => {
            let t = t.to_string();
            Check::from_bool("spectral type", s, t == EXPECTED_SPECTRAL, t.clone(), || t.clone())
        }
        Err(e) => Check::error("spectral type", s, &e),
    };
    vec![check]
}

fn lemmas(cfg: &RunConfig) -> Vec<Check> {
    let q = cfg.q_numeric.expect("lemmas has q");
    match lemma_bench(q) {
        Ok(rows) => rows
            .into_iter()
            .map(|r| {
                let name = format!("{} on {}", r.lemma.name(), r.path);
                let detail = format!("residual {:.3e}, tolerance {:.1e}", r.residual, cfg.tol);
                Check::from_bool(name, None, r.residual < cfg.tol, detail, || format!("{:e}", r.residual))
            })
            .collect(),
        Err(e) => vec![Check::fail("lemma bench", None, e.to_string(), e.to_string())],
    }
}

fn per_source(cfg: &RunConfig, src: Source) -> Vec<Check> {
    let s = src.label();
    if cfg.command == Command::Coxeter {
        return match params_for(cfg, src) {
            Ok(p) => coxeter(&p, s),
            Err(e) => vec![Check::error("parameters", s, &e)],
        };
    }
    let sys = match system_for(cfg, src) {
        Ok(sys) => sys,
        Err(e) => return vec![Check::error("system", s, &e)],
    };
    match &cfg.command {
        Command::Build => build(&sys, s),
        Command::S0 => s0(&sys, s),
        Command::Orbit { .. } => orbit(&sys, &cfg.word, s),
        Command::Braid => braid(&sys, s),
        Command::Reduce => reduce(&sys, s),
        Command::Spectral => spectral(&sys, s),
        Command::Coxeter | Command::Lemmas { .. } => unreachable!("handled separately"),
    }
}

/// Runs every instance, in parallel when a pool is given, merging in seed order.
pub fn run_checks(cfg: &RunConfig, pool: Option<&rayon::ThreadPool>) -> Vec<Check> {
    if matches!(cfg.command, Command::Lemmas { .. }) {
        return lemmas(cfg);
    }
    let srcs = sources(cfg);
    let nested: Vec<Vec<Check>> = match pool {
        Some(pool) => pool.install(|| srcs.par_iter().map(|&src| per_source(cfg, src)).collect()),
        None => srcs.iter().map(|&src| per_source(cfg, src)).collect(),
    };
    nested.into_iter().flatten().collect()
}
