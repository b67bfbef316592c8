use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qmc_core::scalar::fmt_rational;
use qmc_core::{Error, RatMatrix, RatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    /// Outside what the library verifies; never affects the exit code.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub sample: Option<u64>,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Exact residual that violated the check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, sample: Option<u64>, status: Status, detail: impl Into<String>) -> Self {
        Check { name: name.into(), sample, status, detail: detail.into(), witness: None, residual: None }
    }

    pub fn pass(name: impl Into<String>, sample: Option<u64>, detail: impl Into<String>) -> Self {
        Self::new(name, sample, Status::Pass, detail)
    }

    pub fn fail(name: impl Into<String>, sample: Option<u64>, detail: impl Into<String>, residual: impl Into<String>) -> Self {
        let mut c = Self::new(name, sample, Status::Fail, detail);
        c.residual = Some(residual.into());
        c
    }

    pub fn from_bool(name: impl Into<String>, sample: Option<u64>, ok: bool, detail: impl Into<String>, residual: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name, sample, detail)
        } else {
            Self::fail(name, sample, detail, residual())
        }
    }

    /// A library error becomes a failed check carrying its residual.
    pub fn error(name: impl Into<String>, sample: Option<u64>, err: &Error) -> Self {
        let residual = match err {
            Error::Consistency { residual, .. } => residual.clone(),
            other => other.to_string(),
        };
        Self::fail(name, sample, err.to_string(), residual)
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub input_digest: String,
    pub status: Status,
    pub counts: BTreeMap<Status, usize>,
    pub checks: Vec<Check>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str, input: Value, checks: Vec<Check>, timing_ms: u128) -> Self {
        let digest = hex::encode(Sha256::digest(input.to_string().as_bytes()));
        let mut counts = BTreeMap::new();
        for c in &checks {
            *counts.entry(c.status).or_insert(0) += 1;
        }
        let status = if counts.contains_key(&Status::Fail) {
            Status::Fail
        } else if counts.contains_key(&Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        Report { command: command.to_string(), input, input_digest: digest, status, counts, checks, timing_ms }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Unverified => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn matrix_json(m: &RatMatrix) -> Value {
    json!((0..m.nrows()).map(|i| m.row(i).iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn poly_json(p: &RatPoly) -> Value {
    json!(p.coeffs().iter().map(fmt_rational).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(statuses: &[Status]) -> Report {
        let checks = statuses.iter().map(|&s| Check::new("c", None, s, "")).collect();
        Report::new("build", json!({"seed": 0}), checks, 0)
    }

    #[test]
    fn exit_code_contract() {
        assert_eq!(report(&[Status::Pass, Status::Unverified]).exit_code(), 0);
        assert_eq!(report(&[Status::Pass, Status::Inconclusive]).exit_code(), 2);
        assert_eq!(report(&[Status::Inconclusive, Status::Fail]).exit_code(), 1);
        assert_eq!(report(&[]).exit_code(), 0);
    }

    #[test]
    fn digest_depends_only_on_input() {
        let a = Report::new("build", json!({"seed": 1}), vec![], 5);
        let b = Report::new("build", json!({"seed": 1}), vec![Check::new("c", None, Status::Fail, "")], 9);
        let c = Report::new("build", json!({"seed": 2}), vec![], 5);
        assert_eq!(a.input_digest, b.input_digest);
        assert_ne!(a.input_digest, c.input_digest);
        assert_eq!(a.input_digest.len(), 64);
    }

    #[test]
    fn library_errors_carry_residuals() {
        let e = Error::Consistency { check: "det".into(), residual: "x^2 - 1".into() };
        let c = Check::error("det", Some(3), &e);
        assert_eq!((c.status, c.residual.as_deref()), (Status::Fail, Some("x^2 - 1")));
    }
}
