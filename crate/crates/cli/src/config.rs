use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex;
use serde::Deserialize;
use serde_json::{json, Value};

use qmc_core::e8::ParamSet;
use qmc_core::scalar::{fmt_rational, parse_rational};
use qmc_core::Rational;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Syntax { path: PathBuf, line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "qmc", version, about = "Exact checks for a rank-3 q-difference system and its W(E8) symmetry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// First sample seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of consecutive seeds to sample.
    #[arg(long, global = true, default_value_t = 1)]
    pub samples: u64,
    /// JSON file with explicit parameters; replaces sampling.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub report_path: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Build the cubic system and check its determinant.
    Build,
    /// Apply s0 by middle convolution and check the result.
    S0,
    /// Follow a word in the generators, checking every image.
    Orbit {
        /// Generator indices applied left to right.
        #[arg(long, default_value = "0,1,0,2,0,3,0")]
        word: String,
    },
    /// Coxeter relations of W(E8) on parameters.
    Coxeter,
    /// Matrix-level braid relations with s0 and s0² ≅ id.
    Braid,
    /// Reduce to a scalar equation and report its point configuration.
    Reduce,
    /// Numeric residuals of the q-calculus lemmas.
    Lemmas {
        #[arg(long, default_value = "0.3")]
        q: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Spectral type of the system.
    Spectral,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::S0 => "s0",
            Command::Orbit { .. } => "orbit",
            Command::Coxeter => "coxeter",
            Command::Braid => "braid",
            Command::Reduce => "reduce",
            Command::Lemmas { .. } => "lemmas",
            Command::Spectral => "spectral",
        }
    }
}

/// Explicit parameters in the config file.
#[derive(Clone, Debug, PartialEq)]
pub struct Explicit {
    pub params: ParamSet,
    pub accessory: Option<[Rational; 4]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub explicit: Option<Explicit>,
    pub seed: u64,
    pub samples: u64,
    pub word: Vec<usize>,
    pub q_numeric: Option<Complex<f64>>,
    pub tol: f64,
    pub report_path: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    e: Vec<String>,
    kappa: String,
    q: String,
    accessory: Option<Vec<String>>,
}

fn rational(field: &str, s: &str) -> Result<Rational, ConfigError> {
    parse_rational(s).ok_or_else(|| ConfigError::Field {
        field: field.to_string(),
        message: format!("`{s}` is not a rational \"p/q\""),
    })
}

fn rationals<const N: usize>(field: &str, v: &[String]) -> Result<[Rational; N], ConfigError> {
    if v.len() != N {
        return Err(ConfigError::Field { field: field.into(), message: format!("expected {N} entries, got {}", v.len()) });
    }
    let parsed = v
        .iter()
        .enumerate()
        .map(|(i, s)| rational(&format!("{field}[{i}]"), s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

pub fn parse_config_text(path: &Path, text: &str) -> Result<Explicit, ConfigError> {
    let raw: ConfigFile = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let e = rationals::<9>("e", &raw.e)?;
    let kappa = rational("kappa", &raw.kappa)?;
    let q = rational("q", &raw.q)?;
    let params = ParamSet::new(e, kappa, q).map_err(|err| ConfigError::Field { field: "e/kappa/q".into(), message: err.to_string() })?;
    let accessory = raw.accessory.as_deref().map(|a| rationals::<4>("accessory", a)).transpose()?;
    Ok(Explicit { params, accessory })
}

pub fn load_config(path: &Path) -> Result<Explicit, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    parse_config_text(path, &text)
}

pub fn parse_word(s: &str) -> Result<Vec<usize>, ConfigError> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if i <= 8 => Ok(i),
            _ => Err(ConfigError::Field { field: "word".into(), message: format!("`{t}` is not a generator index 0..8") }),
        })
        .collect()
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, ConfigError> {
        let explicit = cli.config.as_deref().map(load_config).transpose()?;
        if cli.samples == 0 {
            return Err(ConfigError::Usage("--samples must be at least 1".into()));
        }
        let mut cfg = RunConfig {
            command: cli.command.clone(),
            explicit,
            seed: cli.seed,
            samples: cli.samples,
            word: Vec::new(),
            q_numeric: None,
            tol: 0.0,
            report_path: cli.report_path,
        };
        match &cli.command {
            Command::Orbit { word } => cfg.word = parse_word(word)?,
            Command::Lemmas { q, tol } => {
                let q: Complex<f64> = q
                    .parse()
                    .map_err(|_| ConfigError::Field { field: "q".into(), message: format!("`{q}` is not a complex number") })?;
                cfg.q_numeric = Some(q);
                cfg.tol = *tol;
            }
            _ => {}
        }
        Ok(cfg)
    }

    /// Input echo; the digest is taken over its serialization.
    pub fn echo(&self) -> Value {
        let explicit = self.explicit.as_ref().map(|x| {
            json!({
                "params": params_json(&x.params),
                "accessory": x.accessory.as_ref().map(|a| a.iter().map(fmt_rational).collect::<Vec<_>>()),
            })
        });
        let mut v = json!({
            "command": self.command.name(),
            "seed": self.seed,
            "samples": self.samples,
            "explicit": explicit,
        });
        if !self.word.is_empty() {
            v["word"] = json!(self.word);
        }
        if let Some(q) = self.q_numeric {
            v["q"] = json!([q.re, q.im]);
            v["tol"] = json!(self.tol);
        }
        v
    }
}

pub fn params_json(p: &ParamSet) -> Value {
    json!({
        "e": p.e.iter().map(fmt_rational).collect::<Vec<_>>(),
        "kappa": fmt_rational(&p.kappa),
        "q": fmt_rational(&p.q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_bad_words() {
        assert_eq!(parse_word("0, 3,8").unwrap(), vec![0, 3, 8]);
        assert!(parse_word("0,9").is_err());
        assert!(parse_word("a").is_err());
    }

    #[test]
    fn syntax_errors_report_line_and_column() {
        let err = parse_config_text(Path::new("p.json"), "{\n  \"e\": [\"1\",\n  oops\n}").unwrap_err();
        assert!(matches!(err, ConfigError::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn field_errors_name_the_field() {
        let text = r#"{"e": ["1","2","3","4","5","6","7","8","x"], "kappa": "1", "q": "1/2"}"#;
        let err = parse_config_text(Path::new("p.json"), text).unwrap_err();
        assert!(err.to_string().contains("e[8]"), "{err}");
        let text = r#"{"e": ["1","2","3","4","5","6","7","8","9"], "kappa": "1", "q": "1/2"}"#;
        let err = parse_config_text(Path::new("p.json"), text).unwrap_err();
        assert!(err.to_string().contains("κ³∏e_i"), "{err}");
    }
}
