//! Batch front-end: parses a run configuration, dispatches to `qmc-core` and
//! assembles a deterministic JSON report.

pub mod commands;
pub mod config;
pub mod report;

use std::time::Instant;

pub use config::{Cli, Command, ConfigError, RunConfig};
pub use report::{Check, Report, Status};

/// Environment variable holding the worker count for sample sweeps.
pub const WORKERS_ENV: &str = "QMC_WORKERS";

pub fn worker_pool() -> Result<Option<rayon::ThreadPool>, ConfigError> {
    let Ok(v) = std::env::var(WORKERS_ENV) else { return Ok(None) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| ConfigError::Usage(format!("{WORKERS_ENV}={v} is not a positive integer")))?;
    if n == 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| ConfigError::Usage(e.to_string()))
}

pub fn run(cfg: &RunConfig, pool: Option<&rayon::ThreadPool>) -> Report {
    let start = Instant::now();
    let checks = commands::run_checks(cfg, pool);
    Report::new(cfg.command.name(), cfg.echo(), checks, start.elapsed().as_millis())
}
