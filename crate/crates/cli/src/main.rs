use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use qmc_cli::{run, worker_pool, Cli, Report, RunConfig};

const USAGE_ERROR: u8 = 3;

fn status_word<T: serde::Serialize>(s: &T) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn summary(out: &mut impl Write, report: &Report) -> io::Result<()> {
    for c in &report.checks {
        let sample = c.sample.map(|s| format!("seed {s}: ")).unwrap_or_default();
        writeln!(out, "{:<12} {sample}{}  {}", status_word(&c.status), c.name, c.detail)?;
        if let Some(lines) = c.witness.as_ref().and_then(|w| w.get("diagram")).and_then(|d| d.as_array()) {
            for l in lines {
                writeln!(out, "    {}", l.as_str().unwrap_or_default())?;
            }
        }
    }
    let counts: Vec<String> = report.counts.iter().map(|(s, n)| format!("{} {n}", status_word(s))).collect();
    writeln!(out, "{}: {}", status_word(&report.status), counts.join(", "))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    let (cfg, pool) = match RunConfig::from_cli(cli).and_then(|c| Ok((c, worker_pool()?))) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("qmc: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let report = run(&cfg, pool.as_ref());
    let json = report.to_json() + "\n";
    let mut stdout = io::stdout().lock();
    // A closed stdout (e.g. piped into `head`) is not an error of the run.
    let _ = match &cfg.report_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                eprintln!("qmc: cannot write {}: {e}", path.display());
                return ExitCode::from(USAGE_ERROR);
            }
            summary(&mut stdout, &report)
        }
        None => stdout.write_all(json.as_bytes()),
    };
    ExitCode::from(report.exit_code() as u8)
}
