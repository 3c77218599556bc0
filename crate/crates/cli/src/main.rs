mod config;
mod matrix;
mod report;
mod run;

use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use config::{parse_config_file, Args, ExperimentConfig};

/// A failure with a stable kind tag, printed as `error: <kind>: <message>`.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub msg: String,
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError { kind: "config", msg: msg.into() }
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        CliError { kind: "parse", msg: msg.into() }
    }

    fn io(msg: impl Into<String>) -> Self {
        CliError { kind: "io", msg: msg.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}: {}", self.kind, self.msg)
    }
}

impl From<sylvrank::Error> for CliError {
    fn from(e: sylvrank::Error) -> Self {
        CliError { kind: e.kind(), msg: e.to_string() }
    }
}

fn summary_path(out: &Path) -> std::path::PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".summary.txt");
    s.into()
}

fn main_inner() -> Result<(), CliError> {
    let flags = Args::parse();
    if flags.list {
        for e in sylvrank::census::builtin_catalog() {
            println!(
                "{:<16} {} generators, {} relators, field {}",
                e.name,
                e.presentation.num_generators(),
                e.presentation.num_relators(),
                e.field
            );
        }
        return Ok(());
    }
    let args = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
            flags.or(parse_config_file(&text)?)
        }
        None => flags,
    };
    let cfg = ExperimentConfig::from_args(args)?;
    let report = run::run_experiment(&cfg)?;
    let csv = report.csv();
    let summary = report.summary_text();
    match &cfg.out {
        Some(out) => {
            std::fs::write(out, &csv).map_err(|e| CliError::io(format!("cannot write {}: {e}", out.display())))?;
            let sp = summary_path(out);
            std::fs::write(&sp, &summary).map_err(|e| CliError::io(format!("cannot write {}: {e}", sp.display())))?;
            print!("{summary}");
        }
        None => {
            print!("{csv}");
            println!();
            print!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
