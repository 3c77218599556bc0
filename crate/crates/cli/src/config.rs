//! Experiment configuration from flags and an optional `key=value` file.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use sylvrank::exactalg::{parse_rational, Rational};
use sylvrank::limitlab::Parity;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Homology,
    Rank,
    Limit,
    Luck,
    Harris,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Homology => "homology",
            Mode::Rank => "rank",
            Mode::Limit => "limit",
            Mode::Luck => "luck",
            Mode::Harris => "harris",
        }
    }
}

/// Raw flags. Every field is optional so that a config file can fill gaps.
#[derive(Debug, Clone, Default, Parser)]
#[command(name = "sylvrank", version, about = "Exact twisted homology and rank experiments")]
pub struct Args {
    /// Flat key=value file with the same keys as the long flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Name of a built-in entry (see --list)
    #[arg(long)]
    pub entry: Option<String>,
    /// Presentation file, used together with --representation
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    #[arg(long)]
    pub representation: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Multipliers k as START:END:STEP; the weights are k times --direction
    #[arg(long)]
    pub weights: Option<String>,
    /// Per-factor direction, e.g. `1;2` (default all ones)
    #[arg(long)]
    pub direction: Option<String>,
    /// Per-factor parity filter, e.g. `even;any` (default from the sign pattern)
    #[arg(long)]
    pub parity: Option<String>,
    /// Homology degree 0, 1 or 2
    #[arg(long)]
    pub degree: Option<usize>,
    /// fox-jacobian | boundary-stack | file:PATH | element:TEXT | random
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Shape of a random matrix as ROWSxCOLS
    #[arg(long)]
    pub shape: Option<String>,
    /// Longest word in a random matrix entry
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Largest absolute coefficient in a random matrix entry
    #[arg(long)]
    pub max_coeff: Option<i64>,
    /// Chain of cyclic quotients as moduli, e.g. `2,4,8`
    #[arg(long)]
    pub quotient: Option<String>,
    /// Residue of each generator in the cyclic quotients (default all 1)
    #[arg(long)]
    pub quotient_images: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Congruence levels as `1:4` or `1,2,3`
    #[arg(long)]
    pub levels: Option<String>,
    /// Largest congruence quotient to enumerate
    #[arg(long)]
    pub level_cap: Option<usize>,
    /// Exact target value; defaults to the entry's declared Betti target
    #[arg(long)]
    pub target: Option<String>,
    /// CSV output path; the summary goes to PATH.summary.txt and stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the built-in entries and exit
    #[arg(long)]
    pub list: bool,
}

impl Args {
    /// Fills every unset field from `other`.
    pub fn or(self, other: Args) -> Args {
        Args {
            config: self.config,
            entry: self.entry.or(other.entry),
            presentation: self.presentation.or(other.presentation),
            representation: self.representation.or(other.representation),
            mode: self.mode.or(other.mode),
            weights: self.weights.or(other.weights),
            direction: self.direction.or(other.direction),
            parity: self.parity.or(other.parity),
            degree: self.degree.or(other.degree),
            matrix: self.matrix.or(other.matrix),
            seed: self.seed.or(other.seed),
            shape: self.shape.or(other.shape),
            max_len: self.max_len.or(other.max_len),
            max_coeff: self.max_coeff.or(other.max_coeff),
            quotient: self.quotient.or(other.quotient),
            quotient_images: self.quotient_images.or(other.quotient_images),
            p: self.p.or(other.p),
            levels: self.levels.or(other.levels),
            level_cap: self.level_cap.or(other.level_cap),
            target: self.target.or(other.target),
            out: self.out.or(other.out),
            list: self.list || other.list,
        }
    }
}

/// Reads a config file by turning each `key = value` line into `--key value`
/// and running it through the same parser as the command line.
pub fn parse_config_file(text: &str) -> Result<Args, CliError> {
    let mut argv = vec!["sylvrank".to_string()];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::config(format!("line {}: expected key=value", i + 1)));
        };
        let key = k.trim().replace('_', "-");
        if key == "config" || key.is_empty() {
            return Err(CliError::config(format!("line {}: invalid key `{}`", i + 1, k.trim())));
        }
        argv.push(format!("--{key}"));
        if key != "list" {
            argv.push(v.trim().to_string());
        }
    }
    Args::try_parse_from(argv).map_err(|e| {
        let msg = e.to_string();
        let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
        CliError::config(format!("config file: {first}"))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntrySource {
    Builtin(String),
    Files(PathBuf, PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSource {
    FoxJacobian,
    BoundaryStack,
    File(PathBuf),
    Element(String),
    Random {
        seed: u64,
        rows: usize,
        cols: usize,
        max_len: usize,
        max_coeff: i64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleSpec {
    pub start: u32,
    pub end: u32,
    pub step: u32,
    pub direction: Option<Vec<u32>>,
    pub parity: Option<Vec<Parity>>,
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub entry: EntrySource,
    pub mode: Mode,
    pub schedule: Option<ScheduleSpec>,
    pub degree: Option<usize>,
    pub matrix: MatrixSource,
    pub quotient: Option<Vec<u64>>,
    pub quotient_images: Option<Vec<i64>>,
    pub p: Option<u64>,
    pub levels: Vec<u32>,
    pub level_cap: usize,
    pub target: Option<Rational>,
    pub out: Option<PathBuf>,
}

fn num<T: std::str::FromStr>(what: &str, s: &str) -> Result<T, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::config(format!("invalid {what} `{s}`")))
}

fn list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>, CliError> {
    s.split([',', ';']).map(|p| num(what, p)).collect()
}

fn parse_weights(s: &str) -> Result<(u32, u32, u32), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b] => Ok((num("weight", a)?, num("weight", b)?, 1)),
        [a, b, c] => Ok((num("weight", a)?, num("weight", b)?, num("weight step", c)?)),
        _ => Err(CliError::config(format!("--weights expects START:END:STEP, got `{s}`"))),
    }
}

fn parse_levels(s: &str) -> Result<Vec<u32>, CliError> {
    if let Some((a, b)) = s.split_once(':') {
        let (a, b): (u32, u32) = (num("level", a)?, num("level", b)?);
        if a > b {
            return Err(CliError::config(format!("empty level range `{s}`")));
        }
        Ok((a..=b).collect())
    } else {
        list("level", s)
    }
}

fn parse_shape(s: &str) -> Result<(usize, usize), CliError> {
    let Some((r, c)) = s.split_once('x') else {
        return Err(CliError::config(format!("--shape expects ROWSxCOLS, got `{s}`")));
    };
    Ok((num("rows", r)?, num("cols", c)?))
}

impl ExperimentConfig {
    pub fn from_args(a: Args) -> Result<Self, CliError> {
        let mode = a.mode.ok_or_else(|| CliError::config("--mode is required"))?;
        let entry = match (a.entry, a.presentation, a.representation) {
            (Some(name), None, None) => EntrySource::Builtin(name),
            (None, Some(p), Some(r)) => EntrySource::Files(p, r),
            (None, None, None) => {
                return Err(CliError::config("give --entry or --presentation with --representation"))
            }
            (Some(_), _, _) => {
                return Err(CliError::config("--entry cannot be combined with --presentation/--representation"))
            }
            _ => return Err(CliError::config("--presentation and --representation go together")),
        };
        let schedule = match &a.weights {
            Some(w) => {
                let (start, end, step) = parse_weights(w)?;
                Some(ScheduleSpec {
                    start,
                    end,
                    step,
                    direction: a.direction.as_deref().map(|d| list("direction", d)).transpose()?,
                    parity: a
                        .parity
                        .as_deref()
                        .map(|p| p.split([',', ';']).map(|x| x.parse::<Parity>()).collect::<Result<Vec<_>, _>>())
                        .transpose()?,
                })
            }
            None => None,
        };
        if matches!(mode, Mode::Homology | Mode::Rank | Mode::Limit) && schedule.is_none() {
            return Err(CliError::config(format!("--weights is required in {} mode", mode.name())));
        }
        if let Some(d) = a.degree {
            if d > 2 {
                return Err(CliError::config(format!("--degree must be 0, 1 or 2, got {d}")));
            }
        }
        if mode == Mode::Limit && a.degree.is_none() {
            return Err(CliError::config("--degree is required in limit mode"));
        }
        let matrix = match a.matrix.as_deref().unwrap_or("fox-jacobian") {
            "fox-jacobian" => MatrixSource::FoxJacobian,
            "boundary-stack" => MatrixSource::BoundaryStack,
            "random" => {
                let seed = a.seed.ok_or_else(|| CliError::config("--matrix random needs an explicit --seed"))?;
                let (rows, cols) = parse_shape(a.shape.as_deref().unwrap_or("1x1"))?;
                if rows == 0 || cols == 0 {
                    return Err(CliError::config("random matrix shape must be positive"));
                }
                MatrixSource::Random {
                    seed,
                    rows,
                    cols,
                    max_len: a.max_len.unwrap_or(4),
                    max_coeff: a.max_coeff.unwrap_or(2),
                }
            }
            other => {
                if let Some(path) = other.strip_prefix("file:") {
                    MatrixSource::File(PathBuf::from(path))
                } else if let Some(text) = other.strip_prefix("element:") {
                    MatrixSource::Element(text.to_string())
                } else {
                    return Err(CliError::config(format!("unknown matrix source `{other}`")));
                }
            }
        };
        let quotient = a.quotient.as_deref().map(|q| list::<u64>("modulus", q)).transpose()?;
        if mode == Mode::Luck && quotient.is_none() {
            return Err(CliError::config("--quotient is required in luck mode"));
        }
        if quotient.as_ref().is_some_and(|q| q.is_empty() || q.contains(&0)) {
            return Err(CliError::config("quotient moduli must be positive"));
        }
        let quotient_images = a.quotient_images.as_deref().map(|q| list("residue", q)).transpose()?;
        let levels = a.levels.as_deref().map(parse_levels).transpose()?.unwrap_or_default();
        if mode == Mode::Harris {
            if a.p.is_none() {
                return Err(CliError::config("--p is required in harris mode"));
            }
            if levels.is_empty() {
                return Err(CliError::config("--levels is required in harris mode"));
            }
        }
        let target = a
            .target
            .as_deref()
            .map(|t| parse_rational(t.trim()).map_err(CliError::config))
            .transpose()?;
        Ok(ExperimentConfig {
            entry,
            mode,
            schedule,
            degree: a.degree,
            matrix,
            quotient,
            quotient_images,
            p: a.p,
            levels,
            level_cap: a.level_cap.unwrap_or(sylvrank::padicharris::DEFAULT_LEVEL_CAP),
            target,
            out: a.out,
        })
    }
}
