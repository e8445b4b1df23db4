//! Resolution of flags, the optional config file and the environment into a
//! validated [`RunConfig`].
//!
//! Precedence is flag > config file > `PCTLAB_TOL_ENERGY` > built-in default.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use pctlab::verify::GridOverride;
use pctlab::{CaseId, CaseSpec, Flag, Parity, QuantumNumbers, Tolerances};

use crate::args::{Format, OutputArgs, RunArgs};
use crate::error::CliError;

pub const TOL_ENERGY_ENV: &str = "PCTLAB_TOL_ENERGY";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagChoice {
    One(Flag),
    Both,
}

impl FlagChoice {
    /// Flags to evaluate for `case`; unflagged cases run once.
    pub fn flags_for(self, case: CaseId) -> Vec<Flag> {
        match self {
            _ if !case.is_flagged() => vec![Flag::ReDerived],
            Self::One(f) => vec![f],
            Self::Both => Flag::BOTH.to_vec(),
        }
    }
}

impl FromStr for FlagChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "both" => Ok(Self::Both),
            other => Ok(Self::One(other.parse()?)),
        }
    }
}

/// Everything a case-bound command needs, validated before any computation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub case: CaseSpec,
    /// States with `n_r` from the case's first level up to `nr_max`.
    pub states: Vec<QuantumNumbers>,
    pub flag: FlagChoice,
    pub grid_n: usize,
    pub bounds: GridOverride,
    pub tol: Tolerances,
    pub points: usize,
    pub jobs: usize,
    pub output: Output,
}

#[derive(Debug, Clone)]
pub struct Output {
    pub out: Option<std::path::PathBuf>,
    pub format: Format,
}

impl Output {
    pub fn resolve(args: OutputArgs) -> Self {
        Self {
            out: args.out,
            format: args.format.unwrap_or(Format::Csv),
        }
    }
}

impl RunConfig {
    pub fn resolve(flags: RunArgs) -> Result<Self, CliError> {
        check_duplicate_params(&flags.params, "--param")?;
        let args = match &flags.config {
            Some(path) => flags.clone().or(read_config(path)?),
            None => flags,
        };
        let id: CaseId = args
            .case
            .as_deref()
            .ok_or_else(|| CliError::Validation("--case is required".into()))?
            .parse()?;
        let params = parse_params(&args.params)?;
        let case = CaseSpec::from_params(id, args.alpha.unwrap_or(1.0), args.gamma, &params, Flag::ReDerived)?;

        let parity = args.parity.as_deref().map(Parity::from_str).transpose()?;
        let d = args.d.unwrap_or(3);
        let ell = args.ell.unwrap_or(0);
        if d == 1 && ell != 0 {
            return Err(CliError::Validation("d = 1 takes parity instead of ell".into()));
        }
        // Hulthen levels are counted from 1
        let first = u32::from(id == CaseId::Hulthen);
        let nr_max = args.nr_max.unwrap_or(first);
        if nr_max < first {
            return Err(CliError::Validation(format!("--nr-max must be >= {first} for case {id}")));
        }
        let states: Vec<QuantumNumbers> = (first..=nr_max)
            .map(|n_r| QuantumNumbers {
                n_r,
                ell,
                d,
                parity,
            })
            .collect();
        for qn in &states {
            case.check_state(qn)?;
        }

        let env_energy = match std::env::var(TOL_ENERGY_ENV) {
            Ok(v) => Some(parse_value::<f64>(TOL_ENERGY_ENV, &v)?),
            Err(std::env::VarError::NotPresent) => None,
            Err(e) => return Err(CliError::Validation(format!("{TOL_ENERGY_ENV}: {e}"))),
        };
        let defaults = Tolerances::default();
        let tol = Tolerances {
            energy: args.tol_energy.or(env_energy).unwrap_or(defaults.energy),
            norm: args.tol_norm.unwrap_or(defaults.norm),
            residual: args.tol_residual.unwrap_or(defaults.residual),
            ..defaults
        };
        for (name, v) in [("energy", tol.energy), ("norm", tol.norm), ("residual", tol.residual)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Validation(format!("tolerance {name} must be positive, got {v}")));
            }
        }

        let jobs = args.jobs.unwrap_or(1);
        let points = args.points.unwrap_or(200);
        if jobs == 0 {
            return Err(CliError::Validation("--jobs must be >= 1".into()));
        }
        if points < 2 {
            return Err(CliError::Validation("--points must be >= 2".into()));
        }
        Ok(Self {
            case,
            states,
            flag: args.flag.as_deref().unwrap_or("both").parse()?,
            grid_n: args.grid_n.unwrap_or(4000),
            bounds: GridOverride {
                q_min: args.q_min,
                q_max: args.q_max,
            },
            tol,
            points,
            jobs,
            output: Output::resolve(args.output),
        })
    }
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("invalid value `{v}` for `{key}`")))
}

fn split_pair(s: &str) -> Result<(&str, &str), CliError> {
    s.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .filter(|(k, _)| !k.is_empty())
        .ok_or_else(|| CliError::Validation(format!("expected key=value, got `{s}`")))
}

fn check_duplicate_params(pairs: &[String], source: &str) -> Result<(), CliError> {
    let mut seen = std::collections::BTreeSet::new();
    for p in pairs {
        let (k, _) = split_pair(p)?;
        if !seen.insert(k) {
            return Err(CliError::Validation(format!("{source} sets `{k}` twice")));
        }
    }
    Ok(())
}

/// Later pairs win, so file values precede flag values in `pairs`.
fn parse_params(pairs: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut out = BTreeMap::new();
    for p in pairs {
        let (k, v) = split_pair(p)?;
        out.insert(k.to_string(), parse_value(k, v)?);
    }
    Ok(out)
}

/// Reads a flat `key = value` file. Blank lines and `#` comments are
/// skipped; case parameters use `param.<name>`; unknown or repeated keys are
/// errors.
pub fn read_config(path: &Path) -> Result<RunArgs, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunArgs, CliError> {
    let mut args = RunArgs::default();
    let mut seen = std::collections::BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = split_pair(line)
            .map_err(|e| CliError::Validation(format!("config line {}: {e}", lineno + 1)))?;
        if let Some(name) = key.strip_prefix("param.") {
            if !seen.insert(key.to_string()) {
                return Err(CliError::Validation(format!("config key `{key}` is set twice")));
            }
            args.params.push(format!("{name}={value}"));
            continue;
        }
        let norm = key.replace('_', "-");
        if !seen.insert(norm.clone()) {
            return Err(CliError::Validation(format!("config key `{key}` is set twice")));
        }
        let v = value.to_string();
        match norm.as_str() {
            "case" => args.case = Some(v),
            "gamma" => args.gamma = Some(parse_value(key, value)?),
            "alpha" => args.alpha = Some(parse_value(key, value)?),
            "d" => args.d = Some(parse_value(key, value)?),
            "ell" => args.ell = Some(parse_value(key, value)?),
            "parity" => args.parity = Some(v),
            "nr-max" => args.nr_max = Some(parse_value(key, value)?),
            "grid-n" => args.grid_n = Some(parse_value(key, value)?),
            "q-min" => args.q_min = Some(parse_value(key, value)?),
            "q-max" => args.q_max = Some(parse_value(key, value)?),
            "tol-energy" => args.tol_energy = Some(parse_value(key, value)?),
            "tol-norm" => args.tol_norm = Some(parse_value(key, value)?),
            "tol-residual" => args.tol_residual = Some(parse_value(key, value)?),
            "flag" => args.flag = Some(v),
            "points" => args.points = Some(parse_value(key, value)?),
            "jobs" => args.jobs = Some(parse_value(key, value)?),
            "out" => args.output.out = Some(v.into()),
            "format" => {
                args.output.format = Some(
                    Format::from_str(value, false)
                        .map_err(|_| CliError::Validation(format!("format must be csv or json, got `{value}`")))?,
                )
            }
            _ => return Err(CliError::Validation(format!("unknown config key `{key}`"))),
        }
    }
    Ok(args)
}
