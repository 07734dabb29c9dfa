//! Run configuration: command-line flags layered over an optional
//! `key = value` file layered over built-in defaults.
//!
//! A CSV written by this tool starts with `# qmol <command>` followed by
//! `# key = value` metadata lines. Such a file is itself a valid config: only
//! its leading `#` block is read.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use qmol::{DetuningLine, InitialState, Params, PositionalState};

use crate::{CliError, CliResult};

pub const DEFAULT_J: f64 = 25.0;
pub const DEFAULT_TMAX: f64 = 1.0;
pub const DEFAULT_TRAJECTORY_POINTS: usize = 1001;
pub const DEFAULT_SWEEP_POINTS: usize = 201;
/// Δ/J used by detuning-dynamics sweeps when no tunneling is given.
pub const DETUNING_SWEEP_RATIO: f64 = 0.433_012_701_892_219_3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Dynamics,
    Sweep,
    BellTimes,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Dynamics => "dynamics",
            Command::Sweep => "sweep",
            Command::BellTimes => "bell-times",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKindArg {
    Eigen,
    TunnelingDynamics,
    DetuningDynamics,
}

impl SweepKindArg {
    pub fn name(self) -> &'static str {
        match self {
            SweepKindArg::Eigen => "eigen",
            SweepKindArg::TunnelingDynamics => "tunneling-dynamics",
            SweepKindArg::DetuningDynamics => "detuning-dynamics",
        }
    }
}

impl FromStr for SweepKindArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, false)
    }
}

/// `MIN:MAX:COUNT`, endpoints inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("grid `{s}` is not MIN:MAX:COUNT"));
        };
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| format!("grid `{s}`: {e}"))
        };
        let (min, max) = (num(min)?, num(max)?);
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("grid `{s}`: {e}"))?;
        if !(min.is_finite() && max.is_finite() && max > min) {
            return Err(format!("grid `{s}`: need finite MIN < MAX"));
        }
        if count < 2 {
            return Err(format!("grid `{s}`: COUNT must be at least 2"));
        }
        Ok(Self { min, max, count })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)
    }
}

/// Every setting, all optional. Used both for flags and for config files.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct Overrides {
    /// Coulomb coupling J (µeV)
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// Tunneling rate of molecule 1 (µeV)
    #[arg(long, allow_negative_numbers = true)]
    pub d1: Option<f64>,
    /// Tunneling rate of molecule 2 (µeV)
    #[arg(long, allow_negative_numbers = true)]
    pub d2: Option<f64>,
    /// Detuning of molecule 1 (µeV)
    #[arg(long, allow_negative_numbers = true)]
    pub e1: Option<f64>,
    /// Detuning of molecule 2 (µeV)
    #[arg(long, allow_negative_numbers = true)]
    pub e2: Option<f64>,
    /// Sets Δ₁ = Δ₂ = ratio·J (an explicit --d1/--d2 at the same level wins)
    #[arg(long, allow_negative_numbers = true)]
    pub ratio: Option<f64>,
    /// Initial state: LL, LR, RL, RR, PsiMinus, PhiMinus, PsiPlus, PhiPlus
    #[arg(long)]
    pub init: Option<InitialState>,
    /// Final time (ns)
    #[arg(long, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    /// Number of time samples, endpoints included
    #[arg(long)]
    pub steps: Option<usize>,
    /// Parameter axis MIN:MAX:COUNT
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
    /// Eigenstate index 0..3 (eigen sweeps)
    #[arg(long)]
    pub state: Option<usize>,
    /// Detuning line ε₂ = sign·ε₁ (detuning-dynamics sweeps)
    #[arg(long, allow_negative_numbers = true)]
    pub sign: Option<i32>,
    /// Sweep kind
    #[arg(long, value_enum)]
    pub kind: Option<SweepKindArg>,
    /// Bell condition: number of Ω₊ half-periods
    #[arg(long)]
    pub n: Option<u32>,
    /// Bell condition: odd number of Ω₋ quarter-periods
    #[arg(long)]
    pub m: Option<u32>,
    /// CSV output path
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// PGM heatmap output path (sweeps)
    #[arg(long)]
    pub pgm: Option<PathBuf>,
    /// Config file (`key = value` lines, or a CSV written by this tool)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e| format!("`{key}`: {e}"))
}

impl Overrides {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "j" => self.j = Some(parse(key, value)?),
            "d1" => self.d1 = Some(parse(key, value)?),
            "d2" => self.d2 = Some(parse(key, value)?),
            "e1" => self.e1 = Some(parse(key, value)?),
            "e2" => self.e2 = Some(parse(key, value)?),
            "ratio" => self.ratio = Some(parse(key, value)?),
            "init" => self.init = Some(parse(key, value)?),
            "tmax" => self.tmax = Some(parse(key, value)?),
            "steps" => self.steps = Some(parse(key, value)?),
            "grid" => self.grid = Some(parse(key, value)?),
            "state" => self.state = Some(parse(key, value)?),
            "sign" => self.sign = Some(parse(key, value)?),
            "kind" => self.kind = Some(parse(key, value)?),
            "n" => self.n = Some(parse(key, value)?),
            "m" => self.m = Some(parse(key, value)?),
            "out" => self.out = Some(value.into()),
            "pgm" => self.pgm = Some(value.into()),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn parse_text(text: &str) -> CliResult<Self> {
        let mut o = Self::default();
        let header = text.lines().next().is_some_and(|l| l.starts_with("# qmol"));
        for (no, raw) in text.lines().enumerate() {
            let line = if header {
                if no == 0 {
                    continue;
                }
                match raw.strip_prefix('#') {
                    Some(rest) => rest.trim(),
                    None => break,
                }
            } else {
                let line = raw.trim();
                if line.starts_with('#') {
                    continue;
                }
                line
            };
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected `key = value`", no + 1))
            })?;
            o.set(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("line {}: {e}", no + 1)))?;
        }
        Ok(o)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_text(&text)
    }
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    pub init: InitialState,
    pub tmax: f64,
    pub steps: usize,
    pub kind: SweepKindArg,
    pub grid: GridSpec,
    pub state: usize,
    pub line: DetuningLine,
    pub bell: Option<(u32, u32)>,
    pub out: Option<PathBuf>,
    pub pgm: Option<PathBuf>,
}

impl RunConfig {
    /// Reads `--config` if given and resolves against the defaults.
    pub fn resolve(command: Command, flags: &Overrides) -> CliResult<Self> {
        let file = match &flags.config {
            Some(path) => Overrides::load(path)?,
            None => Overrides::default(),
        };
        Self::from_layers(command, flags, &file)
    }

    pub fn from_layers(command: Command, flags: &Overrides, file: &Overrides) -> CliResult<Self> {
        let layers = [flags, file];
        let get = |f: fn(&Overrides) -> Option<f64>| layers.iter().find_map(|l| f(l));
        let j = get(|o| o.j).unwrap_or(DEFAULT_J);
        let kind = flags.kind.or(file.kind).unwrap_or(SweepKindArg::Eigen);
        let tunneling = |f: fn(&Overrides) -> Option<f64>| {
            layers.iter().find_map(|l| f(l).or(l.ratio.map(|r| r * j)))
        };
        let (mut d1, mut d2) = (tunneling(|o| o.d1), tunneling(|o| o.d2));
        if command == Command::Sweep
            && kind == SweepKindArg::DetuningDynamics
            && d1.is_none()
            && d2.is_none()
        {
            d1 = Some(DETUNING_SWEEP_RATIO * j);
            d2 = d1;
        }
        let params = Params::new(
            get(|o| o.e1).unwrap_or(0.0),
            get(|o| o.e2).unwrap_or(0.0),
            d1.unwrap_or(0.0),
            d2.unwrap_or(0.0),
            j,
        )
        .map_err(|e| CliError::Config(e.to_string()))?;

        let tmax = get(|o| o.tmax).unwrap_or(DEFAULT_TMAX);
        if !(tmax.is_finite() && tmax > 0.0) {
            return Err(CliError::Config(format!(
                "--tmax must be positive, got {tmax}"
            )));
        }
        let default_steps = if command == Command::Sweep {
            DEFAULT_SWEEP_POINTS
        } else {
            DEFAULT_TRAJECTORY_POINTS
        };
        let steps = flags.steps.or(file.steps).unwrap_or(default_steps);
        if steps < 2 {
            return Err(CliError::Config(format!(
                "--steps must be at least 2, got {steps}"
            )));
        }
        let grid = flags.grid.or(file.grid).unwrap_or(match kind {
            SweepKindArg::TunnelingDynamics => GridSpec {
                min: 0.0,
                max: 1.0,
                count: DEFAULT_SWEEP_POINTS,
            },
            _ => GridSpec {
                min: -j,
                max: j,
                count: DEFAULT_SWEEP_POINTS,
            },
        });
        let state = flags.state.or(file.state).unwrap_or(0);
        if state > 3 {
            return Err(CliError::Config(format!(
                "--state must be 0..3, got {state}"
            )));
        }
        let line = DetuningLine::from_sign(flags.sign.or(file.sign).unwrap_or(1))
            .map_err(|e| CliError::Config(e.to_string()))?;
        let bell = match (flags.n.or(file.n), flags.m.or(file.m)) {
            (Some(n), Some(m)) => Some((n, m)),
            (None, None) => None,
            _ => {
                return Err(CliError::Config(
                    "--n and --m must be given together".into(),
                ))
            }
        };
        Ok(Self {
            command,
            params,
            init: flags
                .init
                .or(file.init)
                .unwrap_or(InitialState::Positional(PositionalState::RL)),
            tmax,
            steps,
            kind,
            grid,
            state,
            line,
            bell,
            out: flags.out.clone().or_else(|| file.out.clone()),
            pgm: flags.pgm.clone().or_else(|| file.pgm.clone()),
        })
    }

    /// Settings that determine the command's output, in a fixed order.
    /// Reloading them reproduces the same output.
    pub fn metadata(&self) -> Vec<(&'static str, String)> {
        let p = &self.params;
        let mut meta = vec![
            ("j", p.j().to_string()),
            ("d1", p.delta1().to_string()),
            ("d2", p.delta2().to_string()),
            ("e1", p.eps1().to_string()),
            ("e2", p.eps2().to_string()),
        ];
        let time = |meta: &mut Vec<_>| {
            meta.push(("init", self.init.label().to_string()));
            meta.push(("tmax", self.tmax.to_string()));
            meta.push(("steps", self.steps.to_string()));
        };
        match self.command {
            Command::Dynamics => time(&mut meta),
            Command::Sweep => {
                meta.push(("kind", self.kind.name().to_string()));
                meta.push(("grid", self.grid.to_string()));
                match self.kind {
                    SweepKindArg::Eigen => meta.push(("state", self.state.to_string())),
                    SweepKindArg::TunnelingDynamics => time(&mut meta),
                    SweepKindArg::DetuningDynamics => {
                        time(&mut meta);
                        meta.push(("sign", format!("{:+}", self.line.sign())));
                    }
                }
            }
            Command::BellTimes => {
                meta.push(("init", self.init.label().to_string()));
                if let Some((n, m)) = self.bell {
                    meta.push(("n", n.to_string()));
                    meta.push(("m", m.to_string()));
                }
            }
            Command::Spectrum | Command::Verify => {}
        }
        meta
    }
}
