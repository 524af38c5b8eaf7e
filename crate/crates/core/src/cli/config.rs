//! Run configuration shared by the command-line flags and `key = value` files.

use super::CliError;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ScatteringAngle,
    Trajectory,
    CrossSection,
    Figure(u8),
    SpecfunSelfTest,
    ConvertUnits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum System {
    Classical,
    PolarMode,
    TempleMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Spacing {
    Linear,
    Geometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / n;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Geometric => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return Err(CliError::Config(format!("grid needs finite min < max, got [{}, {}]", self.min, self.max)));
        }
        if self.count == 0 {
            return Err(CliError::Config("grid count must be positive".into()));
        }
        if self.spacing == Spacing::Geometric && self.min <= 0.0 {
            return Err(CliError::Config("geometric grid needs min > 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub system: System,
    pub energy_ev: f64,
    pub z: i32,
    pub nu: Option<f64>,
    pub ks: Option<f64>,
    /// Radii ρ = kr for trajectories; |θ_sc| in degrees (classical, Temple) or
    /// ν (polar mode) for cross sections.
    pub grid: Option<GridSpec>,
    pub out_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            system: System::Classical,
            energy_ev: 20.0,
            z: 1,
            nu: None,
            ks: None,
            grid: None,
            out_path: None,
            format: Format::Csv,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.energy_ev > 0.0) || !self.energy_ev.is_finite() {
            return Err(CliError::Config(format!("energy_ev must be positive, got {}", self.energy_ev)));
        }
        if self.z == 0 {
            return Err(CliError::Config("z must be non-zero".into()));
        }
        if let Some(g) = &self.grid {
            g.validate()?;
        }
        let needs_mode_parameter = matches!(self.command, Command::ScatteringAngle | Command::Trajectory);
        if needs_mode_parameter {
            match (self.system, self.nu, self.ks) {
                (System::PolarMode, Some(_), None) => {}
                (System::PolarMode, _, _) => {
                    return Err(CliError::Config("polar-mode needs nu and no ks".into()));
                }
                (_, None, Some(_)) => {}
                (s, _, _) => {
                    return Err(CliError::Config(format!("{} needs ks and no nu", system_name(s))));
                }
            }
        }
        if let Command::Figure(n) = self.command {
            if !(1..=5).contains(&n) {
                return Err(CliError::Config(format!("figure must be 1 to 5, got {n}")));
            }
            if self.out_path.is_none() {
                return Err(CliError::Config("figure needs an output directory".into()));
            }
        }
        Ok(())
    }

    /// Parse `key = value` lines; `#` starts a comment. Keys mirror the
    /// fields: command, system, energy_ev, z, nu, ks, grid_min, grid_max,
    /// grid_count, spacing, out, format, figure.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::new(Command::ScatteringAngle);
        let mut command: Option<String> = None;
        let mut figure: Option<u8> = None;
        let (mut gmin, mut gmax, mut gcount, mut spacing) = (None, None, None, Spacing::Geometric);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| CliError::Config(format!("line {}: bad {what} '{value}'", lineno + 1));
            match key {
                "command" => command = Some(value.to_string()),
                "system" => cfg.system = <System as clap::ValueEnum>::from_str(value, true).map_err(|_| bad("system"))?,
                "energy_ev" => cfg.energy_ev = num(value).ok_or_else(|| bad("energy_ev"))?,
                "z" => cfg.z = value.parse().map_err(|_| bad("z"))?,
                "nu" => cfg.nu = Some(num(value).ok_or_else(|| bad("nu"))?),
                "ks" => cfg.ks = Some(num(value).ok_or_else(|| bad("ks"))?),
                "grid_min" => gmin = Some(num(value).ok_or_else(|| bad("grid_min"))?),
                "grid_max" => gmax = Some(num(value).ok_or_else(|| bad("grid_max"))?),
                "grid_count" => gcount = Some(value.parse().map_err(|_| bad("grid_count"))?),
                "spacing" => spacing = <Spacing as clap::ValueEnum>::from_str(value, true).map_err(|_| bad("spacing"))?,
                "out" => cfg.out_path = Some(PathBuf::from(value)),
                "format" => cfg.format = <Format as clap::ValueEnum>::from_str(value, true).map_err(|_| bad("format"))?,
                "figure" => figure = Some(value.parse().map_err(|_| bad("figure"))?),
                _ => return Err(CliError::Config(format!("line {}: unknown key '{key}'", lineno + 1))),
            }
        }
        cfg.command = match command.as_deref() {
            Some("scattering-angle") => Command::ScatteringAngle,
            Some("trajectory") => Command::Trajectory,
            Some("cross-section") => Command::CrossSection,
            Some("figure") => Command::Figure(figure.ok_or_else(|| CliError::Config("figure command needs figure = N".into()))?),
            Some("specfun-self-test") => Command::SpecfunSelfTest,
            Some("convert-units") => Command::ConvertUnits,
            Some(other) => return Err(CliError::Config(format!("unknown command '{other}'"))),
            None => return Err(CliError::Config("config file needs a command".into())),
        };
        cfg.grid = match (gmin, gmax, gcount) {
            (None, None, None) => None,
            (Some(min), Some(max), Some(count)) => Some(GridSpec { min, max, count, spacing }),
            _ => return Err(CliError::Config("grid needs grid_min, grid_max and grid_count together".into())),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn num(s: &str) -> Option<f64> {
    f64::from_str(s).ok().filter(|v| v.is_finite())
}

pub fn system_name(s: System) -> &'static str {
    match s {
        System::Classical => "classical",
        System::PolarMode => "polar-mode",
        System::TempleMode => "temple-mode",
    }
}
