//! Command-line front end: flag and config-file parsing, command dispatch,
//! file output and exit codes (0 success, 1 configuration, 2 numerical).

mod commands;
pub mod config;
mod figures;
pub mod table;

use clap::{Args, Parser, Subcommand};
use config::{Command, Format, GridSpec, RunConfig, Spacing, System};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "coulomb-mode", version, about = "Classical and mode trajectories of an electron scattered by a Coulomb centre")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Asymptotic deflection angle.
    ScatteringAngle(Flags),
    /// Trajectory points on a radial grid.
    Trajectory(Flags),
    /// Differential cross section.
    CrossSection(Flags),
    /// Reproduce the data of figure N (1 to 5) into a directory.
    Figure {
        n: u8,
        #[command(flatten)]
        flags: Flags,
    },
    /// Check the special functions against closed forms.
    SpecfunSelfTest(Flags),
    /// Wave number, Coulomb parameter, time unit and impact parameter.
    ConvertUnits(Flags),
    /// Run a `key = value` configuration file.
    Run { path: PathBuf },
}

#[derive(Debug, Args)]
struct Flags {
    #[arg(long, value_enum, default_value = "classical")]
    system: System,
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    energy_ev: f64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    z: i32,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    ks: Option<f64>,
    #[arg(long, requires_all = ["grid_max", "grid_count"], allow_hyphen_values = true)]
    grid_min: Option<f64>,
    #[arg(long, requires_all = ["grid_min", "grid_count"], allow_hyphen_values = true)]
    grid_max: Option<f64>,
    #[arg(long, requires_all = ["grid_min", "grid_max"])]
    grid_count: Option<usize>,
    #[arg(long, value_enum, default_value = "geometric")]
    spacing: Spacing,
    /// Output file, or directory for `figure`; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl Flags {
    fn into_config(self, command: Command) -> RunConfig {
        let grid = match (self.grid_min, self.grid_max, self.grid_count) {
            (Some(min), Some(max), Some(count)) => Some(GridSpec {
                min,
                max,
                count,
                spacing: self.spacing,
            }),
            _ => None,
        };
        RunConfig {
            command,
            system: self.system,
            energy_ev: self.energy_ev,
            z: self.z,
            nu: self.nu,
            ks: self.ks,
            grid,
            out_path: self.out,
            format: self.format,
        }
    }
}

/// Output of a run before it touches the file system.
#[derive(Debug, Default)]
pub struct Report {
    /// Text for stdout.
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
    /// Per-point diagnostics; non-empty means exit code 2.
    pub failures: Vec<String>,
}

fn with_diagnostics(mut text: String, failures: &[String]) -> String {
    for f in failures {
        text.push_str("# error: ");
        text.push_str(f);
        text.push('\n');
    }
    text
}

fn data_output(cfg: &RunConfig, text: String, report: &mut Report) {
    match &cfg.out_path {
        Some(p) => report.files.push((p.clone(), text)),
        None => report.stdout.push_str(&text),
    }
}

/// Evaluate a validated configuration.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut report = Report::default();
    match cfg.command {
        Command::ScatteringAngle => {
            let (text, failures) = commands::scattering_angle(cfg)?;
            report.stdout = with_diagnostics(if text.is_empty() { text } else { text + "\n" }, &failures);
            report.failures = failures;
        }
        Command::Trajectory | Command::CrossSection => {
            let built = if cfg.command == Command::Trajectory {
                commands::trajectory(cfg)?
            } else {
                commands::cross_section(cfg)?
            };
            let mut table = built.table;
            for f in &built.failures {
                table.comment(format!("error: {f}"));
            }
            data_output(cfg, table.render(cfg.format), &mut report);
            report.failures = built.failures;
        }
        Command::SpecfunSelfTest => {
            let built = commands::specfun_self_test();
            data_output(cfg, built.table.render(cfg.format), &mut report);
            report.failures = built.failures;
        }
        Command::ConvertUnits => {
            data_output(cfg, commands::convert_units(cfg)?, &mut report);
        }
        Command::Figure(n) => {
            let dir = cfg.out_path.as_deref().unwrap_or(Path::new("."));
            let out = figures::figure(n, cfg.format)?;
            for f in out.files {
                report.files.push((dir.join(f.name), f.contents));
            }
            if !out.failures.is_empty() {
                report.files.push((dir.join(format!("fig{n}_errors.txt")), with_diagnostics(String::new(), &out.failures)));
            }
            report.stdout = report.files.iter().map(|(p, _)| format!("wrote {}\n", p.display())).collect();
            report.failures = out.failures;
        }
    }
    Ok(report)
}

fn write_files(report: &Report) -> Result<(), CliError> {
    for (path, contents) in &report.files {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::Config(format!("cannot create {}: {e}", parent.display())))?;
        }
        std::fs::write(path, contents).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn parse_args<I, T>(args: I) -> Result<RunConfig, Result<i32, CliError>>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return Err(Ok(code));
        }
    };
    let cfg = match cli.command {
        Sub::ScatteringAngle(f) => f.into_config(Command::ScatteringAngle),
        Sub::Trajectory(f) => f.into_config(Command::Trajectory),
        Sub::CrossSection(f) => f.into_config(Command::CrossSection),
        Sub::Figure { n, flags } => flags.into_config(Command::Figure(n)),
        Sub::SpecfunSelfTest(f) => f.into_config(Command::SpecfunSelfTest),
        Sub::ConvertUnits(f) => f.into_config(Command::ConvertUnits),
        Sub::Run { path } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Err(CliError::Config(format!("cannot read {}: {e}", path.display()))))?;
            RunConfig::parse(&text).map_err(Err)?
        }
    };
    Ok(cfg)
}

/// Parse `args` (program name first), run, write outputs and return the
/// process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(args).and_then(|cfg| run(&cfg).map_err(Err));
    let report = match result {
        Ok(r) => r,
        Err(Ok(code)) => return code,
        Err(Err(e)) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(report.stdout.as_bytes());
    let _ = stdout.flush();
    if let Err(e) = write_files(&report) {
        eprintln!("{e}");
        return e.exit_code();
    }
    if report.failures.is_empty() {
        0
    } else {
        let e = CliError::Numeric(format!("{} point(s) failed", report.failures.len()));
        eprintln!("{e}");
        e.exit_code()
    }
}
