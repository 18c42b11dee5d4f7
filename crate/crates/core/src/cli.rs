//! Command-line front end.
//!
//! Exit codes: 0 success, 1 configuration or usage error, 2 numerical
//! blow-up.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{ConfigError, ScenarioConfig};
use crate::export::{read_csv, write_csv};
use crate::harness::{compare_controllers, summarize, RunSummary, SimError};
use crate::metrics::{compute_metrics, DisturbanceResponse, StepMetrics};
use crate::RuleTable;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_BLOW_UP: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fuzzypid", version, about = "Fuzzy self-tuning PID spray flow controller simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one closed loop and write its trajectory CSV.
    Simulate(RunArgs),
    /// Run plain PID and fuzzy PID on the same scenario and tabulate metrics.
    Compare(RunArgs),
    /// Print the rule table in its file format; suspect cells end in `?`.
    Rules {
        /// Rule table to print instead of the built-in one.
        #[arg(long = "rules_file", alias = "rules-file")]
        rules_file: Option<PathBuf>,
    },
    /// Recompute step metrics from an existing trajectory CSV.
    Metrics {
        csv: PathBuf,
        /// Setpoint to use instead of the file's `r` column.
        #[arg(long)]
        setpoint: Option<f64>,
    },
}

/// Scenario flags. Each overrides the config-file key of the same name.
#[derive(Debug, Default, Args)]
pub struct RunArgs {
    /// Scenario config file (`key = value` lines).
    #[arg(long, short)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub setpoint: Option<String>,
    #[arg(long)]
    pub duration: Option<String>,
    #[arg(long)]
    pub dt: Option<String>,
    /// `pid` or `fuzzy-pid`.
    #[arg(long)]
    pub controller: Option<String>,
    #[arg(long)]
    pub kp: Option<String>,
    #[arg(long)]
    pub ki: Option<String>,
    #[arg(long)]
    pub kd: Option<String>,
    #[arg(long)]
    pub ke: Option<String>,
    #[arg(long)]
    pub kec: Option<String>,
    #[arg(long)]
    pub kup: Option<String>,
    #[arg(long)]
    pub kui: Option<String>,
    #[arg(long)]
    pub kud: Option<String>,
    #[arg(long = "plant_num", alias = "plant-num", allow_hyphen_values = true)]
    pub plant_num: Option<String>,
    #[arg(long = "plant_den", alias = "plant-den", allow_hyphen_values = true)]
    pub plant_den: Option<String>,
    #[arg(long = "disturbance_time", alias = "disturbance-time")]
    pub disturbance_time: Option<String>,
    #[arg(long = "disturbance_magnitude", alias = "disturbance-magnitude", allow_hyphen_values = true)]
    pub disturbance_magnitude: Option<String>,
    #[arg(long = "disturbance_port", alias = "disturbance-port")]
    pub disturbance_port: Option<String>,
    #[arg(long = "rules_file", alias = "rules-file")]
    pub rules_file: Option<String>,
    #[arg(long, short)]
    pub output: Option<String>,
    #[arg(long = "u_min", alias = "u-min", allow_hyphen_values = true)]
    pub u_min: Option<String>,
    #[arg(long = "u_max", alias = "u-max", allow_hyphen_values = true)]
    pub u_max: Option<String>,
    #[arg(long = "i_min", alias = "i-min", allow_hyphen_values = true)]
    pub i_min: Option<String>,
    #[arg(long = "i_max", alias = "i-max", allow_hyphen_values = true)]
    pub i_max: Option<String>,
}

impl RunArgs {
    fn overrides(&self) -> Vec<(&'static str, &str)> {
        let pairs: [(&'static str, &Option<String>); 23] = [
            ("setpoint", &self.setpoint),
            ("duration", &self.duration),
            ("dt", &self.dt),
            ("controller", &self.controller),
            ("kp", &self.kp),
            ("ki", &self.ki),
            ("kd", &self.kd),
            ("ke", &self.ke),
            ("kec", &self.kec),
            ("kup", &self.kup),
            ("kui", &self.kui),
            ("kud", &self.kud),
            ("plant_num", &self.plant_num),
            ("plant_den", &self.plant_den),
            ("disturbance_time", &self.disturbance_time),
            ("disturbance_magnitude", &self.disturbance_magnitude),
            ("disturbance_port", &self.disturbance_port),
            ("rules_file", &self.rules_file),
            ("output", &self.output),
            ("u_min", &self.u_min),
            ("u_max", &self.u_max),
            ("i_min", &self.i_min),
            ("i_max", &self.i_max),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
            .collect()
    }

    /// Defaults, then the config file, then the flags.
    pub fn resolve(&self) -> Result<ScenarioConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(path) => ScenarioConfig::load(path)?,
            None => ScenarioConfig::default(),
        };
        for (key, value) in self.overrides() {
            cfg.set(key, value)?;
        }
        // a bad rules file is an error even for a plain PID run
        cfg.rule_table()?;
        Ok(cfg)
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("numerical blow-up at t = {0} s")]
    BlowUp(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::BlowUp(_) => EXIT_BLOW_UP,
            _ => EXIT_CONFIG,
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Config(e) => CliError::Config(e.into()),
            SimError::BlowUp { time, .. } => CliError::BlowUp(time),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Config(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Simulate(args) => simulate(&args, out),
        Command::Compare(args) => compare(&args, out),
        Command::Rules { rules_file } => rules(rules_file.as_deref(), out),
        Command::Metrics { csv, setpoint } => metrics(&csv, setpoint, out),
    }
}

fn simulate(args: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = args.resolve()?;
    let controller = cfg.controller_spec()?;
    let name = controller.name();
    let scenario = cfg.scenario(controller)?;
    let summary = match summarize(&scenario) {
        Ok(s) => s,
        Err(SimError::BlowUp { time, partial }) => {
            // keep what was computed for diagnosis
            write_trajectory(&cfg.output, &partial)?;
            return Err(CliError::BlowUp(time));
        }
        Err(e) => return Err(e.into()),
    };
    write_trajectory(&cfg.output, &summary.trajectory)?;
    writeln!(out, "controller         {name}")?;
    writeln!(out, "trajectory         {}", cfg.output.display())?;
    writeln!(out, "rows               {}", summary.trajectory.rows.len())?;
    write_metrics_block(out, &summary.metrics)?;
    if let Some(d) = &summary.disturbance {
        write_disturbance_block(out, d)?;
    }
    Ok(())
}

fn write_trajectory(path: &Path, traj: &crate::Trajectory) -> Result<(), CliError> {
    let file = std::fs::File::create(path)?;
    write_csv(traj, file)?;
    Ok(())
}

fn fmt_value(v: f64) -> String {
    format!("{v:.6}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), fmt_value)
}

fn fmt_flag(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn metric_rows(m: &StepMetrics) -> Vec<(&'static str, String)> {
    vec![
        ("maximum output", fmt_value(m.y_max)),
        ("peak time (s)", fmt_value(m.peak_time)),
        ("settling time (s)", fmt_opt(m.settling_time)),
        ("rise time (s)", fmt_opt(m.rise_time)),
        ("final value", fmt_value(m.y_final)),
        ("overshoot (%)", fmt_opt(m.overshoot_pct)),
        ("settled", fmt_flag(m.settled)),
    ]
}

fn disturbance_rows(d: &DisturbanceResponse) -> Vec<(&'static str, String)> {
    vec![
        ("peak deviation", fmt_value(d.peak_deviation)),
        ("deviation time (s)", fmt_value(d.peak_time)),
        ("recovered at (s)", fmt_opt(d.recovered_at)),
    ]
}

fn write_metrics_block(out: &mut dyn Write, m: &StepMetrics) -> std::io::Result<()> {
    for (label, value) in metric_rows(m) {
        writeln!(out, "{label:<18} {value}")?;
    }
    Ok(())
}

fn write_disturbance_block(out: &mut dyn Write, d: &DisturbanceResponse) -> std::io::Result<()> {
    for (label, value) in disturbance_rows(d) {
        writeln!(out, "{label:<18} {value}")?;
    }
    Ok(())
}

fn compare(args: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = args.resolve()?;
    let base = cfg.scenario(cfg.pid_spec()?)?;
    let result = compare_controllers(&base, cfg.pid_spec()?, cfg.fuzzy_spec()?)?;
    write_comparison(out, &result.pid, &result.fuzzy, cfg.has_disturbance())?;
    Ok(())
}

fn write_comparison(
    out: &mut dyn Write,
    pid: &RunSummary,
    fuzzy: &RunSummary,
    disturbed: bool,
) -> std::io::Result<()> {
    writeln!(out, "{:<18} {:>16} {:>16}", "metric", "pid", "fuzzy-pid")?;
    let mut a = metric_rows(&pid.metrics);
    let mut b = metric_rows(&fuzzy.metrics);
    if disturbed {
        if let (Some(da), Some(db)) = (&pid.disturbance, &fuzzy.disturbance) {
            a.extend(disturbance_rows(da));
            b.extend(disturbance_rows(db));
        }
    }
    for ((label, va), (_, vb)) in a.iter().zip(&b) {
        writeln!(out, "{label:<18} {va:>16} {vb:>16}")?;
    }
    Ok(())
}

fn rules(path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let table = match path {
        Some(p) => {
            let cfg = ScenarioConfig {
                rules_file: Some(p.to_path_buf()),
                ..ScenarioConfig::default()
            };
            cfg.rule_table()?
        }
        None => RuleTable::default(),
    };
    write!(out, "{table}")?;
    Ok(())
}

fn metrics(path: &Path, setpoint: Option<f64>, out: &mut dyn Write) -> Result<(), CliError> {
    let file = std::fs::File::open(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let traj = read_csv(file)?;
    let r = match setpoint {
        Some(r) if r.is_finite() => r,
        Some(r) => return Err(CliError::Usage(format!("setpoint must be finite, got {r}"))),
        None => traj.rows[0].r,
    };
    let m = compute_metrics(&traj, r)?;
    writeln!(out, "rows               {}", traj.rows.len())?;
    write_metrics_block(out, &m)?;
    Ok(())
}
