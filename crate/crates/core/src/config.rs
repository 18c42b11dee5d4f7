//! Scenario configuration file.
//!
//! Flat `key = value` lines; `#` starts a comment. Unset keys keep the
//! shipped defaults from [`crate::defaults`].
//!
//! | key | meaning |
//! |-----|---------|
//! | `setpoint` | step setpoint |
//! | `duration`, `dt` | simulated time and step, seconds |
//! | `controller` | `pid` or `fuzzy-pid` (used by `simulate`) |
//! | `kp`, `ki`, `kd` | base PID gains |
//! | `ke`, `kec` | error and error-rate quantization factors |
//! | `kup`, `kui`, `kud` | output scale factors of the gain corrections |
//! | `plant_num`, `plant_den` | transfer-function coefficients, highest degree first, separated by spaces or commas |
//! | `disturbance_time`, `disturbance_magnitude` | optional step disturbance (both or neither) |
//! | `disturbance_port` | `input` (default) or `output` |
//! | `rules_file` | rule-table override |
//! | `output` | trajectory CSV path for `simulate` |
//! | `u_min`, `u_max`, `i_min`, `i_max` | optional output / integral clamps (both ends or neither) |

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::defaults;
use crate::fuzzy::{RuleTable, ScalingFactors};
use crate::harness::{ControllerSpec, SimScenario};
use crate::pid::{PidGains, PidLimits};
use crate::plant::{Disturbance, Port, TransferFunction, SPRAY_LINE_DEN, SPRAY_LINE_NUM};

pub const KEYS: [&str; 23] = [
    "setpoint",
    "duration",
    "dt",
    "controller",
    "kp",
    "ki",
    "kd",
    "ke",
    "kec",
    "kup",
    "kui",
    "kud",
    "plant_num",
    "plant_den",
    "disturbance_time",
    "disturbance_magnitude",
    "disturbance_port",
    "rules_file",
    "output",
    "u_min",
    "u_max",
    "i_min",
    "i_max",
];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("rule file {path}: {source}")]
    Rules { path: PathBuf, source: crate::Error },
    #[error(transparent)]
    Invalid(#[from] crate::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControllerKind {
    Pid,
    FuzzyPid,
}

impl FromStr for ControllerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pid" => Ok(ControllerKind::Pid),
            "fuzzy-pid" | "fuzzy_pid" | "fuzzy" => Ok(ControllerKind::FuzzyPid),
            other => Err(format!("expected pid or fuzzy-pid, got `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub setpoint: f64,
    pub duration: f64,
    pub dt: f64,
    pub controller: ControllerKind,
    pub gains: PidGains,
    pub factors: ScalingFactors,
    pub plant_num: Vec<f64>,
    pub plant_den: Vec<f64>,
    pub disturbance_time: Option<f64>,
    pub disturbance_magnitude: Option<f64>,
    pub disturbance_port: Port,
    pub rules_file: Option<PathBuf>,
    pub output: PathBuf,
    pub u_min: Option<f64>,
    pub u_max: Option<f64>,
    pub i_min: Option<f64>,
    pub i_max: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            setpoint: defaults::SETPOINT,
            duration: defaults::STEP_DURATION,
            dt: defaults::DT,
            controller: ControllerKind::FuzzyPid,
            gains: defaults::base_gains(),
            factors: defaults::scaling_factors(),
            plant_num: SPRAY_LINE_NUM.to_vec(),
            plant_den: SPRAY_LINE_DEN.to_vec(),
            disturbance_time: None,
            disturbance_magnitude: None,
            disturbance_port: Port::Input,
            rules_file: None,
            output: PathBuf::from("trajectory.csv"),
            u_min: None,
            u_max: None,
            i_min: None,
            i_max: None,
        }
    }
}

fn number(key: &str, value: &str) -> Result<f64, ConfigError> {
    let invalid = |reason: String| ConfigError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
        reason,
    };
    let v: f64 = value.trim().parse().map_err(|e: std::num::ParseFloatError| invalid(e.to_string()))?;
    if !v.is_finite() {
        return Err(invalid("must be a finite decimal".into()));
    }
    Ok(v)
}

fn coefficients(key: &str, value: &str) -> Result<Vec<f64>, ConfigError> {
    let coefs = value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| number(key, s))
        .collect::<Result<Vec<_>, _>>()?;
    if coefs.is_empty() {
        return Err(ConfigError::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
            reason: "no coefficients".into(),
        });
    }
    Ok(coefs)
}

impl ScenarioConfig {
    /// Parses a config file body on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = ScenarioConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: n + 1,
                    message: format!("expected `key = value`, got `{content}`"),
                });
            };
            cfg.set(key.trim(), value.trim()).map_err(|e| match e {
                ConfigError::UnknownKey(_) | ConfigError::InvalidValue { .. } => ConfigError::Syntax {
                    line: n + 1,
                    message: e.to_string(),
                },
                other => other,
            })?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        ScenarioConfig::parse(&text)
    }

    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "setpoint" => self.setpoint = number(key, value)?,
            "duration" => self.duration = number(key, value)?,
            "dt" => self.dt = number(key, value)?,
            "controller" => {
                self.controller = value.parse().map_err(|reason| ConfigError::InvalidValue {
                    key: key.into(),
                    value: value.into(),
                    reason,
                })?
            }
            "kp" => self.gains.kp = number(key, value)?,
            "ki" => self.gains.ki = number(key, value)?,
            "kd" => self.gains.kd = number(key, value)?,
            "ke" => self.factors.ke = number(key, value)?,
            "kec" => self.factors.kec = number(key, value)?,
            "kup" => self.factors.kup = number(key, value)?,
            "kui" => self.factors.kui = number(key, value)?,
            "kud" => self.factors.kud = number(key, value)?,
            "plant_num" => self.plant_num = coefficients(key, value)?,
            "plant_den" => self.plant_den = coefficients(key, value)?,
            "disturbance_time" => self.disturbance_time = Some(number(key, value)?),
            "disturbance_magnitude" => self.disturbance_magnitude = Some(number(key, value)?),
            "disturbance_port" => {
                self.disturbance_port = value.parse().map_err(|reason| ConfigError::InvalidValue {
                    key: key.into(),
                    value: value.into(),
                    reason,
                })?
            }
            "rules_file" => self.rules_file = Some(PathBuf::from(value)),
            "output" => self.output = PathBuf::from(value),
            "u_min" => self.u_min = Some(number(key, value)?),
            "u_max" => self.u_max = Some(number(key, value)?),
            "i_min" => self.i_min = Some(number(key, value)?),
            "i_max" => self.i_max = Some(number(key, value)?),
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    pub fn has_disturbance(&self) -> bool {
        self.disturbance_time.is_some() || self.disturbance_magnitude.is_some()
    }

    fn pair(name: &'static str, lo: Option<f64>, hi: Option<f64>) -> Result<Option<(f64, f64)>, ConfigError> {
        match (lo, hi) {
            (None, None) => Ok(None),
            (Some(lo), Some(hi)) => Ok(Some((lo, hi))),
            _ => Err(crate::Error::InvalidParameter {
                name,
                reason: "both ends must be given".into(),
            }
            .into()),
        }
    }

    pub fn limits(&self) -> Result<PidLimits, ConfigError> {
        let limits = PidLimits {
            output: Self::pair("output limits", self.u_min, self.u_max)?,
            integral: Self::pair("integral limits", self.i_min, self.i_max)?,
        };
        limits.validate()?;
        Ok(limits)
    }

    pub fn rule_table(&self) -> Result<RuleTable, ConfigError> {
        match &self.rules_file {
            None => Ok(RuleTable::default()),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                    path: path.clone(),
                    source,
                })?;
                text.parse().map_err(|source| ConfigError::Rules {
                    path: path.clone(),
                    source,
                })
            }
        }
    }

    pub fn pid_spec(&self) -> Result<ControllerSpec, ConfigError> {
        self.gains.validate()?;
        Ok(ControllerSpec::Pid {
            gains: self.gains,
            limits: self.limits()?,
        })
    }

    pub fn fuzzy_spec(&self) -> Result<ControllerSpec, ConfigError> {
        self.gains.validate()?;
        self.factors.validate()?;
        Ok(ControllerSpec::FuzzyPid {
            gains: self.gains,
            factors: self.factors,
            table: self.rule_table()?,
            limits: self.limits()?,
        })
    }

    pub fn controller_spec(&self) -> Result<ControllerSpec, ConfigError> {
        match self.controller {
            ControllerKind::Pid => self.pid_spec(),
            ControllerKind::FuzzyPid => self.fuzzy_spec(),
        }
    }

    /// Fully validated scenario with the given controller.
    pub fn scenario(&self, controller: ControllerSpec) -> Result<SimScenario, ConfigError> {
        let disturbances = match (self.disturbance_time, self.disturbance_magnitude) {
            (None, None) => Vec::new(),
            (Some(t), Some(m)) => vec![Disturbance::step(t, m, self.disturbance_port)?],
            _ => {
                return Err(crate::Error::InvalidParameter {
                    name: "disturbance",
                    reason: "disturbance_time and disturbance_magnitude must be given together".into(),
                }
                .into())
            }
        };
        let scenario = SimScenario {
            setpoint: self.setpoint,
            duration: self.duration,
            dt: self.dt,
            controller,
            plant: TransferFunction::new(self.plant_num.clone(), self.plant_den.clone())?,
            disturbances,
            initial_state: None,
        };
        scenario.validate()?;
        crate::plant::tf_to_ss(&scenario.plant)?;
        Ok(scenario)
    }
}
