//! Closed-loop simulation of a controller against an LTI plant.

use crate::adaptive::{Controller, FuzzyPidController};
use crate::error::{ensure_finite, Error, Result};
use crate::fuzzy::{RuleTable, ScalingFactors};
use crate::metrics::{compute_metrics, disturbance_response, DisturbanceResponse, StepMetrics};
use crate::pid::{Pid, PidGains, PidLimits};
use crate::plant::{apply_disturbances, plant_step, tf_to_ss, Disturbance, PlantState, TransferFunction};

/// Upper bound on the number of integration steps in one run.
pub const MAX_STEPS: f64 = 1e8;

/// Which controller closes the loop, with its configuration.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum ControllerSpec {
    Pid {
        gains: PidGains,
        limits: PidLimits,
    },
    FuzzyPid {
        gains: PidGains,
        factors: ScalingFactors,
        table: RuleTable,
        limits: PidLimits,
    },
}

impl ControllerSpec {
    pub fn build(&self) -> Result<Box<dyn Controller>> {
        Ok(match self {
            ControllerSpec::Pid { gains, limits } => Box::new(Pid::new(*gains, *limits)?),
            ControllerSpec::FuzzyPid {
                gains,
                factors,
                table,
                limits,
            } => Box::new(FuzzyPidController::new(*gains, *factors, table.clone(), *limits)?),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ControllerSpec::Pid { .. } => "pid",
            ControllerSpec::FuzzyPid { .. } => "fuzzy-pid",
        }
    }

    pub fn base_gains(&self) -> PidGains {
        match self {
            ControllerSpec::Pid { gains, .. } | ControllerSpec::FuzzyPid { gains, .. } => *gains,
        }
    }
}

/// One closed-loop experiment: constant setpoint, plant, controller and
/// optional disturbances.
#[derive(Debug, Clone, PartialEq)]
pub struct SimScenario {
    pub setpoint: f64,
    /// Simulated time in seconds.
    pub duration: f64,
    /// Controller sample time and integration step in seconds.
    pub dt: f64,
    pub controller: ControllerSpec,
    pub plant: TransferFunction,
    pub disturbances: Vec<Disturbance>,
    /// Initial plant state; zero when `None`.
    pub initial_state: Option<Vec<f64>>,
}

impl SimScenario {
    pub fn validate(&self) -> Result<()> {
        ensure_finite("setpoint", self.setpoint)?;
        ensure_finite("duration", self.duration)?;
        ensure_finite("dt", self.dt)?;
        if self.duration <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "duration",
                reason: format!("must be positive, got {}", self.duration),
            });
        }
        if self.dt <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "dt",
                reason: format!("must be positive, got {}", self.dt),
            });
        }
        if self.duration / self.dt > MAX_STEPS {
            return Err(Error::InvalidParameter {
                name: "duration",
                reason: format!("duration / dt exceeds {MAX_STEPS:e} steps"),
            });
        }
        if let Some(x0) = &self.initial_state {
            if x0.len() != self.plant.order() {
                return Err(Error::InvalidParameter {
                    name: "initial state",
                    reason: format!("expected {} entries, got {}", self.plant.order(), x0.len()),
                });
            }
            for &v in x0 {
                ensure_finite("initial state", v)?;
            }
        }
        Ok(())
    }

    /// Number of integration steps, `floor(duration / dt)`. Ratios within
    /// 1e-9 (relative) of an integer are taken as that integer so that e.g.
    /// 0.5 / 1e-4 gives 5000 steps.
    pub fn steps(&self) -> usize {
        let ratio = self.duration / self.dt;
        let nearest = ratio.round();
        if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
            nearest as usize
        } else {
            ratio.floor() as usize
        }
    }

    pub fn with_controller(&self, controller: ControllerSpec) -> SimScenario {
        SimScenario {
            controller,
            ..self.clone()
        }
    }
}

/// One logged instant of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub r: f64,
    pub e: f64,
    pub u: f64,
    pub y: f64,
    pub kp: f64,
    pub ki: f64,
    pub kd: f64,
}

/// Uniformly sampled record of a run. Row 0 is the initial condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    pub rows: Vec<Sample>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|s| s.t).collect()
    }

    pub fn outputs(&self) -> Vec<f64> {
        self.rows.iter().map(|s| s.y).collect()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Config(#[from] Error),
    /// The plant state left the finite range; `partial` holds every row
    /// logged before the failing step.
    #[error("numerical blow-up at t = {time} s")]
    BlowUp { time: f64, partial: Trajectory },
}

/// Runs the loop: each step reads the (disturbed) measurement, computes the
/// control value, adds input disturbances, advances the plant by `dt` with
/// the input held, and logs the new row.
pub fn run_closed_loop(scenario: &SimScenario) -> std::result::Result<Trajectory, SimError> {
    scenario.validate()?;
    let model = tf_to_ss(&scenario.plant)?;
    let mut controller = scenario.controller.build()?;
    let r = scenario.setpoint;
    let dt = scenario.dt;
    let dist = &scenario.disturbances;

    let mut state = match &scenario.initial_state {
        Some(x0) => PlantState {
            y: model.output(x0, 0.0),
            x: x0.clone(),
        },
        None => PlantState::zero(&model),
    };

    let n = scenario.steps();
    let mut rows = Vec::with_capacity(n + 1);
    let g0 = controller.nominal_gains();
    let (_, y0) = apply_disturbances(0.0, state.y, dist, 0.0);
    rows.push(Sample {
        t: 0.0,
        r,
        e: r - y0,
        u: 0.0,
        y: y0,
        kp: g0.kp,
        ki: g0.ki,
        kd: g0.kd,
    });

    let mut y_meas = y0;
    for k in 1..=n {
        let t_prev = (k - 1) as f64 * dt;
        let t = k as f64 * dt;
        let blow_up = |rows: Vec<Sample>| SimError::BlowUp {
            time: t,
            partial: Trajectory { dt, rows },
        };

        let action = match controller.update(r, y_meas, dt) {
            Ok(a) => a,
            Err(Error::NonFinite { .. }) => return Err(blow_up(rows)),
            Err(e) => return Err(e.into()),
        };
        let (u_eff, _) = apply_disturbances(action.u, 0.0, dist, t_prev);
        state = match plant_step(&model, &state, u_eff, dt) {
            Ok(s) => s,
            Err(Error::NonFinite { .. }) => return Err(blow_up(rows)),
            Err(e) => return Err(e.into()),
        };
        let (_, y) = apply_disturbances(0.0, state.y, dist, t);
        if !y.is_finite() {
            return Err(blow_up(rows));
        }
        y_meas = y;
        rows.push(Sample {
            t,
            r,
            e: r - y,
            u: action.u,
            y,
            kp: action.gains.kp,
            ki: action.gains.ki,
            kd: action.gains.kd,
        });
    }
    Ok(Trajectory { dt, rows })
}

/// Result of one side of a controller comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub trajectory: Trajectory,
    pub metrics: StepMetrics,
    /// Present when the scenario has disturbances; measured from the
    /// earliest onset.
    pub disturbance: Option<DisturbanceResponse>,
}

pub fn summarize(scenario: &SimScenario) -> std::result::Result<RunSummary, SimError> {
    let trajectory = run_closed_loop(scenario)?;
    let metrics = compute_metrics(&trajectory, scenario.setpoint)?;
    let onset = scenario
        .disturbances
        .iter()
        .map(|d| d.time)
        .fold(None, |acc: Option<f64>, t| Some(acc.map_or(t, |a| a.min(t))));
    let disturbance = match onset {
        Some(t0) => Some(disturbance_response(&trajectory, scenario.setpoint, t0)?),
        None => None,
    };
    Ok(RunSummary {
        trajectory,
        metrics,
        disturbance,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub pid: RunSummary,
    pub fuzzy: RunSummary,
}

/// Runs the same scenario under both controllers, concurrently when the
/// `parallel` feature is on.
pub fn compare_controllers(
    base: &SimScenario,
    pid: ControllerSpec,
    fuzzy: ControllerSpec,
) -> std::result::Result<Comparison, SimError> {
    let pid_scenario = base.with_controller(pid);
    let fuzzy_scenario = base.with_controller(fuzzy);
    let (a, b) = crate::par::join(|| summarize(&pid_scenario), || summarize(&fuzzy_scenario));
    Ok(Comparison { pid: a?, fuzzy: b? })
}

/// Runs independent scenarios, in parallel with the `parallel` feature.
/// Results keep the input order.
pub fn run_batch(scenarios: &[SimScenario]) -> Vec<std::result::Result<Trajectory, SimError>> {
    crate::par::map(scenarios, run_closed_loop)
}

/// Single-threaded [`run_batch`].
pub fn run_batch_sequential(scenarios: &[SimScenario]) -> Vec<std::result::Result<Trajectory, SimError>> {
    scenarios.iter().map(run_closed_loop).collect()
}
