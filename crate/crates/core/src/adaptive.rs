//! Self-tuning fuzzy PID: every step the fuzzy stage turns `(e, ec)` into
//! gain corrections, which are added to the base gains before the PID law
//! runs.

use crate::error::{ensure_finite, ensure_positive_dt, Result};
use crate::fuzzy::{gain_deltas, GainDeltas, RuleTable, ScalingFactors};
use crate::pid::{pid_step, Pid, PidGains, PidLimits, PidState};

/// Output of one controller update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlAction {
    pub u: f64,
    /// Gains actually used for this step.
    pub gains: PidGains,
}

/// Common interface of the loop controllers driven by the harness.
pub trait Controller {
    /// Computes the control value for setpoint `r` and measurement `y`.
    fn update(&mut self, r: f64, y: f64, dt: f64) -> Result<ControlAction>;

    /// Clears all dynamic state, keeping the configuration.
    fn reset(&mut self);

    /// Gains reported before the first update.
    fn nominal_gains(&self) -> PidGains;
}

impl Controller for Pid {
    fn update(&mut self, r: f64, y: f64, dt: f64) -> Result<ControlAction> {
        ensure_finite("setpoint", r)?;
        ensure_finite("measurement", y)?;
        let u = self.step(r - y, dt)?;
        Ok(ControlAction { u, gains: self.gains })
    }

    fn reset(&mut self) {
        Pid::reset(self);
    }

    fn nominal_gains(&self) -> PidGains {
        self.gains
    }
}

/// Fuzzy gain-scheduled PID.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyPidController {
    pub base: PidGains,
    pub factors: ScalingFactors,
    pub table: RuleTable,
    pub limits: PidLimits,
    pid: PidState,
    prev_error: Option<f64>,
}

impl FuzzyPidController {
    pub fn new(
        base: PidGains,
        factors: ScalingFactors,
        table: RuleTable,
        limits: PidLimits,
    ) -> Result<Self> {
        base.validate()?;
        factors.validate()?;
        limits.validate()?;
        Ok(FuzzyPidController {
            base,
            factors,
            table,
            limits,
            pid: PidState::default(),
            prev_error: None,
        })
    }

    /// Base-plus-correction gains, floored at zero.
    pub fn effective_gains(&self, deltas: &GainDeltas) -> PidGains {
        PidGains {
            kp: (self.base.kp + deltas.d_kp).max(0.0),
            ki: (self.base.ki + deltas.d_ki).max(0.0),
            kd: (self.base.kd + deltas.d_kd).max(0.0),
        }
    }

    pub fn pid_state(&self) -> &PidState {
        &self.pid
    }

    /// One update; also returns the raw gain corrections for inspection.
    pub fn step(&mut self, r: f64, y: f64, dt: f64) -> Result<(ControlAction, GainDeltas)> {
        ensure_positive_dt(dt)?;
        ensure_finite("setpoint", r)?;
        ensure_finite("measurement", y)?;

        let e = r - y;
        let ec = match self.prev_error {
            Some(prev) => (e - prev) / dt,
            None => 0.0,
        };
        let deltas = gain_deltas(e, ec, &self.factors, &self.table)?;
        let gains = self.effective_gains(&deltas);
        let (u, next) = pid_step(&self.pid, &gains, e, dt, &self.limits)?;
        self.pid = next;
        self.prev_error = Some(e);
        Ok((ControlAction { u, gains }, deltas))
    }
}

impl Controller for FuzzyPidController {
    fn update(&mut self, r: f64, y: f64, dt: f64) -> Result<ControlAction> {
        self.step(r, y, dt).map(|(action, _)| action)
    }

    fn reset(&mut self) {
        self.pid.reset();
        self.prev_error = None;
    }

    fn nominal_gains(&self) -> PidGains {
        self.base
    }
}
