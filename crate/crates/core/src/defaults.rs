//! Shipped default scenario.
//!
//! Base gains and output scale factors were picked with
//! `examples/tune_defaults.rs` on the spray-line plant: a 5-unit setpoint
//! step gives roughly 10.9 % overshoot under plain PID and 7.0 % under the
//! fuzzy PID with the same base gains. They are tuning results, not
//! measured plant data. The quantization factors keep Ke = 5 and Kec = 0.8.

use crate::fuzzy::{RuleTable, ScalingFactors};
use crate::harness::{ControllerSpec, SimScenario};
use crate::pid::{PidGains, PidLimits};
use crate::plant::{Disturbance, Port, TransferFunction};

pub const SETPOINT: f64 = 5.0;
pub const DT: f64 = 1e-4;
pub const STEP_DURATION: f64 = 0.5;

pub const KP: f64 = 0.004;
pub const KI: f64 = 0.02;
pub const KD: f64 = 5e-7;

pub const KE: f64 = 5.0;
pub const KEC: f64 = 0.8;
pub const KUP: f64 = 6e-4;
pub const KUI: f64 = 4e-3;
pub const KUD: f64 = 5e-7;

/// Input step disturbance applied once the step response has settled.
pub const DISTURBANCE_TIME: f64 = 0.5;
pub const DISTURBANCE_MAGNITUDE: f64 = 5e-4;
pub const DISTURBANCE_DURATION: f64 = 1.0;

pub fn base_gains() -> PidGains {
    PidGains {
        kp: KP,
        ki: KI,
        kd: KD,
    }
}

pub fn scaling_factors() -> ScalingFactors {
    ScalingFactors {
        ke: KE,
        kec: KEC,
        kup: KUP,
        kui: KUI,
        kud: KUD,
    }
}

pub fn pid() -> ControllerSpec {
    ControllerSpec::Pid {
        gains: base_gains(),
        limits: PidLimits::NONE,
    }
}

pub fn fuzzy_pid() -> ControllerSpec {
    ControllerSpec::FuzzyPid {
        gains: base_gains(),
        factors: scaling_factors(),
        table: RuleTable::default(),
        limits: PidLimits::NONE,
    }
}

/// Setpoint step from rest on the spray-line plant.
pub fn step_scenario(controller: ControllerSpec) -> SimScenario {
    SimScenario {
        setpoint: SETPOINT,
        duration: STEP_DURATION,
        dt: DT,
        controller,
        plant: TransferFunction::spray_line(),
        disturbances: Vec::new(),
        initial_state: None,
    }
}

/// Step scenario extended past settling with an input step disturbance.
pub fn disturbance_scenario(controller: ControllerSpec) -> SimScenario {
    SimScenario {
        duration: DISTURBANCE_DURATION,
        disturbances: vec![Disturbance {
            time: DISTURBANCE_TIME,
            magnitude: DISTURBANCE_MAGNITUDE,
            port: Port::Input,
        }],
        ..step_scenario(controller)
    }
}
