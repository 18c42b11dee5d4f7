//! Self-tuning fuzzy PID flow control for variable-rate spraying.
//!
//! The crate has four layers:
//!
//! - [`fuzzy`]: triangular fuzzification of error and error rate, the 7x7
//!   gain-correction rule table, min/max inference and centroid
//!   defuzzification.
//! - [`pid`] and [`adaptive`]: the discrete PID law and the controller that
//!   re-schedules its gains from the fuzzy stage every sample.
//! - [`plant`]: the spray-line transfer function, its state-space
//!   realization and an RK4 integrator.
//! - [`harness`] and [`metrics`]: closed-loop runs, controller comparison
//!   and step-response figures.
//!
//! Batch entry points ([`harness::run_batch`], [`harness::compare_controllers`],
//! [`fuzzy::control_surface`]) use rayon when the default `parallel` feature
//! is enabled and fall back to plain iteration otherwise.

pub mod adaptive;
pub mod cli;
pub mod config;
pub mod defaults;
pub mod error;
pub mod export;
pub mod fuzzy;
pub mod harness;
pub mod metrics;
mod par;
pub mod pid;
pub mod plant;

pub use adaptive::{ControlAction, Controller, FuzzyPidController};
pub use error::{Error, Result};
pub use fuzzy::{GainDeltas, Label, RuleTable, ScalingFactors};
pub use harness::{
    compare_controllers, run_closed_loop, ControllerSpec, SimError, SimScenario, Trajectory,
};
pub use metrics::{compute_metrics, StepMetrics};
pub use pid::{pid_step, Pid, PidGains, PidLimits, PidState, StandardFormGains};
pub use plant::{Disturbance, Port, StateSpaceModel, TransferFunction};
