use thiserror::Error;

/// Errors raised by the controller, plant and harness layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("universe value {0} lies outside [-6, 6]")]
    OutOfUniverse(f64),

    #[error("invalid transfer function: {0}")]
    InvalidTransferFunction(String),

    #[error("numerical blow-up at t = {time} s: plant state is not finite")]
    NumericalBlowUp { time: f64 },

    #[error("empty trajectory")]
    EmptyTrajectory,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn ensure_positive_dt(dt: f64) -> Result<()> {
    ensure_finite("dt", dt)?;
    if dt > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("time step must be positive, got {dt}"),
        })
    }
}
