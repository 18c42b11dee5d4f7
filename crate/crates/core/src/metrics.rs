//! Step-response figures computed from a sampled trajectory.
//!
//! The steady ("infinity") value is the last sample. Overshoot is
//! `(y_max - y_final) / |y_final| * 100`. Settling uses a 2 % band around
//! the final value; the `settled` flag checks that the last 5 % of samples
//! sit within 1 % of it.

use crate::error::{Error, Result};
use crate::harness::Trajectory;

/// Band for the settling time, as a fraction of `|y_final|`.
pub const SETTLING_BAND: f64 = 0.02;
/// Band and window for the settled check.
pub const SETTLED_BAND: f64 = 0.01;
pub const SETTLED_WINDOW: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepMetrics {
    /// Peak output value.
    pub y_max: f64,
    /// Time of the first sample reaching `y_max`.
    pub peak_time: f64,
    /// Earliest time after which the output stays within 2 % of `y_final`.
    pub settling_time: Option<f64>,
    /// 10 % to 90 % rise time.
    pub rise_time: Option<f64>,
    /// Last-sample output.
    pub y_final: f64,
    pub overshoot_pct: Option<f64>,
    pub settled: bool,
}

/// Metrics for a response sampled at times `t`. `None` entries mean the
/// percentage-based figure is undefined (zero final value or zero setpoint).
pub fn step_metrics(t: &[f64], y: &[f64], r: f64) -> Result<StepMetrics> {
    if t.is_empty() || t.len() != y.len() {
        return Err(Error::EmptyTrajectory);
    }
    let n = y.len();
    let y_final = y[n - 1];

    let (mut peak_idx, mut y_max) = (0, y[0]);
    for (i, &v) in y.iter().enumerate().skip(1) {
        if v > y_max {
            y_max = v;
            peak_idx = i;
        }
    }

    let window = ((n as f64 * SETTLED_WINDOW).ceil() as usize).clamp(1, n);
    let settled = y[n - window..]
        .iter()
        .all(|v| (v - y_final).abs() <= SETTLED_BAND * y_final.abs());

    let defined = y_final != 0.0 && r != 0.0;
    let (overshoot_pct, settling_time, rise_time) = if defined {
        let overshoot = (y_max - y_final) / y_final.abs() * 100.0;

        let band = SETTLING_BAND * y_final.abs();
        let settle_idx = match y.iter().rposition(|v| (v - y_final).abs() > band) {
            Some(i) => i + 1,
            None => 0,
        };

        let first_reaching = |frac: f64| y.iter().position(|v| v / y_final >= frac).map(|i| t[i]);
        let rise = match (first_reaching(0.1), first_reaching(0.9)) {
            (Some(t10), Some(t90)) => Some(t90 - t10),
            _ => None,
        };
        (Some(overshoot), Some(t[settle_idx]), rise)
    } else {
        (None, None, None)
    };

    Ok(StepMetrics {
        y_max,
        peak_time: t[peak_idx],
        settling_time,
        rise_time,
        y_final,
        overshoot_pct,
        settled,
    })
}

/// Step metrics of a closed-loop run against setpoint `r`.
pub fn compute_metrics(traj: &Trajectory, r: f64) -> Result<StepMetrics> {
    let t: Vec<f64> = traj.rows.iter().map(|s| s.t).collect();
    let y: Vec<f64> = traj.rows.iter().map(|s| s.y).collect();
    step_metrics(&t, &y, r)
}

/// Response to a disturbance switched on at `onset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisturbanceResponse {
    /// Largest `|y - r|` at or after the onset.
    pub peak_deviation: f64,
    pub peak_time: f64,
    /// Earliest time after the onset from which the output stays within 2 %
    /// of the setpoint; `None` if it never re-enters the band for good.
    pub recovered_at: Option<f64>,
}

pub fn disturbance_response(traj: &Trajectory, r: f64, onset: f64) -> Result<DisturbanceResponse> {
    let after: Vec<_> = traj.rows.iter().filter(|s| s.t >= onset).collect();
    if after.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let (mut peak_deviation, mut peak_time) = (0.0, after[0].t);
    for s in &after {
        let dev = (s.y - r).abs();
        if dev > peak_deviation {
            peak_deviation = dev;
            peak_time = s.t;
        }
    }
    let band = SETTLING_BAND * r.abs();
    let recovered_at = match after.iter().rposition(|s| (s.y - r).abs() > band) {
        None => Some(after[0].t),
        Some(i) if i + 1 < after.len() => Some(after[i + 1].t),
        Some(_) => None,
    };
    Ok(DisturbanceResponse {
        peak_deviation,
        peak_time,
        recovered_at,
    })
}
