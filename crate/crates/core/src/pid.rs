//! Discrete parallel-form PID.
//!
//! `u = kp*e + ki*I + kd*(e - e_prev)/dt` with a rectangular integral
//! `I += e*dt` and a backward-difference derivative that is zero on the first
//! step. The integral is clamped before the output is formed, then the output
//! is clamped.

use crate::error::{ensure_finite, ensure_positive_dt, Error, Result};

/// Parallel-form gains. All non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PidGains {
    pub kp: f64,
    pub ki: f64,
    pub kd: f64,
}

impl PidGains {
    pub fn new(kp: f64, ki: f64, kd: f64) -> Result<Self> {
        let gains = PidGains { kp, ki, kd };
        gains.validate()?;
        Ok(gains)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("kp", self.kp), ("ki", self.ki), ("kd", self.kd)] {
            ensure_finite(name, v)?;
            if v < 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("gain must be non-negative, got {v}"),
                });
            }
        }
        Ok(())
    }
}

/// Standard (ideal) form: `kp * (e + 1/ti * integral + td * derivative)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardFormGains {
    pub kp: f64,
    /// Integration time in seconds.
    pub ti: f64,
    /// Derivative time in seconds.
    pub td: f64,
}

impl StandardFormGains {
    pub fn to_parallel(&self) -> Result<PidGains> {
        ensure_finite("ti", self.ti)?;
        if self.ti <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "ti",
                reason: format!("integration time must be positive, got {}", self.ti),
            });
        }
        ensure_finite("td", self.td)?;
        if self.td < 0.0 {
            return Err(Error::InvalidParameter {
                name: "td",
                reason: format!("derivative time must be non-negative, got {}", self.td),
            });
        }
        PidGains::new(self.kp, self.kp / self.ti, self.kp * self.td)
    }
}

/// Optional saturation of the output and of the integral accumulator.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PidLimits {
    pub output: Option<(f64, f64)>,
    pub integral: Option<(f64, f64)>,
}

impl PidLimits {
    pub const NONE: PidLimits = PidLimits {
        output: None,
        integral: None,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, range) in [("output limits", self.output), ("integral limits", self.integral)] {
            if let Some((lo, hi)) = range {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(Error::InvalidParameter {
                        name,
                        reason: format!("need finite min < max, got [{lo}, {hi}]"),
                    });
                }
            }
        }
        Ok(())
    }
}

fn clamp_opt(v: f64, range: Option<(f64, f64)>) -> f64 {
    match range {
        Some((lo, hi)) => v.clamp(lo, hi),
        None => v,
    }
}

/// Integrator and derivative memory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidState {
    /// Running integral of the error, error-seconds.
    pub integral: f64,
    pub prev_error: f64,
    pub first_step: bool,
}

impl Default for PidState {
    fn default() -> Self {
        PidState {
            integral: 0.0,
            prev_error: 0.0,
            first_step: true,
        }
    }
}

impl PidState {
    pub fn reset(&mut self) {
        *self = PidState::default();
    }
}

/// One controller update. Pure: the caller threads the returned state.
pub fn pid_step(
    state: &PidState,
    gains: &PidGains,
    e: f64,
    dt: f64,
    limits: &PidLimits,
) -> Result<(f64, PidState)> {
    ensure_positive_dt(dt)?;
    ensure_finite("error", e)?;

    let prev = if state.first_step { e } else { state.prev_error };
    let integral = clamp_opt(state.integral + e * dt, limits.integral);
    let derivative = (e - prev) / dt;
    let u = gains.kp * e + gains.ki * integral + gains.kd * derivative;
    let u = clamp_opt(u, limits.output);

    Ok((
        u,
        PidState {
            integral,
            prev_error: e,
            first_step: false,
        },
    ))
}

/// Stateful wrapper around [`pid_step`] with fixed gains.
#[derive(Debug, Clone, PartialEq)]
pub struct Pid {
    pub gains: PidGains,
    pub limits: PidLimits,
    state: PidState,
}

impl Pid {
    pub fn new(gains: PidGains, limits: PidLimits) -> Result<Self> {
        gains.validate()?;
        limits.validate()?;
        Ok(Pid {
            gains,
            limits,
            state: PidState::default(),
        })
    }

    pub fn step(&mut self, e: f64, dt: f64) -> Result<f64> {
        let (u, next) = pid_step(&self.state, &self.gains, e, dt, &self.limits)?;
        self.state = next;
        Ok(u)
    }

    pub fn state(&self) -> &PidState {
        &self.state
    }

    pub fn reset(&mut self) {
        self.state.reset();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gains(kp: f64, ki: f64, kd: f64) -> PidGains {
        PidGains::new(kp, ki, kd).unwrap()
    }

    #[test]
    fn proportional_only() {
        let (u, _) = pid_step(&PidState::default(), &gains(1.0, 0.0, 0.0), 2.0, 0.1, &PidLimits::NONE).unwrap();
        assert_eq!(u, 2.0);
    }

    #[test]
    fn rectangular_integration() {
        let mut pid = Pid::new(gains(0.0, 1.0, 0.0), PidLimits::NONE).unwrap();
        let outs: Vec<f64> = (0..3).map(|_| pid.step(1.0, 0.1).unwrap()).collect();
        for (u, want) in outs.iter().zip([0.1, 0.2, 0.3]) {
            assert!((u - want).abs() < 1e-15, "{u} vs {want}");
        }
    }

    #[test]
    fn backward_difference_and_first_step() {
        let mut pid = Pid::new(gains(0.0, 0.0, 1.0), PidLimits::NONE).unwrap();
        assert_eq!(pid.step(0.0, 0.1).unwrap(), 0.0);
        assert_eq!(pid.step(1.0, 0.1).unwrap(), 10.0);

        // first step never kicks, whatever the error
        let mut pid = Pid::new(gains(0.0, 0.0, 1.0), PidLimits::NONE).unwrap();
        assert_eq!(pid.step(5.0, 0.1).unwrap(), 0.0);
    }

    #[test]
    fn standard_form_conversion() {
        let g = StandardFormGains { kp: 2.0, ti: 4.0, td: 0.5 }.to_parallel().unwrap();
        assert_eq!(g, gains(2.0, 0.5, 1.0));
        let g = StandardFormGains { kp: 1.0, ti: 1.0, td: 0.0 }.to_parallel().unwrap();
        assert_eq!(g, gains(1.0, 1.0, 0.0));
        let g = StandardFormGains { kp: 0.0, ti: 3.0, td: 7.0 }.to_parallel().unwrap();
        assert_eq!(g, gains(0.0, 0.0, 0.0));
        assert!(StandardFormGains { kp: 1.0, ti: 0.0, td: 0.0 }.to_parallel().is_err());
        assert!(StandardFormGains { kp: 1.0, ti: -2.0, td: 0.0 }.to_parallel().is_err());
    }

    #[test]
    fn reset_is_idempotent() {
        let mut pid = Pid::new(gains(1.0, 2.0, 0.5), PidLimits::NONE).unwrap();
        for e in [1.0, -2.0, 0.5] {
            pid.step(e, 0.01).unwrap();
        }
        pid.reset();
        let once = *pid.state();
        pid.reset();
        assert_eq!(*pid.state(), once);
        assert_eq!(once, PidState::default());
        assert_eq!(pid.step(0.0, 0.01).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_dt_and_error() {
        let s = PidState::default();
        let g = gains(1.0, 0.0, 0.0);
        assert!(pid_step(&s, &g, 1.0, 0.0, &PidLimits::NONE).is_err());
        assert!(pid_step(&s, &g, 1.0, -0.1, &PidLimits::NONE).is_err());
        assert!(pid_step(&s, &g, f64::NAN, 0.1, &PidLimits::NONE).is_err());
    }

    #[test]
    fn rejects_negative_gains_and_bad_limits() {
        assert!(PidGains::new(-1.0, 0.0, 0.0).is_err());
        assert!(PidGains::new(0.0, f64::INFINITY, 0.0).is_err());
        let limits = PidLimits {
            output: Some((1.0, 1.0)),
            integral: None,
        };
        assert!(Pid::new(gains(1.0, 0.0, 0.0), limits).is_err());
    }

    #[test]
    fn limits_clamp_integral_then_output() {
        let limits = PidLimits {
            output: Some((-1.0, 1.0)),
            integral: Some((-0.5, 0.5)),
        };
        let mut pid = Pid::new(gains(0.0, 1.0, 0.0), limits).unwrap();
        for _ in 0..100 {
            pid.step(1.0, 0.1).unwrap();
            assert!(pid.state().integral <= 0.5);
        }
        assert_eq!(pid.state().integral, 0.5);

        let mut pid = Pid::new(gains(10.0, 0.0, 0.0), limits).unwrap();
        assert_eq!(pid.step(1.0, 0.1).unwrap(), 1.0);
        assert_eq!(pid.step(-1.0, 0.1).unwrap(), -1.0);
    }
}
