//! LTI plant: transfer-function description, controllable canonical
//! realization and a fixed-step RK4 integrator with zero-order-hold input.

use std::fmt;
use std::str::FromStr;

use crate::error::{ensure_finite, ensure_positive_dt, Error, Result};

/// Spray-line flow model `43956 / (0.0037 s^2 + s)`.
pub const SPRAY_LINE_NUM: [f64; 1] = [43956.0];
pub const SPRAY_LINE_DEN: [f64; 3] = [0.0037, 1.0, 0.0];

/// Rational transfer function, coefficients highest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferFunction {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl TransferFunction {
    /// Leading zeros of the numerator are dropped. The denominator's leading
    /// coefficient must be nonzero and its degree must not be below the
    /// numerator's.
    pub fn new(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        if num.iter().chain(&den).any(|c| !c.is_finite()) {
            return Err(Error::InvalidTransferFunction("coefficients must be finite".into()));
        }
        if den.is_empty() || num.is_empty() {
            return Err(Error::InvalidTransferFunction("empty polynomial".into()));
        }
        if den[0] == 0.0 {
            return Err(Error::InvalidTransferFunction(
                "leading denominator coefficient is zero".into(),
            ));
        }
        let first = num.iter().position(|&c| c != 0.0).unwrap_or(num.len() - 1);
        let num = num[first..].to_vec();
        if num.len() > den.len() {
            return Err(Error::InvalidTransferFunction(format!(
                "improper: numerator degree {} exceeds denominator degree {}",
                num.len() - 1,
                den.len() - 1
            )));
        }
        Ok(TransferFunction { num, den })
    }

    pub fn spray_line() -> Self {
        TransferFunction::new(SPRAY_LINE_NUM.to_vec(), SPRAY_LINE_DEN.to_vec())
            .expect("constant plant is valid")
    }

    pub fn num(&self) -> &[f64] {
        &self.num
    }

    pub fn den(&self) -> &[f64] {
        &self.den
    }

    pub fn order(&self) -> usize {
        self.den.len() - 1
    }
}

/// Single-input single-output state-space model, `A` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpaceModel {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: f64,
}

impl StateSpaceModel {
    pub fn order(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self, row: usize, col: usize) -> f64 {
        self.a[row * self.order() + col]
    }

    /// `dx = A x + B u`
    fn derivative(&self, x: &[f64], u: f64, dx: &mut [f64]) {
        let n = self.order();
        for (i, out) in dx.iter_mut().enumerate() {
            let row = &self.a[i * n..(i + 1) * n];
            *out = row.iter().zip(x).map(|(a, x)| a * x).sum::<f64>() + self.b[i] * u;
        }
    }

    /// `y = C x + D u`
    pub fn output(&self, x: &[f64], u: f64) -> f64 {
        self.c.iter().zip(x).map(|(c, x)| c * x).sum::<f64>() + self.d * u
    }
}

/// Controllable canonical realization after normalizing the denominator to
/// be monic. The companion row sits at the bottom of `A`; `B` is the last
/// unit vector.
pub fn tf_to_ss(tf: &TransferFunction) -> Result<StateSpaceModel> {
    let n = tf.order();
    if n == 0 {
        return Err(Error::InvalidTransferFunction(
            "static gain has no state to realize".into(),
        ));
    }
    let lead = tf.den[0];
    let a_coef: Vec<f64> = tf.den.iter().map(|c| c / lead).collect();
    let mut b_coef = vec![0.0; n + 1 - tf.num.len()];
    b_coef.extend(tf.num.iter().map(|c| c / lead));

    let d = b_coef[0];
    // numerator of the strictly proper remainder, highest degree first (degree n-1..0)
    let rem: Vec<f64> = (1..=n).map(|i| b_coef[i] - d * a_coef[i]).collect();

    let mut a = vec![0.0; n * n];
    for i in 0..n - 1 {
        a[i * n + i + 1] = 1.0;
    }
    for j in 0..n {
        a[(n - 1) * n + j] = -a_coef[n - j];
    }
    let mut b = vec![0.0; n];
    b[n - 1] = 1.0;
    let c: Vec<f64> = (0..n).map(|j| rem[n - 1 - j]).collect();

    Ok(StateSpaceModel { a, b, c, d })
}

/// Plant state vector and its current output.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantState {
    pub x: Vec<f64>,
    pub y: f64,
}

impl PlantState {
    pub fn zero(model: &StateSpaceModel) -> Self {
        PlantState {
            x: vec![0.0; model.order()],
            y: 0.0,
        }
    }

    /// Zero state scaled so that its output `C x` equals `y0`. Uses the first
    /// state with a nonzero output coefficient.
    pub fn at_output(model: &StateSpaceModel, y0: f64) -> Self {
        let mut state = PlantState::zero(model);
        if let Some(i) = model.c.iter().position(|&c| c != 0.0) {
            state.x[i] = y0 / model.c[i];
            state.y = model.output(&state.x, 0.0);
        }
        state
    }
}

/// One classical RK4 step of `dx = A x + B u` with `u` held over the step.
/// A non-finite result is reported as `Error::NonFinite` on "plant state".
pub fn plant_step(model: &StateSpaceModel, state: &PlantState, u: f64, dt: f64) -> Result<PlantState> {
    ensure_positive_dt(dt)?;
    ensure_finite("plant input", u)?;
    let n = model.order();
    let x = &state.x;
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    model.derivative(x, u, &mut k1);
    for i in 0..n {
        tmp[i] = x[i] + 0.5 * dt * k1[i];
    }
    model.derivative(&tmp, u, &mut k2);
    for i in 0..n {
        tmp[i] = x[i] + 0.5 * dt * k2[i];
    }
    model.derivative(&tmp, u, &mut k3);
    for i in 0..n {
        tmp[i] = x[i] + dt * k3[i];
    }
    model.derivative(&tmp, u, &mut k4);

    let next: Vec<f64> = (0..n)
        .map(|i| x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    let y = model.output(&next, u);
    if !y.is_finite() || next.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            name: "plant state",
            value: y,
        });
    }
    Ok(PlantState { x: next, y })
}

/// Where a disturbance enters the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    /// Added to the control value before it reaches the plant.
    Input,
    /// Added to the measured output.
    Output,
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Port::Input => "input",
            Port::Output => "output",
        })
    }
}

impl FromStr for Port {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "input" | "plant-input" => Ok(Port::Input),
            "output" | "plant-output" => Ok(Port::Output),
            other => Err(format!("unknown disturbance port `{other}` (expected input or output)")),
        }
    }
}

/// Step disturbance switched on at `time` and held afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disturbance {
    pub time: f64,
    pub magnitude: f64,
    pub port: Port,
}

impl Disturbance {
    pub fn step(time: f64, magnitude: f64, port: Port) -> Result<Self> {
        ensure_finite("disturbance time", time)?;
        ensure_finite("disturbance magnitude", magnitude)?;
        if time < 0.0 {
            return Err(Error::InvalidParameter {
                name: "disturbance time",
                reason: format!("must be non-negative, got {time}"),
            });
        }
        Ok(Disturbance { time, magnitude, port })
    }

    pub fn is_active(&self, t: f64) -> bool {
        t >= self.time
    }
}

/// Adds every disturbance active at `t` to its port.
pub fn apply_disturbances(u: f64, y: f64, disturbances: &[Disturbance], t: f64) -> (f64, f64) {
    disturbances
        .iter()
        .filter(|d| d.is_active(t))
        .fold((u, y), |(u, y), d| match d.port {
            Port::Input => (u + d.magnitude, y),
            Port::Output => (u, y + d.magnitude),
        })
}
