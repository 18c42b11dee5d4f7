//! Triangular membership family over the quantized universe [-6, 6].
//!
//! Seven triangles centred at -6, -4, ..., 6 with half-width 2. Adjacent
//! triangles cross at 0.5, so the degrees of any point sum to one and at most
//! two labels are active at once. The outermost labels act as shoulders and
//! stay at 1 beyond their centres.

use super::label::Label;
use crate::error::{ensure_finite, Error, Result};

/// Lower and upper bound of the quantized universe.
pub const UNIVERSE_MIN: f64 = -6.0;
pub const UNIVERSE_MAX: f64 = 6.0;

/// Half-width of every membership triangle, in universe units.
pub const HALF_WIDTH: f64 = 2.0;

/// Degrees of membership for all seven labels, indexed by [`Label::index`].
pub type Degrees = [f64; Label::COUNT];

/// Maps a physical error (or error rate) onto the universe: `crisp * factor`,
/// clamped to [-6, 6].
pub fn quantize(crisp: f64, factor: f64) -> Result<f64> {
    ensure_finite("crisp input", crisp)?;
    ensure_finite("quantization factor", factor)?;
    if factor <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "quantization factor",
            reason: format!("must be positive, got {factor}"),
        });
    }
    Ok((crisp * factor).clamp(UNIVERSE_MIN, UNIVERSE_MAX))
}

/// Membership degree of `x` in `label`. Defined on the whole real line; the
/// NB and PB sets saturate at 1 outside the universe.
pub fn membership(label: Label, x: f64) -> f64 {
    let c = label.center();
    match label {
        Label::NB if x <= c => 1.0,
        Label::PB if x >= c => 1.0,
        _ => (1.0 - (x - c).abs() / HALF_WIDTH).max(0.0),
    }
}

/// Degrees of `x` in every label. `x` must already be quantized.
pub fn fuzzify(x: f64) -> Result<Degrees> {
    ensure_finite("universe value", x)?;
    if !(UNIVERSE_MIN..=UNIVERSE_MAX).contains(&x) {
        return Err(Error::OutOfUniverse(x));
    }
    let mut degrees = [0.0; Label::COUNT];
    for label in Label::ALL {
        degrees[label.index()] = membership(label, x);
    }
    Ok(degrees)
}
