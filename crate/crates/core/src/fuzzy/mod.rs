//! Fuzzy stage of the controller: fuzzification of error and error rate,
//! rule-table inference and defuzzification into PID gain corrections.

mod inference;
mod label;
mod membership;
mod rules;

pub use inference::{
    control_surface, control_surface_sequential, gain_deltas, infer_deltas, scale_deltas,
    GainDeltas, ScalingFactors, CENTROID_STEP,
};
pub use label::{Label, ParseLabelError};
pub use membership::{fuzzify, membership, quantize, Degrees, HALF_WIDTH, UNIVERSE_MAX, UNIVERSE_MIN};
pub use rules::{Rule, RuleTable};
