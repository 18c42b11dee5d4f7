//! Min/max inference and centroid defuzzification over the rule table.

use super::label::Label;
use super::membership::{fuzzify, quantize, Degrees};
use super::rules::RuleTable;
use crate::error::{ensure_finite, Error, Result};

/// Spacing of the defuzzification grid, in universe units.
pub const CENTROID_STEP: f64 = 0.01;

// grid points per unit, and per label spacing (2 units)
const STEPS_PER_UNIT: usize = 100;
const STEPS_PER_LABEL: usize = 2 * STEPS_PER_UNIT;
const GRID_POINTS: usize = 12 * STEPS_PER_UNIT + 1;

/// Quantization and output scale factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFactors {
    /// Error quantization factor.
    pub ke: f64,
    /// Error-rate quantization factor.
    pub kec: f64,
    /// Universe-to-gain scale for the Kp correction.
    pub kup: f64,
    pub kui: f64,
    pub kud: f64,
}

impl Default for ScalingFactors {
    /// Ke = 5, Kec = 0.8 and Ku = 0.45 on every output.
    fn default() -> Self {
        ScalingFactors {
            ke: 5.0,
            kec: 0.8,
            kup: 0.45,
            kui: 0.45,
            kud: 0.45,
        }
    }
}

impl ScalingFactors {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("ke", self.ke), ("kec", self.kec)] {
            ensure_finite(name, v)?;
            if v <= 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be positive, got {v}"),
                });
            }
        }
        for (name, v) in [("kup", self.kup), ("kui", self.kui), ("kud", self.kud)] {
            ensure_finite(name, v)?;
            if v < 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be non-negative, got {v}"),
                });
            }
        }
        Ok(())
    }

    /// Same quantization, no adaptation.
    pub fn without_adaptation(self) -> Self {
        ScalingFactors {
            kup: 0.0,
            kui: 0.0,
            kud: 0.0,
            ..self
        }
    }
}

/// Gain corrections in engineering units.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GainDeltas {
    pub d_kp: f64,
    pub d_ki: f64,
    pub d_kd: f64,
}

/// Runs the rule base on quantized inputs and returns the defuzzified
/// `(dKp, dKi, dKd)` in universe units.
///
/// Rule strength is `min(mu_E, mu_EC)`; every fired rule clips its output set
/// at that strength; the clipped sets are merged by pointwise max and reduced
/// to a crisp value by the discrete centroid on a 0.01-spaced grid.
pub fn infer_deltas(e_scaled: f64, ec_scaled: f64, table: &RuleTable) -> Result<[f64; 3]> {
    let mu_e = fuzzify(e_scaled)?;
    let mu_ec = fuzzify(ec_scaled)?;
    let strengths = output_strengths(&mu_e, &mu_ec, table);
    Ok([
        centroid(&strengths[0]),
        centroid(&strengths[1]),
        centroid(&strengths[2]),
    ])
}

/// Per output channel, the strongest firing level reaching each output label.
fn output_strengths(mu_e: &Degrees, mu_ec: &Degrees, table: &RuleTable) -> [Degrees; 3] {
    let mut strengths: [Degrees; 3] = [[0.0; Label::COUNT]; 3];
    for e in Label::ALL {
        let a = mu_e[e.index()];
        if a <= 0.0 {
            continue;
        }
        for ec in Label::ALL {
            let b = mu_ec[ec.index()];
            if b <= 0.0 {
                continue;
            }
            let w = a.min(b);
            let rule = table.rule(e, ec);
            for (k, channel) in strengths.iter_mut().enumerate() {
                let slot = &mut channel[rule.output(k).index()];
                *slot = slot.max(w);
            }
        }
    }
    strengths
}

/// Discrete centroid of `max_L min(strength_L, mu_L(x))` over the grid.
///
/// Grid point `m` sits at `x = -6 + m/100`. Between adjacent label centres
/// only those two labels are nonzero, with degrees fixed by the offset into
/// the segment, so each segment is visited only if one of its end labels
/// fired.
fn centroid(strength: &Degrees) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut add = |m: usize, level: f64| {
        if level > 0.0 {
            let x = (m as f64 - 6.0 * STEPS_PER_UNIT as f64) / STEPS_PER_UNIT as f64;
            num += x * level;
            den += level;
        }
    };
    for seg in 0..Label::COUNT - 1 {
        let (s_lo, s_hi) = (strength[seg], strength[seg + 1]);
        if s_lo <= 0.0 && s_hi <= 0.0 {
            continue;
        }
        for rem in 0..STEPS_PER_LABEL {
            let hi_deg = rem as f64 / STEPS_PER_LABEL as f64;
            let level = s_lo.min(1.0 - hi_deg).max(s_hi.min(hi_deg));
            add(seg * STEPS_PER_LABEL + rem, level);
        }
    }
    add(GRID_POINTS - 1, strength[Label::COUNT - 1]);
    // den > 0: some rule always fires and its set peaks on a grid point
    num / den
}

/// Multiplies each crisp correction by its output scale factor.
pub fn scale_deltas(crisp: [f64; 3], factors: &ScalingFactors) -> GainDeltas {
    GainDeltas {
        d_kp: factors.kup * crisp[0],
        d_ki: factors.kui * crisp[1],
        d_kd: factors.kud * crisp[2],
    }
}

/// Full fuzzy stage: quantize `(e, ec)`, infer, scale.
pub fn gain_deltas(e: f64, ec: f64, factors: &ScalingFactors, table: &RuleTable) -> Result<GainDeltas> {
    let e_scaled = quantize(e, factors.ke)?;
    let ec_scaled = quantize(ec, factors.kec)?;
    let crisp = infer_deltas(e_scaled, ec_scaled, table)?;
    Ok(scale_deltas(crisp, factors))
}

/// Evaluates [`infer_deltas`] on an `n x n` grid spanning the universe.
/// Row-major with `ec` varying slowest. Runs on the rayon pool when the
/// `parallel` feature is on.
pub fn control_surface(table: &RuleTable, n: usize) -> Vec<[f64; 3]> {
    let points = surface_points(n);
    crate::par::map(&points, |&(e, ec)| {
        infer_deltas(e, ec, table).expect("grid points lie inside the universe")
    })
}

/// Sequential counterpart of [`control_surface`].
pub fn control_surface_sequential(table: &RuleTable, n: usize) -> Vec<[f64; 3]> {
    surface_points(n)
        .iter()
        .map(|&(e, ec)| infer_deltas(e, ec, table).expect("grid points lie inside the universe"))
        .collect()
}

fn surface_points(n: usize) -> Vec<(f64, f64)> {
    let coord = |i: usize| {
        if n <= 1 {
            0.0
        } else {
            (-6.0 + 12.0 * i as f64 / (n - 1) as f64).clamp(-6.0, 6.0)
        }
    };
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            out.push((coord(i), coord(j)));
        }
    }
    out
}
