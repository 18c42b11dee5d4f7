//! Grid search used to pick the shipped default gains and fuzzy scale
//! factors. Runs every candidate through the step and disturbance scenarios
//! with `run_batch` and prints the candidates that satisfy all of:
//!
//! - fuzzy PID overshoot below plain PID overshoot,
//! - both loops settled at the end of the step run,
//! - both loops back inside the 2 % band after the input disturbance,
//! - fuzzy PID peak deviation no larger than plain PID's.
//!
//! Ranked by distance of the two overshoots from 10.76 % and 7.17 %.
//!
//! `cargo run --release --example tune_defaults`

use fuzzypid::harness::{run_batch, SimScenario};
use fuzzypid::metrics::{compute_metrics, disturbance_response};
use fuzzypid::{ControllerSpec, Disturbance, PidGains, PidLimits, Port, RuleTable, ScalingFactors, TransferFunction};

const SETPOINT: f64 = 5.0;
const DT: f64 = 1e-4;
const STEP_DURATION: f64 = 0.5;
const DIST_TIME: f64 = 0.5;
const DIST_DURATION: f64 = 1.0;
const DIST_MAGNITUDE: f64 = 5e-4;

fn scenario(controller: ControllerSpec, disturbed: bool) -> SimScenario {
    SimScenario {
        setpoint: SETPOINT,
        duration: if disturbed { DIST_DURATION } else { STEP_DURATION },
        dt: DT,
        controller,
        plant: TransferFunction::spray_line(),
        disturbances: if disturbed {
            vec![Disturbance::step(DIST_TIME, DIST_MAGNITUDE, Port::Input).unwrap()]
        } else {
            vec![]
        },
        initial_state: None,
    }
}

struct Outcome {
    overshoot: f64,
    settled: bool,
    peak_dev: f64,
    recovered: bool,
}

fn evaluate(controller: ControllerSpec) -> Vec<SimScenario> {
    vec![scenario(controller.clone(), false), scenario(controller, true)]
}

fn outcome(runs: &[Result<fuzzypid::Trajectory, fuzzypid::SimError>]) -> Option<Outcome> {
    let step = runs[0].as_ref().ok()?;
    let dist = runs[1].as_ref().ok()?;
    let m = compute_metrics(step, SETPOINT).ok()?;
    let d = disturbance_response(dist, SETPOINT, DIST_TIME).ok()?;
    Some(Outcome {
        overshoot: m.overshoot_pct?,
        settled: m.settled,
        peak_dev: d.peak_deviation,
        recovered: d.recovered_at.is_some(),
    })
}

fn main() {
    let mut bases = Vec::new();
    for kp in [0.003, 0.0035, 0.004, 0.0045, 0.005] {
        for ki in [0.02, 0.03, 0.05] {
            for kd in [0.0, 5e-7] {
                bases.push(PidGains::new(kp, ki, kd).unwrap());
            }
        }
    }
    let pid_runs = run_batch(
        &bases
            .iter()
            .flat_map(|&gains| evaluate(ControllerSpec::Pid { gains, limits: PidLimits::NONE }))
            .collect::<Vec<_>>(),
    );

    let mut candidates = Vec::new();
    for (b, gains) in bases.iter().enumerate() {
        let Some(pid) = outcome(&pid_runs[2 * b..2 * b + 2]) else { continue };
        if !(pid.settled && pid.recovered) || !(8.0..=14.0).contains(&pid.overshoot) {
            continue;
        }
        for ap in [0.05, 0.1, 0.15, 0.25] {
            for ai in [0.05, 0.1, 0.2] {
                for kud in [0.0, 2.5e-7, 5e-7, 1e-6] {
                    let factors = ScalingFactors {
                        ke: 5.0,
                        kec: 0.8,
                        kup: ap * gains.kp,
                        kui: ai * gains.ki,
                        kud,
                    };
                    candidates.push((*gains, factors, pid.overshoot, pid.peak_dev));
                }
            }
        }
    }

    let fuzzy_scenarios: Vec<_> = candidates
        .iter()
        .flat_map(|(gains, factors, ..)| {
            evaluate(ControllerSpec::FuzzyPid {
                gains: *gains,
                factors: *factors,
                table: RuleTable::default(),
                limits: PidLimits::NONE,
            })
        })
        .collect();
    let fuzzy_runs = run_batch(&fuzzy_scenarios);

    let mut ranked = Vec::new();
    for (c, (gains, factors, pid_os, pid_dev)) in candidates.iter().enumerate() {
        let Some(f) = outcome(&fuzzy_runs[2 * c..2 * c + 2]) else { continue };
        if f.settled && f.recovered && f.overshoot < *pid_os && f.peak_dev <= *pid_dev {
            let score = (pid_os - 10.76).abs() + (f.overshoot - 7.17).abs();
            ranked.push((score, *gains, *factors, *pid_os, f.overshoot, *pid_dev, f.peak_dev));
        }
    }
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
    println!("{} admissible of {} candidates", ranked.len(), candidates.len());
    for (score, g, f, pos, fos, pdev, fdev) in ranked.iter().take(15) {
        println!(
            "score {score:.3}  kp {} ki {} kd {:e}  kup {:e} kui {:e} kud {:e}  overshoot pid {pos:.3} fuzzy {fos:.3}  dev pid {pdev:.4} fuzzy {fdev:.4}",
            g.kp, g.ki, g.kd, f.kup, f.kui, f.kud
        );
    }
}
