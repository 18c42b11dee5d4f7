//! Reference implementations shared by the integration and acceptance
//! tests. They are written without reusing library internals.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

use fuzzypid::{Label, RuleTable};

/// Rule base typed in from the printed table, one string per EC row (NB
/// first), seven comma-separated triples per row (E = NB first). `0` is the
/// zero label and the lone `B` is read as NB.
pub const PRINTED_TABLE: [&str; 7] = [
    "PB,NB,PS  PB,NB,PS  PM,NB,0  PM,NM,0  PS,NM,0  PS,0,PB  0,0,PB",
    "PB,NB,NS  PB,NB,NS  PM,NM,NS  PM,NM,NS  PS,NS,0  0,0,NS  0,0,PM",
    "PM,NM,NB  PM,NM,B  PM,NS,NM  PS,NS,NS  0,0,0  NS,PS,PS  NM,PS,PM",
    "PM,NM,NB  PS,NS,NM  PS,NS,NM  0,0,NS  NS,PS,0  NM,PS,PS  NM,PM,PM",
    "PS,NS,NB  PS,NS,NM  0,0,NS  NS,PS,NS  NS,PS,0  NM,PM,PS  NM,PM,PS",
    "0,0,NM  PS,NS,NM  PS,PS,NS  NM,PM,NS  NM,PM,0  NM,PB,PS  NB,PB,PS",
    "0,0,PS  NS,0,0  NS,PS,0  NM,PM,0  NM,PB,0  NB,PB,PB  NB,PB,PB",
];

/// (E, EC) cells whose printed entry is doubtful.
pub const SUSPECT: [(Label, Label); 2] = [(Label::NM, Label::NS), (Label::NS, Label::PM)];

fn label(text: &str) -> Label {
    match text {
        "NB" | "B" => Label::NB,
        "NM" => Label::NM,
        "NS" => Label::NS,
        "0" => Label::ZO,
        "PS" => Label::PS,
        "PM" => Label::PM,
        "PB" => Label::PB,
        other => panic!("unexpected label {other}"),
    }
}

/// `golden()[ec][e]` = (kp, ki, kd) labels.
pub fn golden() -> [[(Label, Label, Label); 7]; 7] {
    let mut out = [[(Label::ZO, Label::ZO, Label::ZO); 7]; 7];
    for (ec, row) in PRINTED_TABLE.iter().enumerate() {
        let cells: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cells.len(), 7);
        for (e, cell) in cells.iter().enumerate() {
            let l: Vec<Label> = cell.split(',').map(label).collect();
            out[ec][e] = (l[0], l[1], l[2]);
        }
    }
    out
}

fn center(l: Label) -> f64 {
    match l {
        Label::NB => -6.0,
        Label::NM => -4.0,
        Label::NS => -2.0,
        Label::ZO => 0.0,
        Label::PS => 2.0,
        Label::PM => 4.0,
        Label::PB => 6.0,
    }
}

/// Triangle of half-width 2 around the label centre, shoulders beyond the
/// end centres.
pub fn tri(l: Label, x: f64) -> f64 {
    let c = center(l);
    if (l == Label::NB && x <= c) || (l == Label::PB && x >= c) {
        return 1.0;
    }
    (1.0 - (x - c).abs() / 2.0).max(0.0)
}

/// Max-min aggregation over all 49 rules and a plain discrete centroid on a
/// grid of spacing `step` over [-6, 6].
pub fn brute_force_centroid(e: f64, ec: f64, table: &RuleTable, step: f64) -> [f64; 3] {
    let n = (12.0 / step).round() as usize;
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..=n {
            let x = -6.0 + i as f64 * step;
            let mut agg: f64 = 0.0;
            for le in Label::ALL {
                for lec in Label::ALL {
                    let w = tri(le, e).min(tri(lec, ec));
                    if w == 0.0 {
                        continue;
                    }
                    let (p, q, d) = table.lookup(le, lec);
                    let out_label = [p, q, d][k];
                    agg = agg.max(w.min(tri(out_label, x)));
                }
            }
            num += x * agg;
            den += agg;
        }
        *slot = num / den;
    }
    out
}

/// Plant `43956 / (0.0037 s^2 + s)` as (A, B, C) in phase-variable form.
pub fn spray_line_matrices() -> (DMatrix<f64>, DVector<f64>, DVector<f64>) {
    let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, -1.0 / 0.0037]);
    let b = DVector::from_vec(vec![0.0, 1.0]);
    let c = DVector::from_vec(vec![43956.0 / 0.0037, 0.0]);
    (a, b, c)
}

/// Exact zero-order-hold discretization through the exponential of the
/// augmented matrix `[[A, B], [0, 0]] * dt`.
pub fn zoh(a: &DMatrix<f64>, b: &DVector<f64>, dt: f64) -> (DMatrix<f64>, DVector<f64>) {
    let n = a.nrows();
    let mut m = DMatrix::zeros(n + 1, n + 1);
    m.view_mut((0, 0), (n, n)).copy_from(&(a * dt));
    m.view_mut((0, n), (n, 1)).copy_from(&(b * dt));
    let e = m.exp();
    (e.view((0, 0), (n, n)).into_owned(), e.view((0, n), (n, 1)).column(0).into_owned())
}

/// Outputs of the exactly discretized plant from rest under the held input
/// sequence `u`; element `k` is the output after `k` steps.
pub fn exact_response(u: &[f64], dt: f64) -> Vec<f64> {
    let (a, b, c) = spray_line_matrices();
    let (phi, gamma) = zoh(&a, &b, dt);
    let mut x = DVector::zeros(2);
    let mut y = vec![0.0];
    for &uk in u {
        x = &phi * x + &gamma * uk;
        y.push(c.dot(&x));
    }
    y
}

/// Damping ratio of the proportional loop on the spray-line plant.
pub fn damping_ratio(kp: f64) -> f64 {
    (1.0 / 0.0037) / (2.0 * (43956.0 * kp / 0.0037).sqrt())
}

/// Proportional gain giving damping ratio `zeta`.
pub fn kp_for_damping(zeta: f64) -> f64 {
    let a = 1.0 / 0.0037;
    let wn = a / (2.0 * zeta);
    wn * wn * 0.0037 / 43956.0
}

pub fn natural_frequency(kp: f64) -> f64 {
    (43956.0 * kp / 0.0037).sqrt()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
