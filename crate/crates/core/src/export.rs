//! Trajectory CSV: header `t,r,e,u,y,kp,ki,kd`, one row per sample, every
//! value fixed-point with 9 fractional digits, LF line endings.

use std::io::{self, Read, Write};

use crate::error::{Error, Result};
use crate::harness::{Sample, Trajectory};

pub const HEADER: [&str; 8] = ["t", "r", "e", "u", "y", "kp", "ki", "kd"];

pub fn write_csv<W: Write>(traj: &Trajectory, out: W) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    writeln!(out, "{}", HEADER.join(","))?;
    for s in &traj.rows {
        writeln!(
            out,
            "{:.9},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9}",
            s.t, s.r, s.e, s.u, s.y, s.kp, s.ki, s.kd
        )?;
    }
    out.flush()
}

pub fn to_csv_string(traj: &Trajectory) -> String {
    let mut buf = Vec::new();
    write_csv(traj, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Reads a trajectory CSV. The sample spacing is taken from the first two
/// rows (0 for a single row).
pub fn read_csv<R: Read>(input: R) -> Result<Trajectory> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader.headers().map_err(|e| parse_error(1, e))?.clone();
    if header.iter().map(str::trim).ne(HEADER.iter().copied()) {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `{}`", HEADER.join(",")),
        });
    }

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| parse_error(line, e))?;
        let mut v = [0.0; 8];
        for (slot, field) in v.iter_mut().zip(record.iter()) {
            *slot = field.trim().parse::<f64>().map_err(|e| Error::Parse {
                line,
                message: format!("`{field}`: {e}"),
            })?;
        }
        rows.push(Sample {
            t: v[0],
            r: v[1],
            e: v[2],
            u: v[3],
            y: v[4],
            kp: v[5],
            ki: v[6],
            kd: v[7],
        });
    }
    if rows.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let dt = if rows.len() > 1 { rows[1].t - rows[0].t } else { 0.0 };
    Ok(Trajectory { dt, rows })
}

fn parse_error(line: usize, e: csv::Error) -> Error {
    let line = e
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(line);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(t: f64, y: f64) -> Sample {
        Sample {
            t,
            r: 1.0,
            e: 1.0 - y,
            u: -0.5,
            y,
            kp: 0.004,
            ki: 0.02,
            kd: 5e-7,
        }
    }

    #[test]
    fn fixed_point_format() {
        let traj = Trajectory {
            dt: 0.5,
            rows: vec![sample(0.0, 0.0), sample(0.5, 1.0 / 3.0)],
        };
        let text = to_csv_string(&traj);
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], "t,r,e,u,y,kp,ki,kd");
        assert_eq!(
            lines[1],
            "0.000000000,1.000000000,1.000000000,-0.500000000,0.000000000,0.004000000,0.020000000,0.000000500"
        );
        assert_eq!(
            lines[2],
            "0.500000000,1.000000000,0.666666667,-0.500000000,0.333333333,0.004000000,0.020000000,0.000000500"
        );
        assert_eq!(lines[3], "");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn read_back_within_rounding() {
        let traj = Trajectory {
            dt: 0.25,
            rows: vec![sample(0.0, 0.0), sample(0.25, 0.123456789123), sample(0.5, 0.9)],
        };
        let back = read_csv(to_csv_string(&traj).as_bytes()).unwrap();
        assert_eq!(back.rows.len(), 3);
        assert_eq!(back.dt, 0.25);
        for (a, b) in traj.rows.iter().zip(&back.rows) {
            assert!((a.y - b.y).abs() <= 5e-10);
        }
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(read_csv("a,b\n1,2\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            read_csv("t,r,e,u,y,kp,ki,kd\n".as_bytes()),
            Err(Error::EmptyTrajectory)
        ));
        let bad = "t,r,e,u,y,kp,ki,kd\n0,1,1,0,0,0,0,0\n0.1,1,x,0,0,0,0,0\n";
        assert!(matches!(read_csv(bad.as_bytes()), Err(Error::Parse { line: 3, .. })));
        let short = "t,r,e,u,y,kp,ki,kd\n0,1,1,0\n";
        assert!(read_csv(short.as_bytes()).is_err());
    }
}
