//! The 7x7 gain-correction rule base.
//!
//! Each cell maps an (E, EC) label pair to corrections for Kp, Ki and Kd.
//! The text form has one line per EC label (NB first) holding seven
//! comma-separated `P/I/D` triples, one per E label (NB first). A trailing
//! `?` on a triple marks a cell whose transcription is doubtful.

use std::fmt;
use std::str::FromStr;

use super::label::Label;
use crate::error::{Error, Result};

use Label::*;

/// Consequent of one rule: the labels for the three gain corrections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub kp: Label,
    pub ki: Label,
    pub kd: Label,
    /// Set on cells whose source entry looked like a misprint.
    pub suspect: bool,
}

impl Rule {
    pub const fn new(kp: Label, ki: Label, kd: Label) -> Self {
        Rule {
            kp,
            ki,
            kd,
            suspect: false,
        }
    }

    const fn flagged(kp: Label, ki: Label, kd: Label) -> Self {
        Rule {
            kp,
            ki,
            kd,
            suspect: true,
        }
    }

    pub fn triple(&self) -> (Label, Label, Label) {
        (self.kp, self.ki, self.kd)
    }

    /// Label of output channel `k` (0 = Kp, 1 = Ki, 2 = Kd).
    pub(crate) fn output(&self, k: usize) -> Label {
        match k {
            0 => self.kp,
            1 => self.ki,
            _ => self.kd,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.kp, self.ki, self.kd)?;
        if self.suspect {
            f.write_str("?")?;
        }
        Ok(())
    }
}

const fn r(kp: Label, ki: Label, kd: Label) -> Rule {
    Rule::new(kp, ki, kd)
}

// Rows are EC = NB..PB, columns are E = NB..PB.
//
// (E=NM, EC=NS) is printed with a bare "B" as its Kd term; NB is the only
// label ending in B that fits the neighbouring cells.
// (E=NS, EC=PM) reads PS/PS/NS, which breaks the Kp trend of its column; kept
// as printed.
const DEFAULT_CELLS: [[Rule; 7]; 7] = [
    [
        r(PB, NB, PS),
        r(PB, NB, PS),
        r(PM, NB, ZO),
        r(PM, NM, ZO),
        r(PS, NM, ZO),
        r(PS, ZO, PB),
        r(ZO, ZO, PB),
    ],
    [
        r(PB, NB, NS),
        r(PB, NB, NS),
        r(PM, NM, NS),
        r(PM, NM, NS),
        r(PS, NS, ZO),
        r(ZO, ZO, NS),
        r(ZO, ZO, PM),
    ],
    [
        r(PM, NM, NB),
        Rule::flagged(PM, NM, NB),
        r(PM, NS, NM),
        r(PS, NS, NS),
        r(ZO, ZO, ZO),
        r(NS, PS, PS),
        r(NM, PS, PM),
    ],
    [
        r(PM, NM, NB),
        r(PS, NS, NM),
        r(PS, NS, NM),
        r(ZO, ZO, NS),
        r(NS, PS, ZO),
        r(NM, PS, PS),
        r(NM, PM, PM),
    ],
    [
        r(PS, NS, NB),
        r(PS, NS, NM),
        r(ZO, ZO, NS),
        r(NS, PS, NS),
        r(NS, PS, ZO),
        r(NM, PM, PS),
        r(NM, PM, PS),
    ],
    [
        r(ZO, ZO, NM),
        r(PS, NS, NM),
        Rule::flagged(PS, PS, NS),
        r(NM, PM, NS),
        r(NM, PM, ZO),
        r(NM, PB, PS),
        r(NB, PB, PS),
    ],
    [
        r(ZO, ZO, PS),
        r(NS, ZO, ZO),
        r(NS, PS, ZO),
        r(NM, PM, ZO),
        r(NM, PB, ZO),
        r(NB, PB, PB),
        r(NB, PB, PB),
    ],
];

/// Complete rule base: one [`Rule`] for each of the 49 (E, EC) pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleTable {
    // indexed [ec][e]
    cells: [[Rule; 7]; 7],
}

impl Default for RuleTable {
    fn default() -> Self {
        RuleTable {
            cells: DEFAULT_CELLS,
        }
    }
}

impl RuleTable {
    /// Builds a table from rows ordered EC = NB..PB, each row ordered E = NB..PB.
    pub fn from_rows(cells: [[Rule; 7]; 7]) -> Self {
        RuleTable { cells }
    }

    pub fn rule(&self, e: Label, ec: Label) -> &Rule {
        &self.cells[ec.index()][e.index()]
    }

    /// Gain-correction labels `(dKp, dKi, dKd)` for the pair `(e, ec)`.
    pub fn lookup(&self, e: Label, ec: Label) -> (Label, Label, Label) {
        self.rule(e, ec).triple()
    }

    pub fn set(&mut self, e: Label, ec: Label, rule: Rule) {
        self.cells[ec.index()][e.index()] = rule;
    }

    /// `(e, ec)` pairs of every cell carrying the suspect flag.
    pub fn suspect_cells(&self) -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for ec in Label::ALL {
            for e in Label::ALL {
                if self.rule(e, ec).suspect {
                    out.push((e, ec));
                }
            }
        }
        out
    }

    pub fn rows(&self) -> &[[Rule; 7]; 7] {
        &self.cells
    }
}

/// Renders the table in its text form, one EC row per line.
impl fmt::Display for RuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.cells {
            for (i, rule) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{rule}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

fn parse_rule(text: &str, line: usize) -> Result<Rule> {
    let err = |message: String| Error::Parse { line, message };
    let text = text.trim();
    let (body, suspect) = match text.strip_suffix('?') {
        Some(body) => (body.trim_end(), true),
        None => (text, false),
    };
    let parts: Vec<&str> = body.split('/').collect();
    if parts.len() != 3 {
        return Err(err(format!("expected a P/I/D triple, got `{text}`")));
    }
    let mut labels = [ZO; 3];
    for (slot, part) in labels.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|e: super::ParseLabelError| err(e.to_string()))?;
    }
    Ok(Rule {
        kp: labels[0],
        ki: labels[1],
        kd: labels[2],
        suspect,
    })
}

impl FromStr for RuleTable {
    type Err = Error;

    /// Parses the text form. Blank lines and `#` comments are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut cells = DEFAULT_CELLS;
        let mut row = 0;
        for (n, raw) in s.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if row == 7 {
                return Err(Error::Parse {
                    line,
                    message: "more than 7 rule rows".into(),
                });
            }
            let fields: Vec<&str> = content.split(',').collect();
            if fields.len() != 7 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 7 triples, found {}", fields.len()),
                });
            }
            for (col, field) in fields.iter().enumerate() {
                cells[row][col] = parse_rule(field, line)?;
            }
            row += 1;
        }
        if row != 7 {
            return Err(Error::Parse {
                line: s.lines().count(),
                message: format!("expected 7 rule rows, found {row}"),
            });
        }
        Ok(RuleTable { cells })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_examples() {
        let t = RuleTable::default();
        assert_eq!(t.lookup(NB, NB), (PB, NB, PS));
        assert_eq!(t.lookup(PS, NS), (ZO, ZO, ZO));
        assert_eq!(t.lookup(PB, PB), (NB, PB, PB));
        assert_eq!(t.lookup(ZO, ZO), (ZO, ZO, NS));
    }

    #[test]
    fn suspect_cells_flagged() {
        let t = RuleTable::default();
        assert_eq!(t.suspect_cells(), vec![(NM, NS), (NS, PM)]);
        assert_eq!(t.lookup(NM, NS), (PM, NM, NB));
        assert_eq!(t.lookup(NS, PM), (PS, PS, NS));
    }

    #[test]
    fn dump_marks_suspect_cells() {
        let text = RuleTable::default().to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[0].starts_with("PB/NB/PS,"));
        assert_eq!(lines[2].split(',').nth(1), Some("PM/NM/NB?"));
        assert_eq!(lines[5].split(',').nth(2), Some("PS/PS/NS?"));
    }

    #[test]
    fn dump_load_round_trip() {
        let t = RuleTable::default();
        let back: RuleTable = t.to_string().parse().unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn parse_accepts_comments_and_zero_alias() {
        let mut text = String::from("# custom table\n\n");
        for _ in 0..7 {
            text.push_str(&["0/0/0"; 7].join(", "));
            text.push_str("  # row\n");
        }
        let t: RuleTable = text.parse().unwrap();
        assert!(Label::ALL
            .iter()
            .all(|&e| Label::ALL.iter().all(|&ec| t.lookup(e, ec) == (ZO, ZO, ZO))));
        assert!(t.suspect_cells().is_empty());
    }

    #[test]
    fn parse_errors_report_line() {
        let good = RuleTable::default().to_string();
        let short: String = good.lines().take(6).map(|l| format!("{l}\n")).collect();
        assert!(matches!(short.parse::<RuleTable>(), Err(Error::Parse { .. })));

        let bad = good.replacen("PB/NB/PS", "PB/NB/XX", 1);
        match bad.parse::<RuleTable>() {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }

        let narrow = good.replacen("PB/NB/PS,", "", 1);
        assert!(narrow.parse::<RuleTable>().is_err());

        let pair = good.replacen("PB/NB/PS", "PB/NB", 1);
        assert!(pair.parse::<RuleTable>().is_err());

        let extra = format!("{good}{}", good.lines().next().unwrap());
        assert!(extra.parse::<RuleTable>().is_err());
    }
}
