use std::fmt;
use std::str::FromStr;

/// One of the seven linguistic terms shared by the error, error-rate and
/// gain-correction variables. Ordered from negative-big to positive-big.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    NB,
    NM,
    NS,
    ZO,
    PS,
    PM,
    PB,
}

impl Label {
    pub const COUNT: usize = 7;

    pub const ALL: [Label; 7] = [
        Label::NB,
        Label::NM,
        Label::NS,
        Label::ZO,
        Label::PS,
        Label::PM,
        Label::PB,
    ];

    /// Position in the NB..PB ordering, 0..=6.
    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Label> {
        Label::ALL.get(index).copied()
    }

    /// Peak of this label's membership triangle on the [-6, 6] universe.
    pub fn center(self) -> f64 {
        -6.0 + 2.0 * self.index() as f64
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Label::NB => "NB",
            Label::NM => "NM",
            Label::NS => "NS",
            Label::ZO => "ZO",
            Label::PS => "PS",
            Label::PM => "PM",
            Label::PB => "PB",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown linguistic label `{0}` (expected NB, NM, NS, ZO, PS, PM or PB)")]
pub struct ParseLabelError(pub String);

impl FromStr for Label {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NB" => Ok(Label::NB),
            "NM" => Ok(Label::NM),
            "NS" => Ok(Label::NS),
            // tables commonly print the zero term as a bare 0
            "ZO" | "Z" | "0" => Ok(Label::ZO),
            "PS" => Ok(Label::PS),
            "PM" => Ok(Label::PM),
            "PB" => Ok(Label::PB),
            _ => Err(ParseLabelError(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_order_and_centers() {
        for pair in Label::ALL.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        let centers: Vec<f64> = Label::ALL.iter().map(|l| l.center()).collect();
        assert_eq!(centers, vec![-6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0]);
    }

    #[test]
    fn parse_round_trip_and_zero_alias() {
        for label in Label::ALL {
            assert_eq!(label.to_string().parse::<Label>().unwrap(), label);
        }
        assert_eq!("0".parse::<Label>().unwrap(), Label::ZO);
        assert_eq!(" pb ".parse::<Label>().unwrap(), Label::PB);
        assert!("B".parse::<Label>().is_err());
        assert!(Label::from_index(7).is_none());
    }
}
