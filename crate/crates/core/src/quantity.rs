use std::fmt;
use std::str::FromStr;

use crate::Error;

/// The per-voter and system-level quantities the engine reports.
///
/// The string identifiers double as CSV column headers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    DPlus,
    DMinus,
    D,
    SPlus,
    SMinus,
    S,
    E,
}

impl Quantity {
    pub const ALL: [Quantity; 7] = [
        Quantity::DPlus,
        Quantity::DMinus,
        Quantity::D,
        Quantity::SPlus,
        Quantity::SMinus,
        Quantity::S,
        Quantity::E,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::DPlus => "DPlus",
            Quantity::DMinus => "DMinus",
            Quantity::D => "D",
            Quantity::SPlus => "SPlus",
            Quantity::SMinus => "SMinus",
            Quantity::S => "S",
            Quantity::E => "E",
        }
    }

    /// True for quantities attached to a single voter (everything but `E`).
    pub fn is_per_voter(self) -> bool {
        self != Quantity::E
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain("quantity", s, "{DPlus, DMinus, D, SPlus, SMinus, S, E}"))
    }
}
