//! Unconditional root-discriminant lower bounds and the group-order
//! constants that decide which one applies.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A decimal with three places, stored in thousandths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Milli(pub i64);

impl fmt::Display for Milli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:03}", self.0 / 1000, self.0 % 1000)
    }
}

impl Serialize for Milli {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OdlyzkoTable {
    /// `(n_min, bound)`: every field of degree `n ≥ n_min` has root
    /// discriminant above `bound`.
    pub thresholds: Vec<(u64, Milli)>,
}

impl Default for OdlyzkoTable {
    fn default() -> Self {
        OdlyzkoTable {
            thresholds: vec![(120, Milli(17_020)), (1000, Milli(20_895))],
        }
    }
}

impl OdlyzkoTable {
    pub fn threshold(&self, n: u64) -> Result<Milli> {
        self.thresholds
            .iter()
            .rev()
            .find(|(n_min, _)| n >= *n_min)
            .map(|&(_, b)| b)
            .ok_or(Error::BelowTableRange(n))
    }

    pub fn is_increasing(&self) -> bool {
        self.thresholds.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
    }
}

pub fn odlyzko_threshold(n: u64) -> Result<Milli> {
    OdlyzkoTable::default().threshold(n)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GroupTheoryConstants {
    /// Order of the smallest non-solvable group (`A_5`).
    pub min_nonsolvable_order: u64,
    /// `|PSL_2(F_8)|`.
    pub psl2_f8_order: u64,
}

pub const GROUP_CONSTANTS: GroupTheoryConstants = GroupTheoryConstants {
    min_nonsolvable_order: 60,
    psl2_f8_order: 504,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(odlyzko_threshold(120).unwrap(), Milli(17_020));
        assert_eq!(odlyzko_threshold(500).unwrap(), Milli(17_020));
        assert_eq!(odlyzko_threshold(1000).unwrap(), Milli(20_895));
        assert_eq!(odlyzko_threshold(119).unwrap_err(), Error::BelowTableRange(119));
        assert!(OdlyzkoTable::default().is_increasing());
        assert_eq!(Milli(8000).to_string(), "8.000");
        assert_eq!(Milli(17_020).to_string(), "17.020");
    }
}
