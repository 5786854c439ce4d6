//! The embedded field table (`data/fields.tsv`).

use num_rational::Ratio;

use super::kummer::ListedKummer;
use crate::error::{Error, Result};

pub const FIELDS_TSV: &str = include_str!("../../data/fields.tsv");
pub const SUPPORTED_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldRow {
    pub d: i64,
    pub discriminant: i64,
    pub h: u64,
    pub h_narrow: u64,
    pub unit: Option<String>,
    pub two: String,
    pub rd_radical: String,
    pub bound_exponent: Ratio<i64>,
    /// `<x` (strict upper bound) or `=x` (exact).
    pub rd_bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCaseRow {
    pub d: i64,
    pub rd_radical: String,
    pub bound_exponent: Ratio<i64>,
    pub rd_bound: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldTable {
    pub version: u32,
    pub fields: Vec<FieldRow>,
    pub special: Vec<SpecialCaseRow>,
    pub kummer: Vec<ListedKummer>,
}

impl FieldTable {
    pub fn field(&self, d: i64) -> Option<&FieldRow> {
        self.fields.iter().find(|r| r.d == d)
    }

    pub fn kummer_for(&self, d: i64) -> Vec<ListedKummer> {
        self.kummer.iter().filter(|k| k.d == d).cloned().collect()
    }
}

fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    match s.split_once('/') {
        Some((n, d)) => Some(Ratio::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(Ratio::from_integer(s.parse().ok()?)),
    }
}

pub fn parse_table(text: &str) -> Result<FieldTable> {
    let mut t = FieldTable::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| Error::DataFormat {
            line,
            msg: msg.to_string(),
        };
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = raw.split('\t').collect();
        let int = |k: usize| -> Result<i64> {
            cols.get(k)
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| err(&format!("column {} is not an integer", k + 1)))
        };
        let ratio = |k: usize| -> Result<Ratio<i64>> {
            cols.get(k)
                .and_then(|c| parse_ratio(c))
                .ok_or_else(|| err(&format!("column {} is not a rational", k + 1)))
        };
        let want = |n: usize| -> Result<()> {
            if cols.len() == n {
                Ok(())
            } else {
                Err(err(&format!("expected {n} columns, found {}", cols.len())))
            }
        };
        match cols[0] {
            "version" => {
                want(2)?;
                t.version = int(1)? as u32;
                if t.version != SUPPORTED_VERSION {
                    return Err(err(&format!("unsupported table version {}", t.version)));
                }
            }
            "F" => {
                want(10)?;
                t.fields.push(FieldRow {
                    d: int(1)?,
                    discriminant: int(2)?,
                    h: int(3)? as u64,
                    h_narrow: int(4)? as u64,
                    unit: (cols[5] != "-").then(|| cols[5].to_string()),
                    two: cols[6].to_string(),
                    rd_radical: cols[7].to_string(),
                    bound_exponent: ratio(8)?,
                    rd_bound: cols[9].to_string(),
                });
            }
            "S" => {
                want(5)?;
                t.special.push(SpecialCaseRow {
                    d: int(1)?,
                    rd_radical: cols[2].to_string(),
                    bound_exponent: ratio(3)?,
                    rd_bound: cols[4].to_string(),
                });
            }
            "K" => {
                want(4)?;
                t.kummer.push(ListedKummer {
                    d: int(1)?,
                    delta: cols[2].to_string(),
                    class_number_bound: int(3)? as u64,
                });
            }
            other => return Err(err(&format!("unknown record type {other:?}"))),
        }
    }
    if t.version == 0 {
        return Err(Error::DataFormat {
            line: 0,
            msg: "missing version record".into(),
        });
    }
    Ok(t)
}

/// The table shipped with the crate.
pub fn embedded_table() -> Result<FieldTable> {
    parse_table(FIELDS_TSV)
}
