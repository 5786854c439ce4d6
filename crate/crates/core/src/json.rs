//! Serialization helpers: exact rationals become `{"num": n, "den": d}`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

impl From<Ratio<i64>> for RationalJson {
    fn from(r: Ratio<i64>) -> Self {
        RationalJson {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

pub fn ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    RationalJson::from(*r).serialize(s)
}

pub fn ratio_opt<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    r.map(RationalJson::from).serialize(s)
}

pub fn ratio_set<S: Serializer>(set: &BTreeSet<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(set.len()))?;
    for r in set {
        seq.serialize_element(&RationalJson::from(*r))?;
    }
    seq.end()
}

pub fn ratio_vec<S: Serializer>(v: &[Ratio<i64>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&RationalJson::from(*r))?;
    }
    seq.end()
}

/// Map from `m` to the set of values, keys rendered as strings.
pub fn ratio_set_map<S: Serializer>(map: &BTreeMap<u32, BTreeSet<Ratio<i64>>>, s: S) -> Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(map.len()))?;
    for (k, set) in map {
        let v: Vec<RationalJson> = set.iter().map(|r| RationalJson::from(*r)).collect();
        m.serialize_entry(&k.to_string(), &v)?;
    }
    m.end()
}
