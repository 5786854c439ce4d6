//! Differents of wildly ramified elementary abelian 2-extensions from
//! conductor data, and the closed-form value families they fall into.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// The exact valuation `v_2` of a different.
pub type DifferentValue = Rational;

fn r(n: i64, d: i64) -> Rational {
    Ratio::new(n, d)
}

fn pow2(k: u32) -> i64 {
    1i64 << k
}

/// Local type of the base field at 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseType {
    RamifiedQuadratic,
    UnramifiedQuadratic,
}

impl BaseType {
    /// Ramification index of the base over `Q_2`.
    pub fn e(self) -> u32 {
        match self {
            BaseType::RamifiedQuadratic => 2,
            BaseType::UnramifiedQuadratic => 1,
        }
    }
}

impl fmt::Display for BaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseType::RamifiedQuadratic => "ramified",
            BaseType::UnramifiedQuadratic => "unramified",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiltrationSignature {
    pub base_type: BaseType,
    pub e1: u32,
    pub m: u32,
    pub m2: u32,
    pub m4: u32,
    pub abelian: bool,
}

impl FiltrationSignature {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSignature(msg));
        if !(self.m2 <= self.m4 && self.m4 <= self.m) {
            return bad(format!("need m2 <= m4 <= m, got ({}, {}, {})", self.m2, self.m4, self.m));
        }
        match (self.base_type, self.e1) {
            (BaseType::RamifiedQuadratic, 1) | (BaseType::UnramifiedQuadratic, 1 | 3) => {}
            (b, e1) => return bad(format!("tame index {e1} impossible over a {b} base")),
        }
        if self.abelian && self.m > 3 {
            return bad(format!("abelian signature with m = {} > 3", self.m));
        }
        if self.m > 24 {
            return bad(format!("m = {} out of range", self.m));
        }
        Ok(())
    }
}

/// `v_2` of the tame part: `(1 - 1/e1) / e_F`.
pub fn tame_different(e1: u32, e_f: u32) -> Rational {
    (Rational::one() - r(1, e1 as i64)) / r(e_f as i64, 1)
}

/// Conductor-discriminant formula: `Σ a(χ) / (|X| · e_F · e1)`.
///
/// `conductors` lists one conductor exponent (in the field with
/// ramification `e_F · e1` over `Q_2`) per character of the group.
pub fn fdpf_different(conductors: &[u32], e_f: u32, e1: u32) -> Result<DifferentValue> {
    let n = conductors.len();
    let zeros = conductors.iter().filter(|&&c| c == 0).count();
    if n == 0 || !n.is_power_of_two() || !zeros.is_power_of_two() {
        return Err(Error::NotPowerOfTwo);
    }
    let s: i64 = conductors.iter().map(|&c| c as i64).sum();
    Ok(r(s, n as i64 * e_f as i64 * e1 as i64))
}

/// The values predicted for a signature family.
pub fn lemma_value_set(sig: &FiltrationSignature) -> Result<BTreeSet<DifferentValue>> {
    sig.validate()?;
    let FiltrationSignature {
        base_type,
        e1,
        m,
        m2,
        m4,
        abelian,
    } = *sig;
    let mut out = BTreeSet::new();
    if m == 0 {
        out.insert(tame_different(e1, base_type.e()));
        return Ok(out);
    }
    match (base_type, abelian) {
        (BaseType::RamifiedQuadratic, false) => {
            out.insert(r(2, 1) - r(pow2(m2) + 1, pow2(m)));
        }
        (BaseType::RamifiedQuadratic, true) => {
            let vals: &[(i64, i64)] = match m {
                3 => &[(15, 8)],
                2 => &[(7, 4), (3, 2), (5, 4)],
                _ => &[(5, 4), (1, 1), (1, 2)],
            };
            out.extend(vals.iter().map(|&(a, b)| r(a, b)));
        }
        (BaseType::UnramifiedQuadratic, false) => {
            if e1 == 1 {
                out.insert(r(2, 1) - r(1, pow2(m - 1)));
            } else {
                out.insert(r(8, 3) - r(pow2(m4) + pow2(m2) + 1, 3 * pow2(m - 1)));
            }
        }
        (BaseType::UnramifiedQuadratic, true) => {
            let vals: &[(i64, i64)] = match m {
                3 => &[(35, 12)],
                2 => &[(8, 3), (13, 6)],
                _ => &[(13, 6), (5, 3)],
            };
            let shift = if e1 == 1 { r(2, 3) } else { Rational::zero() };
            out.extend(vals.iter().map(|&(a, b)| r(a, b) - shift));
        }
    }
    Ok(out)
}

/// Value when the top step of the filtration has index 2, i.e. the
/// characters of maximal conductor make up half the group.
pub fn top_jump_value(base_type: BaseType, e1: u32, m: u32, m2: u32, m4: u32) -> Rational {
    if m == 0 {
        return tame_different(e1, base_type.e());
    }
    match (base_type, e1) {
        (BaseType::RamifiedQuadratic, _) => r(9, 4) - r(pow2(m2) + 1, pow2(m)),
        (BaseType::UnramifiedQuadratic, 1) => r(5, 2) - r(1, pow2(m - 1)),
        _ => r(17, 6) - r(pow2(m4) + pow2(m2) + 1, 3 * pow2(m - 1)),
    }
}

/// Supremum `B` of `v_2(D)` over all signatures of the base type with
/// `m ≤ m_cap` (no cap: all signatures).
pub fn max_root_disc_exponent(base_type: BaseType, m_cap: Option<u32>) -> Rational {
    let cap = m_cap.unwrap_or(24).min(24);
    let mut best = Rational::zero();
    let e1s: &[u32] = match base_type {
        BaseType::RamifiedQuadratic => &[1],
        BaseType::UnramifiedQuadratic => &[1, 3],
    };
    for &e1 in e1s {
        for abelian in [true, false] {
            let top = if abelian { cap.min(3) } else { cap };
            for m in 0..=top {
                let sig = FiltrationSignature {
                    base_type,
                    e1,
                    m,
                    m2: 0,
                    m4: 0,
                    abelian,
                };
                if let Ok(vals) = lemma_value_set(&sig) {
                    best = best.max(*vals.iter().next_back().expect("nonempty"));
                }
            }
        }
    }
    if m_cap.is_none_or(|c| c > 24) {
        // the non-abelian families tend to their suprema as m grows
        let sup = match base_type {
            BaseType::RamifiedQuadratic => r(2, 1),
            BaseType::UnramifiedQuadratic => r(8, 3),
        };
        best = best.max(sup);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tame_values() {
        assert_eq!(tame_different(1, 5), r(0, 1));
        assert_eq!(tame_different(3, 1), r(2, 3));
        assert_eq!(tame_different(3, 2), r(1, 3));
    }

    #[test]
    fn fdpf_examples() {
        assert_eq!(fdpf_different(&[0, 5], 2, 1).unwrap(), r(5, 4));
        assert_eq!(fdpf_different(&[0, 4], 2, 1).unwrap(), r(1, 1));
        assert_eq!(fdpf_different(&[0, 0, 0, 0], 2, 1).unwrap(), r(0, 1));
        assert_eq!(fdpf_different(&[0, 2, 4, 4, 5, 5, 5, 5], 2, 1).unwrap(), r(15, 8));
        assert_eq!(fdpf_different(&[0, 2, 4], 2, 1).unwrap_err(), Error::NotPowerOfTwo);
        assert_eq!(fdpf_different(&[0, 0, 0, 4], 2, 1).unwrap_err(), Error::NotPowerOfTwo);
    }

    #[test]
    fn value_sets() {
        let sig = |base_type, e1, m, abelian| FiltrationSignature {
            base_type,
            e1,
            m,
            m2: 0,
            m4: 0,
            abelian,
        };
        let set = |s: FiltrationSignature| lemma_value_set(&s).unwrap().into_iter().collect::<Vec<_>>();
        assert_eq!(set(sig(BaseType::RamifiedQuadratic, 1, 3, true)), vec![r(15, 8)]);
        assert_eq!(set(sig(BaseType::UnramifiedQuadratic, 3, 3, true)), vec![r(35, 12)]);
        assert_eq!(set(sig(BaseType::UnramifiedQuadratic, 1, 3, true)), vec![r(9, 4)]);
        assert_eq!(set(sig(BaseType::RamifiedQuadratic, 1, 0, false)), vec![r(0, 1)]);
        assert!(lemma_value_set(&sig(BaseType::RamifiedQuadratic, 3, 1, false)).is_err());
        assert!(lemma_value_set(&sig(BaseType::RamifiedQuadratic, 1, 4, true)).is_err());
    }

    #[test]
    fn unramified_shift_by_tame_part() {
        for m in 0..=3 {
            let s = |e1| FiltrationSignature {
                base_type: BaseType::UnramifiedQuadratic,
                e1,
                m,
                m2: 0,
                m4: 0,
                abelian: true,
            };
            let a: BTreeSet<_> = lemma_value_set(&s(1)).unwrap();
            let b: BTreeSet<_> = lemma_value_set(&s(3)).unwrap().into_iter().map(|v| v - r(2, 3)).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn root_disc_exponents() {
        assert_eq!(max_root_disc_exponent(BaseType::RamifiedQuadratic, None), r(2, 1));
        assert_eq!(max_root_disc_exponent(BaseType::UnramifiedQuadratic, None), r(35, 12));
        assert_eq!(max_root_disc_exponent(BaseType::RamifiedQuadratic, Some(2)), r(7, 4));
    }
}
