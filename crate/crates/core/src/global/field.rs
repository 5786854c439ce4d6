//! The seven base fields `F = Q(√d)` and their class data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::quadratic::{parse_quad, q, qr, QuadElt};
use crate::error::{Error, Result};

pub const SUPPORTED: [i64; 7] = [2, 3, 5, -1, -2, -3, -5];

/// How 2 decomposes in `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoSplitting {
    Ramified,
    Inert,
    Split,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticFieldData {
    pub d: i64,
    pub discriminant: i64,
    /// `"Z[√d]"` or `"Z[(1+√d)/2]"`.
    pub integral_basis: String,
    /// `(r1, r2)`.
    pub signature: (u32, u32),
    pub h: u64,
    pub h_narrow: u64,
    #[serde(serialize_with = "serialize_opt_elt")]
    pub fundamental_unit: Option<QuadElt>,
    pub two_splitting: TwoSplitting,
    /// A generator of the prime above 2 when it is principal, otherwise of `(2)`.
    #[serde(serialize_with = "serialize_elt")]
    pub two_prime_generator: QuadElt,
    /// Whether the prime above 2 is principal.
    pub two_prime_principal: bool,
}

pub(crate) fn serialize_elt<S: serde::Serializer>(x: &QuadElt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn serialize_opt_elt<S: serde::Serializer>(x: &Option<QuadElt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

impl QuadraticFieldData {
    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// Ring of integers is `Z[(1+√d)/2]`.
    pub fn half_integral(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }

    pub fn elt(&self, text: &str) -> Result<QuadElt> {
        parse_quad(self.d, text)
    }

    /// Units modulo squares: a generator of the roots of unity modulo squares
    /// (when nontrivial) and the fundamental unit.
    pub fn unit_generators(&self) -> Vec<QuadElt> {
        let mut out = Vec::new();
        match self.d {
            // i generates μ₄ and -1 = i²
            -1 => out.push(QuadElt::sqrt_d(-1)),
            _ => out.push(QuadElt::from_ints(self.d, -1, 0)),
        }
        out.extend(self.fundamental_unit.clone());
        out
    }
}

pub fn discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Reduced forms `(a, b, c)` of discriminant `disc < 0`:
/// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
pub fn reduced_forms(disc: i64) -> Vec<(i64, i64, i64)> {
    assert!(disc < 0);
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            out.push((a, b, c));
        }
        a += 1;
    }
    out
}

/// Primitive reduced forms; their number is the class number.
pub fn class_number_imaginary(disc: i64) -> u64 {
    reduced_forms(disc)
        .into_iter()
        .filter(|&(a, b, c)| a.gcd(&b).gcd(&c) == 1)
        .count() as u64
}

/// Smallest `y > 0` with `x² - d y² = ±1` (or `±4` for `d ≡ 1 mod 4`),
/// giving the fundamental unit `(x + y√d)/k`. `limit` bounds the search.
pub fn fundamental_unit_search(d: i64, limit: i64) -> Option<QuadElt> {
    let k = if d.rem_euclid(4) == 1 { 2 } else { 1 };
    for y in 1..=limit {
        for t in [-(k * k), k * k] {
            let x2 = d * y * y + t;
            if x2 <= 0 {
                continue;
            }
            let x = (x2 as f64).sqrt().round() as i64;
            if x * x == x2 {
                return Some(QuadElt::new(d, qr(x, k), qr(y, k)));
            }
        }
    }
    None
}

/// The standard fundamental units.
fn standard_fundamental_unit(d: i64) -> Option<&'static str> {
    match d {
        2 => Some("1+s"),
        3 => Some("2+s"),
        5 => Some("(1+s)/2"),
        _ => None,
    }
}

/// Whether some integral element has norm `±n`, searching `|y| ≤ bound`.
fn has_element_of_norm(d: i64, n: i64, bound: i64) -> bool {
    let k = if d.rem_euclid(4) == 1 { 2 } else { 1 };
    // (x + y√d)/k with x ≡ y mod 2 when k = 2
    for y in 0..=bound {
        for t in [-n, n] {
            let x2 = k * k * t + d * y * y;
            if x2 < 0 {
                continue;
            }
            let x = (x2 as f64).sqrt().round() as i64;
            if x * x == x2 && (k == 1 || (x - y) % 2 == 0) {
                return true;
            }
        }
    }
    false
}

/// Class number of a real quadratic field when every prime ideal below the
/// Minkowski bound is principal (the only case needed here).
pub fn class_number_real(d: i64, unit: &QuadElt) -> Result<u64> {
    let disc = discriminant(d);
    let minkowski = (disc as f64).sqrt() / 2.0;
    // a principal ideal of norm p has a generator with |y| below this bound,
    // after multiplying by a power of the unit
    let u = unit.approx(1).abs().max(1.0 / unit.approx(1).abs());
    let bound = ((minkowski * u) as i64 + 2).max(4);
    for p in (2..=minkowski.floor() as i64).filter(|&p| (2..p).all(|r| p % r != 0)) {
        let splits = (0..p).any(|x| (x * x - disc).rem_euclid(4 * p) == 0);
        if splits && !has_element_of_norm(d, p, bound) {
            return Err(Error::UnsupportedField(d));
        }
    }
    Ok(1)
}

pub fn two_splitting(d: i64) -> TwoSplitting {
    match d.rem_euclid(8) {
        1 => TwoSplitting::Split,
        5 => TwoSplitting::Inert,
        _ => TwoSplitting::Ramified,
    }
}

/// Build the data of `Q(√d)` for one of the seven supported `d`.
pub fn quad_field(d: i64) -> Result<QuadraticFieldData> {
    if !SUPPORTED.contains(&d) {
        return Err(Error::UnsupportedField(d));
    }
    let disc = discriminant(d);
    let two = two_splitting(d);
    let (fundamental_unit, h, h_narrow) = if d > 0 {
        let u = parse_quad(d, standard_fundamental_unit(d).expect("real field"))?;
        verify_fundamental_unit(&u)?;
        let h = class_number_real(d, &u)?;
        let hn = if u.norm() == q(-1) { h } else { 2 * h };
        (Some(u), h, hn)
    } else {
        let h = class_number_imaginary(disc);
        (None, h, h)
    };
    // p² = (2) when ramified; the prime itself is (2) when inert
    let norm_two = match two {
        TwoSplitting::Inert => 4,
        _ => 2,
    };
    let principal = has_element_of_norm(d, norm_two, 8);
    let gen = match two {
        TwoSplitting::Inert => QuadElt::from_ints(d, 2, 0),
        _ if principal => find_element_of_norm(d, 2).ok_or(Error::UnsupportedField(d))?,
        _ => QuadElt::from_ints(d, 2, 0),
    };
    Ok(QuadraticFieldData {
        d,
        discriminant: disc,
        integral_basis: if d.rem_euclid(4) == 1 {
            "Z[(1+sqrt(d))/2]".into()
        } else {
            "Z[sqrt(d)]".into()
        },
        signature: if d > 0 { (2, 0) } else { (0, 1) },
        h,
        h_narrow,
        fundamental_unit,
        two_splitting: two,
        two_prime_generator: gen,
        two_prime_principal: principal,
    })
}

fn find_element_of_norm(d: i64, n: i64) -> Option<QuadElt> {
    for y in 0..=8i64 {
        for x in 0..=8i64 {
            for t in [n, -n] {
                if x * x - d * y * y == t {
                    return Some(QuadElt::from_ints(d, x, y));
                }
            }
        }
    }
    None
}

/// A unit with no smaller unit above 1.
pub fn verify_fundamental_unit(u: &QuadElt) -> Result<()> {
    let n = u.norm();
    let bad = |msg: &str| Err(Error::ReductionFailure(format!("{u} is not a fundamental unit: {msg}")));
    if !u.is_integral() || !(n.abs().is_one()) {
        return bad("not a unit");
    }
    let smallest = fundamental_unit_search(u.d, 1000).ok_or(Error::UnsupportedField(u.d))?;
    let v = u.approx(1).abs();
    let w = smallest.approx(1).abs();
    if (v.max(1.0 / v) - w).abs() > 1e-9 * w {
        return bad("a smaller unit exists");
    }
    Ok(())
}

/// `v_p` of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u32 {
    let mut v = 0;
    let mut n = n.abs();
    let p = BigInt::from(p);
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        let h = |d| quad_field(d).unwrap().h;
        assert_eq!(h(-5), 2);
        assert_eq!(h(-1), 1);
        assert_eq!(h(-2), 1);
        assert_eq!(h(-3), 1);
        assert_eq!(h(2), 1);
        assert_eq!(quad_field(3).unwrap().h_narrow, 2);
        assert_eq!(quad_field(2).unwrap().h_narrow, 1);
        assert_eq!(quad_field(5).unwrap().h_narrow, 1);
        assert_eq!(class_number_imaginary(-23), 3);
        assert_eq!(class_number_imaginary(-56), 4);
    }

    #[test]
    fn splitting_and_units() {
        let f = quad_field(-1).unwrap();
        assert_eq!(f.two_splitting, TwoSplitting::Ramified);
        assert_eq!(f.discriminant, -4);
        assert_eq!(quad_field(5).unwrap().two_splitting, TwoSplitting::Inert);
        assert_eq!(quad_field(-3).unwrap().two_splitting, TwoSplitting::Inert);
        for d in [2, 3, 5] {
            let u = quad_field(d).unwrap().fundamental_unit.unwrap();
            assert!(u.is_integral());
            assert_eq!(u.norm().abs(), q(1));
        }
        assert!(verify_fundamental_unit(&parse_quad(2, "3+2*s").unwrap()).is_err());
        assert!(!quad_field(-5).unwrap().two_prime_principal);
        assert!(quad_field(-2).unwrap().two_prime_principal);
    }

    #[test]
    fn unsupported() {
        assert_eq!(quad_field(7).unwrap_err(), Error::UnsupportedField(7));
    }
}
