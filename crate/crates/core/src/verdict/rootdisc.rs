//! Certified decimal bounds for `√|disc F| · 2^x`.
//!
//! With `x = p/q`, the value `V` satisfies `V^{2q} = |D|^q · 2^{2p}`, so
//! every comparison with a decimal is an exact integer comparison.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use super::odlyzko::Milli;
use crate::global::QuadraticFieldData;
use crate::json;

#[derive(Clone, Debug, Serialize)]
pub struct RootDiscBound {
    /// e.g. `2*sqrt(2)*2^2` or `sqrt(5)*2^(35/12)`.
    pub radical: String,
    #[serde(serialize_with = "json::ratio")]
    pub exponent: Ratio<i64>,
    /// Smallest three-place decimal `≥ V`.
    pub upper: Milli,
    /// Largest three-place decimal `≤ V`.
    pub lower: Milli,
    /// `V` equals `upper` exactly.
    pub exact: bool,
    abs_disc: i64,
}

impl RootDiscBound {
    /// `<11.314` or `=8`.
    pub fn display_bound(&self) -> String {
        if self.exact {
            let s = self.upper.to_string();
            format!("={}", s.trim_end_matches('0').trim_end_matches('.'))
        } else {
            format!("<{}", self.upper)
        }
    }

    /// `V < t`, decided exactly.
    pub fn is_below(&self, t: Milli) -> bool {
        compare(self.abs_disc, self.exponent, t.0) == std::cmp::Ordering::Less
    }
}

/// Sign of `V - m/1000`.
fn compare(abs_disc: i64, x: Ratio<i64>, m: i64) -> std::cmp::Ordering {
    let (p, q) = (*x.numer(), *x.denom());
    assert!(p >= 0 && q > 0);
    // V^{2q} · 1000^{2q} vs m^{2q}
    let lhs = BigInt::from(abs_disc).pow(q as u32) * BigInt::from(2).pow((2 * p) as u32) * BigInt::from(1000).pow((2 * q) as u32);
    let rhs = BigInt::from(m).pow((2 * q) as u32);
    lhs.cmp(&rhs)
}

/// `√n` as `c*sqrt(r)` with `r` squarefree.
pub fn radical_of_sqrt(n: i64) -> String {
    let mut c = 1;
    let mut r = n;
    let mut p = 2;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            c *= p;
        }
        p += 1;
    }
    match (c, r) {
        (c, 1) => c.to_string(),
        (1, r) => format!("sqrt({r})"),
        (c, r) => format!("{c}*sqrt({r})"),
    }
}

/// `rd(F) · 2^x` with `rd(F) = √|disc F|`.
pub fn root_disc_upper(f: &QuadraticFieldData, exponent: Ratio<i64>) -> RootDiscBound {
    bound_for(f.discriminant.abs(), exponent)
}

pub fn bound_for(abs_disc: i64, exponent: Ratio<i64>) -> RootDiscBound {
    let power = if exponent.is_integer() {
        format!("2^{}", exponent.numer())
    } else {
        format!("2^({}/{})", exponent.numer(), exponent.denom())
    };
    let radical = format!("{}*{power}", radical_of_sqrt(abs_disc));
    let approx = (abs_disc as f64).sqrt() * 2f64.powf(exponent.to_f64().unwrap_or(0.0));
    let mut k = (approx * 1000.0).floor() as i64 - 2;
    while compare(abs_disc, exponent, k) == std::cmp::Ordering::Greater {
        k += 1;
    }
    let exact = compare(abs_disc, exponent, k) == std::cmp::Ordering::Equal;
    RootDiscBound {
        radical,
        exponent,
        upper: Milli(k),
        lower: Milli(if exact { k } else { k - 1 }),
        exact,
        abs_disc,
    }
}
