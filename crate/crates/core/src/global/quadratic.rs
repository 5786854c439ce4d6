//! Exact arithmetic in `Q(√d)`: elements `a + b√d` with rational `a`, `b`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Square root of a nonnegative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root in `Q`, if any.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(BigRational::new(n, d))
}

/// Squarefree `d ≠ 0, 1`.
pub fn is_squarefree(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let n = d.unsigned_abs();
    (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p))
}

/// `a + b√d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElt {
    pub d: i64,
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadElt {
    pub fn new(d: i64, a: BigRational, b: BigRational) -> QuadElt {
        QuadElt { d, a, b }
    }

    pub fn from_ints(d: i64, a: i64, b: i64) -> QuadElt {
        QuadElt::new(d, q(a), q(b))
    }

    pub fn rational(d: i64, a: BigRational) -> QuadElt {
        QuadElt::new(d, a, BigRational::zero())
    }

    pub fn one(d: i64) -> QuadElt {
        QuadElt::from_ints(d, 1, 0)
    }

    /// `√d`.
    pub fn sqrt_d(d: i64) -> QuadElt {
        QuadElt::from_ints(d, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> QuadElt {
        QuadElt::new(self.d, self.a.clone(), -&self.b)
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * q(self.d)
    }

    pub fn trace(&self) -> BigRational {
        &self.a * q(2)
    }

    pub fn inverse(&self) -> Result<QuadElt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZeroAtPrecision);
        }
        let c = self.conj();
        Ok(QuadElt::new(self.d, c.a / &n, c.b / n))
    }

    pub fn div(&self, o: &QuadElt) -> Result<QuadElt> {
        Ok(self * &o.inverse()?)
    }

    pub fn pow(&self, n: u32) -> QuadElt {
        (0..n).fold(QuadElt::one(self.d), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigRational) -> QuadElt {
        QuadElt::new(self.d, &self.a * c, &self.b * c)
    }

    /// Integral over `Z`: trace and norm are integers.
    pub fn is_integral(&self) -> bool {
        self.trace().is_integer() && self.norm().is_integer()
    }

    /// A square root in `Q(√d)`, if one exists.
    ///
    /// `(x + y√d)² = a + b√d` means `x² + d y² = a`, `2xy = b`; then
    /// `x² = (a ± √N)/2` with `N = a² - d b²`.
    pub fn sqrt(&self) -> Option<QuadElt> {
        let d = self.d;
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(QuadElt::rational(d, r));
            }
            // a = d y²
            let y = rational_sqrt(&(&self.a / q(d)))?;
            return Some(QuadElt::new(d, BigRational::zero(), y));
        }
        let s = rational_sqrt(&self.norm())?;
        for sign in [1, -1] {
            let x2 = (&self.a + &s * q(sign)) / q(2);
            if let Some(x) = rational_sqrt(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&x * q(2));
                let cand = QuadElt::new(d, x, y);
                if &cand * &cand == *self {
                    return Some(cand);
                }
            }
        }
        None
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Least common denominator `m` with `m·(a, b)` integral.
    pub fn denominator(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Approximate value under the embedding `√d ↦ sign·√d` (real `d`).
    pub fn approx(&self, sign: i64) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + sign as f64 * b * (self.d as f64).sqrt()
    }

    /// Exact sign of `a + b√d` for real `d > 0` (with `√d > 0`).
    pub fn real_sign(&self) -> i32 {
        debug_assert!(self.d > 0);
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with d b²
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * q(self.d);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Totally positive: positive under both real embeddings (never for imaginary `d`).
    pub fn is_totally_positive(&self) -> bool {
        self.d > 0 && self.real_sign() > 0 && self.conj().real_sign() > 0
    }

    fn check(&self, o: &QuadElt) {
        assert_eq!(self.d, o.d, "elements of different quadratic fields");
    }
}

fn sgn(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &QuadElt {
    type Output = QuadElt;
    fn add(self, o: &QuadElt) -> QuadElt {
        self.check(o);
        QuadElt::new(self.d, &self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &QuadElt {
    type Output = QuadElt;
    fn sub(self, o: &QuadElt) -> QuadElt {
        self.check(o);
        QuadElt::new(self.d, &self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &QuadElt {
    type Output = QuadElt;
    fn mul(self, o: &QuadElt) -> QuadElt {
        self.check(o);
        QuadElt::new(
            self.d,
            &self.a * &o.a + &self.b * &o.b * q(self.d),
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Neg for &QuadElt {
    type Output = QuadElt;
    fn neg(self) -> QuadElt {
        QuadElt::new(self.d, -&self.a, -&self.b)
    }
}

impl fmt::Display for QuadElt {
    /// `a+b*s` with `s = √d`; rationals as `n/m`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denominator();
        let a = (&self.a * BigRational::from_integer(den.clone())).to_integer();
        let b = (&self.b * BigRational::from_integer(den.clone())).to_integer();
        let mut s = String::new();
        if !a.is_zero() || b.is_zero() {
            s.push_str(&a.to_string());
        }
        if !b.is_zero() {
            if b.is_negative() {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let babs = b.abs();
            if !babs.is_one() {
                s.push_str(&babs.to_string());
                s.push('*');
            }
            s.push('s');
        }
        if den.is_one() {
            f.write_str(&s)
        } else if b.is_zero() || a.is_zero() {
            write!(f, "{s}/{den}")
        } else {
            write!(f, "({s})/{den}")
        }
    }
}

/// Parse `a+b*s`, `(a+b*s)/m`, `-s`, `2`, ... where `s` stands for `√d`.
pub fn parse_quad(d: i64, text: &str) -> Result<QuadElt> {
    let bad = || Error::DataFormat {
        line: 0,
        msg: format!("cannot parse quadratic element {text:?}"),
    };
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (body, den) = match t.rsplit_once('/') {
        Some((body, den)) => (body, i64::from_str(den).map_err(|_| bad())?),
        None => (t.as_str(), 1),
    };
    if den == 0 {
        return Err(bad());
    }
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
    let mut a = 0i64;
    let mut b = 0i64;
    let mut rest = body;
    if rest.is_empty() {
        return Err(bad());
    }
    while !rest.is_empty() {
        let (sign, r) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = r[1.min(r.len())..].find(['+', '-']).map(|i| i + 1).unwrap_or(r.len());
        let term = &r[..end];
        rest = &r[end..];
        if let Some(coef) = term.strip_suffix('s') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() { 1 } else { i64::from_str(coef).map_err(|_| bad())? };
            b += sign * c;
        } else {
            a += sign * i64::from_str(term).map_err(|_| bad())?;
        }
    }
    Ok(QuadElt::new(d, qr(a, den), qr(b, den)))
}
