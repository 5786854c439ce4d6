//! Elements of a [`LocalFieldTower`] at finite precision.
//!
//! An element is stored as `Π^val · u` where `u` is an integral unit known
//! modulo `Π^rel`. The absolute precision is `val + rel`. Zero (or anything
//! indistinguishable from it) keeps only the absolute precision in `val`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::Ratio;

use super::ring::{Residue, W};
use super::tower::LocalFieldTower;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct PadicElement {
    field: Arc<LocalFieldTower>,
    val: i64,
    unit: Option<Vec<W>>,
    rel: u32,
}

impl fmt::Debug for PadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unit {
            None => write!(f, "O(π^{})", self.val),
            Some(u) => write!(f, "π^{} · {:?} + O(π^{})", self.val, u, self.val + self.rel as i64),
        }
    }
}

impl fmt::Display for PadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn same_field(a: &Arc<LocalFieldTower>, b: &Arc<LocalFieldTower>) -> bool {
    Arc::ptr_eq(a, b) || (a.steps == b.steps && a.ctx == b.ctx)
}

impl PadicElement {
    /// Build from an integral coefficient vector known modulo `Π^abs`.
    pub(crate) fn from_integral(field: &Arc<LocalFieldTower>, mut v: Vec<W>, abs: u32) -> PadicElement {
        field.trunc(&mut v, abs);
        match field.val_int(&v) {
            Some(k) if k < abs => {
                for _ in 0..k {
                    v = field.div_pi(&v);
                }
                let rel = abs - k;
                field.trunc(&mut v, rel);
                PadicElement {
                    field: field.clone(),
                    val: k as i64,
                    unit: Some(v),
                    rel,
                }
            }
            _ => PadicElement::zero_with(field, abs as i64),
        }
    }

    fn from_unit(field: &Arc<LocalFieldTower>, val: i64, mut unit: Vec<W>, rel: u32) -> PadicElement {
        field.trunc(&mut unit, rel);
        PadicElement {
            field: field.clone(),
            val,
            unit: Some(unit),
            rel,
        }
    }

    /// Zero known modulo `Π^abs`.
    pub fn zero_with(field: &Arc<LocalFieldTower>, abs: i64) -> PadicElement {
        PadicElement {
            field: field.clone(),
            val: abs,
            unit: None,
            rel: 0,
        }
    }

    pub fn zero(field: &Arc<LocalFieldTower>) -> PadicElement {
        PadicElement::zero_with(field, field.ctx.digits as i64)
    }

    /// An integer, with `digits` of relative precision.
    pub fn from_int(field: &Arc<LocalFieldTower>, n: i64) -> PadicElement {
        if n == 0 {
            return PadicElement::zero(field);
        }
        let e = field.e;
        let k = n.trailing_zeros();
        let mut v = vec![W::ZERO; e as usize];
        v[0] = W::from_int(n);
        PadicElement::from_integral(field, v, field.ctx.digits + k * e)
    }

    pub fn field(&self) -> &Arc<LocalFieldTower> {
        &self.field
    }

    /// True when the element is indistinguishable from zero.
    pub fn is_zero(&self) -> bool {
        self.unit.is_none()
    }

    /// Valuation in uniformizer units.
    pub fn valuation_pi(&self) -> Result<i64> {
        if self.is_zero() {
            Err(Error::ZeroValuation)
        } else {
            Ok(self.val)
        }
    }

    /// Valuation normalized by `v(2) = 1`.
    pub fn valuation(&self) -> Result<Ratio<i64>> {
        Ok(Ratio::new(self.valuation_pi()?, self.field.e as i64))
    }

    /// Absolute precision in uniformizer digits.
    pub fn precision(&self) -> i64 {
        self.val + self.rel as i64
    }

    /// Relative precision (digits known past the leading one).
    pub fn rel_precision(&self) -> u32 {
        self.rel
    }

    /// The unit `u` with `self = Π^v u`.
    pub fn unit_part(&self) -> Result<PadicElement> {
        match &self.unit {
            None => Err(Error::ZeroValuation),
            Some(u) => Ok(PadicElement::from_unit(&self.field, 0, u.clone(), self.rel)),
        }
    }

    /// Coefficients over `W_f` in the basis `1, Π, .., Π^{e-1}` of an integral element.
    pub fn to_integral_coeffs(&self) -> Result<Vec<W>> {
        let e = self.field.e as usize;
        match &self.unit {
            None if self.val >= 0 => Ok(vec![W::ZERO; e]),
            None => Err(Error::NegativeValuation),
            Some(_) if self.val < 0 => Err(Error::NegativeValuation),
            Some(u) => {
                let mut v = u.clone();
                for _ in 0..self.val {
                    v = self.field.mul_pi(&v);
                }
                Ok(v)
            }
        }
    }

    /// Reduction modulo the maximal ideal.
    pub fn residue_image(&self) -> Result<Residue> {
        match &self.unit {
            Some(_) if self.val < 0 => Err(Error::NegativeValuation),
            Some(u) if self.val == 0 => Ok(u[0].residue()),
            Some(_) => Ok(Residue::ZERO),
            None if self.val >= 1 => Ok(Residue::ZERO),
            None => Err(Error::PrecisionExhausted {
                needed: 1,
                available: self.val.max(0) as u32,
            }),
        }
    }

    fn check(&self, o: &PadicElement) {
        assert!(same_field(&self.field, &o.field), "{}", Error::FieldMismatch);
    }

    pub fn try_add(&self, o: &PadicElement) -> Result<PadicElement> {
        if !same_field(&self.field, &o.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.add_inner(o, false))
    }

    fn add_inner(&self, o: &PadicElement, negate: bool) -> PadicElement {
        let abs = self.precision().min(o.precision());
        let k = &self.field;
        let (a, b) = match (&self.unit, &o.unit) {
            (None, None) => return PadicElement::zero_with(k, abs),
            (Some(_), None) => return self.truncated(abs),
            (None, Some(_)) => {
                let t = o.truncated(abs);
                return if negate { t.neg() } else { t };
            }
            (Some(a), Some(b)) => (a, b),
        };
        let m = self.val.min(o.val);
        let mut x = a.clone();
        for _ in 0..(self.val - m) {
            x = k.mul_pi(&x);
        }
        let mut y = b.clone();
        for _ in 0..(o.val - m) {
            y = k.mul_pi(&y);
        }
        let s: Vec<W> = x
            .iter()
            .zip(&y)
            .map(|(p, q)| if negate { p.sub(*q) } else { p.add(*q) })
            .collect();
        let mut r = PadicElement::from_integral(k, s, (abs - m) as u32);
        r.val += m;
        r
    }

    fn truncated(&self, abs: i64) -> PadicElement {
        match &self.unit {
            None => PadicElement::zero_with(&self.field, self.val.min(abs)),
            Some(u) => {
                if abs <= self.val {
                    PadicElement::zero_with(&self.field, abs)
                } else {
                    let rel = ((abs - self.val) as u32).min(self.rel);
                    PadicElement::from_unit(&self.field, self.val, u.clone(), rel)
                }
            }
        }
    }

    /// Reduce the relative precision to at most `rel` digits.
    pub fn with_rel_precision(&self, rel: u32) -> PadicElement {
        match &self.unit {
            None => self.clone(),
            Some(u) => PadicElement::from_unit(&self.field, self.val, u.clone(), rel.min(self.rel)),
        }
    }

    pub fn mul_elem(&self, o: &PadicElement) -> PadicElement {
        self.check(o);
        let k = &self.field;
        match (&self.unit, &o.unit) {
            (Some(a), Some(b)) => {
                let rel = self.rel.min(o.rel);
                PadicElement::from_unit(k, self.val + o.val, k.mul_int(a, b), rel)
            }
            (None, None) => PadicElement::zero_with(k, self.val + o.val),
            (None, Some(_)) => PadicElement::zero_with(k, self.val + o.val),
            (Some(_), None) => PadicElement::zero_with(k, self.val + o.val),
        }
    }

    /// Multiplicative inverse; relative precision is preserved, absolute
    /// precision becomes `-val + rel`.
    pub fn inverse(&self) -> Result<PadicElement> {
        match &self.unit {
            None => Err(Error::DivisionByZeroAtPrecision),
            Some(u) => {
                let inv = self.field.inv_unit(u, self.rel);
                Ok(PadicElement::from_unit(&self.field, -self.val, inv, self.rel))
            }
        }
    }

    pub fn div(&self, o: &PadicElement) -> Result<PadicElement> {
        if !same_field(&self.field, &o.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul_elem(&o.inverse()?))
    }

    pub fn pow(&self, n: i64) -> Result<PadicElement> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut base = self.clone();
        let mut acc = PadicElement::from_int(&self.field, 1);
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_elem(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_elem(&base);
            }
        }
        Ok(acc)
    }

    /// Multiply by `Π^k` (exact, no precision change in relative terms).
    pub fn shift(&self, k: i64) -> PadicElement {
        let mut r = self.clone();
        r.val += k;
        r
    }

    /// Equality up to the smaller of the two precisions.
    pub fn approx_eq(&self, o: &PadicElement) -> bool {
        same_field(&self.field, &o.field) && (self - o).is_zero()
    }

    /// Multiplicative order divides 3 and the element is not 1.
    pub fn is_primitive_cube_root(&self) -> bool {
        let one = PadicElement::from_int(&self.field, 1);
        !self.approx_eq(&one) && self.pow(3).map(|c| c.approx_eq(&one)).unwrap_or(false)
    }
}

/// A primitive cube root of unity of a tower with residue field `F_4`.
pub fn teichmuller_3_torsion(k: &Arc<LocalFieldTower>) -> Result<PadicElement> {
    k.omega().ok_or(Error::NoThreeTorsion)
}

/// The Teichmüller lift of a residue class (exact, since `W_f` contains the
/// roots of unity of odd order dividing `2^f - 1`).
pub fn teichmuller(k: &Arc<LocalFieldTower>, r: Residue) -> PadicElement {
    k.lift_residue(r)
}

impl Add for &PadicElement {
    type Output = PadicElement;
    fn add(self, o: &PadicElement) -> PadicElement {
        self.check(o);
        self.add_inner(o, false)
    }
}

impl Sub for &PadicElement {
    type Output = PadicElement;
    fn sub(self, o: &PadicElement) -> PadicElement {
        self.check(o);
        self.add_inner(o, true)
    }
}

impl Mul for &PadicElement {
    type Output = PadicElement;
    fn mul(self, o: &PadicElement) -> PadicElement {
        self.mul_elem(o)
    }
}

impl Neg for &PadicElement {
    type Output = PadicElement;
    fn neg(self) -> PadicElement {
        self.clone().neg()
    }
}

impl Add for PadicElement {
    type Output = PadicElement;
    fn add(self, o: PadicElement) -> PadicElement {
        &self + &o
    }
}

impl Sub for PadicElement {
    type Output = PadicElement;
    fn sub(self, o: PadicElement) -> PadicElement {
        &self - &o
    }
}

impl Mul for PadicElement {
    type Output = PadicElement;
    fn mul(self, o: PadicElement) -> PadicElement {
        &self * &o
    }
}

impl Neg for PadicElement {
    type Output = PadicElement;
    fn neg(mut self) -> PadicElement {
        if let Some(u) = self.unit.as_mut() {
            for c in u.iter_mut() {
                *c = c.neg();
            }
            self.field.trunc(u, self.rel);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::tower::{make_tower, PrecisionContext, Step};

    fn sqrt2() -> Arc<LocalFieldTower> {
        make_tower(&[Step::eisenstein(&[-2, 0])], PrecisionContext::default()).unwrap()
    }

    #[test]
    fn two_has_valuation_one_everywhere() {
        for steps in [
            vec![],
            vec![Step::eisenstein(&[-2, 0])],
            vec![Step::unramified(), Step::eisenstein(&[-2, 0, 0])],
        ] {
            let k = make_tower(&steps, PrecisionContext::default()).unwrap();
            assert_eq!(k.from_int(2).valuation().unwrap(), Ratio::from_integer(1));
            assert_eq!(k.uniformizer().valuation().unwrap(), Ratio::new(1, k.e() as i64));
        }
    }

    #[test]
    fn binomial_square() {
        let k = sqrt2();
        let pi = k.uniformizer();
        let one = k.one();
        let x = &one + &pi;
        let lhs = &x * &x;
        let rhs = &(&one + &(&k.from_int(2) * &pi)) + &(&pi * &pi);
        assert!(lhs.approx_eq(&rhs));
    }

    #[test]
    fn pi_squared_over_two_is_a_unit() {
        let k = sqrt2();
        let pi = k.uniformizer();
        let c = (&pi * &pi).div(&k.from_int(2)).unwrap();
        assert_eq!(c.valuation().unwrap(), Ratio::from_integer(0));
        assert!(c.approx_eq(&k.one()));
    }

    #[test]
    fn cancellation_loses_relative_precision() {
        let k = make_tower(&[], PrecisionContext::default()).unwrap();
        let a = k.from_int(5);
        let b = k.from_int(1);
        let d = &a - &b;
        assert_eq!(d.valuation_pi().unwrap(), 2);
        assert_eq!(d.precision(), 32);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).valuation_pi(), Err(Error::ZeroValuation));
    }

    #[test]
    fn residues_and_cube_roots() {
        let k = make_tower(&[Step::unramified()], PrecisionContext::default()).unwrap();
        let t = teichmuller_3_torsion(&k).unwrap();
        assert!(t.is_primitive_cube_root());
        assert_eq!(t.residue_image().unwrap(), Residue::OMEGA);
        let one = k.one();
        assert!((&(&(&t * &t) + &t) + &one).is_zero());
        assert_eq!(k.from_int(2).residue_image().unwrap(), Residue::ZERO);
        let q2 = make_tower(&[], PrecisionContext::default()).unwrap();
        assert_eq!(teichmuller_3_torsion(&q2).unwrap_err(), Error::NoThreeTorsion);
        let half = q2.from_int(1).div(&q2.from_int(2)).unwrap();
        assert_eq!(half.residue_image(), Err(Error::NegativeValuation));
    }

    #[test]
    fn division_by_zero() {
        let k = sqrt2();
        let z = &k.one() - &k.one();
        assert_eq!(k.one().div(&z).unwrap_err(), Error::DivisionByZeroAtPrecision);
    }
}
