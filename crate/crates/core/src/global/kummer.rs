//! The quartic fields `K' = F(√δ)` for Selmer classes `δ`, their behaviour
//! at 2, and the odd-degree obstruction.

use std::sync::Arc;

use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::field::{QuadraticFieldData, TwoSplitting};
use super::quadratic::{parse_quad, q, qr, QuadElt};
use super::selmer::{same_square_class, selmer_classes};
use crate::error::{Error, Result};
use crate::oracle::{ramified_completion_data, LemmaBase};
use crate::padic::{sqrt, square_class_coords, LocalFieldTower, PadicElement, PrecisionContext, Residue};

/// `x + y√δ` with `x, y ∈ F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElt {
    pub x: QuadElt,
    pub y: QuadElt,
    pub delta: QuadElt,
}

impl KElt {
    pub fn from_base(x: QuadElt, delta: &QuadElt) -> KElt {
        let d = x.d;
        KElt {
            x,
            y: QuadElt::rational(d, BigRational::zero()),
            delta: delta.clone(),
        }
    }

    pub fn mul(&self, o: &KElt) -> KElt {
        let xy = &(&self.y * &o.y) * &self.delta;
        KElt {
            x: &(&self.x * &o.x) + &xy,
            y: &(&self.x * &o.y) + &(&self.y * &o.x),
            delta: self.delta.clone(),
        }
    }

    /// `N_{K'/F}`.
    pub fn relative_norm(&self) -> QuadElt {
        &(&self.x * &self.x) - &(&(&self.y * &self.y) * &self.delta)
    }

    pub fn is_unit(&self) -> bool {
        let n = self.relative_norm();
        let t = self.x.scale(&q(2));
        n.is_integral() && t.is_integral() && n.norm().abs().is_one()
    }
}

/// A rational interval `[lo, hi]`.
#[derive(Clone, Debug)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(x: BigRational) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    /// Enclosure of `√x` for `x ≥ 0` of width at most `2^-bits`.
    fn sqrt(x: &Interval, bits: u32) -> Interval {
        let root = |v: &BigRational, upper: bool| -> BigRational {
            let mut lo = BigRational::zero();
            let mut hi = v.clone().max(q(1));
            let eps = qr(1, 1) / BigRational::from_integer(num_bigint::BigInt::one() << bits);
            while &hi - &lo > eps {
                let mid = (&lo + &hi) / q(2);
                if &mid * &mid <= *v {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if upper {
                hi
            } else {
                lo
            }
        };
        Interval {
            lo: root(&x.lo.clone().max(BigRational::zero()), false),
            hi: root(&x.hi, true),
        }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Interval {
            lo: c.iter().min().unwrap().clone(),
            hi: c.iter().max().unwrap().clone(),
        }
    }

    fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }
}

/// Real value of `a + b√d` under `√d ↦ s·√d`, as an interval.
fn embed_real(x: &QuadElt, s: i32, bits: u32) -> Interval {
    let r = Interval::sqrt(&Interval::point(q(x.d)), bits);
    let r = if s > 0 {
        r
    } else {
        Interval {
            lo: -r.hi,
            hi: -r.lo,
        }
    };
    Interval::point(x.a.clone()).add(&Interval::point(x.b.clone()).mul(&r))
}

/// Positive under every real embedding. Signs are decided with rational
/// interval enclosures, refined until they separate from zero.
pub fn is_totally_positive(u: &KElt) -> bool {
    let d = u.x.d;
    if d < 0 {
        return false;
    }
    for s in [1, -1] {
        let mut bits = 32;
        loop {
            let delta = embed_real(&u.delta, s, bits);
            let Some(ds) = delta.sign() else {
                bits *= 2;
                continue;
            };
            if ds < 0 {
                break; // this embedding of F becomes complex in K'
            }
            let root = Interval::sqrt(&delta, bits);
            let x = embed_real(&u.x, s, bits);
            let y = embed_real(&u.y, s, bits);
            let neg_root = Interval {
                lo: -root.hi.clone(),
                hi: -root.lo.clone(),
            };
            let plus = x.add(&y.mul(&root)).sign();
            let minus = x.add(&y.mul(&neg_root)).sign();
            match (plus, minus) {
                (Some(1), Some(1)) => break,
                (Some(_), Some(_)) => return false,
                _ if bits > 4096 => return false,
                _ => bits *= 2,
            }
        }
    }
    true
}

/// The completion of `F` at its prime over 2, with the image of `√d`.
pub fn completion_at_two(f: &QuadraticFieldData, ctx: PrecisionContext) -> Result<(Arc<LocalFieldTower>, PadicElement)> {
    match f.two_splitting {
        TwoSplitting::Ramified => {
            let base = LemmaBase::Ramified { d: f.d };
            let k = base.tower(ctx)?;
            let (_, (a, b)) = ramified_completion_data(f.d).ok_or(Error::UnsupportedField(f.d))?;
            let root = &k.from_int(a) + &(&k.from_int(b) * &k.uniformizer());
            Ok((k, root))
        }
        TwoSplitting::Inert => {
            let k = LemmaBase::Unramified.tower(ctx)?;
            let root = sqrt(&k.from_int(f.d))?.ok_or(Error::UnsupportedField(f.d))?;
            Ok((k, root))
        }
        TwoSplitting::Split => Err(Error::UnsupportedField(f.d)),
    }
}

fn rat_i64(x: &BigRational) -> Result<Ratio<i64>> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Ratio::new(n, d)),
        _ => Err(Error::ReductionFailure(format!("coefficient {x} too large for the local embedding"))),
    }
}

/// Image of `a + b√d` in the completion.
pub fn embed_local(x: &QuadElt, k: &Arc<LocalFieldTower>, root: &PadicElement) -> Result<PadicElement> {
    let a = k.from_ratio(rat_i64(&x.a)?)?;
    let b = k.from_ratio(rat_i64(&x.b)?)?;
    Ok(&a + &(&b * root))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalBehaviour {
    /// `δ` is a local square: two places, each a copy of `F_2`.
    Split,
    Unramified,
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    pub e: u32,
    pub f: u32,
    /// Order of the 2-power roots of unity.
    pub two_power_torsion: u32,
    /// `2^f - 1`: roots of unity of odd order.
    pub odd_torsion: u32,
}

impl LocalFactor {
    pub fn torsion_order(&self) -> u32 {
        self.two_power_torsion * self.odd_torsion
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KummerQuarticField {
    pub d: i64,
    #[serde(serialize_with = "super::field::serialize_elt")]
    pub kummer: QuadElt,
    /// The matching entry of the published list.
    pub listed_as: String,
    pub behaviour_at_2: LocalBehaviour,
    pub local_factors_at_2: Vec<LocalFactor>,
    /// Class number bound taken from the data table.
    pub class_number_bound: u64,
    pub h_odd_part_trivial: bool,
}

impl KummerQuarticField {
    pub fn local_degree(&self) -> u32 {
        self.local_factors_at_2.iter().map(|l| l.e * l.f).sum()
    }

    /// `K'` contains `Q(√D0)`.
    pub fn contains_quadratic(&self, d0: i64) -> bool {
        let x = QuadElt::from_ints(self.d, d0, 0);
        x.is_square() || same_square_class(&x, &self.kummer)
    }

    pub fn label(&self) -> String {
        format!("Q(sqrt({}))(sqrt({}))", self.d, self.kummer)
    }
}

/// Decomposition at 2 of `F(√δ)` and the roots of unity of each factor.
pub fn local_decomposition(
    f: &QuadraticFieldData,
    delta: &QuadElt,
    ctx: PrecisionContext,
) -> Result<(LocalBehaviour, Vec<LocalFactor>)> {
    let (k, root) = completion_at_two(f, ctx)?;
    let (e_f, f_f) = (k.e(), k.f());
    let cls = |x: &QuadElt| -> Result<u32> { square_class_coords(&embed_local(x, &k, &root)?) };
    let c = cls(delta)?;
    let minus_one = cls(&QuadElt::from_ints(f.d, -1, 0))?;
    let two = cls(&QuadElt::from_ints(f.d, 2, 0))?;
    // a ∈ F_2^× is a square in F_2(√δ) iff its class is 0 or that of δ
    let square_in_l = |a: u32| a == 0 || a == c;
    let two_part = if square_in_l(minus_one) && square_in_l(two) {
        8
    } else if square_in_l(minus_one) {
        4
    } else {
        2
    };
    let factor = |e: u32, ff: u32| LocalFactor {
        e,
        f: ff,
        two_power_torsion: two_part,
        odd_torsion: (1 << ff) - 1,
    };
    if c == 0 {
        return Ok((LocalBehaviour::Split, vec![factor(e_f, f_f), factor(e_f, f_f)]));
    }
    if k.character_table()?.conductor(c) == 0 {
        Ok((LocalBehaviour::Unramified, vec![factor(e_f, 2 * f_f)]))
    } else {
        Ok((LocalBehaviour::Ramified, vec![factor(2 * e_f, f_f)]))
    }
}

/// `(Z_2-rank, torsion order)` of `(O_{K'} ⊗ Z_2)^×`.
pub fn unit_torsion_at_2(k: &KummerQuarticField) -> (u32, u32) {
    let rank = k.local_degree();
    let torsion = k.local_factors_at_2.iter().map(LocalFactor::torsion_order).product();
    (rank, torsion)
}

/// One entry of the published list of `K'` for a base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedKummer {
    pub d: i64,
    pub delta: String,
    pub class_number_bound: u64,
}

/// Recompute the `K'` from the Selmer group and match them one-to-one
/// against the published list.
pub fn enumerate_kummer_fields(
    f: &QuadraticFieldData,
    listed: &[ListedKummer],
    ctx: PrecisionContext,
) -> Result<Vec<KummerQuarticField>> {
    let listed: Vec<&ListedKummer> = listed.iter().filter(|l| l.d == f.d).collect();
    let listed_elts = listed
        .iter()
        .map(|l| parse_quad(f.d, &l.delta))
        .collect::<Result<Vec<_>>>()?;
    let classes = selmer_classes(f)?;
    let mut used = vec![false; listed.len()];
    let mut out = Vec::new();
    for c in classes {
        let matches: Vec<usize> = (0..listed.len())
            .filter(|&i| same_square_class(&c.representative, &listed_elts[i]))
            .collect();
        let [i] = matches[..] else {
            return Err(Error::ListMismatch {
                d: f.d,
                detail: format!("class {} matches {} listed fields", c.representative, matches.len()),
            });
        };
        if used[i] {
            return Err(Error::ListMismatch {
                d: f.d,
                detail: format!("listed field {} matched twice", listed[i].delta),
            });
        }
        used[i] = true;
        let (behaviour, factors) = local_decomposition(f, &c.representative, ctx)?;
        let bound = listed[i].class_number_bound;
        out.push(KummerQuarticField {
            d: f.d,
            kummer: c.representative,
            listed_as: listed[i].delta.clone(),
            behaviour_at_2: behaviour,
            local_factors_at_2: factors,
            class_number_bound: bound,
            h_odd_part_trivial: bound <= 2,
        });
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(Error::ListMismatch {
            d: f.d,
            detail: format!("listed field {} was not recomputed", listed[i].delta),
        });
    }
    Ok(out)
}

/// A global unit living in a quadratic field `Q(√D0)` in which 2 is inert.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub name: String,
    pub home_d: i64,
    #[serde(serialize_with = "super::field::serialize_elt")]
    pub value: QuadElt,
}

impl Witness {
    /// `ζ₃ = (-1 + √-3)/2`.
    pub fn zeta3() -> Witness {
        Witness {
            name: "zeta3".into(),
            home_d: -3,
            value: parse_quad(-3, "(-1+s)/2").expect("literal"),
        }
    }

    /// `ε² = (3 + √5)/2`.
    pub fn eps_squared() -> Witness {
        Witness {
            name: "eps^2".into(),
            home_d: 5,
            value: parse_quad(5, "(3+s)/2").expect("literal"),
        }
    }

    /// Residue of the witness in `F_4`, the residue field of `Q(√D0)` at 2.
    pub fn residue(&self, ctx: PrecisionContext) -> Result<Residue> {
        let home = super::field::quad_field(self.home_d)?;
        let (k, root) = completion_at_two(&home, ctx)?;
        embed_local(&self.value, &k, &root)?.residue_image()
    }
}

/// The witnesses suggested for `K'`: `ζ₃` if `K' ⊇ Q(√-3)`, `ε²` if `K' ⊇ Q(√5)`.
pub fn default_witnesses(k: &KummerQuarticField) -> Vec<Witness> {
    let mut w = Vec::new();
    if k.contains_quadratic(-3) {
        w.push(Witness::zeta3());
    }
    if k.contains_quadratic(5) {
        w.push(Witness::eps_squared());
    }
    w
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionRecord {
    pub field: String,
    pub witnesses: Vec<String>,
    /// Places over 2 whose residue field contains `F_4`.
    pub places_with_three_torsion: u32,
    /// `F_3`-rank of the witness images in the 3-torsion of the residue fields.
    pub witness_rank: u32,
    pub odd_torsion_beyond_three: bool,
    pub h_odd_part_trivial: bool,
    pub obstructed: bool,
}

/// Discrete logarithm of a nonzero element of `F_4` in `Z/3` (base `ω`).
fn log_f4(r: Residue) -> u32 {
    match r.0 {
        1 => 0,
        2 => 1,
        _ => 2,
    }
}

/// Decide that no abelian extension of `K'` of odd degree is unramified
/// outside `{2, ∞}`: the odd part of the class number is trivial and the
/// 3-torsion of the residue fields over 2 is generated by witness images.
pub fn odd_abelian_obstruction(k: &KummerQuarticField, witnesses: &[Witness], ctx: PrecisionContext) -> Result<ObstructionRecord> {
    let places = k.local_factors_at_2.iter().filter(|l| l.f % 2 == 0).count() as u32;
    let beyond = k.local_factors_at_2.iter().any(|l| l.odd_torsion > 3);
    let mut rank = 0;
    for w in witnesses {
        if !(w.value.is_integral() && w.value.norm().abs().is_one()) {
            return Err(Error::WitnessNotUnit);
        }
        if !k.contains_quadratic(w.home_d) {
            return Err(Error::WitnessNotUnit);
        }
        if w.home_d > 0 && !w.value.is_totally_positive() {
            return Err(Error::WitnessNotTotallyPositive);
        }
        // all witnesses come from residue fields F_4 embedded diagonally, so
        // their images span at most one dimension
        if places > 0 && log_f4(w.residue(ctx)?) != 0 {
            rank = 1;
        }
    }
    let obstructed = k.h_odd_part_trivial && !beyond && rank == places;
    Ok(ObstructionRecord {
        field: k.label(),
        witnesses: witnesses.iter().map(|w| w.name.clone()).collect(),
        places_with_three_torsion: places,
        witness_rank: rank,
        odd_torsion_beyond_three: beyond,
        h_odd_part_trivial: k.h_odd_part_trivial,
        obstructed,
    })
}

#[cfg(test)]
mod tests {
    use super::super::field::quad_field;
    use super::*;

    #[test]
    fn interval_signs() {
        let d = 2;
        let delta = parse_quad(d, "1+s").unwrap();
        // √(1+√2) > 0 under the embedding where 1+√2 > 0, so K' has 2 real places
        let u = KElt {
            x: parse_quad(d, "3").unwrap(),
            y: parse_quad(d, "1").unwrap(),
            delta: delta.clone(),
        };
        assert!(is_totally_positive(&u));
        let v = KElt {
            x: parse_quad(d, "1").unwrap(),
            y: parse_quad(d, "1").unwrap(),
            delta,
        };
        assert!(!is_totally_positive(&v));
        assert!(!is_totally_positive(&KElt::from_base(parse_quad(-1, "1").unwrap(), &parse_quad(-1, "2").unwrap())));
    }

    #[test]
    fn witness_residues() {
        let ctx = PrecisionContext::default();
        assert!(Witness::zeta3().residue(ctx).unwrap().0 >= 2);
        assert!(Witness::eps_squared().residue(ctx).unwrap().0 >= 2);
    }

    #[test]
    fn cyclotomic_eight() {
        let f = quad_field(-1).unwrap();
        let (b, factors) = local_decomposition(&f, &parse_quad(-1, "2").unwrap(), PrecisionContext::default()).unwrap();
        assert_eq!(b, LocalBehaviour::Ramified);
        assert_eq!((factors[0].e, factors[0].f), (4, 1));
        assert_eq!(factors[0].two_power_torsion, 8);
    }
}
