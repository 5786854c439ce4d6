//! Square classes `K^× / (K^×)^2`.
//!
//! A nonzero `x = Π^v u` is reduced to canonical coordinates by peeling
//! off the residue of `u` (a Teichmüller lift, always a square) and then
//! walking up the principal-unit filtration. At each level `t = v(u - 1)`:
//!
//! * odd `t < 2e`: the residue is recorded against `1 + [b] Π^t`;
//! * even `t < 2e`: it is removed by a square `(1 + [√r] Π^{t/2})^2`;
//! * `t = 2e`: it is removed by `(1 + [y] Π^e)^2` when `c̄y + y² = r` is
//!   solvable (`c̄` the residue of `2/Π^e`), otherwise the defect unit
//!   `1 + [a₀] Π^{2e}` is recorded;
//! * `t > 2e`: `u` is a square.
//!
//! The decision is stable once the unit is known to `2e + 1` digits.

use std::sync::Arc;

use super::element::PadicElement;
use super::ring::Residue;
use super::tower::LocalFieldTower;
use crate::error::{Error, Result};

/// What a basis vector of the square-class space looks like.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareClassGen {
    Uniformizer,
    /// `1 + [b] Π^t` for odd `t < 2e`.
    Principal { level: u32, residue: Residue },
    /// `1 + [a₀] Π^{2e}` with `a₀` outside the image of `y ↦ c̄y + y²`.
    Defect,
}

#[derive(Debug)]
pub struct SquareClassData {
    pub(crate) gens: Vec<SquareClassGen>,
    pub(crate) basis: Vec<PadicElement>,
    pub(crate) c_bar: Residue,
    pub(crate) defect: Residue,
}

impl SquareClassData {
    fn build(k: &Arc<LocalFieldTower>) -> SquareClassData {
        let e = k.e();
        let f = k.f();
        let c_bar = two_over_pi_e(k);
        let image: Vec<Residue> = Residue::all(f).into_iter().map(|y| c_bar.mul(y).add(y.square())).collect();
        let defect = Residue::all(f)
            .into_iter()
            .find(|r| !image.contains(r))
            .expect("the Artin-Schreier map on a finite field is never onto");
        let mut gens = vec![SquareClassGen::Uniformizer];
        let mut basis = vec![k.uniformizer()];
        for t in (1..2 * e).step_by(2) {
            for b in Residue::basis(f) {
                gens.push(SquareClassGen::Principal { level: t, residue: b });
                basis.push(one_plus(k, b, t));
            }
        }
        gens.push(SquareClassGen::Defect);
        basis.push(one_plus(k, defect, 2 * e));
        SquareClassData {
            gens,
            basis,
            c_bar,
            defect,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn gens(&self) -> &[SquareClassGen] {
        &self.gens
    }

    /// Representatives: the uniformizer first, then units.
    pub fn basis(&self) -> &[PadicElement] {
        &self.basis
    }

    /// Residue of `2 / Π^e`.
    pub fn c_bar(&self) -> Residue {
        self.c_bar
    }

    /// The residue `a₀` used for the defect generator.
    pub fn defect_residue(&self) -> Residue {
        self.defect
    }

    fn index_of(&self, g: SquareClassGen) -> usize {
        self.gens.iter().position(|&x| x == g).expect("generator present")
    }
}

/// `1 + [r] Π^t`.
pub(crate) fn one_plus(k: &Arc<LocalFieldTower>, r: Residue, t: u32) -> PadicElement {
    let lift = k.lift_residue(r);
    &k.one() + &lift.shift(t as i64)
}

fn two_over_pi_e(k: &Arc<LocalFieldTower>) -> Residue {
    k.from_int(2)
        .unit_part()
        .and_then(|u| u.residue_image())
        .expect("2 is a nonzero integer")
}

impl LocalFieldTower {
    pub fn square_classes(self: &Arc<Self>) -> &SquareClassData {
        self.squares.get_or_init(|| SquareClassData::build(self))
    }
}

/// Threshold (in digits of relative precision) above which square-class
/// decisions are stable.
pub fn square_threshold(k: &LocalFieldTower) -> u32 {
    2 * k.e() + 1
}

struct Reduction {
    bits: u32,
    root: Option<PadicElement>,
}

/// Walk `x` down to its square-class coordinates; when `want_root` is set and
/// `x` is a square, also return a square root.
fn reduce(x: &PadicElement, want_root: bool) -> Result<Reduction> {
    let k = x.field().clone();
    let data = k.square_classes();
    let e = k.e();
    let f = k.f();
    let v = x.valuation_pi()?;
    let mut u = x.unit_part()?;
    let rel = u.rel_precision();
    let need = square_threshold(&k);
    if rel < need {
        return Err(Error::PrecisionExhausted {
            needed: need,
            available: rel,
        });
    }
    let mut bits = (v.rem_euclid(2)) as u32;
    let one = k.one();
    // Teichmüller part: [r] = [r^2]^2
    let r0 = u.residue_image()?;
    let tl = k.lift_residue(r0);
    u = u.div(&tl)?;
    let mut root = want_root.then(|| k.lift_residue(r0.square()).shift(v.div_euclid(2)));

    loop {
        let d = &u - &one;
        if d.is_zero() {
            break;
        }
        let t = d.valuation_pi()? as u32;
        let r = d.unit_part()?.residue_image()?;
        if t < 2 * e && t % 2 == 1 {
            for (j, b) in Residue::basis(f).into_iter().enumerate() {
                if (r.0 >> j) & 1 == 1 {
                    let idx = data.index_of(SquareClassGen::Principal { level: t, residue: b });
                    bits |= 1 << idx;
                    u = u.div(&data.basis[idx])?;
                }
            }
        } else if t < 2 * e {
            let g = one_plus(&k, r.sqrt(f), t / 2);
            u = u.div(&(&g * &g))?;
            root = root.map(|s| &s * &g);
        } else if t == 2 * e {
            let c = data.c_bar;
            match Residue::all(f).into_iter().find(|&y| c.mul(y).add(y.square()) == r) {
                Some(y) => {
                    let g = one_plus(&k, y, e);
                    u = u.div(&(&g * &g))?;
                    root = root.map(|s| &s * &g);
                }
                None => {
                    let idx = data.index_of(SquareClassGen::Defect);
                    bits |= 1 << idx;
                    u = u.div(&data.basis[idx])?;
                }
            }
        } else {
            if root.is_none() || bits != 0 {
                break;
            }
            // (1 + yΠ^{t-e})^2 = 1 + c y Π^t + O(Π^{t+1})
            let y = r.mul(data.c_bar.inverse().expect("2/Π^e is a unit"));
            let g = one_plus(&k, y, t - e);
            u = u.div(&(&g * &g))?;
            root = root.map(|s| &s * &g);
        }
    }
    let root = if bits == 0 {
        root.map(|s| s.with_rel_precision(rel.saturating_sub(e)))
    } else {
        None
    };
    Ok(Reduction { bits, root })
}

/// Coordinates of the square class of `x` in the basis of
/// [`SquareClassData::basis`], as a bitmask (bit `i` = basis vector `i`).
pub fn square_class_coords(x: &PadicElement) -> Result<u32> {
    Ok(reduce(x, false)?.bits)
}

/// Whether `x` is a square. Stable once the unit part of `x` is known to
/// `2e + 1` digits.
pub fn is_square(x: &PadicElement) -> Result<bool> {
    Ok(square_class_coords(x)? == 0)
}

/// A square root of `x`, if one exists. The root carries `rel - e` digits of
/// relative precision when `x` carries `rel`.
pub fn sqrt(x: &PadicElement) -> Result<Option<PadicElement>> {
    Ok(reduce(x, true)?.root)
}

/// The element of the square-class basis span with the given coordinates.
pub fn class_representative(k: &Arc<LocalFieldTower>, bits: u32) -> PadicElement {
    let data = k.square_classes();
    let mut acc = k.one();
    for (i, b) in data.basis.iter().enumerate() {
        if (bits >> i) & 1 == 1 {
            acc = &acc * b;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::tower::{make_tower, PrecisionContext, Step};

    fn q2() -> Arc<LocalFieldTower> {
        make_tower(&[], PrecisionContext::default()).unwrap()
    }

    #[test]
    fn rational_squares() {
        let k = q2();
        assert!(is_square(&k.from_int(1)).unwrap());
        assert!(is_square(&k.from_int(17)).unwrap());
        assert!(is_square(&k.from_int(-7)).unwrap());
        assert!(!is_square(&k.from_int(-1)).unwrap());
        assert!(!is_square(&k.from_int(5)).unwrap());
        assert!(!is_square(&k.from_int(2)).unwrap());
        assert!(is_square(&k.from_int(4 * 17)).unwrap());
    }

    #[test]
    fn q2_square_classes_have_dimension_three() {
        let k = q2();
        assert_eq!(k.square_classes().dim(), 3);
        let reps = [1, -1, 2, -2, 5, -5, 10, -10];
        let mut seen = std::collections::HashSet::new();
        for r in reps {
            seen.insert(square_class_coords(&k.from_int(r)).unwrap());
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn dimension_is_degree_plus_two() {
        for steps in [
            vec![Step::eisenstein(&[-2, 0])],
            vec![Step::unramified()],
            vec![Step::eisenstein(&[-2, 0, 0])],
            vec![Step::unramified(), Step::eisenstein(&[-2, 0, 0])],
        ] {
            let k = make_tower(&steps, PrecisionContext::default()).unwrap();
            assert_eq!(k.square_classes().dim() as u32, k.degree() + 2);
        }
    }

    #[test]
    fn square_roots() {
        let k = make_tower(&[Step::eisenstein(&[-2, 2])], PrecisionContext::default()).unwrap();
        let x = &k.from_int(3) + &k.uniformizer();
        let sq = &x * &x;
        let s = sqrt(&sq).unwrap().unwrap();
        assert!((&s * &s).approx_eq(&sq));
        assert!(sqrt(&k.from_int(-1)).unwrap().is_none() || is_square(&k.from_int(-1)).unwrap());
    }

    #[test]
    fn insufficient_precision_is_reported() {
        let k = q2();
        let x = k.from_int(3).with_rel_precision(2);
        assert!(matches!(is_square(&x), Err(Error::PrecisionExhausted { needed: 3, available: 2 })));
    }
}
