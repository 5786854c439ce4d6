//! The principal-unit filtration `U^(i) = 1 + Π^i O` and its images in
//! `K^× / (K^×)^2`.
//!
//! Since `U^(1) ∩ (K^×)^2 = (U^(1))^2`, the quotient
//! `U^(i)·(U^(1))^2 / U^(j)·(U^(1))^2` is computed inside the square-class
//! space: it is the image of `U^(i)` modulo the image of `U^(j)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::Subspace;
use crate::padic::squares::one_plus;
use crate::padic::{square_class_coords, LocalFieldTower, PadicElement, Residue};

/// An `F_2`-vector space realized as a subquotient of `K^× / (K^×)^2`.
#[derive(Clone, Debug)]
pub struct GF2Space {
    field: Arc<LocalFieldTower>,
    basis: Vec<PadicElement>,
    basis_coords: Vec<u32>,
    numerator: Subspace,
    modulus: Subspace,
}

impl GF2Space {
    fn new(field: &Arc<LocalFieldTower>, gens: Vec<(PadicElement, u32)>, modulus: Subspace) -> GF2Space {
        let mut numerator = modulus.clone();
        let mut basis = Vec::new();
        let mut basis_coords = Vec::new();
        for (g, c) in gens {
            if numerator.insert(c) {
                basis.push(g);
                basis_coords.push(c);
            }
        }
        GF2Space {
            field: field.clone(),
            basis,
            basis_coords,
            numerator,
            modulus,
        }
    }

    pub fn field(&self) -> &Arc<LocalFieldTower> {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PadicElement] {
        &self.basis
    }

    /// Square-class coordinates of the basis representatives.
    pub fn basis_coords(&self) -> &[u32] {
        &self.basis_coords
    }

    /// Coordinates of `u` in the basis, or `None` when `u` lies outside the
    /// numerator subgroup.
    pub fn coordinates(&self, u: &PadicElement) -> Result<Option<u32>> {
        let c = square_class_coords(u)?;
        if !self.numerator.contains(c) {
            return Ok(None);
        }
        let n = self.basis.len() as u32;
        for x in 0u32..(1 << n) {
            let mut acc = c;
            for (k, &b) in self.basis_coords.iter().enumerate() {
                if x >> k & 1 == 1 {
                    acc ^= b;
                }
            }
            if self.modulus.contains(acc) {
                return Ok(Some(x));
            }
        }
        unreachable!("numerator is spanned by the modulus and the basis")
    }

    /// No nonempty product of basis elements lies in the modulus.
    pub fn basis_is_independent(&self) -> Result<bool> {
        let n = self.basis.len() as u32;
        for x in 1u32..(1 << n) {
            let mut prod = self.field.one();
            for (k, b) in self.basis.iter().enumerate() {
                if x >> k & 1 == 1 {
                    prod = &prod * b;
                }
            }
            if self.modulus.contains(square_class_coords(&prod)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `K^× / (K^×)^2`, of dimension `[K : Q_2] + 2`.
pub fn square_class_space(k: &Arc<LocalFieldTower>) -> GF2Space {
    let data = k.square_classes();
    let gens = data.basis().iter().cloned().enumerate().map(|(i, b)| (b, 1u32 << i)).collect();
    GF2Space::new(k, gens, Subspace::zero())
}

/// `O^× / (O^×)^2`, of dimension `[K : Q_2] + 1`.
pub fn unit_square_class_space(k: &Arc<LocalFieldTower>) -> GF2Space {
    let data = k.square_classes();
    let gens = data.basis().iter().cloned().enumerate().skip(1).map(|(i, b)| (b, 1u32 << i)).collect();
    GF2Space::new(k, gens, Subspace::zero())
}

/// `1 + [b] Π^t` for `b` running over an `F_2`-basis of the residue field.
pub fn level_generators(k: &Arc<LocalFieldTower>, t: u32) -> Vec<PadicElement> {
    Residue::basis(k.f()).into_iter().map(|b| one_plus(k, b, t)).collect()
}

/// Image of `U^(i)` in the square-class space, from the level generators
/// `1 + [b] Π^t`, `i ≤ t ≤ 2e + 1`.
pub fn principal_unit_image(k: &Arc<LocalFieldTower>, i: u32) -> Result<Subspace> {
    let mut s = Subspace::zero();
    for t in i.max(1)..=2 * k.e() + 1 {
        for g in level_generators(k, t) {
            s.insert(square_class_coords(&g)?);
        }
    }
    Ok(s)
}

/// Image of `U^(i)` computed by running over every representative
/// `1 + Σ_{i ≤ t < n} [r_t] Π^t` modulo `Π^n`.
pub fn principal_unit_image_exhaustive(k: &Arc<LocalFieldTower>, i: u32, n: u32) -> Result<Subspace> {
    let f = k.f();
    let levels: Vec<u32> = (i.max(1)..n).collect();
    let bits = f * levels.len() as u32;
    let lifts: Vec<Vec<PadicElement>> = levels
        .iter()
        .map(|&t| Residue::all(f).into_iter().map(|r| k.lift_residue(r).shift(t as i64)).collect())
        .collect();
    let mut s = Subspace::zero();
    let mask = (1u32 << f) - 1;
    for digits in 0u64..(1u64 << bits) {
        let mut x = k.one();
        for (l, lift) in lifts.iter().enumerate() {
            let r = ((digits >> (f as usize * l)) as u32 & mask) as usize;
            if r != 0 {
                x = &x + &lift[r];
            }
        }
        s.insert(square_class_coords(&x)?);
    }
    Ok(s)
}

/// `(1 + Π^i O)(1 + Π O)^2 / (1 + Π^j O)(1 + Π O)^2` for `1 ≤ i ≤ j ≤ 2e + 2`.
pub fn principal_unit_quotient(k: &Arc<LocalFieldTower>, i: u32, j: u32) -> Result<GF2Space> {
    if i < 1 || i > j || j > 2 * k.e() + 2 {
        return Err(Error::BadRange { i, j });
    }
    let modulus = principal_unit_image(k, j)?;
    let mut gens = Vec::new();
    for t in i..j {
        for g in level_generators(k, t) {
            let c = square_class_coords(&g)?;
            gens.push((g, c));
        }
    }
    Ok(GF2Space::new(k, gens, modulus))
}

/// The image of `y ↦ c y + y^2` on `F_{2^f}`.
pub fn artin_schreier_image(c: Residue, f: u32) -> Vec<Residue> {
    let mut img: Vec<Residue> = Residue::all(f).into_iter().map(|y| c.mul(y).add(y.square())).collect();
    img.sort();
    img.dedup();
    img
}

/// `dim_{F_2}` of the cokernel of `y ↦ c̄ y + y^2` on the residue field.
pub fn artin_schreier_cokernel(c: &PadicElement, k: &Arc<LocalFieldTower>) -> Result<u32> {
    if c.valuation_pi()? != 0 {
        return Err(Error::NotAUnit);
    }
    let img = artin_schreier_image(c.residue_image()?, k.f());
    Ok(k.f() - img.len().trailing_zeros())
}

/// Solve `1 + a Π^4 = (1 + x Π^2)^2` over a base with `e = 2`.
///
/// Writing `2 = c Π^2`, the equation is `x^2 + c x = a`; it has a solution
/// exactly when `c̄ x̄ + x̄^2 = ā` does, and Hensel lifting applies because
/// the derivative `2x + c` is a unit. A unit root is returned when possible.
pub fn solve_sqrt_equation(a: &PadicElement, k: &Arc<LocalFieldTower>) -> Result<Option<PadicElement>> {
    if k.e() != 2 {
        return Err(Error::RamificationMismatch {
            expected: 2,
            actual: k.e(),
        });
    }
    if a.valuation_pi()? != 0 {
        return Err(Error::NotAUnit);
    }
    let pi = k.uniformizer();
    let c = k.from_int(2).div(&(&pi * &pi))?;
    let cb = c.residue_image()?;
    let ab = a.residue_image()?;
    let roots: Vec<Residue> = Residue::all(k.f())
        .into_iter()
        .filter(|&y| cb.mul(y).add(y.square()) == ab)
        .collect();
    let Some(&y0) = roots.iter().find(|r| !r.is_zero()).or(roots.first()) else {
        return Ok(None);
    };
    let mut x = k.lift_residue(y0);
    let two = k.from_int(2);
    for _ in 0..8 {
        let g = &(&(&x * &x) + &(&c * &x)) - a;
        if g.is_zero() {
            break;
        }
        let dg = &(&two * &x) + &c;
        x = &x - &g.div(&dg)?;
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{make_tower, PrecisionContext, Step};

    fn sqrt2() -> Arc<LocalFieldTower> {
        make_tower(&[Step::eisenstein(&[-2, 0])], PrecisionContext::default()).unwrap()
    }

    #[test]
    fn quotient_dimensions_over_sqrt2() {
        let k = sqrt2();
        assert_eq!(principal_unit_quotient(&k, 2, 3).unwrap().dimension(), 0);
        assert_eq!(principal_unit_quotient(&k, 5, 6).unwrap().dimension(), 0);
        assert_eq!(principal_unit_quotient(&k, 4, 5).unwrap().dimension(), 1);
        assert_eq!(principal_unit_quotient(&k, 1, 6).unwrap().dimension(), 3);
    }

    #[test]
    fn bad_ranges() {
        let k = sqrt2();
        assert_eq!(principal_unit_quotient(&k, 3, 2).unwrap_err(), Error::BadRange { i: 3, j: 2 });
        assert_eq!(principal_unit_quotient(&k, 0, 2).unwrap_err(), Error::BadRange { i: 0, j: 2 });
        assert_eq!(principal_unit_quotient(&k, 1, 7).unwrap_err(), Error::BadRange { i: 1, j: 7 });
    }

    #[test]
    fn generator_and_exhaustive_images_agree() {
        for steps in [vec![], vec![Step::eisenstein(&[-2, 0])], vec![Step::unramified()]] {
            let k = make_tower(&steps, PrecisionContext::default()).unwrap();
            for i in 1..=2 * k.e() + 2 {
                assert_eq!(
                    principal_unit_image(&k, i).unwrap(),
                    principal_unit_image_exhaustive(&k, i, 2 * k.e() + 2).unwrap()
                );
            }
        }
    }

    #[test]
    fn sqrt_equation_half_the_residues() {
        let k = make_tower(&[Step::unramified(), Step::eisenstein(&[2, 2])], PrecisionContext::default());
        // x^2 + 2x + 2 over the unramified quadratic: e = 2, f = 2
        let k = k.unwrap();
        let mut solvable = 0;
        for r in Residue::all(2).into_iter().filter(|r| !r.is_zero()) {
            let a = k.lift_residue(r);
            if let Some(x) = solve_sqrt_equation(&a, &k).unwrap() {
                solvable += 1;
                let pi2 = &k.uniformizer() * &k.uniformizer();
                let lhs = &k.one() + &(&a * &(&pi2 * &pi2));
                let y = &k.one() + &(&x * &pi2);
                assert!(lhs.approx_eq(&(&y * &y)));
            }
        }
        // 4 residues; including 0, half of them lie in the image
        assert_eq!(solvable + 1, 2);
    }

    #[test]
    fn cokernel_is_one_dimensional() {
        let q2 = make_tower(&[], PrecisionContext::default()).unwrap();
        assert_eq!(artin_schreier_cokernel(&q2.from_int(3), &q2).unwrap(), 1);
        let f4 = make_tower(&[Step::unramified()], PrecisionContext::default()).unwrap();
        assert_eq!(artin_schreier_cokernel(&f4.one(), &f4).unwrap(), 1);
        assert_eq!(artin_schreier_cokernel(&f4.from_int(2), &f4).unwrap_err(), Error::NotAUnit);
    }
}
