//! Quadratic characters `χ_d(u) = (d, u)` of `K^×`, their conductors, and
//! conductor filtrations of character subgroups.
//!
//! The Hilbert symbol `(a, ·)` is found as the linear functional whose
//! kernel is the norm group `N_a` of `K(√a)`. `N_a` is spanned (modulo
//! squares) by the classes of `z² - a` for integral `z`, of `1 - a w²` for
//! `w ∈ ΠO`, and of `-a`; these are generated until the span has index 2.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filtration::level_generators;
use crate::gf2::{annihilator, dot, Subspace};
use crate::padic::{class_representative, square_class_coords, LocalFieldTower, PadicElement, Residue};

/// Norm functional `λ_a`: `(a, b) = (-1)^{λ_a · coords(b)}`.
pub fn norm_functional(a: &PadicElement) -> Result<u32> {
    let k = a.field().clone();
    let n = k.square_classes().dim() as u32;
    if square_class_coords(a)? == 0 {
        return Ok(0);
    }
    let mut span = Subspace::zero();
    span.insert(square_class_coords(&-a)?);
    let target = (n - 1) as usize;
    let f = k.f();
    let max_len = 2 * k.e() + 4;
    let mut len = 1u32;
    while span.dim() < target {
        if len > max_len {
            return Err(Error::PrecisionExhausted {
                needed: len,
                available: max_len,
            });
        }
        // all digit strings whose top digit sits at level len - 1
        let lifts: Vec<Vec<PadicElement>> = (0..len)
            .map(|t| Residue::all(f).into_iter().map(|r| k.lift_residue(r).shift(t as i64)).collect())
            .collect();
        let mask = (1u64 << f) - 1;
        let count = 1u64 << (f * len);
        for digits in (count >> f)..count {
            let mut z = PadicElement::zero(&k);
            for (t, lift) in lifts.iter().enumerate() {
                let r = ((digits >> (f as usize * t)) & mask) as usize;
                if r != 0 {
                    z = &z + &lift[r];
                }
            }
            let zz = &z * &z;
            let x = &zz - a;
            if !x.is_zero() {
                span.insert(square_class_coords(&x)?);
            }
            let w = z.shift(1);
            let y = &k.one() - &(a * &(&w * &w));
            span.insert(square_class_coords(&y)?);
            if span.dim() >= target {
                break;
            }
        }
        len += 1;
    }
    if span.dim() != target {
        return Err(Error::ReductionFailure(format!(
            "norm group of dimension {} in a space of dimension {n}",
            span.dim()
        )));
    }
    let ann = annihilator(&span, n);
    Ok(ann.basis()[0])
}

/// Hilbert symbol computed from scratch: `+1` iff `b` is a norm from `K(√a)`.
pub fn hilbert_symbol_direct(a: &PadicElement, b: &PadicElement) -> Result<i8> {
    let l = norm_functional(a)?;
    Ok(if dot(l, square_class_coords(b)?) == 0 { 1 } else { -1 })
}

/// The Gram matrix of the Hilbert pairing on the square-class basis.
#[derive(Clone, Debug)]
pub struct HilbertPairing {
    /// Row `i` is `λ` of basis element `i`.
    pub rows: Vec<u32>,
}

impl HilbertPairing {
    fn build(k: &Arc<LocalFieldTower>) -> Result<HilbertPairing> {
        let rows = k
            .square_classes()
            .basis()
            .iter()
            .map(norm_functional)
            .collect::<Result<Vec<_>>>()?;
        Ok(HilbertPairing { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `λ` of the class with coordinates `ca`, by linearity.
    pub fn functional(&self, ca: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| ca >> i & 1 == 1)
            .fold(0, |acc, (_, r)| acc ^ r)
    }

    /// Pairing of two classes, as `0` (symbol `+1`) or `1` (symbol `-1`).
    pub fn pair(&self, ca: u32, cb: u32) -> u32 {
        dot(self.functional(ca), cb)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rows.len();
        (0..n).all(|i| (0..n).all(|j| (self.rows[i] >> j & 1) == (self.rows[j] >> i & 1)))
    }

    pub fn rank(&self) -> usize {
        Subspace::span(self.rows.iter().copied()).dim()
    }
}

impl LocalFieldTower {
    pub fn hilbert_pairing(self: &Arc<Self>) -> Result<&HilbertPairing> {
        self.pairing
            .get_or_init(|| HilbertPairing::build(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn character_table(self: &Arc<Self>) -> Result<&CharacterTable> {
        self.char_table
            .get_or_init(|| CharacterTable::build(self))
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// `(a, b)` via the cached pairing.
pub fn hilbert_symbol(a: &PadicElement, b: &PadicElement, k: &Arc<LocalFieldTower>) -> Result<i8> {
    let p = k.hilbert_pairing()?;
    let ca = square_class_coords(a)?;
    let cb = square_class_coords(b)?;
    Ok(if p.pair(ca, cb) == 0 { 1 } else { -1 })
}

/// Conductor exponents of every character, indexed by Kummer-class bitmask.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    conductors: Vec<u8>,
    /// Square-class coordinates of `1 + [b] Π^t`, indexed by `t - 1`.
    level_coords: Vec<Vec<u32>>,
    dim: u32,
}

impl CharacterTable {
    fn build(k: &Arc<LocalFieldTower>) -> Result<CharacterTable> {
        let p = k.hilbert_pairing()?;
        let dim = p.dim() as u32;
        let level_coords = (1..=2 * k.e())
            .map(|t| level_generators(k, t).iter().map(square_class_coords).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut conductors = Vec::with_capacity(1 << dim);
        for class in 0u32..(1 << dim) {
            let l = p.functional(class);
            let top = level_coords
                .iter()
                .enumerate()
                .rev()
                .find(|(_, gens)| gens.iter().any(|&g| dot(l, g) == 1))
                .map(|(t, _)| t as u8 + 2)
                .unwrap_or(0);
            conductors.push(top);
        }
        Ok(CharacterTable {
            conductors,
            level_coords,
            dim,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn conductor(&self, class: u32) -> u32 {
        self.conductors[class as usize] as u32
    }

    pub fn conductors(&self) -> &[u8] {
        &self.conductors
    }

    pub fn level_coords(&self) -> &[Vec<u32>] {
        &self.level_coords
    }
}

/// A character of order dividing 2, labelled by its Kummer class.
#[derive(Clone, Debug)]
pub struct QuadraticCharacter {
    field: Arc<LocalFieldTower>,
    class: u32,
}

impl PartialEq for QuadraticCharacter {
    fn eq(&self, o: &Self) -> bool {
        crate::padic::element::same_field(&self.field, &o.field) && self.class == o.class
    }
}

impl QuadraticCharacter {
    pub fn from_class(field: &Arc<LocalFieldTower>, class: u32) -> QuadraticCharacter {
        QuadraticCharacter {
            field: field.clone(),
            class,
        }
    }

    /// `χ_d`.
    pub fn new(d: &PadicElement) -> Result<QuadraticCharacter> {
        Ok(QuadraticCharacter::from_class(d.field(), square_class_coords(d)?))
    }

    pub fn field(&self) -> &Arc<LocalFieldTower> {
        &self.field
    }

    /// Coordinates of the Kummer class.
    pub fn class(&self) -> u32 {
        self.class
    }

    /// Canonical representative: the product of the square-class basis
    /// elements selected by the coordinates.
    pub fn kummer_class(&self) -> PadicElement {
        class_representative(&self.field, self.class)
    }

    pub fn is_trivial(&self) -> bool {
        self.class == 0
    }

    pub fn eval(&self, u: &PadicElement) -> Result<i8> {
        let p = self.field.hilbert_pairing()?;
        Ok(if p.pair(self.class, square_class_coords(u)?) == 0 { 1 } else { -1 })
    }

    pub fn mul(&self, o: &QuadraticCharacter) -> QuadraticCharacter {
        QuadraticCharacter::from_class(&self.field, self.class ^ o.class)
    }

    pub fn conductor(&self) -> Result<u32> {
        conductor_exponent(self)
    }
}

/// Least `i ≥ 0` with `χ` trivial on `U^(i)` (`U^(0) = O^×`).
pub fn conductor_exponent(chi: &QuadraticCharacter) -> Result<u32> {
    Ok(chi.field.character_table()?.conductor(chi.class))
}

/// All `2^{[K:Q_2]+2}` quadratic characters, the trivial one first.
pub fn character_space(k: &Arc<LocalFieldTower>) -> Vec<QuadraticCharacter> {
    let dim = k.square_classes().dim() as u32;
    (0..(1u32 << dim)).map(|c| QuadraticCharacter::from_class(k, c)).collect()
}

/// A subgroup of the character group, as a subspace of Kummer classes.
#[derive(Clone, Debug)]
pub struct CharacterSubgroup {
    field: Arc<LocalFieldTower>,
    space: Subspace,
}

impl CharacterSubgroup {
    pub fn new(field: &Arc<LocalFieldTower>, space: Subspace) -> CharacterSubgroup {
        CharacterSubgroup {
            field: field.clone(),
            space,
        }
    }

    pub fn generated_by(chars: &[QuadraticCharacter]) -> Result<CharacterSubgroup> {
        let field = chars.first().map(|c| c.field.clone()).ok_or(Error::InvalidSignature("empty generator list".into()))?;
        Ok(CharacterSubgroup::new(&field, Subspace::span(chars.iter().map(|c| c.class))))
    }

    pub fn field(&self) -> &Arc<LocalFieldTower> {
        &self.field
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn order(&self) -> u64 {
        self.space.order()
    }

    pub fn generators(&self) -> Vec<QuadraticCharacter> {
        self.space.basis().iter().map(|&c| QuadraticCharacter::from_class(&self.field, c)).collect()
    }

    pub fn elements(&self) -> Vec<QuadraticCharacter> {
        self.space.elements().into_iter().map(|c| QuadraticCharacter::from_class(&self.field, c)).collect()
    }

    /// No nontrivial member is unramified.
    pub fn is_totally_ramified(&self) -> Result<bool> {
        let t = self.field.character_table()?;
        Ok(self.space.elements().into_iter().skip(1).all(|c| t.conductor(c) > 0))
    }
}

/// `|X_i|` for the filtration by conductor, plus the exponents `m`, `m₂`, `m₄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationProfile {
    /// `sizes[i] = |X_i|` for `i = 0 ..= top`.
    pub sizes: Vec<u64>,
    pub m: u32,
    pub m2: u32,
    pub m4: u32,
}

impl FiltrationProfile {
    /// Profile of a list of conductors (one per group element); `top` is the
    /// largest index recorded.
    pub fn from_conductors(conductors: &[u32], top: u32) -> FiltrationProfile {
        let mut sizes = vec![0u64; top as usize + 1];
        for &c in conductors {
            for s in sizes.iter_mut().skip(c as usize) {
                *s += 1;
            }
        }
        let lg = |i: usize| sizes[i.min(top as usize)].trailing_zeros();
        let total = conductors.len() as u64;
        FiltrationProfile {
            m: total.trailing_zeros(),
            m2: lg(2),
            m4: lg(4),
            sizes,
        }
    }

    pub fn size(&self, i: u32) -> u64 {
        self.sizes[(i as usize).min(self.sizes.len() - 1)]
    }

    /// `(X_i : X_{i-1})`.
    pub fn index(&self, i: u32) -> u64 {
        self.size(i) / self.size(i - 1)
    }
}

/// The conductor filtration of a subgroup, with `X_i` recorded up to `2e + 1`.
pub fn filtration_profile(x: &CharacterSubgroup) -> Result<FiltrationProfile> {
    let t = x.field.character_table()?;
    let cs: Vec<u32> = x.space.elements().into_iter().map(|c| t.conductor(c)).collect();
    Ok(FiltrationProfile::from_conductors(&cs, 2 * x.field.e() + 1))
}
