//! Brute-force verification of the local different bounds.
//!
//! Every subgroup `X` of the quadratic character group of a base field `E₁`
//! with no unramified member corresponds to a totally wildly ramified
//! elementary abelian extension `E/E₁`. For each one we measure the
//! conductor filtration, compute `v_2(D_{E/F})` by the conductor-discriminant
//! formula plus the tame part, and compare with the closed forms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::characters::{CharacterSubgroup, FiltrationProfile};
use crate::different::{
    fdpf_different, lemma_value_set, tame_different, top_jump_value, BaseType, DifferentValue, FiltrationSignature,
    Rational,
};
use crate::error::{Error, Result};
use crate::gf2::{for_each_subspace_of, Subspace};
use crate::json;
use crate::padic::{square_class_coords, LocalFieldTower, PrecisionContext, SquareClassGen, Step};

/// Eisenstein polynomial `x² + c₁x + c₀` whose root `π` gives the completion
/// of `Q(√d)` at 2 for ramified `d`, together with `√d` as `a + bπ`.
pub fn ramified_completion_data(d: i64) -> Option<([i64; 2], (i64, i64))> {
    match d {
        2 => Some(([-2, 0], (0, 1))),
        -2 => Some(([2, 0], (0, 1))),
        3 => Some(([-2, 2], (1, 1))),
        -1 => Some(([2, 2], (1, 1))),
        -5 => Some(([6, 2], (1, 1))),
        _ => None,
    }
}

/// Which cubic is used for the tamely ramified step over the unramified base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TameCubic {
    /// `x³ - 2`
    Two,
    /// `x³ - 2ω`
    TwoOmega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum LemmaBase {
    /// The completion at 2 of `Q(√d)`, `d ∈ {2, -2, 3, -1, -5}`.
    Ramified { d: i64 },
    /// The unramified quadratic extension of `Q_2`, with `E₁ = F`.
    Unramified,
    /// The unramified quadratic extension followed by a tame cubic.
    Tame { cubic: TameCubic },
}

impl fmt::Display for LemmaBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaBase::Ramified { d } => write!(f, "Q2(sqrt({d}))"),
            LemmaBase::Unramified => write!(f, "Q4"),
            LemmaBase::Tame { cubic: TameCubic::Two } => write!(f, "Q4(cbrt(2))"),
            LemmaBase::Tame { cubic: TameCubic::TwoOmega } => write!(f, "Q4(cbrt(2w))"),
        }
    }
}

impl LemmaBase {
    /// The five ramified completions met by the seven quadratic fields.
    pub fn ramified_all() -> Vec<LemmaBase> {
        [2, -2, 3, -1, -5].into_iter().map(|d| LemmaBase::Ramified { d }).collect()
    }

    pub fn base_type(&self) -> BaseType {
        match self {
            LemmaBase::Ramified { .. } => BaseType::RamifiedQuadratic,
            _ => BaseType::UnramifiedQuadratic,
        }
    }

    pub fn e1(&self) -> u32 {
        match self {
            LemmaBase::Tame { .. } => 3,
            _ => 1,
        }
    }

    /// Steps of the base field `F` itself.
    pub fn base_steps(&self) -> Result<Vec<Step>> {
        match self {
            LemmaBase::Ramified { d } => {
                let (c, _) = ramified_completion_data(*d).ok_or_else(|| Error::UnsupportedBase(format!("d = {d}")))?;
                Ok(vec![Step::eisenstein(&c)])
            }
            _ => Ok(vec![Step::unramified()]),
        }
    }

    /// Steps of `E₁`.
    pub fn steps(&self) -> Result<Vec<Step>> {
        let mut s = self.base_steps()?;
        if let LemmaBase::Tame { cubic } = self {
            s.push(match cubic {
                TameCubic::Two => Step::eisenstein(&[-2, 0, 0]),
                TameCubic::TwoOmega => Step::eisenstein_w(&[(0, -2), (0, 0), (0, 0)]),
            });
        }
        Ok(s)
    }

    pub fn tower(&self, ctx: PrecisionContext) -> Result<Arc<LocalFieldTower>> {
        LocalFieldTower::new(&self.steps()?, ctx, Some(&self.to_string()))
    }
}

fn check_supported(k: &LocalFieldTower) -> Result<()> {
    match (k.e(), k.f()) {
        (2, 1) | (1, 2) | (3, 2) => Ok(()),
        (e, f) => Err(Error::UnsupportedBase(format!("e = {e}, f = {f}"))),
    }
}

/// The unique nontrivial unramified class.
fn unramified_class(k: &Arc<LocalFieldTower>) -> Result<u32> {
    let t = k.character_table()?;
    (1..(1u32 << t.dim()))
        .find(|&c| t.conductor(c) == 0)
        .ok_or_else(|| Error::ReductionFailure("no unramified character".into()))
}

/// All subgroups of the character group of `E₁` (optionally only those with
/// no nontrivial unramified member).
pub fn enumerate_wild_subgroups(e1: &Arc<LocalFieldTower>, totally_ramified: bool) -> Result<Vec<CharacterSubgroup>> {
    check_supported(e1)?;
    let dim = e1.character_table()?.dim();
    let unr = unramified_class(e1)?;
    let mut out = Vec::new();
    for_each_subspace_of(&Subspace::full(dim), |s| {
        if !totally_ramified || !s.contains(unr) {
            out.push(CharacterSubgroup::new(e1, s.clone()));
        }
    });
    Ok(out)
}

/// Classes of `E₁` coming from `F` (Kummer classes of `F`, viewed in `E₁`).
/// For the tame cubic step these are exactly the characters `χ ∘ N_{E₁/F}`.
pub fn classes_from_base(base: &LemmaBase, e1: &Arc<LocalFieldTower>) -> Result<Subspace> {
    if base.e1() == 1 {
        return Ok(Subspace::full(e1.character_table()?.dim()));
    }
    let f_tower = LocalFieldTower::new(&base.base_steps()?, e1.ctx(), None)?;
    let data = f_tower.square_classes();
    let mut s = Subspace::zero();
    for g in data.gens() {
        let x = match *g {
            SquareClassGen::Uniformizer => e1.from_int(2),
            SquareClassGen::Principal { level, residue } => {
                // level counted in the uniformizer 2 of F
                &e1.one() + &(&e1.lift_residue(residue) * &e1.from_int(1 << level))
            }
            SquareClassGen::Defect => {
                &e1.one() + &(&e1.lift_residue(data.defect_residue()) * &e1.from_int(1 << (2 * f_tower.e())))
            }
        };
        s.insert(square_class_coords(&x)?);
    }
    Ok(s)
}

/// `π ↦ ωπ` on the tame cubic base, as a linear map of Kummer classes.
pub fn tame_rotation(e1: &Arc<LocalFieldTower>) -> Result<Vec<u32>> {
    let omega = e1.omega().ok_or(Error::NoThreeTorsion)?;
    let data = e1.square_classes();
    let mut images = Vec::with_capacity(data.dim());
    for g in data.gens() {
        let x = match *g {
            SquareClassGen::Uniformizer => &omega * &e1.uniformizer(),
            SquareClassGen::Principal { level, residue } => {
                let w = omega.pow(level as i64)?;
                &e1.one() + (&(&e1.lift_residue(residue) * &w).shift(level as i64))
            }
            SquareClassGen::Defect => {
                let w = omega.pow(2 * e1.e() as i64)?;
                &e1.one() + (&(&e1.lift_residue(data.defect_residue()) * &w).shift(2 * e1.e() as i64))
            }
        };
        images.push(square_class_coords(&x)?);
    }
    Ok(images)
}

pub fn apply_linear(images: &[u32], v: u32) -> u32 {
    images
        .iter()
        .enumerate()
        .filter(|(i, _)| v >> i & 1 == 1)
        .fold(0, |acc, (_, x)| acc ^ x)
}

/// The orbit-counting principle: if an odd-order automorphism of `X`
/// respecting the conductor filtration fixes no element of
/// `X_top / X_{top-1}`, then `X_top = X_{top-1}`.
///
/// Returns `true` when the implication holds for this `X` (in particular
/// whenever some element of the top layer is fixed modulo `X_{top-1}`).
pub fn odd_action_equality_check(
    x: &CharacterSubgroup,
    action: &dyn Fn(u32) -> u32,
    profile_index: u32,
) -> Result<bool> {
    let t = x.field().character_table()?;
    let elements = x.space().elements();
    odd_action_check_raw(&elements, &|c| t.conductor(c), action, profile_index)
}

/// [`odd_action_equality_check`] on an explicit group with given conductors.
pub fn odd_action_check_raw(
    elements: &[u32],
    conductor: &dyn Fn(u32) -> u32,
    action: &dyn Fn(u32) -> u32,
    top: u32,
) -> Result<bool> {
    let set: BTreeSet<u32> = elements.iter().copied().collect();
    let images: BTreeSet<u32> = elements.iter().map(|&c| action(c)).collect();
    if images != set {
        return Err(Error::ActionNotAutomorphism);
    }
    for &a in elements {
        for &b in elements {
            if action(a ^ b) != action(a) ^ action(b) {
                return Err(Error::ActionNotAutomorphism);
            }
        }
    }
    // order of the permutation: lcm of cycle lengths must be odd
    for &a in elements {
        let mut len = 1;
        let mut y = action(a);
        while y != a {
            y = action(y);
            len += 1;
        }
        if len % 2 == 0 {
            return Err(Error::ActionNotAutomorphism);
        }
    }
    if elements.iter().any(|&c| conductor(action(c)) != conductor(c)) {
        return Err(Error::ActionNotFiltered);
    }
    let top_layer: Vec<u32> = elements.iter().copied().filter(|&c| conductor(c) == top).collect();
    let fixes_some = top_layer.iter().any(|&c| conductor(action(c) ^ c) < top);
    Ok(fixes_some || top_layer.is_empty())
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueMismatch {
    pub signature: FiltrationSignature,
    #[serde(serialize_with = "json::ratio")]
    pub value: DifferentValue,
    #[serde(serialize_with = "json::ratio_set")]
    pub expected: BTreeSet<DifferentValue>,
    pub sizes: Vec<u64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OddActionSummary {
    /// Subgroups mapped to themselves by the rotation.
    pub stable_subgroups: u64,
    /// Stable subgroups on which the rotation fixes only the trivial character.
    pub free_subgroups: u64,
    /// Free subgroups where the top layer was nonetheless nonempty.
    pub implication_failures: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub base: String,
    pub base_type: BaseType,
    pub e1: u32,
    pub abelian_mode: bool,
    pub character_dimension: u32,
    pub subgroups_enumerated: u64,
    pub subgroups_checked: u64,
    pub value_mismatch_count: u64,
    /// The first few mismatches (all of them are counted above).
    pub value_mismatches: Vec<ValueMismatch>,
    pub structural_violation_count: u64,
    pub structural_violations: Vec<String>,
    pub realized_signatures: BTreeSet<FiltrationSignature>,
    #[serde(serialize_with = "json::ratio_set_map")]
    pub realized_values: BTreeMap<u32, BTreeSet<DifferentValue>>,
    #[serde(serialize_with = "json::ratio")]
    pub max_value: DifferentValue,
    pub odd_action: Option<OddActionSummary>,
    /// For the abelian tame case: whether every subgroup has `X₁ = X₂` and `X₅ = X₆`.
    pub x1_eq_x2_and_x5_eq_x6: Option<bool>,
}

const SAMPLE_LIMIT: usize = 12;

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.value_mismatch_count == 0
            && self.structural_violation_count == 0
            && self.odd_action.as_ref().is_none_or(|o| o.implication_failures == 0)
    }

    /// Realized values for a given `m`.
    pub fn values_for(&self, m: u32) -> BTreeSet<DifferentValue> {
        self.realized_values.get(&m).cloned().unwrap_or_default()
    }
}

fn structural_checks(base: &LemmaBase, p: &FiltrationProfile, order: u64, out: &mut Vec<String>) {
    let mut fail = |what: &str| out.push(format!("{what} fails for sizes {:?}", &p.sizes[1..]));
    if p.size(1) != 1 {
        fail("X1 = {1}");
    }
    match base {
        LemmaBase::Ramified { .. } => {
            if p.size(2) != p.size(3) {
                fail("X2 = X3");
            }
            if p.size(5) != order {
                fail("X5 = X");
            }
            if p.index(5) > 2 {
                fail("(X5:X4) <= 2");
            }
            if (1..=5).any(|i| p.index(i) > 2) {
                fail("(X_i+1:X_i) <= 2");
            }
        }
        LemmaBase::Unramified => {
            if p.size(3) != order {
                fail("X3 = X");
            }
            if p.index(3) > 2 {
                fail("(X3:X2) <= 2");
            }
            if p.index(2) > 4 {
                fail("(X2:X1) <= 4");
            }
        }
        LemmaBase::Tame { .. } => {
            if p.size(2) != p.size(3) {
                fail("X2 = X3");
            }
            if p.size(4) != p.size(5) {
                fail("X4 = X5");
            }
            if p.index(7) > 2 {
                fail("(X7:X6) <= 2");
            }
            if p.size(7) != order {
                fail("X7 = X");
            }
        }
    }
}

/// Run the oracle over one base.
///
/// In abelian mode the subgroups are those made of characters coming from
/// `F` (for `E₁ = F` that is every subgroup) and values are compared with
/// the abelian tables. Otherwise every totally ramified subgroup is checked
/// against the closed form matching its top index; on the tame base the
/// rotation `π ↦ ωπ` additionally drives the orbit-counting check.
pub fn verify_lemma(base: &LemmaBase, abelian_mode: bool, ctx: PrecisionContext) -> Result<OracleReport> {
    let k = base.tower(ctx)?;
    check_supported(&k)?;
    let table = k.character_table()?;
    let dim = table.dim();
    let unr = unramified_class(&k)?;
    let base_type = base.base_type();
    let e1 = base.e1();
    let e_f = base_type.e();
    let top = 2 * k.e() + 1;
    let tame = tame_different(e1, e_f);
    let ambient = if abelian_mode {
        classes_from_base(base, &k)?
    } else {
        Subspace::full(dim)
    };
    let rotation = match (base, abelian_mode) {
        (LemmaBase::Tame { .. }, false) => Some(tame_rotation(&k)?),
        _ => None,
    };

    let mut report = OracleReport {
        base: base.to_string(),
        base_type,
        e1,
        abelian_mode,
        character_dimension: ambient.dim() as u32,
        subgroups_enumerated: 0,
        subgroups_checked: 0,
        value_mismatch_count: 0,
        value_mismatches: Vec::new(),
        structural_violation_count: 0,
        structural_violations: Vec::new(),
        realized_signatures: BTreeSet::new(),
        realized_values: BTreeMap::new(),
        max_value: Rational::zero(),
        odd_action: rotation.as_ref().map(|_| OddActionSummary::default()),
        x1_eq_x2_and_x5_eq_x6: (abelian_mode && e1 == 3).then_some(true),
    };
    let mut failure: Option<Error> = None;
    let mut conductors = Vec::new();
    let mut violations = Vec::new();

    for_each_subspace_of(&ambient, |s| {
        report.subgroups_enumerated += 1;
        if failure.is_some() || s.contains(unr) {
            return;
        }
        report.subgroups_checked += 1;
        let elements = s.elements();
        conductors.clear();
        conductors.extend(elements.iter().map(|&c| table.conductor(c)));
        let p = FiltrationProfile::from_conductors(&conductors, top);
        let order = s.order();
        let value = match fdpf_different(&conductors, e_f, e1) {
            Ok(v) => v + tame,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        let sig = FiltrationSignature {
            base_type,
            e1,
            m: p.m,
            m2: p.m2,
            m4: p.m4,
            abelian: abelian_mode,
        };

        violations.clear();
        structural_checks(base, &p, order, &mut violations);
        report.structural_violation_count += violations.len() as u64;
        for v in violations.drain(..) {
            if report.structural_violations.len() < SAMPLE_LIMIT {
                report.structural_violations.push(v);
            }
        }

        let expected = if abelian_mode || p.index(top) == 1 {
            lemma_value_set(&sig).unwrap_or_default()
        } else {
            BTreeSet::from([top_jump_value(base_type, e1, p.m, p.m2, p.m4)])
        };
        if !expected.contains(&value) {
            report.value_mismatch_count += 1;
            if report.value_mismatches.len() < SAMPLE_LIMIT {
                report.value_mismatches.push(ValueMismatch {
                    signature: sig,
                    value,
                    expected,
                    sizes: p.sizes[1..].to_vec(),
                });
            }
        }

        if let Some(flag) = report.x1_eq_x2_and_x5_eq_x6.as_mut() {
            *flag &= p.size(1) == p.size(2) && p.size(5) == p.size(6);
        }

        if let (Some(images), Some(summary)) = (rotation.as_ref(), report.odd_action.as_mut()) {
            let act = |c: u32| apply_linear(images, c);
            if s.basis().iter().all(|&b| s.contains(act(b))) {
                summary.stable_subgroups += 1;
                if elements.iter().skip(1).all(|&c| act(c) != c) {
                    summary.free_subgroups += 1;
                    let elems = &elements;
                    match odd_action_check_raw(elems, &|c| table.conductor(c), &act, top) {
                        Ok(true) => {}
                        Ok(false) => summary.implication_failures += 1,
                        Err(e) => failure = Some(e),
                    }
                }
            }
        }

        report.max_value = report.max_value.max(value);
        report.realized_signatures.insert(sig);
        report.realized_values.entry(p.m).or_default().insert(value);
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(report)
}

/// [`verify_lemma`] over every base of a family: all five ramified
/// completions, the unramified base, or the tame cubic base (`x³ - 2`).
pub fn verify_lemma_family(
    base_type: BaseType,
    e1: u32,
    abelian_mode: bool,
    ctx: PrecisionContext,
) -> Result<Vec<OracleReport>> {
    let bases = match (base_type, e1) {
        (BaseType::RamifiedQuadratic, 1) => LemmaBase::ramified_all(),
        (BaseType::UnramifiedQuadratic, 1) => vec![LemmaBase::Unramified],
        (BaseType::UnramifiedQuadratic, 3) => vec![LemmaBase::Tame { cubic: TameCubic::Two }],
        _ => return Err(Error::UnsupportedBase(format!("{base_type} base with tame index {e1}"))),
    };
    bases.iter().map(|b| verify_lemma(b, abelian_mode, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::make_tower;

    #[test]
    fn singer_cycle_flags_a_contradiction() {
        // GF(2)^2 with all nontrivial elements in the top layer, rotated by a
        // 3-cycle: the top layer is a union of free orbits
        let singer = |c: u32| match c {
            0 => 0,
            1 => 2,
            2 => 3,
            _ => 1,
        };
        let cond = |c: u32| if c == 0 { 0 } else { 5 };
        assert!(!odd_action_check_raw(&[0, 1, 2, 3], &cond, &singer, 5).unwrap());
        // identity: vacuous
        assert!(odd_action_check_raw(&[0, 1, 2, 3], &cond, &|c| c, 5).unwrap());
        // not filtered
        let cond2 = |c: u32| [0, 4, 5, 5][c as usize];
        assert_eq!(
            odd_action_check_raw(&[0, 1, 2, 3], &cond2, &singer, 5).unwrap_err(),
            Error::ActionNotFiltered
        );
        // a swap has even order
        let swap = |c: u32| [0, 2, 1, 3][c as usize];
        assert_eq!(
            odd_action_check_raw(&[0, 1, 2, 3], &cond, &swap, 5).unwrap_err(),
            Error::ActionNotAutomorphism
        );
    }

    #[test]
    fn ramified_base_counts() {
        let k = LemmaBase::Ramified { d: 2 }.tower(PrecisionContext::default()).unwrap();
        assert_eq!(enumerate_wild_subgroups(&k, false).unwrap().len(), 67);
        let tr = enumerate_wild_subgroups(&k, true).unwrap();
        let unr = unramified_class(&k).unwrap();
        assert!(tr.iter().all(|x| !x.space().contains(unr)));
        assert!(tr.iter().any(|x| x.order() == 1));
    }

    #[test]
    fn unsupported_base() {
        let q2 = make_tower(&[], PrecisionContext::default()).unwrap();
        assert!(matches!(enumerate_wild_subgroups(&q2, true), Err(Error::UnsupportedBase(_))));
    }
}
