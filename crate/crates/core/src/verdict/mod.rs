//! Per-field certificates: the solvable branch (odd abelian obstruction over
//! every `K'`), the non-solvable branch (root-discriminant comparison) and a
//! digest of the local different computations behind the exponent.

pub mod odlyzko;
pub mod rootdisc;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::different::{max_root_disc_exponent, BaseType, DifferentValue};
use crate::error::Result;
use crate::global::data::{embedded_table, FieldTable};
use crate::global::field::SUPPORTED;
use crate::global::kummer::{default_witnesses, LocalBehaviour, LocalFactor, ObstructionRecord};
use crate::global::selmer::{selmer_computation, SelmerComputation};
use crate::global::{enumerate_kummer_fields, odd_abelian_obstruction, quad_field, unit_torsion_at_2, QuadraticFieldData, TwoSplitting};
use crate::json;
use crate::oracle::{verify_lemma, LemmaBase, OracleReport, TameCubic};
use crate::padic::PrecisionContext;

pub use odlyzko::{odlyzko_threshold, GroupTheoryConstants, Milli, OdlyzkoTable, GROUP_CONSTANTS};
pub use rootdisc::{root_disc_upper, RootDiscBound};

pub const SCHEMA_VERSION: &str = "g2check-certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NonExistenceVerified,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonExistenceVerified => "non-existence verified",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolvableEntry {
    pub field: String,
    pub listed_as: String,
    pub behaviour_at_2: LocalBehaviour,
    pub local_factors_at_2: Vec<LocalFactor>,
    pub unit_rank: u32,
    pub local_torsion_at_2: u32,
    pub class_number_bound: u64,
    pub obstruction: ObstructionRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonSolvableCase {
    pub label: String,
    /// Lower bound on the degree of the Galois closure.
    pub min_degree: u64,
    pub bound: RootDiscBound,
    pub bound_display: String,
    pub threshold: Milli,
    pub passed: bool,
    /// Replaced by a finer case split.
    pub superseded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleDigest {
    pub base: String,
    pub abelian_mode: bool,
    pub subgroups_checked: u64,
    pub value_mismatches: u64,
    pub structural_violations: u64,
    pub odd_action_failures: u64,
    #[serde(serialize_with = "json::ratio")]
    pub max_value: DifferentValue,
    #[serde(serialize_with = "json::ratio")]
    pub exponent_used: DifferentValue,
    /// Largest realized value with wild index at most 4, and the sharper
    /// exponent it must respect when a case split is in use.
    #[serde(serialize_with = "json::ratio_opt")]
    pub max_value_small_wild: Option<DifferentValue>,
    #[serde(serialize_with = "json::ratio_opt")]
    pub small_wild_exponent: Option<DifferentValue>,
    /// No structural violation, and no realized value above the exponents.
    pub sound: bool,
}

impl OracleDigest {
    pub fn from_report(r: &OracleReport, exponent: DifferentValue, small_wild_exponent: Option<DifferentValue>) -> Self {
        let odd = r.odd_action.as_ref().map_or(0, |o| o.implication_failures);
        let small = (0..=2).flat_map(|m| r.values_for(m)).max();
        let small_ok = match (small, small_wild_exponent) {
            (Some(v), Some(x)) => v <= x,
            _ => true,
        };
        OracleDigest {
            base: r.base.clone(),
            abelian_mode: r.abelian_mode,
            subgroups_checked: r.subgroups_checked,
            value_mismatches: r.value_mismatch_count,
            structural_violations: r.structural_violation_count,
            odd_action_failures: odd,
            max_value: r.max_value,
            exponent_used: exponent,
            max_value_small_wild: small,
            small_wild_exponent,
            sound: r.structural_violation_count == 0 && odd == 0 && r.max_value <= exponent && small_ok,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCheck {
    pub rd_radical: String,
    pub rd_bound: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub schema: String,
    pub precision_digits: u32,
    pub field: QuadraticFieldData,
    pub selmer: SelmerComputation,
    pub solvable_branch: Vec<SolvableEntry>,
    pub odlyzko: OdlyzkoTable,
    pub group_constants: GroupTheoryConstants,
    pub nonsolvable_branch: Vec<NonSolvableCase>,
    pub table_check: TableCheck,
    pub lemma_oracle: Vec<OracleDigest>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn solvable_ok(&self) -> bool {
        self.solvable_branch.iter().all(|e| e.obstruction.obstructed)
    }

    pub fn nonsolvable_ok(&self) -> bool {
        self.nonsolvable_branch.iter().filter(|c| !c.superseded).all(|c| c.passed)
    }

    pub fn oracle_ok(&self) -> bool {
        self.lemma_oracle.iter().all(|o| o.sound)
    }

    /// Verified only when every record passes; never on partial evidence.
    pub fn decide(&self) -> Verdict {
        if !self.solvable_branch.is_empty()
            && !self.nonsolvable_branch.is_empty()
            && !self.lemma_oracle.is_empty()
            && self.solvable_ok()
            && self.nonsolvable_ok()
            && self.oracle_ok()
            && self.table_check.agrees
        {
            Verdict::NonExistenceVerified
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Local base type of `F` at 2.
pub fn base_type_of(f: &QuadraticFieldData) -> BaseType {
    match f.two_splitting {
        TwoSplitting::Inert => BaseType::UnramifiedQuadratic,
        _ => BaseType::RamifiedQuadratic,
    }
}

fn case(label: &str, f: &QuadraticFieldData, min_degree: u64, exponent: Ratio<i64>) -> Result<NonSolvableCase> {
    let bound = root_disc_upper(f, exponent);
    let threshold = odlyzko_threshold(min_degree)?;
    Ok(NonSolvableCase {
        label: label.into(),
        min_degree,
        bound_display: bound.display_bound(),
        passed: bound.is_below(threshold),
        threshold,
        bound,
        superseded: false,
    })
}

/// Root-discriminant comparison. When the generic bound fails on a ramified
/// base, split by the wild ramification index `2^m`: small `m` gives a
/// sharper exponent, large `m` forces a larger non-solvable group.
pub fn nonsolvable_check(f: &QuadraticFieldData) -> Result<Vec<NonSolvableCase>> {
    let bt = base_type_of(f);
    let g = GROUP_CONSTANTS;
    let mut generic = case("generic", f, 2 * g.min_nonsolvable_order, max_root_disc_exponent(bt, None))?;
    if generic.passed || bt != BaseType::RamifiedQuadratic {
        return Ok(vec![generic]);
    }
    generic.superseded = true;
    let small = case("wild index at most 4", f, 2 * g.min_nonsolvable_order, max_root_disc_exponent(bt, Some(2)))?;
    let large = case("wild index at least 8", f, 2 * g.psl2_f8_order, max_root_disc_exponent(bt, None))?;
    Ok(vec![generic, small, large])
}

/// Obstruction record for every `K'`.
pub fn solvable_check(f: &QuadraticFieldData, table: &FieldTable, ctx: PrecisionContext) -> Result<Vec<SolvableEntry>> {
    let ks = enumerate_kummer_fields(f, &table.kummer, ctx)?;
    ks.iter()
        .map(|k| {
            let (rank, torsion) = unit_torsion_at_2(k);
            Ok(SolvableEntry {
                field: k.label(),
                listed_as: k.listed_as.clone(),
                behaviour_at_2: k.behaviour_at_2,
                local_factors_at_2: k.local_factors_at_2.clone(),
                unit_rank: rank,
                local_torsion_at_2: torsion,
                class_number_bound: k.class_number_bound,
                obstruction: odd_abelian_obstruction(k, &default_witnesses(k), ctx)?,
            })
        })
        .collect()
}

/// Bases whose different computations feed the exponent for `F`.
pub fn lemma_bases_for(f: &QuadraticFieldData) -> Vec<LemmaBase> {
    match base_type_of(f) {
        BaseType::RamifiedQuadratic => vec![LemmaBase::Ramified { d: f.d }],
        BaseType::UnramifiedQuadratic => vec![LemmaBase::Unramified, LemmaBase::Tame { cubic: TameCubic::Two }],
    }
}

/// Oracle reports keyed by base and mode, shared between fields.
#[derive(Default)]
pub struct OracleCache {
    reports: BTreeMap<(String, bool), OracleReport>,
}

impl OracleCache {
    pub fn get(&mut self, base: &LemmaBase, abelian: bool, ctx: PrecisionContext) -> Result<&OracleReport> {
        let key = (base.to_string(), abelian);
        if !self.reports.contains_key(&key) {
            let r = verify_lemma(base, abelian, ctx)?;
            self.reports.insert(key.clone(), r);
        }
        Ok(&self.reports[&key])
    }
}

pub fn check_field(d: i64, ctx: PrecisionContext) -> Result<Certificate> {
    check_field_cached(d, ctx, &mut OracleCache::default())
}

pub fn check_field_cached(d: i64, ctx: PrecisionContext, cache: &mut OracleCache) -> Result<Certificate> {
    let table = embedded_table()?;
    let f = quad_field(d)?;
    let selmer = selmer_computation(&f)?;
    let solvable = solvable_check(&f, &table, ctx)?;
    let nonsolvable = nonsolvable_check(&f)?;

    let exponent = max_root_disc_exponent(base_type_of(&f), None);
    let small_exponent = nonsolvable
        .iter()
        .any(|c| c.superseded)
        .then(|| max_root_disc_exponent(base_type_of(&f), Some(2)));
    let mut digests = Vec::new();
    for base in lemma_bases_for(&f) {
        for abelian in [false, true] {
            digests.push(OracleDigest::from_report(cache.get(&base, abelian, ctx)?, exponent, small_exponent));
        }
    }

    let table_check = match table.field(d) {
        Some(row) => {
            let generic = &nonsolvable[0];
            TableCheck {
                rd_radical: row.rd_radical.clone(),
                rd_bound: row.rd_bound.clone(),
                agrees: row.rd_radical == generic.bound.radical
                    && row.rd_bound == generic.bound_display
                    && row.bound_exponent == generic.bound.exponent
                    && table.special.iter().filter(|s| s.d == d).all(|s| {
                        nonsolvable.iter().any(|c| {
                            !c.superseded
                                && c.bound.radical == s.rd_radical
                                && c.bound_display == s.rd_bound
                                && c.bound.exponent == s.bound_exponent
                        })
                    }),
            }
        }
        None => TableCheck {
            rd_radical: String::new(),
            rd_bound: String::new(),
            agrees: false,
        },
    };

    let mut notes = Vec::new();
    if nonsolvable.iter().any(|c| c.superseded) {
        notes.push(
            "the case split depends only on the wild ramification index 2^m; no bound on the order of a 2-Sylow subgroup is used"
                .to_string(),
        );
    }
    for o in &digests {
        if o.value_mismatches > 0 && o.sound {
            notes.push(format!(
                "{} ({}): {} realized values differ from the closed forms but stay within the exponent {}",
                o.base,
                if o.abelian_mode { "abelian" } else { "general" },
                o.value_mismatches,
                o.exponent_used
            ));
        }
    }

    let mut cert = Certificate {
        schema: SCHEMA_VERSION.into(),
        precision_digits: ctx.digits,
        field: f,
        selmer,
        solvable_branch: solvable,
        odlyzko: OdlyzkoTable::default(),
        group_constants: GROUP_CONSTANTS,
        nonsolvable_branch: nonsolvable,
        table_check,
        lemma_oracle: digests,
        notes,
        verdict: Verdict::Inconclusive,
    };
    cert.verdict = cert.decide();
    Ok(cert)
}

pub fn check_all(ctx: PrecisionContext) -> Result<Vec<Certificate>> {
    let mut cache = OracleCache::default();
    SUPPORTED.iter().map(|&d| check_field_cached(d, ctx, &mut cache)).collect()
}

/// Human-readable summary.
pub fn render_summary(c: &Certificate) -> String {
    let mut s = String::new();
    let f = &c.field;
    let _ = writeln!(
        s,
        "Q(sqrt({})): disc {}, h = {}, 2 is {:?}",
        f.d, f.discriminant, f.h, f.two_splitting
    );
    let basis: Vec<String> = c.selmer.basis.iter().map(|b| b.representative.to_string()).collect();
    let _ = writeln!(s, "  Selmer basis [{}], {} quartic fields K'", basis.join(", "), c.solvable_branch.len());
    for e in &c.solvable_branch {
        let factors: Vec<String> = e.local_factors_at_2.iter().map(|l| format!("e={} f={}", l.e, l.f)).collect();
        let _ = writeln!(
            s,
            "    {:<28} {:<11} {:<10} torsion {:>2}  witnesses [{}]  {}",
            e.field,
            format!("{:?}", e.behaviour_at_2).to_lowercase(),
            factors.join(","),
            e.local_torsion_at_2,
            e.obstruction.witnesses.join(","),
            if e.obstruction.obstructed { "obstructed" } else { "NOT obstructed" }
        );
    }
    for n in &c.nonsolvable_branch {
        let _ = writeln!(
            s,
            "  non-solvable [{}]: {} {} vs {} (n >= {}){}",
            n.label,
            n.bound.radical,
            n.bound_display,
            n.threshold,
            n.min_degree,
            if n.superseded {
                " superseded".to_string()
            } else if n.passed {
                " ok".to_string()
            } else {
                " FAILS".to_string()
            }
        );
    }
    for o in &c.lemma_oracle {
        let _ = writeln!(
            s,
            "  local {} {}: {} subgroups, max {} <= {}, mismatches {}, {}",
            o.base,
            if o.abelian_mode { "abelian" } else { "general" },
            o.subgroups_checked,
            o.max_value,
            o.exponent_used,
            o.value_mismatches,
            if o.sound { "sound" } else { "UNSOUND" }
        );
    }
    for n in &c.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    let _ = writeln!(s, "  verdict: {}", c.verdict.as_str());
    s
}
