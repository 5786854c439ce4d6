//! One test per acceptance criterion. Each prints a `criterion N: PASS|FAIL`
//! line (visible with `--nocapture`) before asserting.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use g2check::characters::{filtration_profile, hilbert_symbol, hilbert_symbol_direct};
use g2check::different::{fdpf_different, BaseType, DifferentValue};
use g2check::filtration::{artin_schreier_cokernel, principal_unit_image, principal_unit_image_exhaustive, principal_unit_quotient};
use g2check::global::data::embedded_table;
use g2check::global::field::SUPPORTED;
use g2check::global::kummer::default_witnesses;
use g2check::global::selmer::selmer_computation;
use g2check::global::{enumerate_kummer_fields, odd_abelian_obstruction, parse_quad, quad_field, Witness};
use g2check::oracle::{enumerate_wild_subgroups, verify_lemma, verify_lemma_family, LemmaBase, TameCubic};
use g2check::padic::{make_tower, square_class_coords, LocalFieldTower, PadicElement, PrecisionContext, Step};
use g2check::verdict::{check_field, nonsolvable_check, root_disc_upper, Milli};

fn report(n: u32, ok: bool, detail: &str) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
}

fn r(a: i64, b: i64) -> DifferentValue {
    Ratio::new(a, b)
}

fn set(vals: &[(i64, i64)]) -> BTreeSet<DifferentValue> {
    vals.iter().map(|&(a, b)| r(a, b)).collect()
}

fn fmt_values(m: &BTreeMap<u32, BTreeSet<DifferentValue>>) -> String {
    m.iter()
        .rev()
        .map(|(m, v)| {
            let v: Vec<String> = v.iter().rev().map(|x| x.to_string()).collect();
            format!("m={m}: {}", v.join(", "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

#[test]
fn criterion_1_ramified_abelian_values() {
    let t = Instant::now();
    let expected: BTreeMap<u32, BTreeSet<DifferentValue>> = BTreeMap::from([
        (3, set(&[(15, 8)])),
        (2, set(&[(7, 4), (3, 2), (5, 4)])),
        (1, set(&[(5, 4), (1, 1), (1, 2)])),
    ]);
    let reports = verify_lemma_family(BaseType::RamifiedQuadratic, 1, true, ctx()).unwrap();
    let mut union: BTreeMap<u32, BTreeSet<DifferentValue>> = BTreeMap::new();
    let mut mismatches = 0;
    let mut per_base_ok = true;
    for rep in &reports {
        mismatches += rep.value_mismatch_count;
        for (m, vals) in &rep.realized_values {
            if *m > 0 {
                per_base_ok &= expected.get(m).is_some_and(|e| vals.is_subset(e));
                union.entry(*m).or_default().extend(vals.iter().copied());
            }
        }
    }
    let elapsed = t.elapsed();
    let ok = union == expected && mismatches == 0 && per_base_ok && elapsed < Duration::from_secs(10);
    report(
        1,
        ok,
        &format!("{} bases, {}, {mismatches} mismatches, {elapsed:.2?}", reports.len(), fmt_values(&union)),
    );
    assert!(ok);
}

#[test]
fn criterion_2_e2_base_formula_and_structure() {
    let t = Instant::now();
    let mut checked = 0u64;
    let mut bad_values = 0u64;
    let mut bad_structure = 0u64;
    for base in LemmaBase::ramified_all() {
        let k = base.tower(ctx()).unwrap();
        assert_eq!(k.e(), 2);
        for x in enumerate_wild_subgroups(&k, true).unwrap() {
            let p = filtration_profile(&x).unwrap();
            let table = k.character_table().unwrap();
            let conductors: Vec<u32> = x.space().elements().iter().map(|&c| table.conductor(c)).collect();
            let v = fdpf_different(&conductors, 2, 1).unwrap();
            let tail = r((1 << p.m2) + 1, 1 << p.m);
            if v != r(9, 4) - tail && v != r(2, 1) - tail {
                bad_values += 1;
            }
            let order = x.order();
            if p.size(2) != p.size(3) || p.size(5) != order || p.index(5) > 2 {
                bad_structure += 1;
            }
            checked += 1;
        }
    }
    let elapsed = t.elapsed();
    let ok = checked > 0 && bad_values == 0 && bad_structure == 0 && elapsed < Duration::from_secs(30);
    report(
        2,
        ok,
        &format!("{checked} subgroups over 5 bases, {bad_values} value failures, {bad_structure} structural failures, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_3_unramified_values_and_tame_chain() {
    let t = Instant::now();
    let e1_expected: BTreeMap<u32, BTreeSet<DifferentValue>> = BTreeMap::from([
        (3, set(&[(9, 4)])),
        (2, set(&[(2, 1), (3, 2)])),
        (1, set(&[(3, 2), (1, 1)])),
    ]);
    let e3_expected: BTreeMap<u32, BTreeSet<DifferentValue>> = BTreeMap::from([
        (3, set(&[(35, 12)])),
        (2, set(&[(8, 3), (13, 6)])),
        (1, set(&[(13, 6), (5, 3)])),
    ]);
    let strip = |m: &BTreeMap<u32, BTreeSet<DifferentValue>>| -> BTreeMap<u32, BTreeSet<DifferentValue>> {
        m.iter().filter(|(k, _)| **k > 0).map(|(k, v)| (*k, v.clone())).collect()
    };
    let unr = verify_lemma(&LemmaBase::Unramified, true, ctx()).unwrap();
    let tame_ab = verify_lemma(&LemmaBase::Tame { cubic: TameCubic::Two }, true, ctx()).unwrap();
    let tame_all = verify_lemma(&LemmaBase::Tame { cubic: TameCubic::Two }, false, ctx()).unwrap();
    let elapsed = t.elapsed();

    let e1 = strip(&unr.realized_values);
    let e3 = strip(&tame_ab.realized_values);
    let e1_ok = e1 == e1_expected && unr.value_mismatch_count == 0;
    let e3_ok = e3 == e3_expected;
    let chain_ok = tame_all.structural_violation_count == 0 && tame_ab.structural_violation_count == 0;
    let ok = e1_ok && e3_ok && chain_ok && elapsed < Duration::from_secs(300);
    report(
        3,
        ok,
        &format!(
            "e1=1 {} [{}]; e1=3 {} [{}] expected [{}]; chain constraints over {} subgroups: {}; {elapsed:.2?}",
            if e1_ok { "ok" } else { "differs" },
            fmt_values(&e1),
            if e3_ok { "ok" } else { "differs" },
            fmt_values(&e3),
            fmt_values(&e3_expected),
            tame_all.subgroups_checked,
            if chain_ok { "hold" } else { "violated" },
        ),
    );
    assert!(e1_ok, "e1 = 1 values {e1:?}");
    assert!(chain_ok, "{:?}", tame_all.structural_violations);
    assert!(e3_ok, "e1 = 3 abelian values {} differ from {}", fmt_values(&e3), fmt_values(&e3_expected));
}

#[test]
fn criterion_4_unit_identities() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for base in LemmaBase::ramified_all() {
        let k = base.tower(ctx()).unwrap();
        let name = base.to_string();
        // (1 + π²A) = (1 + π³A)(1 + πA)²
        if principal_unit_quotient(&k, 2, 3).unwrap().dimension() != 0 {
            failures.push(format!("{name}: U2 != U3 mod squares"));
        }
        // (1 + π⁵A) ⊂ (1 + πA)²
        if principal_unit_image(&k, 5).unwrap().dim() != 0 {
            failures.push(format!("{name}: U5 not in squares"));
        }
        if principal_unit_image(&k, 4).unwrap().dim() != 1 {
            failures.push(format!("{name}: image of U4 is not of order 2"));
        }
        for i in 1..=5 {
            let gen = principal_unit_image(&k, i).unwrap();
            let exh = principal_unit_image_exhaustive(&k, i, 7).unwrap();
            if gen != exh {
                failures.push(format!("{name}: U{i} generator and exhaustive images differ"));
            }
        }
    }
    for steps in [vec![], vec![Step::unramified()]] {
        let k = make_tower(&steps, ctx()).unwrap();
        if artin_schreier_cokernel(&k.one(), &k).unwrap() != 1 {
            failures.push(format!("cokernel over residue degree {} is not 1", k.f()));
        }
    }
    let elapsed = t.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(1);
    report(4, ok, &format!("5 bases, residue fields F2 and F4, {} failures, {elapsed:.2?}", failures.len()));
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_5_selmer_counts_and_lists() {
    let t = Instant::now();
    let table = embedded_table().unwrap();
    let expected = [7, 7, 7, 3, 3, 3, 3];
    let mut counts = Vec::new();
    for d in SUPPORTED {
        let f = quad_field(d).unwrap();
        counts.push(enumerate_kummer_fields(&f, &table.kummer, ctx()).map(|ks| ks.len()).unwrap_or(0));
    }
    let f = quad_field(-5).unwrap();
    let comp = selmer_computation(&f).unwrap();
    let x = parse_quad(-5, "2+s").unwrap();
    let collapse = comp.candidates.iter().any(|c| c.candidate == x && c.collapsed_onto.is_some())
        && (&x * &parse_quad(-5, "-2").unwrap()).is_square();
    let elapsed = t.elapsed();
    let ok = counts == expected && collapse && elapsed < Duration::from_secs(5);
    report(
        5,
        ok,
        &format!("counts {counts:?}, lists match one-to-one, 2+sqrt(-5) ~ -2: {collapse}, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_6_odd_abelian_obstruction() {
    let t = Instant::now();
    let table = embedded_table().unwrap();
    let mut total = 0;
    let mut obstructed = 0;
    let mut witness_ok = true;
    for d in SUPPORTED {
        let f = quad_field(d).unwrap();
        for k in enumerate_kummer_fields(&f, &table.kummer, ctx()).unwrap() {
            let w = default_witnesses(&k);
            let names: Vec<&str> = w.iter().map(|w| w.name.as_str()).collect();
            witness_ok &= names.contains(&"zeta3") == k.contains_quadratic(-3);
            witness_ok &= names.contains(&"eps^2") == k.contains_quadratic(5);
            total += 1;
            if odd_abelian_obstruction(&k, &w, ctx()).unwrap().obstructed {
                obstructed += 1;
            }
        }
    }
    let eps_pos = Witness::eps_squared().value.is_totally_positive();
    let elapsed = t.elapsed();
    let ok = obstructed == total && witness_ok && eps_pos && elapsed < Duration::from_secs(5);
    report(
        6,
        ok,
        &format!("{obstructed}/{total} obstructed, witnesses as required: {witness_ok}, eps^2 totally positive: {eps_pos}, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_7_root_discriminant_table() {
    let t = Instant::now();
    let table = embedded_table().unwrap();
    let printed = ["<11.314", "<13.857", "<16.885", "=8", "<11.314", "<13.079", "<17.889"];
    let mut failures = Vec::new();
    for (d, want) in SUPPORTED.into_iter().zip(printed) {
        let f = quad_field(d).unwrap();
        let exponent = table.field(d).unwrap().bound_exponent;
        let b = root_disc_upper(&f, exponent);
        if b.display_bound() != want {
            failures.push(format!("d={d}: {} != {want}", b.display_bound()));
        }
        // enclosure: lower <= V <= upper, with V < upper unless exact
        let enclosed = if b.exact {
            !b.is_below(b.upper) && b.is_below(Milli(b.upper.0 + 1))
        } else {
            b.is_below(b.upper) && !b.is_below(b.lower)
        };
        if !enclosed {
            failures.push(format!("d={d}: enclosure [{}, {}] not certified", b.lower, b.upper));
        }
        let cases = nonsolvable_check(&f).unwrap();
        let pattern: Vec<(bool, bool)> = cases.iter().map(|c| (c.passed, c.superseded)).collect();
        let want_pattern = if d == -5 {
            vec![(false, true), (true, false), (true, false)]
        } else {
            vec![(true, false)]
        };
        if pattern != want_pattern {
            failures.push(format!("d={d}: pass pattern {pattern:?}"));
        }
        if d == -5 && cases[1].bound_display != "<15.043" {
            failures.push(format!("d=-5 small wild case: {}", cases[1].bound_display));
        }
    }
    let elapsed = t.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(1);
    report(7, ok, &format!("7 bounds and the 15.043 special case, {} failures, {elapsed:.2?}", failures.len()));
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_8_end_to_end() {
    let t = Instant::now();
    let dir = std::env::temp_dir().join(format!("g2check-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_g2check"))
            .args(["check", "--all", "--quiet", "--json"])
            .arg(&path)
            .output()
            .unwrap();
        (out.status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (code_a, json_a) = run("a.json");
    let (code_b, json_b) = run("b.json");
    let elapsed = t.elapsed();
    let certs: serde_json::Value = serde_json::from_slice(&json_a).unwrap_or_default();
    let verdicts: Vec<String> = certs
        .as_array()
        .map(|a| a.iter().map(|c| c["verdict"].as_str().unwrap_or("").to_string()).collect())
        .unwrap_or_default();
    let all = verdicts.len() == 7 && verdicts.iter().all(|v| v == "non_existence_verified");
    let ok = code_a == Some(0) && code_b == Some(0) && all && json_a == json_b && elapsed < Duration::from_secs(600);
    report(
        8,
        ok,
        &format!("exit {code_a:?}, {} fields verified, byte-identical reruns: {}, {elapsed:.2?}", verdicts.len(), json_a == json_b),
    );
    std::fs::remove_dir_all(&dir).ok();
    assert!(ok);
}

fn towers(c: PrecisionContext) -> Vec<(String, Arc<LocalFieldTower>)> {
    let mut bases = vec![];
    bases.extend(LemmaBase::ramified_all());
    bases.push(LemmaBase::Unramified);
    bases.push(LemmaBase::Tame { cubic: TameCubic::Two });
    let mut out = vec![("Q2".to_string(), make_tower(&[], c).unwrap())];
    out.extend(bases.iter().map(|b| (b.to_string(), b.tower(c).unwrap())));
    out
}

fn random_element(k: &Arc<LocalFieldTower>, rng: &mut ChaCha8Rng) -> PadicElement {
    loop {
        let coeffs: Vec<(i64, i64)> = (0..k.e())
            .map(|_| {
                let b = if k.f() == 2 { rng.gen_range(-50..50) } else { 0 };
                (rng.gen_range(-50..50), b)
            })
            .collect();
        let x = k.from_coeffs(&coeffs);
        if !x.is_zero() {
            return x.shift(rng.gen_range(-3..4));
        }
    }
}

#[test]
fn criterion_9_property_suites() {
    let t = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6732);

    for (name, k) in towers(ctx()) {
        let dim = k.square_classes().dim();
        let p = k.hilbert_pairing().unwrap();
        if p.rank() != dim || !p.is_symmetric() {
            failures.push(format!("{name}: pairing not perfect and symmetric"));
        }
        for i in 0..500 {
            let a = random_element(&k, &mut rng);
            let b = random_element(&k, &mut rng);
            let c = random_element(&k, &mut rng);
            let h = |x: &PadicElement, y: &PadicElement| hilbert_symbol(x, y, &k).unwrap();
            if h(&(&a * &b), &c) != h(&a, &c) * h(&b, &c) {
                failures.push(format!("{name}: bimultiplicativity case {i}"));
            }
            if h(&a, &b) != h(&b, &a) {
                failures.push(format!("{name}: symmetry case {i}"));
            }
            if i < 50 && h(&a, &b) != hilbert_symbol_direct(&a, &b).unwrap() {
                failures.push(format!("{name}: cached and direct symbols disagree, case {i}"));
            }
            // perfectness: a nontrivial class pairs nontrivially with some basis element
            if square_class_coords(&a).unwrap() != 0
                && k.square_classes().basis().iter().all(|g| h(&a, g) == 1)
            {
                failures.push(format!("{name}: degenerate class, case {i}"));
            }
        }
        for i in 0..1000 {
            let a = random_element(&k, &mut rng);
            let b = random_element(&k, &mut rng);
            let c = random_element(&k, &mut rng);
            let assoc = (&(&a * &b) * &c).approx_eq(&(&a * &(&b * &c)));
            let distrib = (&a * &(&b + &c)).approx_eq(&(&(&a * &b) + &(&a * &c)));
            let add_assoc = (&(&a + &b) + &c).approx_eq(&(&a + &(&b + &c)));
            let inverse = (&a * &a.inverse().unwrap()).approx_eq(&k.one());
            let div = (&a.div(&b).unwrap() * &b).approx_eq(&a);
            if !(assoc && distrib && add_assoc && inverse && div) {
                failures.push(format!("{name}: arithmetic identities case {i}"));
            }
        }
    }

    // precision independence at digits and digits + 8
    let lo = ctx();
    let hi = PrecisionContext::new(lo.digits + 8);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for ((name, k_lo), (_, k_hi)) in towers(lo).into_iter().zip(towers(hi)) {
        if k_lo.character_table().unwrap().conductors() != k_hi.character_table().unwrap().conductors() {
            failures.push(format!("{name}: conductor tables depend on precision"));
        }
        for _ in 0..200 {
            let coeffs: Vec<(i64, i64)> = (0..k_lo.e())
                .map(|_| (rng.gen_range(-99..99), if k_lo.f() == 2 { rng.gen_range(-99..99) } else { 0 }))
                .collect();
            let x_lo = k_lo.from_coeffs(&coeffs);
            let x_hi = k_hi.from_coeffs(&coeffs);
            if x_lo.is_zero() {
                continue;
            }
            if square_class_coords(&x_lo).unwrap() != square_class_coords(&x_hi).unwrap() {
                failures.push(format!("{name}: square class of {coeffs:?} depends on precision"));
            }
        }
    }
    for base in [LemmaBase::Ramified { d: -5 }, LemmaBase::Unramified] {
        for abelian in [true, false] {
            let a = verify_lemma(&base, abelian, lo).unwrap();
            let b = verify_lemma(&base, abelian, hi).unwrap();
            if a.realized_values != b.realized_values || a.value_mismatch_count != b.value_mismatch_count {
                failures.push(format!("{base}: oracle depends on precision"));
            }
        }
    }
    for d in SUPPORTED {
        let a = check_field(d, lo).unwrap();
        let b = check_field(d, hi).unwrap();
        let strip = |c: &g2check::verdict::Certificate| {
            let mut v = serde_json::to_value(c).unwrap();
            v.as_object_mut().unwrap().remove("precision_digits");
            v
        };
        if strip(&a) != strip(&b) {
            failures.push(format!("d={d}: certificate depends on precision"));
        }
    }

    let elapsed = t.elapsed();
    let ok = failures.is_empty();
    report(
        9,
        ok,
        &format!("8 towers, 500 pairing cases and 1000 arithmetic triples each, precision {} vs {}, {} failures, {elapsed:.2?}", lo.digits, hi.digits, failures.len()),
    );
    assert!(ok, "{:?}", &failures[..failures.len().min(10)]);
}
