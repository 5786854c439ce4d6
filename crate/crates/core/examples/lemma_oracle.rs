//! Run the brute-force different check over every base and print a summary.

use std::time::Instant;

use g2check::oracle::{verify_lemma, LemmaBase, TameCubic};
use g2check::padic::PrecisionContext;

fn main() -> g2check::Result<()> {
    let mut bases = LemmaBase::ramified_all();
    bases.push(LemmaBase::Unramified);
    bases.push(LemmaBase::Tame { cubic: TameCubic::Two });
    for base in &bases {
        for abelian in [true, false] {
            let t = Instant::now();
            let r = verify_lemma(base, abelian, PrecisionContext::default())?;
            println!(
                "{:<14} abelian={:<5} checked={:<7} mismatches={:<6} structural={:<3} max={} ({:.1?})",
                r.base, abelian, r.subgroups_checked, r.value_mismatch_count, r.structural_violation_count, r.max_value,
                t.elapsed()
            );
            for (m, vals) in &r.realized_values {
                let v: Vec<String> = vals.iter().map(|x| x.to_string()).collect();
                println!("    m={m}: {}", v.join(", "));
            }
            if let Some(o) = &r.odd_action {
                println!("    rotation: {} stable, {} free, {} failures", o.stable_subgroups, o.free_subgroups, o.implication_failures);
            }
            if let Some(flag) = r.x1_eq_x2_and_x5_eq_x6 {
                println!("    X1 = X2 and X5 = X6 throughout: {flag}");
            }
            for m in r.value_mismatches.iter().take(3) {
                println!("    mismatch {:?} value {} expected {:?}", m.sizes, m.value, m.expected);
            }
            for v in r.structural_violations.iter().take(3) {
                println!("    {v}");
            }
        }
    }
    Ok(())
}
