//! Conductor exponents of the quadratic characters of a few local fields.

use std::collections::BTreeMap;

use g2check::characters::QuadraticCharacter;
use g2check::padic::{make_tower, PrecisionContext, Step};

fn main() -> g2check::Result<()> {
    let ctx = PrecisionContext::default();
    let q2 = make_tower(&[], ctx)?;
    for d in [-1, 2, 3, 5, -2, 6] {
        let chi = QuadraticCharacter::new(&q2.from_int(d))?;
        println!("Q2(sqrt {d:>2}) / Q2: conductor exponent {}", chi.conductor()?);
    }
    for (name, steps) in [
        ("Q2(sqrt 2)", vec![Step::eisenstein(&[-2, 0])]),
        ("Q4", vec![Step::unramified()]),
        ("Q4(cbrt 2)", vec![Step::unramified(), Step::eisenstein(&[-2, 0, 0])]),
    ] {
        let k = make_tower(&steps, ctx)?;
        let t = k.character_table()?;
        let mut hist = BTreeMap::new();
        for &c in t.conductors() {
            *hist.entry(c).or_insert(0) += 1;
        }
        println!("{name}: {} characters, conductor histogram {hist:?}", 1u32 << t.dim());
    }
    Ok(())
}
