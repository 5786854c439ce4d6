//! Recompute every quartic `K' = F(√δ)`, its decomposition at 2 and the odd
//! abelian obstruction.

use g2check::global::data::embedded_table;
use g2check::global::field::SUPPORTED;
use g2check::global::kummer::default_witnesses;
use g2check::global::{enumerate_kummer_fields, odd_abelian_obstruction, quad_field, unit_torsion_at_2};
use g2check::padic::PrecisionContext;

fn main() -> g2check::Result<()> {
    let table = embedded_table()?;
    let ctx = PrecisionContext::default();
    for d in SUPPORTED {
        let f = quad_field(d)?;
        for k in enumerate_kummer_fields(&f, &table.kummer, ctx)? {
            let (rank, torsion) = unit_torsion_at_2(&k);
            let o = odd_abelian_obstruction(&k, &default_witnesses(&k), ctx)?;
            let ef: Vec<String> = k.local_factors_at_2.iter().map(|l| format!("({},{})", l.e, l.f)).collect();
            println!(
                "{:<28} {:<11} (e,f) {:<6} rank {rank} torsion {torsion:>2} witnesses {:<8} obstructed {}",
                k.label(),
                format!("{:?}", k.behaviour_at_2),
                ef.join(""),
                o.witnesses.join(","),
                o.obstructed
            );
        }
    }
    Ok(())
}
