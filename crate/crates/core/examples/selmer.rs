//! 2-Selmer groups of the seven base fields.

use g2check::global::field::SUPPORTED;
use g2check::global::quad_field;
use g2check::global::selmer::selmer_computation;

fn main() -> g2check::Result<()> {
    for d in SUPPORTED {
        let f = quad_field(d)?;
        let s = selmer_computation(&f)?;
        let basis: Vec<String> = s.basis.iter().map(|c| c.representative.to_string()).collect();
        println!(
            "Q(sqrt({d:>2})): h = {}, h+ = {}, dim {} = expected {}, basis [{}]",
            f.h,
            f.h_narrow,
            s.basis.len(),
            s.expected_dimension,
            basis.join(", ")
        );
        for c in s.candidates.iter().filter(|c| c.collapsed_onto.is_some()) {
            println!("    {} collapses onto mask {:#b}", c.candidate, c.collapsed_onto.unwrap());
        }
    }
    Ok(())
}
