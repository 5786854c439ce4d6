//! Certified root-discriminant bounds against the Odlyzko thresholds.

use g2check::global::field::SUPPORTED;
use g2check::global::quad_field;
use g2check::verdict::nonsolvable_check;

fn main() -> g2check::Result<()> {
    for d in SUPPORTED {
        let f = quad_field(d)?;
        for c in nonsolvable_check(&f)? {
            println!(
                "Q(sqrt({d:>2})) {:<22} {:<20} in [{}, {}] {:<8} vs {} (n >= {:>4}): {}{}",
                c.label,
                c.bound.radical,
                c.bound.lower,
                c.bound.upper,
                c.bound_display,
                c.threshold,
                c.min_degree,
                if c.passed { "below" } else { "not below" },
                if c.superseded { ", superseded" } else { "" }
            );
        }
    }
    Ok(())
}
