//! Closed-form different values and the root-discriminant exponents they give.

use g2check::different::{
    fdpf_different, lemma_value_set, max_root_disc_exponent, tame_different, top_jump_value, BaseType,
    FiltrationSignature,
};

fn main() -> g2check::Result<()> {
    println!("tame part, e1 = 3 over Q4: {}", tame_different(3, 1));
    // V4 over Q2(sqrt 2): the trivial character and conductors 4, 5, 5
    println!("conductor-discriminant, [0, 4, 5, 5]: {}", fdpf_different(&[0, 4, 5, 5], 2, 1)?);

    for base_type in [BaseType::RamifiedQuadratic, BaseType::UnramifiedQuadratic] {
        for m in 1..=3 {
            let sig = FiltrationSignature {
                base_type,
                e1: 1,
                m,
                m2: 0,
                m4: m.min(1),
                abelian: true,
            };
            let vals: Vec<String> = lemma_value_set(&sig)?.iter().map(|v| v.to_string()).collect();
            println!("{base_type}, m = {m}, m4 = {}: {{{}}}", sig.m4, vals.join(", "));
        }
    }
    println!("top jump, unramified, e1 = 3, m = 5: {}", top_jump_value(BaseType::UnramifiedQuadratic, 3, 5, 0, 1));
    for base_type in [BaseType::RamifiedQuadratic, BaseType::UnramifiedQuadratic] {
        println!(
            "exponent bound over a {base_type} base: {} (m <= 2: {})",
            max_root_disc_exponent(base_type, None),
            max_root_disc_exponent(base_type, Some(2))
        );
    }
    Ok(())
}
