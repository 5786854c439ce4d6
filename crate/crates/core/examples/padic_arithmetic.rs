//! Arithmetic in `Q_2(√2)`, `Q_4` and the degree-6 field `Q_4(∛2)`.

use g2check::padic::{make_tower, sqrt, teichmuller_3_torsion, PrecisionContext, Step};

fn main() -> g2check::Result<()> {
    let ctx = PrecisionContext::default();

    // π² = 2
    let k = make_tower(&[Step::eisenstein(&[-2, 0])], ctx)?;
    let pi = k.uniformizer();
    let x = &k.from_int(3) + &pi;
    let y = x.inverse()?;
    println!("Q2(sqrt 2): (3 + π)^-1 = {y}");
    println!("  check: (3 + π)(3 + π)^-1 = {}", &x * &y);
    println!("  v(2) = {}, v(π) = {}", k.from_int(2).valuation()?, pi.valuation()?);
    let r = sqrt(&k.from_int(2))?.expect("2 is a square");
    println!("  sqrt(2) = {r}");

    let q4 = make_tower(&[Step::unramified()], ctx)?;
    let zeta = teichmuller_3_torsion(&q4)?;
    println!("Q4: ζ3 = {zeta}, ζ3^3 = {}", zeta.pow(3)?);

    let tame = make_tower(&[Step::unramified(), Step::eisenstein(&[-2, 0, 0])], ctx)?;
    let p = tame.uniformizer();
    println!(
        "Q4(cbrt 2): e = {}, f = {}, v(π) = {}, π^3 = {}",
        tame.e(),
        tame.f(),
        p.valuation()?,
        p.pow(3)?
    );
    Ok(())
}
