//! Dimensions of the principal-unit quotients `U^(i) / U^(j)` modulo squares.

use g2check::filtration::{principal_unit_quotient, solve_sqrt_equation};
use g2check::padic::{make_tower, PrecisionContext, Step};

fn main() -> g2check::Result<()> {
    let ctx = PrecisionContext::default();
    let k = make_tower(&[Step::eisenstein(&[-2, 0])], ctx)?;
    let top = 2 * k.e() + 2;
    println!("Q2(sqrt 2), e = {}", k.e());
    for i in 1..=top {
        let dims: Vec<String> = (i..=top)
            .map(|j| principal_unit_quotient(&k, i, j).map(|q| q.dimension().to_string()))
            .collect::<g2check::Result<_>>()?;
        println!("  i = {i}: dim U^(i)/U^(j) for j = {i}..{top}: {}", dims.join(" "));
    }

    // 1 + a π^4 is a square iff x^2 + c x = a is solvable mod π
    for a in [0, 1, 2] {
        let sol = solve_sqrt_equation(&k.from_int(a), &k)?;
        println!("  1 + {a} π^4 square: {}", sol.is_some());
    }
    Ok(())
}
