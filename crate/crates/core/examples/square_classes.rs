//! Bases of `K^×/(K^×)^2` and coordinates of a few elements.

use g2check::padic::{make_tower, square_class_coords, PrecisionContext, SquareClassGen, Step};

fn main() -> g2check::Result<()> {
    let ctx = PrecisionContext::default();
    let fields = [
        ("Q2", vec![]),
        ("Q2(sqrt -1)", vec![Step::eisenstein(&[2, 2])]),
        ("Q4", vec![Step::unramified()]),
        ("Q4(cbrt 2)", vec![Step::unramified(), Step::eisenstein(&[-2, 0, 0])]),
    ];
    for (name, steps) in fields {
        let k = make_tower(&steps, ctx)?;
        let data = k.square_classes();
        println!("{name}: dimension {} (degree {} + 2)", data.dim(), k.degree());
        for g in data.gens() {
            match g {
                SquareClassGen::Uniformizer => println!("    π"),
                SquareClassGen::Principal { level, residue } => println!("    1 + [{residue}] π^{level}"),
                SquareClassGen::Defect => println!("    1 + [{}] π^{} (defect)", data.defect_residue(), 2 * k.e()),
            }
        }
        for n in [-1, 2, 3, 5, 7] {
            println!("    class of {n:>2}: {:0w$b}", square_class_coords(&k.from_int(n))?, w = data.dim());
        }
    }
    Ok(())
}
