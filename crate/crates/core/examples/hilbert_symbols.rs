//! Hilbert symbol tables: rational integers over `Q_2`, and the
//! square-class basis over `Q_2(√-1)`.

use g2check::characters::hilbert_symbol;
use g2check::padic::{make_tower, PrecisionContext, Step};

fn main() -> g2check::Result<()> {
    let ctx = PrecisionContext::default();

    let q2 = make_tower(&[], ctx)?;
    let vals = [-1, 2, 3, 5, 6, -2];
    println!("Q2");
    print!("      ");
    for b in vals {
        print!("{b:>4}");
    }
    println!();
    for a in vals {
        print!("  {a:>3} ");
        for b in vals {
            print!("{:>4}", hilbert_symbol(&q2.from_int(a), &q2.from_int(b), &q2)?);
        }
        println!();
    }

    // for rational a, b the symbol over Q2(i) is (a, b^2) = 1, so use the
    // square-class basis instead
    let k = make_tower(&[Step::eisenstein(&[2, 2])], ctx)?;
    let basis = k.square_classes().basis().to_vec();
    println!("Q2(sqrt -1), basis b0..b{}", basis.len() - 1);
    for (i, a) in basis.iter().enumerate() {
        print!("  b{i} ");
        for b in &basis {
            print!("{:>4}", hilbert_symbol(a, b, &k)?);
        }
        println!();
    }
    let p = k.hilbert_pairing()?;
    println!("  pairing: dimension {}, rank {}, symmetric {}", p.dim(), p.rank(), p.is_symmetric());
    Ok(())
}
