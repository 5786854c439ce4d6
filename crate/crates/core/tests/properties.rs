//! Randomized laws for local and global arithmetic.

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use proptest::prelude::*;

use g2check::characters::hilbert_symbol;
use g2check::global::{parse_quad, QuadElt};
use g2check::padic::{make_tower, sqrt, square_class_coords, LocalFieldTower, PadicElement, PrecisionContext, Step};

fn tower(i: usize) -> Arc<LocalFieldTower> {
    static TOWERS: OnceLock<Vec<Arc<LocalFieldTower>>> = OnceLock::new();
    TOWERS.get_or_init(|| {
        let c = PrecisionContext::default();
        vec![
            make_tower(&[Step::eisenstein(&[-2, 0])], c).unwrap(),
            make_tower(&[Step::eisenstein(&[6, 2])], c).unwrap(),
            make_tower(&[Step::unramified()], c).unwrap(),
            make_tower(&[Step::unramified(), Step::eisenstein(&[-2, 0, 0])], c).unwrap(),
        ]
    })[i]
        .clone()
}

fn elem(k: &Arc<LocalFieldTower>, coeffs: &[(i64, i64)], shift: i64) -> PadicElement {
    let c: Vec<(i64, i64)> = coeffs
        .iter()
        .take(k.e() as usize)
        .map(|&(a, b)| (a, if k.f() == 2 { b } else { 0 }))
        .collect();
    k.from_coeffs(&c).shift(shift)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-1000i64..1000, -1000i64..1000), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_classes_are_a_homomorphism(t in 0usize..4, a in coeffs(), b in coeffs(), sa in -4i64..4, sb in -4i64..4) {
        let k = tower(t);
        let x = elem(&k, &a, sa);
        let y = elem(&k, &b, sb);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let cx = square_class_coords(&x).unwrap();
        let cy = square_class_coords(&y).unwrap();
        prop_assert_eq!(square_class_coords(&(&x * &y)).unwrap(), cx ^ cy);
        prop_assert_eq!(square_class_coords(&(&x * &x)).unwrap(), 0);
    }

    #[test]
    fn square_roots_square_back(t in 0usize..4, a in coeffs(), s in -4i64..4) {
        let k = tower(t);
        let x = elem(&k, &a, s);
        prop_assume!(!x.is_zero());
        let sq = &x * &x;
        let r = sqrt(&sq).unwrap().expect("a square has a root");
        prop_assert!((&r * &r).approx_eq(&sq));
    }

    #[test]
    fn valuation_is_additive(t in 0usize..4, a in coeffs(), b in coeffs(), sa in -4i64..4, sb in -4i64..4) {
        let k = tower(t);
        let x = elem(&k, &a, sa);
        let y = elem(&k, &b, sb);
        prop_assume!(!x.is_zero() && !y.is_zero());
        prop_assert_eq!((&x * &y).valuation_pi().unwrap(), x.valuation_pi().unwrap() + y.valuation_pi().unwrap());
    }

    #[test]
    fn norms_are_trivial_symbols(t in 0usize..4, a in coeffs(), b in coeffs(), c in coeffs()) {
        // x² - a y² is a norm from K(√a)
        let k = tower(t);
        let x = elem(&k, &a, 0);
        let y = elem(&k, &b, 0);
        let d = elem(&k, &c, 1);
        prop_assume!(!d.is_zero());
        let n = &(&x * &x) - &(&d * &(&y * &y));
        prop_assume!(!n.is_zero() && n.rel_precision() > 20);
        prop_assert_eq!(hilbert_symbol(&d, &n, &k).unwrap(), 1);
    }
}

fn quad(d: i64) -> impl Strategy<Value = QuadElt> {
    (-50i64..50, 1i64..8, -50i64..50, 1i64..8).prop_map(move |(a, da, b, db)| {
        QuadElt::new(
            d,
            BigRational::new(a.into(), da.into()),
            BigRational::new(b.into(), db.into()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn norm_is_multiplicative(x in quad(-5), y in quad(-5), u in quad(3), v in quad(3)) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&u * &v).norm(), u.norm() * v.norm());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn display_round_trips(x in quad(5), y in quad(-2)) {
        prop_assert_eq!(parse_quad(5, &x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(parse_quad(-2, &y.to_string()).unwrap(), y);
    }

    #[test]
    fn squares_are_squares(x in quad(2), y in quad(-3)) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        prop_assert!((&x * &x).is_square());
        let r = (&y * &y).sqrt().unwrap();
        prop_assert_eq!(&r * &r, &y * &y);
    }
}
