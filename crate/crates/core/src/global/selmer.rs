//! 2-Selmer groups `{δ ∈ F^× / (F^×)² : F(√δ)/F unramified outside 2, ∞}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::field::{int_valuation, QuadraticFieldData, TwoSplitting};
use super::quadratic::{q, QuadElt};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelmerClass {
    /// Canonical representative: a product of basis elements.
    #[serde(serialize_with = "super::field::serialize_elt")]
    pub representative: QuadElt,
    /// Which basis elements enter the product.
    pub mask: u32,
}

/// `x` and `y` differ by a square.
pub fn same_square_class(x: &QuadElt, y: &QuadElt) -> bool {
    (x * y).is_square()
}

/// How a candidate was absorbed during reduction.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateFate {
    #[serde(serialize_with = "super::field::serialize_elt")]
    pub candidate: QuadElt,
    /// `None` when the candidate joined the basis; otherwise the basis mask
    /// of the class it collapsed onto.
    pub collapsed_onto: Option<u32>,
}

/// Product of the basis elements selected by `mask`.
pub fn class_product(basis: &[QuadElt], d: i64, mask: u32) -> QuadElt {
    basis
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(QuadElt::one(d), |acc, (_, b)| &acc * b)
}

/// Reduce candidates modulo squares by testing every product against the
/// current basis.
pub fn reduce_mod_squares(d: i64, candidates: &[QuadElt]) -> (Vec<QuadElt>, Vec<CandidateFate>) {
    let mut basis: Vec<QuadElt> = Vec::new();
    let mut fates = Vec::new();
    for c in candidates {
        let hit = (0u32..(1 << basis.len())).find(|&m| same_square_class(c, &class_product(&basis, d, m)));
        match hit {
            Some(m) => fates.push(CandidateFate {
                candidate: c.clone(),
                collapsed_onto: Some(m),
            }),
            None => {
                basis.push(c.clone());
                fates.push(CandidateFate {
                    candidate: c.clone(),
                    collapsed_onto: None,
                });
            }
        }
    }
    (basis, fates)
}

fn odd_primes_dividing(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    while n.is_even() && !n.is_zero() {
        n /= 2;
    }
    let mut p = 3u64;
    while BigInt::from(p * p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += 2;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("small norm"));
    }
    out
}

/// Legendre symbol `(a / p)` for odd prime `p`.
fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut r = 1u64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// The principal ideal `(x)` is a square times primes above 2: every odd
/// prime ideal occurs to an even power.
pub fn is_square_away_from_two(x: &QuadElt) -> bool {
    if x.is_zero() {
        return false;
    }
    // scale by a square so that x = a + b√d with integers a, b
    let m = BigRational::from_integer(x.denominator());
    let y = x.scale(&(&m * &m));
    let a = y.a.to_integer();
    let b = y.b.to_integer();
    let n = (&a * &a - &b * &b * BigInt::from(y.d)).abs();
    let content = a.gcd(&b);
    odd_primes_dividing(&n).into_iter().all(|p| {
        let vn = int_valuation(&n, p);
        match legendre(x.d, p) {
            0 => vn.is_multiple_of(2),
            1 => vn.is_multiple_of(2) && int_valuation(&content, p).is_multiple_of(2),
            _ => vn.is_multiple_of(4),
        }
    })
}

/// Generators of `q²` for ideals `q` whose class has order 2 and is not
/// accounted for by the prime above 2; only arises for imaginary `F` with
/// even class number.
pub fn two_torsion_square_generators(f: &QuadraticFieldData) -> Vec<QuadElt> {
    if f.is_real() || f.h % 2 == 1 {
        return Vec::new();
    }
    let d = f.d;
    let k: i64 = if f.half_integral() { 2 } else { 1 };
    let mut out = Vec::new();
    for p in (3i64..50).filter(|&p| (2..p).all(|r| p % r != 0)) {
        if legendre(d, p as u64) < 0 {
            continue;
        }
        // (x + y√d)/k of norm n, with y ≠ 0
        let find = |n: i64| -> Option<QuadElt> {
            (1..=n).find_map(|y| {
                let x2 = k * k * n - (-d) * y * y;
                if x2 < 0 {
                    return None;
                }
                let x = (x2 as f64).sqrt().round() as i64;
                (x * x == x2 && (k == 1 || (x - y) % 2 == 0)).then(|| QuadElt::new(d, q(x) / q(k), q(y) / q(k)))
            })
        };
        if find(p).is_some() {
            continue; // principal
        }
        if let Some(g) = find(p * p) {
            out.push(g);
            break;
        }
    }
    out
}

/// Candidates: units modulo squares, a generator of the prime above 2 (or
/// of its square), and square-ideal generators from 2-torsion classes.
pub fn selmer_candidates(f: &QuadraticFieldData) -> Vec<QuadElt> {
    let mut c = f.unit_generators();
    c.push(f.two_prime_generator.clone());
    c.extend(two_torsion_square_generators(f));
    c
}

/// `r1 + r2` (units modulo squares) plus one prime over 2 plus the
/// 2-rank of the `S`-class group.
pub fn expected_selmer_dimension(f: &QuadraticFieldData) -> Result<u32> {
    let (r1, r2) = f.signature;
    let primes_over_two = if f.two_splitting == TwoSplitting::Split { 2 } else { 1 };
    let cl_s_rank = match f.h {
        1 => 0,
        2 if !f.two_prime_principal => 0,
        2 => 1,
        _ => return Err(Error::UnsupportedField(f.d)),
    };
    Ok(r1 + r2 + primes_over_two + cl_s_rank)
}

/// Full reduction record for a field.
#[derive(Clone, Debug, Serialize)]
pub struct SelmerComputation {
    pub d: i64,
    pub basis: Vec<SelmerClass>,
    pub candidates: Vec<CandidateFate>,
    pub expected_dimension: u32,
}

pub fn selmer_computation(f: &QuadraticFieldData) -> Result<SelmerComputation> {
    let cands = selmer_candidates(f);
    for c in &cands {
        if !is_square_away_from_two(c) {
            return Err(Error::ReductionFailure(format!("candidate {c} is not a square ideal away from 2")));
        }
    }
    let (basis, fates) = reduce_mod_squares(f.d, &cands);
    let expected = expected_selmer_dimension(f)?;
    if basis.len() as u32 != expected {
        return Err(Error::ReductionFailure(format!(
            "found {} independent classes for d = {}, expected {expected}",
            basis.len(),
            f.d
        )));
    }
    Ok(SelmerComputation {
        d: f.d,
        basis: basis
            .iter()
            .enumerate()
            .map(|(i, b)| SelmerClass {
                representative: b.clone(),
                mask: 1 << i,
            })
            .collect(),
        candidates: fates,
        expected_dimension: expected,
    })
}

pub fn selmer_basis(f: &QuadraticFieldData) -> Result<Vec<SelmerClass>> {
    Ok(selmer_computation(f)?.basis)
}

/// Every nontrivial class, as the product of the basis elements it uses.
pub fn selmer_classes(f: &QuadraticFieldData) -> Result<Vec<SelmerClass>> {
    let basis: Vec<QuadElt> = selmer_basis(f)?.into_iter().map(|c| c.representative).collect();
    Ok((1u32..(1 << basis.len()))
        .map(|m| SelmerClass {
            representative: class_product(&basis, f.d, m),
            mask: m,
        })
        .collect())
}

/// No nonempty product of the given elements is a square.
pub fn is_independent(d: i64, elts: &[QuadElt]) -> bool {
    (1u32..(1 << elts.len())).all(|m| !class_product(elts, d, m).is_square())
}

#[cfg(test)]
mod tests {
    use super::super::field::quad_field;
    use super::super::quadratic::parse_quad;
    use super::*;

    #[test]
    fn dimensions() {
        for (d, dim) in [(2, 3), (3, 3), (5, 3), (-1, 2), (-2, 2), (-3, 2), (-5, 2)] {
            let f = quad_field(d).unwrap();
            let b = selmer_basis(&f).unwrap();
            assert_eq!(b.len(), dim, "d = {d}");
            let elts: Vec<QuadElt> = b.into_iter().map(|c| c.representative).collect();
            assert!(is_independent(d, &elts));
        }
    }

    #[test]
    fn minus_five_collapse() {
        let f = quad_field(-5).unwrap();
        let comp = selmer_computation(&f).unwrap();
        let basis: Vec<QuadElt> = comp.basis.iter().map(|c| c.representative.clone()).collect();
        assert_eq!(basis, vec![parse_quad(-5, "-1").unwrap(), parse_quad(-5, "2").unwrap()]);
        let fate = comp
            .candidates
            .iter()
            .find(|c| c.candidate == parse_quad(-5, "2+s").unwrap())
            .unwrap();
        // onto -1 · 2
        assert_eq!(fate.collapsed_onto, Some(0b11));
        assert!(same_square_class(&parse_quad(-5, "2+s").unwrap(), &parse_quad(-5, "-2").unwrap()));
    }

    #[test]
    fn square_ideals() {
        assert!(is_square_away_from_two(&parse_quad(-5, "2+s").unwrap()));
        assert!(is_square_away_from_two(&parse_quad(2, "1+s").unwrap()));
        assert!(!is_square_away_from_two(&parse_quad(-1, "3").unwrap()));
        assert!(!is_square_away_from_two(&parse_quad(-5, "3").unwrap()));
        assert!(!is_square_away_from_two(&parse_quad(2, "3+s").unwrap()));
        assert!(is_square_away_from_two(&parse_quad(2, "9").unwrap()));
    }
}
