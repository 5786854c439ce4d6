//! The unramified coefficient ring `W = Z_2[ω]/(ω² + ω + 1)` truncated to
//! 64 bits per coordinate, and the residue fields `F_2 ⊂ F_4`.
//!
//! Every element of a tower is stored as a polynomial in the uniformizer
//! with coefficients in `W`. Arithmetic is exact in `W / 2^64 W`; the owning
//! element tracks which of those bits are actually known.

use std::fmt;

/// An element `a + b·ω` of `W / 2^64`. Over `Z_2` only `b = 0` occurs.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct W {
    pub a: u64,
    pub b: u64,
}

impl fmt::Debug for W {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a as i64)
        } else {
            write!(f, "({} + {}ω)", self.a as i64, self.b as i64)
        }
    }
}

impl W {
    pub const ZERO: W = W { a: 0, b: 0 };
    pub const ONE: W = W { a: 1, b: 0 };
    pub const OMEGA: W = W { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> W {
        W {
            a: a as u64,
            b: b as u64,
        }
    }

    pub fn from_int(a: i64) -> W {
        W::new(a, 0)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(self, o: W) -> W {
        W {
            a: self.a.wrapping_add(o.a),
            b: self.b.wrapping_add(o.b),
        }
    }

    pub fn sub(self, o: W) -> W {
        W {
            a: self.a.wrapping_sub(o.a),
            b: self.b.wrapping_sub(o.b),
        }
    }

    pub fn neg(self) -> W {
        W {
            a: self.a.wrapping_neg(),
            b: self.b.wrapping_neg(),
        }
    }

    // ω² = -1 - ω
    pub fn mul(self, o: W) -> W {
        let ac = self.a.wrapping_mul(o.a);
        let bd = self.b.wrapping_mul(o.b);
        let cross = self.a.wrapping_mul(o.b).wrapping_add(self.b.wrapping_mul(o.a));
        W {
            a: ac.wrapping_sub(bd),
            b: cross.wrapping_sub(bd),
        }
    }

    /// Conjugate under ω ↦ ω² = -1 - ω.
    pub fn conj(self) -> W {
        W {
            a: self.a.wrapping_sub(self.b),
            b: self.b.wrapping_neg(),
        }
    }

    /// 2-adic valuation (`None` for zero modulo 2^64).
    pub fn v2(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.a.trailing_zeros().min(self.b.trailing_zeros()))
        }
    }

    pub fn is_unit(self) -> bool {
        (self.a | self.b) & 1 == 1
    }

    /// Inverse of a unit, via the norm `a² - ab + b²`.
    pub fn inverse(self) -> Option<W> {
        if !self.is_unit() {
            return None;
        }
        let n = self
            .a
            .wrapping_mul(self.a)
            .wrapping_sub(self.a.wrapping_mul(self.b))
            .wrapping_add(self.b.wrapping_mul(self.b));
        let ninv = inv_u64(n);
        let c = self.conj();
        Some(W {
            a: c.a.wrapping_mul(ninv),
            b: c.b.wrapping_mul(ninv),
        })
    }

    /// Keep the low `bits` bits of each coordinate.
    pub fn mask(self, bits: u32) -> W {
        if bits >= 64 {
            self
        } else {
            let m = (1u64 << bits) - 1;
            W {
                a: self.a & m,
                b: self.b & m,
            }
        }
    }

    /// Exact halving of an even element; the top bit becomes unknown (zero).
    pub fn halve(self) -> W {
        debug_assert!(self.a & 1 == 0 && self.b & 1 == 0);
        W {
            a: self.a >> 1,
            b: self.b >> 1,
        }
    }

    pub fn residue(self) -> Residue {
        Residue(((self.a & 1) | ((self.b & 1) << 1)) as u8)
    }

    pub fn scale(self, k: i64) -> W {
        self.mul(W::from_int(k))
    }
}

fn inv_u64(n: u64) -> u64 {
    debug_assert!(n & 1 == 1);
    let mut x = n;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(x)));
    }
    x
}

/// An element of the residue field `F_4 = F_2[ω]`; bit 0 is the coefficient
/// of 1, bit 1 the coefficient of ω. `F_2` is the subfield `{0, 1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(pub u8);

impl Residue {
    pub const ZERO: Residue = Residue(0);
    pub const ONE: Residue = Residue(1);
    pub const OMEGA: Residue = Residue(2);
    pub const OMEGA2: Residue = Residue(3);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, o: Residue) -> Residue {
        Residue(self.0 ^ o.0)
    }

    pub fn mul(self, o: Residue) -> Residue {
        let (a0, a1) = (self.0 & 1, self.0 >> 1);
        let (b0, b1) = (o.0 & 1, o.0 >> 1);
        let c0 = (a0 & b0) ^ (a1 & b1);
        let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        Residue(c0 | (c1 << 1))
    }

    pub fn square(self) -> Residue {
        self.mul(self)
    }

    /// Square root in `F_{2^f}`: the inverse of Frobenius, `x^(2^(f-1))`.
    pub fn sqrt(self, f: u32) -> Residue {
        if f == 1 {
            self
        } else {
            self.square()
        }
    }

    pub fn inverse(self) -> Option<Residue> {
        match self.0 {
            0 => None,
            1 => Some(Residue(1)),
            2 => Some(Residue(3)),
            _ => Some(Residue(2)),
        }
    }

    /// The Teichmüller lift: `0`, `1`, `ω` or `ω²`.
    pub fn lift(self) -> W {
        match self.0 {
            // ω² = -1 - ω
            3 => W {
                a: u64::MAX,
                b: u64::MAX,
            },
            r => W {
                a: (r & 1) as u64,
                b: (r >> 1) as u64,
            },
        }
    }

    /// All elements of `F_{2^f}`.
    pub fn all(f: u32) -> Vec<Residue> {
        (0..(1u8 << f)).map(Residue).collect()
    }

    /// An `F_2`-basis of `F_{2^f}`.
    pub fn basis(f: u32) -> Vec<Residue> {
        if f == 1 {
            vec![Residue::ONE]
        } else {
            vec![Residue::ONE, Residue::OMEGA]
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "0",
            1 => "1",
            2 => "ω",
            _ => "ω²",
        };
        f.write_str(s)
    }
}

/// Solve `M x = rhs` over `W / 2^64` for a matrix invertible over `W`
/// (unit determinant). Columns are indexed by the second subscript.
/// Returns `None` when no unit pivot exists in some column.
pub fn solve_unimodular(m: &[Vec<W>], rhs: &[Vec<W>]) -> Option<Vec<Vec<W>>> {
    let n = m.len();
    let k = rhs.len();
    // augmented rows: row r = [m[r][0..n], rhs[0][r], .., rhs[k-1][r]]
    let mut rows: Vec<Vec<W>> = (0..n)
        .map(|r| {
            let mut row = m[r].clone();
            row.extend(rhs.iter().map(|v| v[r]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| rows[r][col].is_unit())?;
        rows.swap(col, piv);
        let inv = rows[col][col].inverse()?;
        for x in rows[col].iter_mut() {
            *x = x.mul(inv);
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                let pivot_row = rows[col].clone();
                for (x, p) in rows[r].iter_mut().zip(pivot_row) {
                    *x = x.sub(factor.mul(p));
                }
            }
        }
    }
    Some(
        (0..k)
            .map(|j| (0..n).map(|r| rows[r][n + j]).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let w = W::OMEGA;
        let w2 = w.mul(w);
        assert_eq!(w2.add(w).add(W::ONE), W::ZERO);
        assert_eq!(w2.mul(w), W::ONE);
    }

    #[test]
    fn unit_inverse() {
        for &(a, b) in &[(1, 0), (3, 2), (-7, 4), (2, 1), (5, 11)] {
            let x = W::new(a, b);
            assert_eq!(x.mul(x.inverse().unwrap()), W::ONE);
        }
        assert!(W::new(2, 4).inverse().is_none());
    }

    #[test]
    fn residue_field_f4() {
        let w = Residue::OMEGA;
        assert_eq!(w.mul(w), Residue::OMEGA2);
        assert_eq!(w.mul(Residue::OMEGA2), Residue::ONE);
        for x in Residue::all(2) {
            assert_eq!(x.sqrt(2).square(), x);
            if !x.is_zero() {
                assert_eq!(x.mul(x.inverse().unwrap()), Residue::ONE);
            }
        }
    }

    #[test]
    fn solve_small_system() {
        // [[1, 2], [3, 4]] has determinant -2: not unimodular over Z_2
        let m = vec![vec![W::from_int(1), W::from_int(2)], vec![W::from_int(3), W::from_int(4)]];
        assert!(solve_unimodular(&m, &[vec![W::ONE, W::ZERO]]).is_none());
        let m = vec![vec![W::from_int(1), W::from_int(2)], vec![W::from_int(3), W::from_int(5)]];
        let x = solve_unimodular(&m, &[vec![W::from_int(1), W::from_int(0)]]).unwrap();
        // inverse of [[1,2],[3,5]] is [[-5,2],[3,-1]]
        assert_eq!(x[0], vec![W::from_int(-5), W::from_int(3)]);
    }
}
