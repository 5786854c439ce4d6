//! Linear algebra over `F_2` on bitmask vectors (at most 32 coordinates).

/// A subspace of `F_2^n` held as a reduced row-echelon basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    /// Rows sorted by decreasing pivot (highest set bit); each pivot bit is
    /// clear in every other row.
    rows: Vec<u32>,
}

fn pivot(x: u32) -> u32 {
    31 - x.leading_zeros()
}

impl Subspace {
    pub fn zero() -> Subspace {
        Subspace { rows: Vec::new() }
    }

    pub fn full(n: u32) -> Subspace {
        Subspace::span((0..n).map(|i| 1u32 << i))
    }

    pub fn span<I: IntoIterator<Item = u32>>(vs: I) -> Subspace {
        let mut s = Subspace::zero();
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// Reduce `v` against the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, mut v: u32) -> u32 {
        for &r in &self.rows {
            if v >> pivot(r) & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    /// Add `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: u32) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let p = pivot(v);
        for r in self.rows.iter_mut() {
            if *r >> p & 1 == 1 {
                *r ^= v;
            }
        }
        let pos = self.rows.iter().position(|&r| pivot(r) < p).unwrap_or(self.rows.len());
        self.rows.insert(pos, v);
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn order(&self) -> u64 {
        1u64 << self.rows.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.rows
    }

    /// All `2^dim` elements, in Gray-code order starting from zero.
    pub fn elements(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(1 << self.rows.len());
        let mut cur = 0u32;
        out.push(cur);
        for i in 1u32..(1 << self.rows.len()) {
            cur ^= self.rows[i.trailing_zeros() as usize];
            out.push(cur);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|&r| other.contains(r))
    }

    pub fn intersection_is_zero(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == Subspace::span(self.rows.iter().chain(&other.rows).copied()).dim()
    }
}

/// Dot product over `F_2`.
pub fn dot(a: u32, b: u32) -> u32 {
    (a & b).count_ones() & 1
}

/// The annihilator `{x : dot(x, s) = 0 for all s ∈ S}` inside `F_2^n`.
pub fn annihilator(s: &Subspace, n: u32) -> Subspace {
    let mut out = Subspace::zero();
    // one vector per non-pivot column j: e_j plus the pivots of rows touching j
    let pivots: Vec<u32> = s.basis().iter().map(|&r| pivot(r)).collect();
    for j in 0..n {
        if pivots.contains(&j) {
            continue;
        }
        let mut x = 1u32 << j;
        for &r in s.basis() {
            if r >> j & 1 == 1 {
                x |= 1 << pivot(r);
            }
        }
        out.insert(x);
    }
    out
}

/// Number of `k`-dimensional subspaces of `F_2^n`.
pub fn gaussian_binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    (num / den) as u64
}

/// Total number of subspaces of `F_2^n`.
pub fn subspace_count(n: u32) -> u64 {
    (0..=n).map(|k| gaussian_binomial(n, k)).sum()
}

/// Every subspace of `F_2^n`, each exactly once, as reduced echelon forms.
/// Calls `visit` rather than materializing the list.
pub fn for_each_subspace<F: FnMut(&Subspace)>(n: u32, mut visit: F) {
    for k in 0..=n {
        let mut chosen = Vec::with_capacity(k as usize);
        pivots_rec(k, n, &mut chosen, &mut visit);
    }
}

/// Every subspace of a given subspace, expressed in ambient coordinates.
pub fn for_each_subspace_of<F: FnMut(&Subspace)>(ambient: &Subspace, mut visit: F) {
    let basis = ambient.basis().to_vec();
    for_each_subspace(basis.len() as u32, |s| {
        let mapped = Subspace::span(s.basis().iter().map(|&v| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| v >> i & 1 == 1)
                .fold(0, |acc, (_, b)| acc ^ b)
        }));
        visit(&mapped);
    });
}

/// Choose `k` pivot positions in decreasing order, then fill the free
/// entries of each row.
fn pivots_rec<F: FnMut(&Subspace)>(k: u32, below: u32, chosen: &mut Vec<u32>, visit: &mut F) {
    if chosen.len() as u32 == k {
        fill_rows(chosen, visit);
        return;
    }
    let remaining = k - chosen.len() as u32;
    for p in (remaining - 1..below).rev() {
        chosen.push(p);
        pivots_rec(k, p, chosen, visit);
        chosen.pop();
    }
}

fn fill_rows<F: FnMut(&Subspace)>(pivots: &[u32], visit: &mut F) {
    // free positions of row r: below its pivot and not a pivot
    let free: Vec<Vec<u32>> = pivots
        .iter()
        .map(|&p| (0..p).filter(|j| !pivots.contains(j)).collect())
        .collect();
    let total_bits: u32 = free.iter().map(|f| f.len() as u32).sum();
    for mut assign in 0u64..(1u64 << total_bits) {
        let mut rows = Vec::with_capacity(pivots.len());
        for (r, &p) in pivots.iter().enumerate() {
            let mut row = 1u32 << p;
            for &j in &free[r] {
                if assign & 1 == 1 {
                    row |= 1 << j;
                }
                assign >>= 1;
            }
            rows.push(row);
        }
        visit(&Subspace { rows });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2), 35);
        assert_eq!(subspace_count(4), 67);
        assert_eq!(subspace_count(8), 417199);
    }

    #[test]
    fn enumeration_matches_count_and_is_canonical() {
        for n in 0..=6 {
            let mut seen = std::collections::HashSet::new();
            for_each_subspace(n, |s| {
                assert_eq!(Subspace::span(s.basis().iter().copied()), *s);
                seen.insert(s.clone());
            });
            assert_eq!(seen.len() as u64, subspace_count(n));
        }
    }

    #[test]
    fn annihilator_dimension() {
        let s = Subspace::span([0b0011, 0b0110]);
        let a = annihilator(&s, 4);
        assert_eq!(a.dim(), 2);
        for &x in a.basis() {
            assert!(s.basis().iter().all(|&r| dot(x, r) == 0));
        }
    }

    #[test]
    fn gray_code_elements() {
        let s = Subspace::span([0b101, 0b010]);
        let mut els = s.elements();
        els.sort();
        assert_eq!(els, vec![0, 0b010, 0b101, 0b111]);
    }
}
