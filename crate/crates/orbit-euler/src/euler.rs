//! Euler characteristics of finite posets and of finite categories
//! presented by their zeta matrices: weightings, coweightings, chi and
//! reduced chi, plus an independent chain-counting oracle.
//!
//! All arithmetic is exact; there is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::Subgroup;

/// A finite poset given by its full order relation.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    pub fn new(size: usize, leq: Vec<bool>) -> Self {
        assert_eq!(leq.len(), size * size);
        let p = FinitePoset { size, leq };
        for a in 0..size {
            assert!(p.leq(a, a), "relation not reflexive");
            for b in 0..size {
                if a != b {
                    assert!(
                        !(p.leq(a, b) && p.leq(b, a)),
                        "relation not antisymmetric"
                    );
                }
                for c in 0..size {
                    if p.leq(a, b) && p.leq(b, c) {
                        assert!(p.leq(a, c), "relation not transitive");
                    }
                }
            }
        }
        p
    }

    /// Poset of subgroups under inclusion.
    pub fn of_subgroups(subs: &[Subgroup]) -> Self {
        let n = subs.len();
        let mut leq = vec![false; n * n];
        for (i, a) in subs.iter().enumerate() {
            for (j, b) in subs.iter().enumerate() {
                leq[i * n + j] = a.is_subset_of(b);
            }
        }
        FinitePoset::new(n, leq)
    }

    pub fn empty() -> Self {
        FinitePoset {
            size: 0,
            leq: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn opposite(&self) -> FinitePoset {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq(b, a);
            }
        }
        FinitePoset { size: n, leq }
    }

    /// A linear extension: indices ordered so a <= b implies a first.
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&v| (0..self.size).filter(|&u| self.leq(u, v)).count());
        order
    }
}

/// Square matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Weighting,
    Coweighting,
}

/// A verified solution of zeta k = 1 (or k^T zeta = 1).
#[derive(Clone, Debug)]
pub struct WeightVector {
    pub coords: Vec<BigRational>,
    pub side: Side,
    pub unique: bool,
}

impl WeightVector {
    pub fn sum(&self) -> BigRational {
        self.coords.iter().sum()
    }
}

/// zeta[a][b] = 1 if a <= b, else 0.
pub fn zeta_of_poset(p: &FinitePoset) -> RationalMatrix {
    let n = p.size();
    let mut z = RationalMatrix::zero(n);
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) {
                z.set(a, b, BigRational::one());
            }
        }
    }
    z
}

/// Solve A x = b exactly; deterministic pivoting (first nonzero).
/// Returns the particular solution with free variables set to zero and
/// a uniqueness flag, or None when inconsistent.
fn solve_exact(a: &RationalMatrix, b: &[BigRational]) -> Option<(Vec<BigRational>, bool)> {
    let n = a.size();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let pv = m[row][col].clone();
        for j in col..=n {
            m[row][j] = &m[row][j] / &pv;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=n {
                    m[r][j] = &m[r][j] - &f * &m[row][j];
                }
            }
        }
        pivot_col_of_row[row] = col;
        row += 1;
        if row == n {
            break;
        }
    }
    for r in row..n {
        if !m[r][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for r in 0..row {
        x[pivot_col_of_row[r]] = m[r][n].clone();
    }
    Some((x, row == n))
}

/// A weighting for zeta: a vector k with all coordinates of zeta k
/// equal to 1. The result is re-multiplied and verified exactly.
pub fn weighting(z: &RationalMatrix) -> Result<WeightVector> {
    let ones = vec![BigRational::one(); z.size()];
    let (coords, unique) = solve_exact(z, &ones).ok_or(Error::NoWeighting)?;
    assert!(z.mul_vec(&coords) == ones, "weighting verification failed");
    Ok(WeightVector {
        coords,
        side: Side::Weighting,
        unique,
    })
}

pub fn coweighting(z: &RationalMatrix) -> Result<WeightVector> {
    let w = weighting(&z.transpose())?;
    Ok(WeightVector {
        coords: w.coords,
        side: Side::Coweighting,
        unique: w.unique,
    })
}

/// The coordinate sum of a weighting (equivalently of a coweighting;
/// both are computed and compared).
pub fn euler_characteristic(z: &RationalMatrix) -> Result<BigRational> {
    let w = weighting(z).map_err(|_| Error::NoEulerCharacteristic)?;
    let c = coweighting(z).map_err(|_| Error::NoEulerCharacteristic)?;
    let chi = w.sum();
    assert_eq!(chi, c.sum(), "weighting and coweighting sums differ");
    Ok(chi)
}

/// Weighting of a poset zeta by back-substitution along a linear
/// extension. Always exists; integral for unit-diagonal triangular
/// systems like these.
pub fn poset_weighting(p: &FinitePoset) -> Vec<BigRational> {
    let n = p.size();
    let order = p.linear_extension();
    let mut k = vec![BigRational::zero(); n];
    for &a in order.iter().rev() {
        let mut acc = BigRational::one();
        for &b in order.iter().rev() {
            if b != a && p.leq(a, b) {
                acc -= &k[b];
            }
        }
        k[a] = acc;
    }
    debug_assert!(zeta_of_poset(p).mul_vec(&k) == vec![BigRational::one(); n]);
    k
}

/// chi of a poset: coordinate sum of its weighting; 0 for the empty
/// poset.
pub fn euler_of_poset(p: &FinitePoset) -> BigRational {
    poset_weighting(p).iter().sum()
}

/// Reduced Euler characteristic chi - 1 (so the empty poset gives -1).
pub fn reduced_euler_poset(p: &FinitePoset) -> BigRational {
    euler_of_poset(p) - BigRational::one()
}

/// Independent oracle: Euler characteristic of the order complex,
/// the alternating sum of counts of strictly increasing chains.
pub fn chain_count_euler(p: &FinitePoset) -> BigRational {
    let n = p.size();
    let order = p.linear_extension();
    // c[v] = signed count of chains ending at v; chi = sum of c[v]
    let mut c: Vec<BigInt> = vec![BigInt::zero(); n];
    for &v in &order {
        let mut acc = BigInt::one();
        for &u in &order {
            if u != v && p.leq(u, v) {
                acc -= &c[u];
            }
        }
        c[v] = acc;
    }
    BigRational::from_integer(c.into_iter().sum())
}

/// Reduced chain-count Euler characteristic.
pub fn chain_count_reduced(p: &FinitePoset) -> BigRational {
    chain_count_euler(p) - BigRational::one()
}

/// Exact integer from a rational known to be integral.
pub fn rational_to_int(r: &BigRational) -> BigInt {
    assert!(r.is_integer(), "expected an integer");
    r.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_group;
    use crate::lattice::all_p_subgroups;
    use num_bigint::BigInt;

    fn chain_poset(n: usize) -> FinitePoset {
        FinitePoset::new(n, (0..n).flat_map(|a| (0..n).map(move |b| a <= b)).collect())
    }

    fn antichain(n: usize) -> FinitePoset {
        FinitePoset::new(n, (0..n).flat_map(|a| (0..n).map(move |b| a == b)).collect())
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn chains_are_contractible_and_antichains_count_points() {
        for n in 1..7 {
            assert_eq!(euler_of_poset(&chain_poset(n)), int(1));
            assert_eq!(euler_of_poset(&antichain(n)), int(n as i64));
            assert_eq!(chain_count_euler(&chain_poset(n)), int(1));
            assert_eq!(chain_count_euler(&antichain(n)), int(n as i64));
        }
    }

    #[test]
    fn empty_poset_has_reduced_euler_minus_one() {
        let e = FinitePoset::empty();
        assert_eq!(euler_of_poset(&e), int(0));
        assert_eq!(reduced_euler_poset(&e), int(-1));
        assert_eq!(chain_count_reduced(&e), int(-1));
    }

    #[test]
    fn circle_poset_has_euler_zero() {
        // two minimal and two maximal points, full bipartite order:
        // the order complex is a 4-cycle, chi = 0
        let mut leq = vec![false; 16];
        for i in 0..4 {
            leq[i * 4 + i] = true;
        }
        for a in 0..2 {
            for b in 2..4 {
                leq[a * 4 + b] = true;
            }
        }
        let p = FinitePoset::new(4, leq);
        assert_eq!(euler_of_poset(&p), int(0));
        assert_eq!(chain_count_euler(&p), int(0));
    }

    #[test]
    fn euler_invariant_under_opposite() {
        for spec in ["S4", "A4", "D12"] {
            let g = catalog_group(spec).unwrap();
            let subs: Vec<_> = all_p_subgroups(&g, 2)
                .into_iter()
                .filter(|s| s.order() > 1)
                .collect();
            let p = FinitePoset::of_subgroups(&subs);
            assert_eq!(euler_of_poset(&p), euler_of_poset(&p.opposite()));
        }
    }

    #[test]
    fn weighting_matches_general_solver_on_subgroup_posets() {
        let g = catalog_group("S4").unwrap();
        let subs = all_p_subgroups(&g, 2);
        let poset = FinitePoset::of_subgroups(&subs);
        let z = zeta_of_poset(&poset);
        let w = weighting(&z).unwrap();
        assert!(w.unique);
        assert_eq!(w.coords, poset_weighting(&poset));
        assert_eq!(w.sum(), euler_characteristic(&z).unwrap());
        assert_eq!(w.sum(), chain_count_euler(&poset));
    }

    #[test]
    fn chain_count_agrees_with_weighting_on_subgroup_posets() {
        for spec in ["S4", "S5", "SL(2,3)", "GL(2,3)", "A5"] {
            let g = catalog_group(spec).unwrap();
            for p in [2u64, 3, 5] {
                if g.order() as u64 % p != 0 {
                    continue;
                }
                let subs: Vec<_> = all_p_subgroups(&g, p)
                    .into_iter()
                    .filter(|s| s.order() > 1)
                    .collect();
                let poset = FinitePoset::of_subgroups(&subs);
                assert_eq!(
                    euler_of_poset(&poset),
                    chain_count_euler(&poset),
                    "{spec} p={p}"
                );
            }
        }
    }

    #[test]
    fn singular_zeta_has_no_weighting() {
        // 2x2 all-ones matrix: k1 + k2 = 1 twice, solvable but not unique
        let z = RationalMatrix::from_integers(&[vec![1, 1], vec![1, 1]]);
        let w = weighting(&z).unwrap();
        assert!(!w.unique);
        // inconsistent system: zero matrix
        let z = RationalMatrix::zero(2);
        assert!(weighting(&z).is_err());
    }

    #[test]
    fn non_integral_weighting_is_exact() {
        // the S4 2-radical modified TOM in ascending class order has
        // weighting (-2, 1); the plain TOM weighting is (-1/3, 1)
        let z = RationalMatrix::from_integers(&[vec![6, 3], vec![0, 1]]);
        let w = weighting(&z).unwrap();
        assert_eq!(w.coords[0], BigRational::new(BigInt::from(-1), BigInt::from(3)));
        assert_eq!(w.coords[1], int(1));
    }

    #[test]
    #[should_panic(expected = "expected an integer")]
    fn rational_to_int_rejects_fractions() {
        rational_to_int(&BigRational::new(BigInt::from(1), BigInt::from(2)));
    }
}
