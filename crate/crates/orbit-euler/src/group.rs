//! Finite groups materialized as dense Cayley tables.
//!
//! Element 0 is always the identity and elements are enumerated
//! breadth-first from the identity, so every downstream computation is
//! reproducible bit for bit.

use std::collections::HashMap;
use std::hash::Hash;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::Subgroup;

/// Hard cap on group order: Cayley tables are quadratic in memory.
pub const HARD_CAP: usize = 4096;

/// Elements are indices into their parent group's tables.
pub type GroupElement = usize;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    labels: Option<Vec<String>>,
    origin: String,
}

impl FiniteGroup {
    /// Build a group from a multiplication table, verifying the group
    /// axioms. Row `a` of `mul` lists the products `a*b` for all `b`.
    /// Element 0 must be the identity.
    pub fn new(order: usize, mul: Vec<u16>, origin: impl Into<String>) -> Result<Self> {
        assert!(order >= 1, "empty group");
        assert!(order <= HARD_CAP, "order beyond hard cap");
        assert_eq!(mul.len(), order * order, "malformed table");
        // identity and Latin-square property
        let mut seen_row = vec![false; order];
        let mut seen_col = vec![false; order];
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(Error::NotInvertible);
            }
            seen_row.iter_mut().for_each(|s| *s = false);
            seen_col.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let r = mul[a * order + b] as usize;
                let c = mul[b * order + a] as usize;
                if r >= order || c >= order || seen_row[r] || seen_col[c] {
                    return Err(Error::NotInvertible);
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // two-sided inverses
        let mut inv = vec![0u16; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mul[a * order + b] == 0 && mul[b * order + a] == 0)
                .ok_or(Error::NotInvertible)?;
            inv[a] = b as u16;
        }
        let g = FiniteGroup {
            order,
            mul,
            inv,
            labels: None,
            origin: origin.into(),
        };
        // associativity: exhaustive for small orders, sampled above that
        if order <= 64 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                            return Err(Error::NotInvertible);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x0eb17);
            for _ in 0..10_000 {
                let a = rng.gen_range(0..order);
                let b = rng.gen_range(0..order);
                let c = rng.gen_range(0..order);
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    return Err(Error::NotInvertible);
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: GroupElement) -> GroupElement {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> GroupElement {
        0
    }

    /// g^a g where g^a = a^-1 g a.
    #[inline]
    pub fn conj(&self, g: GroupElement, a: GroupElement) -> GroupElement {
        self.mul(self.mul(self.inv(a), g), a)
    }

    pub fn pow(&self, g: GroupElement, mut e: u64) -> GroupElement {
        let mut acc = 0;
        let mut base = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least k >= 1 with g^k = e.
    pub fn element_order(&self, g: GroupElement) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
    }
}

/// Close a generating set under an abstract composition rule,
/// breadth-first from the identity, and return the resulting Cayley
/// table together with the element keys in enumeration order.
pub fn generate_group<K, F>(
    identity: K,
    generators: &[K],
    compose: F,
    cap: usize,
    origin: impl Into<String>,
) -> Result<(FiniteGroup, Vec<K>)>
where
    K: Clone + Eq + Hash,
    F: Fn(&K, &K) -> K,
{
    let cap = cap.min(HARD_CAP);
    let mut elems: Vec<K> = vec![identity.clone()];
    let mut index: HashMap<K, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elems.len() {
        for g in generators {
            let y = compose(&elems[head], g);
            if !index.contains_key(&y) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        head += 1;
    }
    let n = elems.len();
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let y = compose(&elems[a], &elems[b]);
            let idx = *index
                .get(&y)
                .expect("BFS closure is closed under composition");
            mul[a * n + b] = idx as u16;
        }
    }
    let g = FiniteGroup::new(n, mul, origin)?;
    Ok((g, elems))
}

/// A permutation of {0..n-1}, stored by its point images.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a bijection");
            seen[i] = true;
        }
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Cycle notation constructor; fixed points may be omitted.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                images[cyc[w]] = cyc[(w + 1) % cyc.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// (self * other)(i) = other(self(i)): left-to-right action.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }
}

/// Quotient by a normal subgroup. Returns the quotient group and the
/// projection map (element index to coset index).
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    for a in 0..g.order() {
        if n.conjugate(g, a) != *n {
            return Err(Error::NotNormal);
        }
    }
    let order = g.order() / n.order();
    let mut proj = vec![usize::MAX; g.order()];
    let mut reps: Vec<usize> = Vec::with_capacity(order);
    for a in 0..g.order() {
        if proj[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for m in n.iter(g) {
            proj[g.mul(m, a)] = id;
        }
    }
    let mut mul = vec![0u16; order * order];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * order + j] = proj[g.mul(a, b)] as u16;
        }
    }
    let q = FiniteGroup::new(order, mul, format!("quotient of {}", g.origin()))?;
    // projection is a homomorphism on the full table
    for a in 0..g.order() {
        for b in 0..g.order() {
            debug_assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
        }
    }
    Ok((q, proj))
}

/// Componentwise product G x H with index a*|H| + b.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let cap = cap.min(HARD_CAP);
    let order = g.order() * h.order();
    if order > cap {
        return Err(Error::CapExceeded { cap });
    }
    let ho = h.order();
    let mut mul = vec![0u16; order * order];
    for a1 in 0..g.order() {
        for b1 in 0..ho {
            for a2 in 0..g.order() {
                for b2 in 0..ho {
                    let x = a1 * ho + b1;
                    let y = a2 * ho + b2;
                    mul[x * order + y] = (g.mul(a1, a2) * ho + h.mul(b1, b2)) as u16;
                }
            }
        }
    }
    FiniteGroup::new(
        order,
        mul,
        format!("{} x {}", g.origin(), h.origin()),
    )
}

/// p-part of n: the largest power of p dividing n.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

/// Brute-force isomorphism search by generator-image backtracking.
/// Intended for test oracles on groups of order <= 48.
pub fn isomorphic_small(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    assert!(a.order() <= 48 && b.order() <= 48, "oracle scale only");
    if a.order() != b.order() {
        return false;
    }
    let n = a.order();
    // greedy generating set of a
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = vec![false; n];
    closed[0] = true;
    let mut closed_count = 1;
    while closed_count < n {
        let g = (0..n).find(|&g| !closed[g]).unwrap();
        gens.push(g);
        // re-close
        let mut members: Vec<usize> = (0..n).filter(|&x| closed[x]).collect();
        members.push(g);
        loop {
            let mut grew = false;
            let snapshot: Vec<usize> = members.clone();
            for &x in &snapshot {
                for &y in &snapshot {
                    let z = a.mul(x, y);
                    if !members.contains(&z) {
                        members.push(z);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        closed = vec![false; n];
        for &m in &members {
            closed[m] = true;
        }
        closed_count = members.len();
    }
    fn extend(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        k: usize,
        images: &mut Vec<usize>,
    ) -> bool {
        if k == gens.len() {
            return check_hom(a, b, gens, images);
        }
        let ord = a.element_order(gens[k]);
        for cand in 0..b.order() {
            if b.element_order(cand) != ord {
                continue;
            }
            images.push(cand);
            if extend(a, b, gens, k + 1, images) {
                return true;
            }
            images.pop();
        }
        false
    }
    fn check_hom(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
        // grow the word map from the generators; fail on any conflict
        let n = a.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for (i, &g) in gens.iter().enumerate() {
                let xa = a.mul(x, g);
                let xb = b.mul(map[x], images[i]);
                if map[xa] == usize::MAX {
                    map[xa] = xb;
                    frontier.push(xa);
                } else if map[xa] != xb {
                    return false;
                }
            }
        }
        if map.iter().any(|&m| m == usize::MAX) {
            return false;
        }
        let mut hit = vec![false; n];
        for &m in &map {
            if hit[m] {
                return false;
            }
            hit[m] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                    return false;
                }
            }
        }
        true
    }
    let mut images = Vec::new();
    extend(a, b, &gens, 0, &mut images)
}
