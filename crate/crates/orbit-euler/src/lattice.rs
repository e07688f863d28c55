//! Subgroup enumeration: Sylow subgroups, normalizers, transporters,
//! O_p, p-radical subgroups, cyclic p-subgroups and conjugacy classes
//! of subgroups.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{p_part, FiniteGroup, GroupElement};

/// An element subset of a parent group, closed under multiplication
/// and inversion, stored as a bitset over element indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subgroup {
    words: Vec<u64>,
    order: usize,
    parent_order: usize,
}

impl Subgroup {
    /// Checked constructor: the member set must contain the identity
    /// and be closed under multiplication (inverses follow).
    pub fn new(g: &FiniteGroup, members: &[GroupElement]) -> Self {
        let mut s = Self::from_bits(g.order(), members.iter().copied());
        assert!(s.contains(0), "subgroup must contain the identity");
        for a in s.iter_vec() {
            for b in s.iter_vec() {
                assert!(s.contains(g.mul(a, b)), "member set not closed");
            }
        }
        assert_eq!(
            g.order() % s.order,
            0,
            "Lagrange: subgroup order must divide group order"
        );
        s.order = s.count();
        s
    }

    fn from_bits(parent_order: usize, members: impl Iterator<Item = usize>) -> Self {
        let mut words = vec![0u64; (parent_order + 63) / 64];
        let mut order = 0;
        for m in members {
            let w = &mut words[m / 64];
            if *w & (1 << (m % 64)) == 0 {
                *w |= 1 << (m % 64);
                order += 1;
            }
        }
        Subgroup {
            words,
            order,
            parent_order,
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_bits(g.order(), std::iter::once(0))
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_bits(g.order(), 0..g.order())
    }

    /// Closure of a generating set, breadth-first.
    pub fn closure(g: &FiniteGroup, gens: &[GroupElement]) -> Self {
        let mut words = vec![0u64; (g.order() + 63) / 64];
        let mut members = vec![0usize];
        words[0] |= 1;
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &gen in gens {
                let y = g.mul(x, gen);
                if words[y / 64] & (1 << (y % 64)) == 0 {
                    words[y / 64] |= 1 << (y % 64);
                    members.push(y);
                }
            }
            head += 1;
        }
        Subgroup {
            words,
            order: members.len(),
            parent_order: g.order(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn contains(&self, x: GroupElement) -> bool {
        self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn iter<'a>(&'a self, _g: &FiniteGroup) -> impl Iterator<Item = GroupElement> + 'a {
        self.iter_bits()
    }

    fn iter_bits(&self) -> impl Iterator<Item = usize> + '_ {
        let parent = self.parent_order;
        (0..parent).filter(move |&x| self.contains(x))
    }

    fn iter_vec(&self) -> Vec<usize> {
        self.iter_bits().collect()
    }

    pub fn members(&self) -> Vec<GroupElement> {
        self.iter_vec()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        let mut s = Subgroup {
            words,
            order: 0,
            parent_order: self.parent_order,
        };
        s.order = s.count();
        s
    }

    /// H^a = a^-1 H a.
    pub fn conjugate(&self, g: &FiniteGroup, a: GroupElement) -> Subgroup {
        Subgroup::from_bits(self.parent_order, self.iter_bits().map(|h| g.conj(h, a)))
    }

    /// True when the subgroup has p-power order.
    pub fn is_p_group(&self, p: u64) -> bool {
        is_p_power(self.order as u64, p)
    }
}

pub fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn length(&self) -> usize {
        self.members.len()
    }
}

/// A Sylow p-subgroup of `ambient`, built deterministically by
/// ascending from the trivial subgroup through normalizers, always
/// adjoining the lowest-index admissible element.
pub fn sylow_in(g: &FiniteGroup, ambient: &Subgroup, p: u64) -> Subgroup {
    let target = p_part(ambient.order() as u64, p);
    let mut current = Subgroup::from_bits(g.order(), std::iter::once(0));
    let mut gens: Vec<usize> = Vec::new();
    while (current.order() as u64) < target {
        let norm = normalizer_in(g, ambient, &current);
        let next = norm
            .iter_bits()
            .find(|&x| !current.contains(x) && is_p_power(g.element_order(x), p))
            .expect("a p-subgroup below Sylow order has p-elements in its normalizer");
        gens.push(next);
        current = Subgroup::closure(g, &gens);
        debug_assert!(is_p_power(current.order() as u64, p));
    }
    current
}

pub fn sylow_p(g: &FiniteGroup, p: u64) -> Subgroup {
    sylow_in(g, &Subgroup::whole(g), p)
}

/// N_ambient(H) = {g in ambient : H^g = H}.
pub fn normalizer_in(g: &FiniteGroup, ambient: &Subgroup, h: &Subgroup) -> Subgroup {
    Subgroup::from_bits(
        g.order(),
        ambient
            .iter_bits()
            .filter(|&a| h.iter_bits().all(|x| h.contains(g.conj(x, a)))),
    )
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    normalizer_in(g, &Subgroup::whole(g), h)
}

/// |{g in G : H^g subset of K}|.
pub fn transporter_count(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> u64 {
    (0..g.order())
        .filter(|&a| h.members().iter().all(|&x| k.contains(g.conj(x, a))))
        .count() as u64
}

/// O_p of the subgroup `n` of g: intersection of the conjugates of a
/// Sylow p-subgroup of n.
pub fn o_p_in(g: &FiniteGroup, n: &Subgroup, p: u64) -> Subgroup {
    let syl = sylow_in(g, n, p);
    let mut acc = syl.clone();
    for a in n.iter(g) {
        if acc.order() == 1 {
            break;
        }
        acc = acc.intersect(&syl.conjugate(g, a));
    }
    acc
}

pub fn o_p(g: &FiniteGroup, p: u64) -> Subgroup {
    o_p_in(g, &Subgroup::whole(g), p)
}

/// H is p-radical iff H = O_p(N_G(H)).
pub fn is_p_radical(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<bool> {
    if !is_p_power(h.order() as u64, p) {
        return Err(Error::NotPSubgroup);
    }
    let norm = normalizer(g, h);
    Ok(o_p_in(g, &norm, p) == *h)
}

/// All subgroups of a p-group `p_sub`, grown from the trivial subgroup
/// by adjoining one element at a time.
fn subgroups_of_p_group(g: &FiniteGroup, p_sub: &Subgroup) -> Vec<Subgroup> {
    let trivial = Subgroup::from_bits(g.order(), std::iter::once(0));
    let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
    seen.insert(trivial.clone());
    let mut queue = vec![trivial];
    let members = p_sub.members();
    while let Some(h) = queue.pop() {
        for &x in &members {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.members();
            gens.push(x);
            let bigger = Subgroup::closure(g, &gens);
            if seen.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every subgroup of p-power order, including the trivial one, each
/// exactly once. Enumerates subgroups of one Sylow p-subgroup and
/// closes under G-conjugation.
pub fn all_p_subgroups(g: &FiniteGroup, p: u64) -> Vec<Subgroup> {
    let syl = sylow_p(g, p);
    let inside = subgroups_of_p_group(g, &syl);
    let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
    for h in inside {
        for a in 0..g.order() {
            seen.insert(h.conjugate(g, a));
        }
    }
    seen.into_iter().collect()
}

/// All cyclic subgroups of p-power order, including the trivial one.
pub fn cyclic_p_subgroups(g: &FiniteGroup, p: u64) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
    seen.insert(Subgroup::from_bits(g.order(), std::iter::once(0)));
    for x in 1..g.order() {
        if is_p_power(g.element_order(x), p) {
            seen.insert(Subgroup::closure(g, &[x]));
        }
    }
    seen.into_iter().collect()
}

/// All p-radical subgroups of G.
pub fn p_radical_subgroups(g: &FiniteGroup, p: u64) -> Vec<Subgroup> {
    all_p_subgroups(g, p)
        .into_iter()
        .filter(|h| is_p_radical(g, h, p).expect("p-subgroup by construction"))
        .collect()
}

/// Partition a conjugation-closed set of subgroups into classes,
/// sorted by (order ascending, representative bitset). The
/// representative is the least member of each class.
pub fn conjugacy_classes_of_subgroups(
    g: &FiniteGroup,
    subs: &[Subgroup],
) -> Result<Vec<SubgroupClass>> {
    let index: BTreeSet<Subgroup> = subs.iter().cloned().collect();
    let mut assigned: BTreeSet<Subgroup> = BTreeSet::new();
    let mut classes = Vec::new();
    for h in subs {
        if assigned.contains(h) {
            continue;
        }
        let mut orbit: BTreeSet<Subgroup> = BTreeSet::new();
        for a in 0..g.order() {
            let c = h.conjugate(g, a);
            if !index.contains(&c) {
                return Err(Error::NotClosed);
            }
            orbit.insert(c);
        }
        for c in &orbit {
            assigned.insert(c.clone());
        }
        let members: Vec<Subgroup> = orbit.into_iter().collect();
        let representative = members[0].clone();
        // orbit length = index of the normalizer
        debug_assert_eq!(
            members.len(),
            g.order() / normalizer(g, &representative).order()
        );
        classes.push(SubgroupClass {
            representative,
            members,
        });
    }
    classes.sort_by(|a, b| {
        (a.representative.order(), &a.representative)
            .cmp(&(b.representative.order(), &b.representative))
    });
    Ok(classes)
}

/// Conjugacy classes of the p-radical subgroups, canonical order.
pub fn p_radical_classes(g: &FiniteGroup, p: u64) -> Vec<SubgroupClass> {
    conjugacy_classes_of_subgroups(g, &p_radical_subgroups(g, p))
        .expect("radical set is conjugation-closed")
}

/// Reindex a subgroup as a standalone group. Returns the group and the
/// map from new indices to parent indices (ascending, identity first).
pub fn subgroup_group(g: &FiniteGroup, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
    let members = h.members();
    let mut back = vec![usize::MAX; g.order()];
    for (i, &m) in members.iter().enumerate() {
        back[m] = i;
    }
    let n = members.len();
    let mut mul = vec![0u16; n * n];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            mul[i * n + j] = back[g.mul(a, b)] as u16;
        }
    }
    let grp = FiniteGroup::new(n, mul, format!("subgroup of {}", g.origin()))
        .expect("subgroup tables satisfy the group axioms");
    (grp, members)
}
