//! Orbit-category marks, tables of marks on p-radical classes, three
//! independent p-singular counters, and the Frobenius/Brown identity
//! checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::{
    chain_count_reduced, rational_to_int, reduced_euler_poset, weighting, FinitePoset,
    RationalMatrix,
};
use crate::group::{p_part, quotient_group, FiniteGroup};
use crate::lattice::{
    all_p_subgroups, cyclic_p_subgroups, is_p_power, normalizer, p_radical_classes,
    subgroup_group, transporter_count, Subgroup, SubgroupClass,
};
use crate::verdict::Verdict;

/// Burnside table of marks over the p-radical classes; rows index H,
/// columns index K, classes in canonical ascending order.
#[derive(Clone, Debug)]
pub struct TableOfMarks {
    pub classes: Vec<SubgroupClass>,
    pub entries: Vec<Vec<u64>>,
}

/// Modified table of marks: each mark divided by |N_G(K)/K|. Entries
/// count H-supergroups conjugate to K, hence are integers with unit
/// diagonal.
#[derive(Clone, Debug)]
pub struct ModifiedTableOfMarks {
    pub classes: Vec<SubgroupClass>,
    pub entries: Vec<Vec<u64>>,
}

/// The mark |O_G(H,K)| = |N_G(H,K)| / |K|, cross-checked as the number
/// of H-fixed points on the coset space K\G.
pub fn mark(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> u64 {
    let t = transporter_count(g, h, k);
    assert_eq!(t % k.order() as u64, 0, "transporter not divisible by |K|");
    let via_transporter = t / k.order() as u64;
    // fixed points of H on right cosets Kg
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in 0..g.order() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for m in k.members() {
            coset_of[g.mul(m, a)] = id;
        }
    }
    let hm = h.members();
    let fixed = reps
        .iter()
        .filter(|&&a| {
            let ai = g.inv(a);
            hm.iter().all(|&x| k.contains(g.conj(x, ai)))
        })
        .count() as u64;
    assert_eq!(via_transporter, fixed, "mark cross-check failed");
    via_transporter
}

/// mark(H,K) |K| / |N_G(K)|: the number of H-supergroups conjugate to
/// K. Both the quotient and the direct supergroup count are computed.
pub fn modified_mark(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<u64> {
    let m = mark(g, h, k);
    let norm_k = normalizer(g, k).order() as u64;
    let num = m * k.order() as u64;
    if num % norm_k != 0 {
        return Err(Error::NonIntegral);
    }
    let via_quotient = num / norm_k;
    // direct count of distinct conjugates of K containing H
    let mut seen = std::collections::BTreeSet::new();
    for a in 0..g.order() {
        let c = k.conjugate(g, a);
        if h.is_subset_of(&c) {
            seen.insert(c);
        }
    }
    if seen.len() as u64 != via_quotient {
        return Err(Error::NonIntegral);
    }
    Ok(via_quotient)
}

pub fn table_of_marks_p_radical(g: &FiniteGroup, p: u64) -> TableOfMarks {
    let classes = p_radical_classes(g, p);
    let entries = classes
        .iter()
        .map(|h| {
            classes
                .iter()
                .map(|k| mark(g, &h.representative, &k.representative))
                .collect()
        })
        .collect();
    TableOfMarks { classes, entries }
}

pub fn modified_table(g: &FiniteGroup, p: u64) -> Result<ModifiedTableOfMarks> {
    let classes = p_radical_classes(g, p);
    let mut entries = Vec::with_capacity(classes.len());
    for h in &classes {
        let mut row = Vec::with_capacity(classes.len());
        for k in &classes {
            row.push(modified_mark(g, &h.representative, &k.representative)?);
        }
        entries.push(row);
    }
    Ok(ModifiedTableOfMarks { classes, entries })
}

/// Brute count: |{g : g^{|G|_p} = e}|, cross-checked against the count
/// of elements of p-power order.
pub fn count_p_singular_brute(g: &FiniteGroup, p: u64) -> u64 {
    let np = p_part(g.order() as u64, p);
    let by_power = (0..g.order()).filter(|&x| g.pow(x, np) == 0).count() as u64;
    let by_order = (0..g.order())
        .filter(|&x| is_p_power(g.element_order(x), p))
        .count() as u64;
    assert_eq!(by_power, by_order, "p-singular definitions disagree");
    by_power
}

/// Cyclic-subgroup count: |G_p| = 1/p + sum over cyclic p-subgroups C
/// of (1 - 1/p)|C|, evaluated exactly.
pub fn count_p_singular_cyclic(g: &FiniteGroup, p: u64) -> u64 {
    let pr = BigRational::new(BigInt::one(), BigInt::from(p));
    let mut total = pr.clone();
    let factor = BigRational::one() - pr;
    for c in cyclic_p_subgroups(g, p) {
        total += &factor * BigRational::from_integer(BigInt::from(c.order()));
    }
    let n = rational_to_int(&total);
    assert!(!n.is_negative());
    u64::try_from(n).expect("count fits in u64")
}

/// The quotient group N_G(K)/K.
pub fn orbit_quotient(g: &FiniteGroup, k: &Subgroup) -> FiniteGroup {
    let norm = normalizer(g, k);
    let (ngrp, members) = subgroup_group(g, &norm);
    let image: Vec<usize> = members
        .iter()
        .enumerate()
        .filter(|&(_, &old)| k.contains(old))
        .map(|(new, _)| new)
        .collect();
    let k_in_n = Subgroup::new(&ngrp, &image);
    let (q, _) = quotient_group(&ngrp, &k_in_n).expect("K is normal in its normalizer");
    q
}

/// Poset of non-trivial p-subgroups of G (the Brown poset S_G^{p+*}).
pub fn brown_poset(g: &FiniteGroup, p: u64) -> FinitePoset {
    let subs: Vec<Subgroup> = all_p_subgroups(g, p)
        .into_iter()
        .filter(|s| s.order() > 1)
        .collect();
    FinitePoset::of_subgroups(&subs)
}

/// Reduced Euler characteristic of the Brown poset, computed through
/// the weighting and cross-checked by chain counting.
pub fn chi_tilde_brown(g: &FiniteGroup, p: u64) -> BigInt {
    let poset = brown_poset(g, p);
    let via_weighting = reduced_euler_poset(&poset);
    let via_chains = chain_count_reduced(&poset);
    assert_eq!(via_weighting, via_chains, "Euler characteristic oracle mismatch");
    rational_to_int(&via_weighting)
}

/// The per-class weights -chi~(S^{p+*}(N_G(K)/K)) over the p-radical
/// classes, in canonical class order.
pub fn radical_class_weights(g: &FiniteGroup, p: u64, classes: &[SubgroupClass]) -> Vec<BigInt> {
    classes
        .iter()
        .map(|c| -chi_tilde_brown(&orbit_quotient(g, &c.representative), p))
        .collect()
}

/// Euler-characteristic count: Prop-style sum over p-radical classes
/// of (class length) |K| (-chi~(S^{p+*}(N(K)/K))), asserted equal to
/// the brute count.
pub fn count_p_singular_euler(g: &FiniteGroup, p: u64) -> u64 {
    let classes = p_radical_classes(g, p);
    let weights = radical_class_weights(g, p, &classes);
    let total: BigInt = classes
        .iter()
        .zip(&weights)
        .map(|(c, w)| BigInt::from(c.length() as u64 * c.representative.order() as u64) * w)
        .sum();
    let total = u64::try_from(total).expect("count is a small non-negative integer");
    assert_eq!(total, count_p_singular_brute(g, p), "Euler count disagrees with brute force");
    total
}

/// Both parts of the weighting proposition: the class weights sum to 1
/// over all radical subgroups, and they form a weighting for the
/// modified table of marks.
pub fn check_prop22(g: &FiniteGroup, p: u64) -> Result<Vec<Verdict>> {
    let classes = p_radical_classes(g, p);
    let weights = radical_class_weights(g, p, &classes);
    let mut verdicts = Vec::new();
    let sum2: BigInt = classes
        .iter()
        .zip(&weights)
        .map(|(c, w)| BigInt::from(c.length()) * w)
        .sum();
    verdicts.push(Verdict::check("prop22_2", sum2, 1).with_detail(format!(
        "lengths {:?}, weights {:?}",
        classes.iter().map(|c| c.length()).collect::<Vec<_>>(),
        weights.iter().map(|w| w.to_string()).collect::<Vec<_>>()
    )));
    let modified = modified_table(g, p)?;
    for (i, h) in classes.iter().enumerate() {
        let row_sum: BigInt = modified.entries[i]
            .iter()
            .zip(&weights)
            .map(|(&m, w)| BigInt::from(m) * w)
            .sum();
        verdicts.push(Verdict::check(
            format!("prop22_3[|H|={}]", h.representative.order()),
            row_sum,
            1,
        ));
    }
    Ok(verdicts)
}

/// The rearranged balance identity: |G_p| + chi~(S_G^{p+*}) plus the
/// sum over non-trivial radical classes of
/// chi~(S^{p+*}(O(H))) / |O(H)|_p * |G| / |O(H)|_{p'} equals zero.
/// Also asserts the two divisibility facts the rearrangement uses.
pub fn check_chi_og_balance(g: &FiniteGroup, p: u64) -> Vec<Verdict> {
    let order = g.order() as u64;
    let gp = BigInt::from(count_p_singular_brute(g, p));
    let chi_g = chi_tilde_brown(g, p);
    let classes = p_radical_classes(g, p);
    let mut verdicts = Vec::new();
    let mut total = gp + &chi_g;
    for c in classes.iter().filter(|c| c.representative.order() > 1) {
        let oq = orbit_quotient(g, &c.representative);
        let chi_h = chi_tilde_brown(&oq, p);
        let oq_p = p_part(oq.order() as u64, p);
        let oq_p_prime = oq.order() as u64 / oq_p;
        verdicts.push(
            Verdict::check(
                format!("chiOG divisibility |O(H)|_p | chi~ (|H|={})", c.representative.order()),
                (&chi_h % BigInt::from(oq_p)).is_zero(),
                true,
            )
            .with_detail(format!("chi~ = {chi_h}, |O(H)|_p = {oq_p}")),
        );
        verdicts.push(Verdict::check(
            format!("chiOG divisibility |G|_p | |G|/|O(H)|_p' (|H|={})", c.representative.order()),
            order % oq_p_prime == 0 && (order / oq_p_prime) % p_part(order, p) == 0,
            true,
        ));
        total += chi_h / BigInt::from(oq_p) * BigInt::from(order / oq_p_prime);
    }
    verdicts.push(Verdict::check("chiOG balance", total, 0));
    verdicts
}

/// Frobenius divisibility: n | |{g : g^n = e}| whenever n | |G|.
pub fn frobenius_check(g: &FiniteGroup, n: u64) -> Result<Verdict> {
    if n == 0 || g.order() as u64 % n != 0 {
        return Err(Error::NotADivisor(n));
    }
    let count = (0..g.order()).filter(|&x| g.pow(x, n) == 0).count() as u64;
    Ok(
        Verdict::check(format!("frobenius n={n}"), count % n, 0)
            .with_detail(format!("{n} | {count}")),
    )
}

/// Brown divisibility: |G|_p | chi~(S_G^{p+*}).
pub fn brown_check(g: &FiniteGroup, p: u64) -> Verdict {
    let gp = p_part(g.order() as u64, p);
    let chi = chi_tilde_brown(g, p);
    Verdict::check(format!("brown p={p}"), (&chi % BigInt::from(gp)).is_zero(), true)
        .with_detail(format!("{gp} | {chi}"))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub order: u64,
    pub length: u64,
    pub normalizer_order: u64,
    pub chi_tilde_quotient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub brute: u64,
    pub cyclic: u64,
    pub euler: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Weightings {
    pub tom: Vec<String>,
    pub modified: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub frobenius: bool,
    pub brown: bool,
    pub prop22_2: bool,
    pub prop22_3: bool,
    #[serde(rename = "chiOG")]
    pub chi_og: bool,
}

/// Everything the report command prints for one (group, prime) pair.
#[derive(Clone, Debug, Serialize)]
pub struct PSingularReport {
    pub group: String,
    pub prime: u64,
    pub order: u64,
    pub p_part: u64,
    pub counts: Counts,
    pub classes: Vec<ClassSummary>,
    pub tom: Vec<Vec<u64>>,
    pub modified_tom: Vec<Vec<u64>>,
    pub weightings: Weightings,
    pub verdicts: Verdicts,
}

impl PSingularReport {
    pub fn compute(g: &FiniteGroup, spec: &str, p: u64) -> Result<Self> {
        let order = g.order() as u64;
        let counts = Counts {
            brute: count_p_singular_brute(g, p),
            cyclic: count_p_singular_cyclic(g, p),
            euler: count_p_singular_euler(g, p),
        };
        assert!(counts.brute == counts.cyclic && counts.cyclic == counts.euler);
        let tom = table_of_marks_p_radical(g, p);
        let modified = modified_table(g, p)?;
        let weights = radical_class_weights(g, p, &tom.classes);
        let classes = tom
            .classes
            .iter()
            .zip(&weights)
            .map(|(c, w)| ClassSummary {
                order: c.representative.order() as u64,
                length: c.length() as u64,
                normalizer_order: normalizer(g, &c.representative).order() as u64,
                chi_tilde_quotient: (-w).to_string(),
            })
            .collect();
        let tom_matrix = integer_matrix(&tom.entries);
        let mod_matrix = integer_matrix(&modified.entries);
        let w_tom = weighting(&tom_matrix)?;
        let w_mod = weighting(&mod_matrix)?;
        let prop = check_prop22(g, p)?;
        let chi_og = check_chi_og_balance(g, p);
        let frob = (1..=order)
            .filter(|n| order % n == 0)
            .map(|n| frobenius_check(g, n).expect("divisor by construction"))
            .all(|v| v.pass);
        let verdicts = Verdicts {
            frobenius: frob,
            brown: brown_check(g, p).pass,
            prop22_2: prop[0].pass,
            prop22_3: prop[1..].iter().all(|v| v.pass),
            chi_og: chi_og.iter().all(|v| v.pass),
        };
        Ok(PSingularReport {
            group: spec.to_string(),
            prime: p,
            order,
            p_part: p_part(order, p),
            counts,
            classes,
            tom: tom.entries,
            modified_tom: modified.entries,
            weightings: Weightings {
                tom: w_tom.coords.iter().map(|r| r.to_string()).collect(),
                modified: w_mod.coords.iter().map(|r| r.to_string()).collect(),
            },
            verdicts,
        })
    }
}

pub fn integer_matrix(entries: &[Vec<u64>]) -> RationalMatrix {
    let n = entries.len();
    let mut m = RationalMatrix::zero(n);
    for (i, row) in entries.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m.set(i, j, BigRational::from_integer(BigInt::from(v)));
        }
    }
    m
}
