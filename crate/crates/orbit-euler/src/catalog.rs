//! Named group constructions behind the grammar
//!
//! ```text
//! S<n> | A<n> | C<n> | D<2n> | GL(<n>,<q>) | SL(<n>,<q>) | <spec>x<spec>
//! ```
//!
//! with `x` left-associative and whitespace forbidden. The same spec
//! always yields identical tables.

use crate::error::{Error, Result};
use crate::field::{FiniteField, FqMatrix};
use crate::group::{direct_product, generate_group, FiniteGroup, Permutation, HARD_CAP};

/// Order cap, overridable through ORBIT_EULER_CAP (clamped to 4096).
pub fn default_cap() -> usize {
    std::env::var("ORBIT_EULER_CAP")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.min(HARD_CAP))
        .unwrap_or(HARD_CAP)
}

/// A GL or SL group together with its matrix realization: element i of
/// the Cayley table is the matrix mats[i].
#[derive(Clone)]
pub struct LieGroup {
    pub group: FiniteGroup,
    pub n: usize,
    pub field: FiniteField,
    pub special: bool,
    pub mats: Vec<FqMatrix>,
}

impl LieGroup {
    /// Defining characteristic.
    pub fn characteristic(&self) -> u64 {
        self.field.p
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Atom {
    Sym(usize),
    Alt(usize),
    Cyc(usize),
    Dih(usize),
    Gl(usize, usize),
    Sl(usize, usize),
}

fn parse_atom(s: &str) -> Result<Atom> {
    let err = || Error::Parse(format!("bad group spec atom {s:?}"));
    let num = |t: &str| t.parse::<usize>().map_err(|_| err());
    if let Some(rest) = s.strip_prefix("GL(").or_else(|| s.strip_prefix("SL(")) {
        let body = rest.strip_suffix(')').ok_or_else(err)?;
        let (n, q) = body.split_once(',').ok_or_else(err)?;
        let (n, q) = (num(n)?, num(q)?);
        if n == 0 || q < 2 {
            return Err(err());
        }
        return Ok(if s.starts_with("GL") {
            Atom::Gl(n, q)
        } else {
            Atom::Sl(n, q)
        });
    }
    let (head, tail) = s.split_at(1);
    let n = num(tail)?;
    match head {
        "S" => Ok(Atom::Sym(n)),
        "A" => Ok(Atom::Alt(n)),
        "C" => {
            if n == 0 {
                Err(err())
            } else {
                Ok(Atom::Cyc(n))
            }
        }
        "D" => {
            if n < 2 || n % 2 != 0 {
                Err(err())
            } else {
                Ok(Atom::Dih(n))
            }
        }
        _ => Err(err()),
    }
}

/// Split at top-level 'x' separators (never inside parentheses).
fn split_product(spec: &str) -> Result<Vec<&str>> {
    if spec.is_empty() || spec.chars().any(|c| c.is_whitespace()) {
        return Err(Error::Parse(format!("bad group spec {spec:?}")));
    }
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in spec.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parens in {spec:?}")))?
            }
            'x' if depth == 0 => {
                parts.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parens in {spec:?}")));
    }
    parts.push(&spec[start..]);
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Parse(format!("empty factor in {spec:?}")));
    }
    Ok(parts)
}

fn perm_group(gens: Vec<Permutation>, n: usize, cap: usize, origin: &str) -> Result<FiniteGroup> {
    let (g, _) = generate_group(
        Permutation::identity(n),
        &gens,
        |a, b| a.compose(b),
        cap,
        origin,
    )?;
    Ok(g)
}

fn sym(n: usize, cap: usize) -> Result<FiniteGroup> {
    let gens: Vec<Permutation> = (0..n.saturating_sub(1))
        .map(|i| Permutation::from_cycles(n, &[&[i, i + 1]]))
        .collect();
    perm_group(gens, n.max(1), cap, &format!("S{n}"))
}

fn alt(n: usize, cap: usize) -> Result<FiniteGroup> {
    let gens: Vec<Permutation> = (0..n.saturating_sub(2))
        .map(|i| Permutation::from_cycles(n, &[&[i, i + 1, i + 2]]))
        .collect();
    perm_group(gens, n.max(1), cap, &format!("A{n}"))
}

fn cyc(n: usize, cap: usize) -> Result<FiniteGroup> {
    let cycle: Vec<usize> = (0..n).collect();
    let gens = if n > 1 {
        vec![Permutation::from_cycles(n, &[&cycle])]
    } else {
        Vec::new()
    };
    perm_group(gens, n, cap, &format!("C{n}"))
}

fn dih(order: usize, cap: usize) -> Result<FiniteGroup> {
    let n = order / 2;
    if n <= 2 {
        // degenerate: D2 = C2, D4 = C2 x C2
        let c2 = cyc(2, cap)?;
        return if n == 1 {
            Ok(c2)
        } else {
            direct_product(&c2, &c2, cap)
        };
    }
    let rot: Vec<usize> = (0..n).collect();
    let gens = vec![
        Permutation::from_cycles(n, &[&rot]),
        Permutation::new((0..n).map(|i| n - 1 - i).collect()),
    ];
    perm_group(gens, n, cap, &format!("D{order}"))
}

/// Expected order of GL(n, q).
pub fn gl_order(n: usize, q: usize) -> u64 {
    let qn = (q as u64).pow(n as u32);
    (0..n as u32).map(|i| qn - (q as u64).pow(i)).product()
}

pub fn sl_order(n: usize, q: usize) -> u64 {
    gl_order(n, q) / (q as u64 - 1)
}

fn lie(n: usize, q: usize, special: bool, cap: usize) -> Result<LieGroup> {
    let expect = if special { sl_order(n, q) } else { gl_order(n, q) };
    if expect > cap as u64 {
        return Err(Error::CapExceeded { cap });
    }
    let field = FiniteField::new(q)?;
    // transvections generate SL; adjoin a primitive diagonal for GL
    let mut gens: Vec<FqMatrix> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for t in 1..q as u8 {
                let mut m = FqMatrix::identity(n);
                m.set(i, j, t);
                gens.push(m);
            }
        }
    }
    if !special && q > 2 {
        let mut d = FqMatrix::identity(n);
        d.set(0, 0, field.primitive);
        gens.push(d);
    }
    let name = format!("{}({n},{q})", if special { "SL" } else { "GL" });
    let (group, mats) = generate_group(
        FqMatrix::identity(n),
        &gens,
        |a, b| a.mul(b, &field),
        cap,
        &name,
    )?;
    assert_eq!(group.order() as u64, expect, "{name} order mismatch");
    debug_assert!(mats.iter().all(|m| {
        let d = m.det(&field);
        if special {
            d == 1
        } else {
            d != 0
        }
    }));
    Ok(LieGroup {
        group,
        n,
        field,
        special,
        mats,
    })
}

fn atom_group(atom: &Atom, cap: usize) -> Result<FiniteGroup> {
    match *atom {
        Atom::Sym(n) => sym(n, cap),
        Atom::Alt(n) => alt(n, cap),
        Atom::Cyc(n) => cyc(n, cap),
        Atom::Dih(n) => dih(n, cap),
        Atom::Gl(n, q) => Ok(lie(n, q, false, cap)?.group),
        Atom::Sl(n, q) => Ok(lie(n, q, true, cap)?.group),
    }
}

pub fn catalog_group_cap(spec: &str, cap: usize) -> Result<FiniteGroup> {
    let cap = cap.min(HARD_CAP);
    let parts = split_product(spec)?;
    let mut acc: Option<FiniteGroup> = None;
    for part in parts {
        let g = atom_group(&parse_atom(part)?, cap)?;
        acc = Some(match acc {
            None => g,
            Some(prev) => direct_product(&prev, &g, cap)?,
        });
    }
    let mut g = acc.expect("split_product returns at least one part");
    g = FiniteGroup::new(
        g.order(),
        (0..g.order())
            .flat_map(|a| (0..g.order()).map(move |b| (a, b)))
            .map(|(a, b)| g.mul(a, b) as u16)
            .collect(),
        spec,
    )?;
    Ok(g)
}

/// Deterministic construction of a catalog group.
pub fn catalog_group(spec: &str) -> Result<FiniteGroup> {
    catalog_group_cap(spec, default_cap())
}

/// Matrix realization of a pure GL/SL spec.
pub fn catalog_lie(spec: &str) -> Result<LieGroup> {
    match parse_atom(spec) {
        Ok(Atom::Gl(n, q)) => lie(n, q, false, default_cap()),
        Ok(Atom::Sl(n, q)) => lie(n, q, true, default_cap()),
        _ => Err(Error::NotLieCatalog),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_alternating_orders() {
        for (n, expect) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            assert_eq!(catalog_group(&format!("S{n}")).unwrap().order(), expect);
        }
        assert_eq!(catalog_group("A4").unwrap().order(), 12);
        assert_eq!(catalog_group("A5").unwrap().order(), 60);
    }

    #[test]
    fn dihedral_and_cyclic_orders() {
        for n in [2, 4, 6, 8, 10, 12, 16] {
            assert_eq!(catalog_group(&format!("D{n}")).unwrap().order(), n, "D{n}");
        }
        for n in 1..=12 {
            assert_eq!(catalog_group(&format!("C{n}")).unwrap().order(), n);
        }
        // D6 is nonabelian, unlike C6
        let d6 = catalog_group("D6").unwrap();
        assert!((0..6).any(|a| (0..6).any(|b| d6.mul(a, b) != d6.mul(b, a))));
    }

    #[test]
    fn matrix_group_orders_match_formulas() {
        for (n, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)] {
            let k = catalog_lie(&format!("GL({n},{q})")).unwrap();
            assert_eq!(k.group.order() as u64, gl_order(n, q));
            let k = catalog_lie(&format!("SL({n},{q})")).unwrap();
            assert_eq!(k.group.order() as u64, sl_order(n, q));
        }
    }

    #[test]
    fn products_parse_left_associative() {
        assert_eq!(catalog_group("C2xC3").unwrap().order(), 6);
        assert_eq!(catalog_group("C2xC2xC2").unwrap().order(), 8);
        assert_eq!(catalog_group("S3xGL(2,2)").unwrap().order(), 36);
    }

    #[test]
    fn bad_specs_rejected() {
        for bad in ["", "S", "X4", "D7", "D0", "C0", "GL(2)", "GL(0,2)", "GL(2,1)", "S4 x S4", "xC2", "C2x", "GL(2,2"] {
            assert!(catalog_group(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn same_spec_same_table() {
        let a = catalog_group("GL(2,3)").unwrap();
        let b = catalog_group("GL(2,3)").unwrap();
        assert_eq!(a.order(), b.order());
        for x in 0..a.order() {
            for y in 0..a.order() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn axioms_exhaustive_for_small_catalog() {
        // associativity is only sampled during construction above order
        // 64; re-check it exhaustively for the mid-sized groups
        for spec in ["S4", "SL(2,3)", "GL(2,3)", "A5", "S5", "GL(3,2)", "GL(2,4)"] {
            let g = catalog_group(spec).unwrap();
            assert!(g.order() <= 200);
            for a in 0..g.order() {
                for b in 0..g.order() {
                    for c in 0..g.order() {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn non_lie_specs_have_no_matrix_realization() {
        assert!(matches!(catalog_lie("S4"), Err(Error::NotLieCatalog)));
        assert!(matches!(catalog_lie("GL(2,2)xC2"), Err(Error::NotLieCatalog)));
    }

    #[test]
    fn cap_exceeded_for_large_groups() {
        assert!(matches!(
            catalog_group("S8"),
            Err(Error::CapExceeded { .. })
        ));
    }
}
