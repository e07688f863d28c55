//! Finite fields F_q, q <= 64, as precomputed addition/multiplication
//! tables, and square matrices over them.
//!
//! Prime fields use modular arithmetic. Prime-power fields are built
//! from a fixed irreducible (Conway) polynomial per (p, e):
//!
//!   F4    x^2 + x + 1          F9    x^2 + 2x + 2
//!   F8    x^3 + x + 1          F27   x^3 + 2x + 1
//!   F16   x^4 + x + 1          F25   x^2 + 4x + 2
//!   F32   x^5 + x^2 + 1        F49   x^2 + 6x + 3
//!   F64   x^6 + x^4 + x^3 + x + 1
//!
//! Element i encodes the polynomial with base-p digits of i as
//! coefficients, so 0 is zero and 1 is one.

use crate::error::{Error, Result};

const MAX_Q: usize = 64;

/// Monic irreducible polynomials, low-degree coefficients first,
/// leading 1 included.
fn irreducible(p: u64, e: u32) -> Option<&'static [u64]> {
    Some(match (p, e) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (5, 2) => &[2, 4, 1],
        (7, 2) => &[3, 6, 1],
        _ => return None,
    })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Clone)]
pub struct FiniteField {
    pub p: u64,
    pub e: u32,
    pub q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    pub primitive: u8,
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self> {
        if q < 2 || q > MAX_Q {
            return Err(Error::Parse(format!("field size {q} out of range")));
        }
        let (p, e) = {
            let mut p = 0;
            for cand in 2..=q as u64 {
                if is_prime(cand) && q as u64 % cand == 0 {
                    p = cand;
                    break;
                }
            }
            let mut e = 0;
            let mut m = q as u64;
            while m > 1 {
                if m % p != 0 {
                    return Err(Error::Parse(format!("{q} is not a prime power")));
                }
                m /= p;
                e += 1;
            }
            (p, e)
        };
        let modulus: Vec<u64> = if e == 1 {
            vec![0, 1]
        } else {
            irreducible(p, e)
                .ok_or_else(|| Error::Parse(format!("no irreducible polynomial for q = {q}")))?
                .to_vec()
        };
        let digits = |mut i: usize| -> Vec<u64> {
            let mut d = vec![0u64; e as usize];
            for dk in d.iter_mut() {
                *dk = (i as u64) % p;
                i /= p as usize;
            }
            d
        };
        let undigits = |d: &[u64]| -> usize {
            d.iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a);
            let dn: Vec<u64> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a] = undigits(&dn) as u8;
            for b in 0..q {
                let db = digits(b);
                let ds: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&ds) as u8;
                // polynomial product reduced by the modulus
                let mut prod = vec![0u64; 2 * e as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (e as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &m) in modulus.iter().enumerate().take(e as usize) {
                        let idx = k - e as usize + i;
                        prod[idx] = (prod[idx] + c * (p - m) % p) % p;
                    }
                }
                mul[a * q + b] = undigits(&prod[..e as usize]) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .ok_or(Error::NotInvertible)?;
            inv[a] = b as u8;
        }
        let mut field = FiniteField {
            p,
            e,
            q,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        field.primitive = (1..q)
            .find(|&g| field.mult_order(g as u8) == q - 1)
            .expect("multiplicative group of a finite field is cyclic")
            as u8;
        field.verify_axioms();
        Ok(field)
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "division by zero");
        self.inv[a as usize]
    }

    fn mult_order(&self, a: u8) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn verify_axioms(&self) {
        let q = self.q as u8;
        for a in 0..q {
            assert_eq!(self.add(a, 0), a);
            assert_eq!(self.mul(a, 1), a);
            assert_eq!(self.add(a, self.neg(a)), 0);
            if a != 0 {
                assert_eq!(self.mul(a, self.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(self.add(a, b), self.add(b, a));
                assert_eq!(self.mul(a, b), self.mul(b, a));
                for c in 0..q {
                    assert_eq!(self.add(self.add(a, b), c), self.add(a, self.add(b, c)));
                    assert_eq!(self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c)));
                    assert_eq!(
                        self.mul(a, self.add(b, c)),
                        self.add(self.mul(a, b), self.mul(a, c))
                    );
                }
            }
        }
    }
}

/// n x n matrix over a finite field, entries stored row-major as
/// field-element indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqMatrix {
    pub n: usize,
    pub entries: Vec<u8>,
}

impl FqMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        FqMatrix { n, entries }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &FqMatrix, f: &FiniteField) -> FqMatrix {
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    entries[idx] = f.add(entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        FqMatrix { n, entries }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, f: &FiniteField) -> u8 {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = 1u8;
        for col in 0..n {
            let pivot = match (col..n).find(|&r| m[r * n + col] != 0) {
                Some(r) => r,
                None => return 0,
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = m[col * n + col];
            det = f.mul(det, pv);
            let pv_inv = f.inv(pv);
            for r in col + 1..n {
                let factor = f.mul(m[r * n + col], pv_inv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = f.mul(factor, m[col * n + j]);
                    m[r * n + j] = f.add(m[r * n + j], f.neg(sub));
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime_powers_up_to_64() -> Vec<usize> {
        (2..=64)
            .filter(|&q| {
                let p = (2..=q).find(|&d| is_prime(d as u64) && q % d == 0).unwrap();
                let mut m = q;
                while m % p == 0 {
                    m /= p;
                }
                m == 1
            })
            .collect()
    }

    #[test]
    fn all_fields_construct_and_multiplicative_group_is_cyclic() {
        for q in prime_powers_up_to_64() {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.q, q);
            // the stored primitive element has order q - 1
            let mut x = f.primitive;
            let mut ord = 1;
            while x != 1 {
                x = f.mul(x, f.primitive);
                ord += 1;
            }
            assert_eq!(ord, q - 1, "primitive element order in F_{q}");
        }
    }

    #[test]
    fn non_prime_powers_rejected() {
        for q in [0, 1, 6, 10, 12, 15, 24, 63, 128] {
            assert!(FiniteField::new(q).is_err(), "q = {q}");
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let f = FiniteField::new(4).unwrap();
        let mut a = FqMatrix::identity(2);
        a.set(0, 1, 2);
        a.set(1, 0, 3);
        let mut b = FqMatrix::identity(2);
        b.set(0, 0, 2);
        b.set(1, 1, 3);
        let ab = a.mul(&b, &f);
        assert_eq!(ab.det(&f), f.mul(a.det(&f), b.det(&f)));
    }

    #[test]
    fn det_of_singular_matrix_is_zero() {
        let f = FiniteField::new(3).unwrap();
        let mut m = FqMatrix::identity(2);
        m.set(0, 0, 1);
        m.set(0, 1, 2);
        m.set(1, 0, 1);
        m.set(1, 1, 2);
        assert_eq!(m.det(&f), 0);
    }
}
