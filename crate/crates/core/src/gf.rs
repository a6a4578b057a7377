//! Table-driven arithmetic in GF(q) for small prime powers.
//!
//! Elements are the integers `0..q`. For `q = p^e` with `e > 1` an element
//! encodes the coefficients of a polynomial of degree `< e` over GF(p) in
//! base `p` (least significant digit = constant term). Multiplication is
//! carried out modulo a fixed irreducible polynomial:
//!
//! | q | modulus        |
//! |---|----------------|
//! | 4 | x^2 + x + 1    |
//! | 8 | x^3 + x + 1    |
//! | 9 | x^2 + 2x + 2   |
//!
//! Vectors over the field are packed four bits per coordinate into a `u64`
//! (coordinate `i` lives in bits `4i..4i+4`), which is why `q` is capped at 13.

use crate::error::{Error, Result};

/// A field element, always `< q`.
pub type Elem = u8;

/// Largest supported field order.
pub const MAX_Q: u32 = 13;

const NIBBLE: u64 = 0xF;

/// Complete arithmetic tables for GF(q).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTables {
    q: u8,
    p: u8,
    e: u8,
    modulus: Vec<u8>,
    add: [[u8; 16]; 16],
    mul: [[u8; 16]; 16],
    neg: [u8; 16],
    inv: [u8; 16],
}

impl std::fmt::Debug for FieldTables {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Monic irreducible modulus, low coefficients first (leading 1 omitted).
fn modulus_for(q: u32) -> Vec<u8> {
    match q {
        4 => vec![1, 1],
        8 => vec![1, 1, 0],
        9 => vec![2, 2],
        _ => Vec::new(),
    }
}

impl FieldTables {
    /// Builds the tables for GF(q).
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        if q > MAX_Q {
            return Err(Error::UnsupportedField(q));
        }
        let modulus = modulus_for(q);
        let digits = |x: u32| -> Vec<u32> { (0..e).map(|i| (x / p.pow(i)) % p).collect() };
        let encode = |d: &[u32]| -> u8 { d.iter().rev().fold(0, |acc, &c| acc * p + c) as u8 };

        let mut t = FieldTables {
            q: q as u8,
            p: p as u8,
            e: e as u8,
            modulus,
            add: [[0; 16]; 16],
            mul: [[0; 16]; 16],
            neg: [0; 16],
            inv: [0; 16],
        };
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                t.add[a as usize][b as usize] = encode(&sum);

                // schoolbook product, then reduce from the top degree down
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    // x^e = -(m_0 + m_1 x + ...)
                    for (k, m) in t.modulus.iter().enumerate() {
                        let idx = deg - e as usize + k;
                        prod[idx] = (prod[idx] + c * (p - *m as u32 % p)) % p;
                    }
                }
                t.mul[a as usize][b as usize] = encode(&prod[..e as usize]);
            }
        }
        for a in 0..q as usize {
            t.neg[a] = (0..q as u8).find(|&b| t.add[a][b as usize] == 0).unwrap();
            if a != 0 {
                t.inv[a] = (1..q as u8)
                    .find(|&b| t.mul[a][b as usize] == 1)
                    .expect("modulus is irreducible");
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.e as u32
    }

    /// The irreducible modulus, low coefficients first, without the leading 1.
    /// Empty for prime fields.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize][b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize][self.neg[b as usize] as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize][b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse. Returns 0 for 0.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, mut k: u32) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    // ---- packed vectors, 4 bits per coordinate ----

    #[inline]
    pub(crate) fn vadd(&self, u: u64, v: u64, n: usize) -> u64 {
        if self.p == 2 {
            return u ^ v;
        }
        let mut out = 0;
        for i in 0..n {
            let s = 4 * i;
            let c = self.add[((u >> s) & NIBBLE) as usize][((v >> s) & NIBBLE) as usize];
            out |= (c as u64) << s;
        }
        out
    }

    #[inline]
    pub(crate) fn vscale(&self, c: Elem, v: u64, n: usize) -> u64 {
        match c {
            0 => 0,
            1 => v,
            _ => {
                let row = &self.mul[c as usize];
                let mut out = 0;
                for i in 0..n {
                    let s = 4 * i;
                    out |= (row[((v >> s) & NIBBLE) as usize] as u64) << s;
                }
                out
            }
        }
    }

    /// `u - c * v`.
    #[inline]
    pub(crate) fn vsub_scaled(&self, u: u64, c: Elem, v: u64, n: usize) -> u64 {
        if c == 0 {
            return u;
        }
        if self.q == 2 {
            return u ^ v;
        }
        self.vadd(u, self.vscale(self.neg[c as usize], v, n), n)
    }

    /// Standard dot product of two packed vectors.
    #[inline]
    pub(crate) fn vdot(&self, u: u64, v: u64, n: usize) -> Elem {
        if self.q == 2 {
            return ((u & v).count_ones() & 1) as Elem;
        }
        let mut acc = 0;
        for i in 0..n {
            let s = 4 * i;
            let prod = self.mul[((u >> s) & NIBBLE) as usize][((v >> s) & NIBBLE) as usize];
            acc = self.add[acc as usize][prod as usize];
        }
        acc
    }
}

#[inline]
pub(crate) fn coord(v: u64, i: usize) -> Elem {
    ((v >> (4 * i)) & NIBBLE) as Elem
}

#[inline]
pub(crate) fn with_coord(v: u64, i: usize, c: Elem) -> u64 {
    (v & !(NIBBLE << (4 * i))) | ((c as u64) << (4 * i))
}

/// Index of the first nonzero coordinate.
#[inline]
pub(crate) fn leading(v: u64) -> usize {
    (v.trailing_zeros() / 4) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

    fn check_axioms(f: &FieldTables) {
        let q = f.order() as u8;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_for_every_supported_order() {
        for q in ORDERS {
            check_axioms(&FieldTables::new(q).unwrap());
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in ORDERS {
            let f = FieldTables::new(q).unwrap();
            let p = f.characteristic();
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.pow(f.add(x, y), p), f.add(f.pow(x, p), f.pow(y, p)));
                }
            }
        }
    }

    #[test]
    fn gf2_is_xor() {
        let f = FieldTables::new(2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f.add(a, b), a ^ b);
            }
        }
    }

    #[test]
    fn gf4_generator() {
        let f = FieldTables::new(4).unwrap();
        let w = 2; // x
        let w2 = f.mul(w, w);
        assert_eq!(w2, f.add(w, 1));
        assert_eq!(f.mul(w, w2), 1);
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(FieldTables::new(6), Err(Error::NotAPrimePower(6))));
        assert!(matches!(FieldTables::new(1), Err(Error::NotAPrimePower(1))));
        assert!(matches!(FieldTables::new(16), Err(Error::UnsupportedField(16))));
        assert!(matches!(FieldTables::new(17), Err(Error::UnsupportedField(17))));
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in ORDERS {
            let f = FieldTables::new(q).unwrap();
            let has_generator = (1..q as u8).any(|g| {
                let mut seen = std::collections::HashSet::new();
                let mut x = 1;
                for _ in 0..q - 1 {
                    seen.insert(x);
                    x = f.mul(x, g);
                }
                seen.len() == q as usize - 1
            });
            assert!(has_generator, "GF({q})");
        }
    }

    #[test]
    fn packed_ops_match_scalar_ops() {
        let f = FieldTables::new(5).unwrap();
        let u: u64 = 0x4321_0432;
        let v: u64 = 0x1234_4101;
        let n = 8;
        let s = f.vadd(u, v, n);
        let d = f.vdot(u, v, n);
        let mut acc = 0;
        for i in 0..n {
            assert_eq!(coord(s, i), f.add(coord(u, i), coord(v, i)));
            acc = f.add(acc, f.mul(coord(u, i), coord(v, i)));
        }
        assert_eq!(d, acc);
        let w = f.vsub_scaled(u, 3, v, n);
        for i in 0..n {
            assert_eq!(coord(w, i), f.sub(coord(u, i), f.mul(3, coord(v, i))));
        }
    }
}
