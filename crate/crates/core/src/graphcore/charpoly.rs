//! Characteristic polynomials modulo word-sized primes.
//!
//! The adjacency matrix is reduced to upper Hessenberg form by similarity
//! transforms over GF(p), then the polynomial is read off with the usual
//! three-term recurrence. Both stages are O(n^3).

use rayon::prelude::*;
use serde::Serialize;

use super::DenseGraph;
use crate::error::{Error, Result};

/// Characteristic polynomial coefficients, leading coefficient first, for
/// each prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPolyFingerprint {
    pub n: usize,
    pub entries: Vec<(u64, Vec<u64>)>,
    pub warnings: Vec<String>,
}

impl CharPolyFingerprint {
    pub fn primes(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// True when both fingerprints use the same primes and agree on all of
    /// them.
    pub fn matches(&self, other: &CharPolyFingerprint) -> bool {
        self.n == other.n && self.entries == other.entries
    }

    /// Upper bound on the chance that two different integer polynomials of
    /// this degree agree modulo every prime used, if the primes were drawn
    /// uniformly from the primes in `[2^29, 2^30)`.
    ///
    /// Every coefficient of an adjacency characteristic polynomial is at most
    /// `n^(n/2) 2^n` in absolute value (Hadamard applied to every principal
    /// minor), so a nonzero difference has at most `bits / 29` prime factors
    /// in that range. There are about 2.5e7 such primes.
    pub fn collision_bound(&self) -> f64 {
        let n = self.n.max(2) as f64;
        let bits = n / 2.0 * n.log2() + n + 1.0;
        let per_prime = ((bits / 29.0).ceil() / 2.5e7).min(1.0);
        per_prime.powi(self.entries.len() as i32)
    }
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `k` largest primes below `2^30`.
pub fn default_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = (1u64 << 30) - 1;
    while out.len() < k {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Barrett reduction for a fixed modulus below `2^31`.
#[derive(Clone, Copy)]
struct Zp {
    p: u64,
    m: u64,
}

impl Zp {
    fn new(p: u64) -> Self {
        Zp { p, m: u64::MAX / p }
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

fn charpoly_mod(g: &DenseGraph, p: u64) -> Vec<u64> {
    let n = g.order();
    let z = Zp::new(p);
    let mut a = vec![0u64; n * n];
    for (i, j) in g.edges() {
        a[i as usize * n + j as usize] = 1;
        a[j as usize * n + i as usize] = 1;
    }
    // Hessenberg reduction
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| a[i * n + j] != 0) else { continue };
        if piv != j + 1 {
            for k in 0..n {
                a.swap(piv * n + k, (j + 1) * n + k);
            }
            for r in 0..n {
                a.swap(r * n + piv, r * n + j + 1);
            }
        }
        let inv = z.inv(a[(j + 1) * n + j]);
        for i in j + 2..n {
            let u = z.mul(a[i * n + j], inv);
            if u == 0 {
                continue;
            }
            // row_i -= u row_{j+1}
            let (top, bottom) = a.split_at_mut(i * n);
            let src = &top[(j + 1) * n..(j + 2) * n];
            let dst = &mut bottom[..n];
            for k in j..n {
                dst[k] = z.sub(dst[k], z.mul(u, src[k]));
            }
            // col_{j+1} += u col_i
            for r in 0..n {
                let t = z.reduce(a[r * n + j + 1] + z.mul(u, a[r * n + i]));
                a[r * n + j + 1] = t;
            }
        }
    }
    // p_{k+1} = (x - h_kk) p_k - sum_i h_{k-i,k} (h_{k,k-1} ... h_{k-i+1,k-i}) p_{k-i}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        let hkk = a[k * n + k];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = z.reduce(next[d + 1] + c);
            next[d] = z.sub(next[d], z.mul(hkk, c));
        }
        let mut t = 1u64;
        for i in 1..=k {
            t = z.mul(t, a[(k - i + 1) * n + k - i]);
            if t == 0 {
                break;
            }
            let coef = z.mul(t, a[(k - i) * n + k]);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[k - i].iter().enumerate() {
                next[d] = z.sub(next[d], z.mul(coef, c));
            }
        }
        polys.push(next);
    }
    let mut out = polys.pop().unwrap();
    out.reverse();
    out
}

/// Characteristic polynomial of the adjacency matrix modulo each prime.
/// Primes not exceeding `n`, or fewer than three primes, produce warnings
/// rather than errors.
pub fn charpoly_fingerprint(g: &DenseGraph, primes: &[u64]) -> Result<CharPolyFingerprint> {
    if primes.is_empty() {
        return Err(Error::NoPrimes);
    }
    let mut warnings = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotAPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidConfig(format!("prime {p} must be below 2^31")));
        }
        if p <= g.order() as u64 {
            warnings.push(format!("prime {p} does not exceed the vertex count {}", g.order()));
        }
    }
    if primes.len() < 3 {
        warnings.push(format!("only {} primes", primes.len()));
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    let entries = primes.par_iter().map(|&p| (p, charpoly_mod(g, p))).collect();
    Ok(CharPolyFingerprint { n: g.order(), entries, warnings })
}
