//! Table-driven arithmetic in `F_q = F_p[x] / (f)` for small `q`.
//!
//! An element is the index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of its
//! coefficient vector, so comparing indices compares coefficient tuples
//! lexicographically from the top coefficient down.

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest field the oracle will build tables for.
pub const MAX_ORACLE_Q: u64 = 4096;

/// Default cap on `q` for oracle runs.
pub const DEFAULT_ORACLE_CAP: u64 = 250;

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients from degree 0 up to and including the leading 1.
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    /// Quadratic character of each element.
    chi: Vec<i8>,
}

fn digits(mut idx: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn index_of(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic `m`, coefficients low to high.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let j = shift + i;
                r[j] = (r[j] + p - (lead * c) % p) % p;
            }
        }
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn monic(idx: u32, p: u32, degree: u32) -> Vec<u32> {
    let mut f = digits(idx, p, degree);
    f.push(1);
    f
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = (f.len() - 1) as u32;
    (1..=n / 2).all(|d| {
        (0..p.pow(d)).all(|idx| poly_rem(f, &monic(idx, p, d), p).iter().any(|&c| c != 0))
    })
}

impl FieldCtx {
    /// `F_{p^k}` with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, k: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::SmallCharacteristic(p));
        }
        let cap = cap.min(MAX_ORACLE_Q);
        let q = p.checked_pow(k).filter(|&q| q <= cap).ok_or(Error::FieldTooLarge {
            q: p.saturating_pow(k),
            cap,
        })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = (0..q)
            .map(|idx| monic(idx, p, k))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");

        let elems: Vec<Vec<u32>> = (0..q).map(|i| digits(i, p, k)).collect();
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for i in 0..qs {
            for j in i..qs {
                let sum: Vec<u32> = elems[i].iter().zip(&elems[j]).map(|(a, b)| (a + b) % p).collect();
                let s = index_of(&sum, p) as u16;
                let mut prod = poly_rem(&poly_mul(&elems[i], &elems[j], p), &modulus, p);
                prod.resize(k as usize, 0);
                let m = index_of(&prod, p) as u16;
                add[i * qs + j] = s;
                add[j * qs + i] = s;
                mul[i * qs + j] = m;
                mul[j * qs + i] = m;
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for i in 0..qs {
            for j in 0..qs {
                if add[i * qs + j] == 0 {
                    neg[i] = j as u16;
                }
                if mul[i * qs + j] == 1 {
                    inv[i] = j as u16;
                }
            }
        }
        let mut chi = vec![-1i8; qs];
        chi[0] = 0;
        for y in 1..qs {
            chi[mul[y * qs + y] as usize] = 1;
        }
        Ok(Self { p, k, q, modulus, add, mul, neg, inv, chi })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Coefficients `c_0, ..., c_{k-1}` of an element.
    pub fn coefficients(&self, x: u32) -> Vec<u32> {
        digits(x, self.p, self.k)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q as usize + b as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q as usize + b as usize] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize] as u32
    }

    #[inline]
    pub fn chi(&self, a: u32) -> i8 {
        self.chi[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let (mut base, mut e, mut acc) = (a, e, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}
