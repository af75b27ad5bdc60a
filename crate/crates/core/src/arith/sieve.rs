//! Sieves: segmented Eratosthenes for prime lists, a smallest-prime-factor
//! table for fast factorization of many small integers, and a totient table.

use num_integer::Roots;

use super::{Factorization, Factorizer, PrimePower};
use crate::error::{Error, Result};

const SEGMENT: usize = 1 << 16;

fn simple_sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// All primes `<= z` in ascending order (empty for `z < 2`).
///
/// Segmented: beyond the base primes up to sqrt(z), only one segment of
/// `SEGMENT` flags is alive at a time.
pub fn primes_up_to(z: u64) -> Vec<u64> {
    if z < 2 {
        return Vec::new();
    }
    let root = z.sqrt() as usize;
    let base = simple_sieve(root);
    let mut primes = base.clone();
    let mut flags = vec![true; SEGMENT];
    let mut low = root as u64 + 1;
    while low <= z {
        let high = (low + SEGMENT as u64 - 1).min(z);
        let len = (high - low + 1) as usize;
        flags[..len].fill(true);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = low.div_ceil(p) * p;
            start = start.max(p * p);
            let mut j = start;
            while j <= high {
                flags[(j - low) as usize] = false;
                j += p;
            }
        }
        primes.extend((0..len).filter(|&i| flags[i]).map(|i| low + i as u64));
        low = high + 1;
    }
    primes
}

/// All prime powers `p^k <= q_max` (k >= 1), ascending.
pub fn prime_powers_up_to(q_max: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    for p in primes_up_to(q_max) {
        let mut q = p;
        let mut k = 1;
        loop {
            out.push(PrimePower { p, k, q });
            match q.checked_mul(p) {
                Some(next) if next <= q_max => {
                    q = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
    out.sort_unstable_by_key(|pp| pp.q);
    out
}

/// Number of primes `p <= z` with `p = r (mod s)`.
pub fn pi_progression(z: u64, s: u64, r: u64) -> Result<u64> {
    if s == 0 {
        return Err(Error::NonPositive(0));
    }
    if r >= s {
        return Err(Error::ResidueOutOfRange { r, s });
    }
    Ok(primes_up_to(z).into_iter().filter(|p| p % s == r).count() as u64)
}

/// Smallest-prime-factor table over `[0, limit]`.
#[derive(Clone, Debug)]
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: u64) -> Self {
        assert!(limit < u32::MAX as u64, "SPF sieve limit must fit in u32");
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let j = i * p as usize;
                if p > si || j > n {
                    break;
                }
                spf[j] = p;
            }
        }
        Self { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }
}

impl Factorizer for SpfSieve {
    fn factor(&self, n: u64) -> Factorization {
        if n > self.limit() {
            return super::factorize(n).expect("n > 0");
        }
        let mut n = n as usize;
        let mut pairs = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            pairs.push((p as u64, e));
        }
        Factorization::from_sorted(pairs)
    }
}

/// Euler's totient for every `m <= limit`.
pub fn totient_table(limit: usize) -> Vec<u32> {
    let mut phi: Vec<u32> = (0..=limit as u32).collect();
    for i in 2..=limit {
        if phi[i] == i as u32 {
            let mut j = i;
            while j <= limit {
                phi[j] -= phi[j] / i as u32;
                j += i;
            }
        }
    }
    phi
}
