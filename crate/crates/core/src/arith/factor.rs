//! Integer factorization for 64-bit inputs: trial division by small primes,
//! deterministic Miller-Rabin and Pollard rho (Brent variant).

use std::sync::OnceLock;

use num_integer::Integer;

use super::Factorization;
use crate::error::{Error, Result};

const TRIAL_BOUND: u64 = 1 << 12;

/// Witness set that makes Miller-Rabin deterministic for every n < 2^64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| super::sieve::primes_up_to(TRIAL_BOUND))
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of an odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; step one at a time
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Canonical prime factorization of `n`; `factorize(1)` is the empty product.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let mut rest = n;
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
    }
    if rest > 1 {
        if rest < TRIAL_BOUND * TRIAL_BOUND || is_prime(rest) {
            pairs.push((rest, 1));
        } else {
            let mut primes = Vec::new();
            split_into(rest, &mut primes);
            primes.sort_unstable();
            for p in primes {
                match pairs.last_mut() {
                    Some((last, e)) if *last == p => *e += 1,
                    _ => pairs.push((p, 1)),
                }
            }
        }
    }
    Ok(Factorization::from_sorted(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primality() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // base-2 strong pseudoprimes and a Carmichael number
        for n in [2047u64, 3215031751, 561, 3825123056546413051] {
            assert!(!is_prime(n), "{n}");
        }
        assert!(is_prime(18446744073709551557));
    }

    #[test]
    fn rho_splits_semiprimes() {
        let n = 1_000_003u64 * 998_244_353;
        let f = factorize(n).unwrap();
        assert_eq!(f.pairs(), &[(1_000_003, 1), (998_244_353, 1)]);
        let n = (1u64 << 40) - 1;
        let f = factorize(n).unwrap();
        assert_eq!(f.value(), n);
        assert!(f.pairs().iter().all(|&(p, _)| is_prime(p)));
    }

    #[test]
    fn repeated_large_factor() {
        let p = 1_000_000_007u64;
        let f = factorize(p * p).unwrap();
        assert_eq!(f.pairs(), &[(p, 2)]);
    }
}
