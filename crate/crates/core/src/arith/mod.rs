//! Integer and multiplicative number-theory primitives.

mod factor;
mod sieve;

pub use factor::{factorize, is_prime};
pub(crate) use factor::pow_mod;
pub use sieve::{pi_progression, prime_powers_up_to, primes_up_to, totient_table, SpfSieve};

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs sorted by prime.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub(crate) fn from_sorted(pairs: Vec<(u64, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The factored integer.
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Exponent of `p` (0 if absent).
    pub fn valuation(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(r, _)| r == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn divisor_count(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn euler_phi(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Source of factorizations; lets hot loops swap trial division for a sieve.
pub trait Factorizer: Sync {
    /// Factorization of `n >= 1`.
    fn factor(&self, n: u64) -> Factorization;
}

/// Factorizer backed by [`factorize`].
#[derive(Clone, Copy, Debug, Default)]
pub struct TrialDivision;

impl Factorizer for TrialDivision {
    fn factor(&self, n: u64) -> Factorization {
        factorize(n).expect("factor called with n >= 1")
    }
}

/// A prime power `q = p^k`, `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::NonPositive(0));
        }
        let f = factorize(q)?;
        match f.pairs() {
            [(p, k)] => Ok(Self { p: *p, k: *k, q }),
            _ => Err(Error::NotPrimePower(q)),
        }
    }

    pub fn from_parts(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::NonPositive(0));
        }
        let q = p.checked_pow(k).ok_or(Error::NotPrimePower(u64::MAX))?;
        Ok(Self { p, k, q })
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// `sqrt(q)` when `k` is even.
    pub fn exact_sqrt(&self) -> Option<u64> {
        (self.k % 2 == 0).then(|| self.p.pow(self.k / 2))
    }

    /// Largest integer `b` with `b^2 <= 4q`, i.e. floor(2 sqrt q).
    pub fn hasse_radius(&self) -> u64 {
        num_integer::Roots::sqrt(&(4 * self.q))
    }
}

impl std::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?.divisor_count())
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.euler_phi())
}

/// Quadratic character modulo the prime `p`, extended to all integers.
///
/// Odd `p`: Legendre symbol of `x mod p`. `p = 2`: 0 for even `x`,
/// 1 for `x = +-1 (mod 8)`, -1 for `x = +-3 (mod 8)`.
pub fn quadratic_character(p: u64, x: i64) -> Result<i8> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(chi(p, x))
}

/// [`quadratic_character`] without the primality check.
pub(crate) fn chi(p: u64, x: i64) -> i8 {
    if p == 2 {
        return match x.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = (x as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_divisors(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).count() as u64
    }

    fn naive_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(4289).unwrap().pairs(), &[(4289, 1)]);
        assert!(matches!(factorize(0), Err(Error::NonPositive(0))));
    }

    #[test]
    fn divisor_and_phi_examples() {
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(2).unwrap(), 2);
        assert_eq!(divisor_count(12).unwrap(), 6);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(10).unwrap(), 4);
        assert_eq!(euler_phi(4289).unwrap(), 4288);
        assert!(divisor_count(0).is_err());
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn multiplicative_functions_match_enumeration() {
        for n in 1..=10_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert_eq!(f.divisor_count(), naive_divisors(n), "d({n})");
            assert_eq!(f.euler_phi(), naive_phi(n), "phi({n})");
            assert_eq!(f.divisors().len() as u64, f.divisor_count());
        }
    }

    #[test]
    fn character_examples() {
        assert_eq!(quadratic_character(5, -1).unwrap(), 1);
        assert_eq!(quadratic_character(2, 7).unwrap(), 1);
        assert_eq!(quadratic_character(2, -3).unwrap(), -1);
        assert_eq!(quadratic_character(3, -3).unwrap(), 0);
        assert_eq!(quadratic_character(2, -4).unwrap(), 0);
        assert!(matches!(quadratic_character(9, 2), Err(Error::NotPrime(9))));
    }

    #[test]
    fn euler_criterion() {
        for p in primes_up_to(1000).into_iter().filter(|&p| p > 2) {
            let squares: std::collections::HashSet<u64> = (1..p).map(|a| a * a % p).collect();
            for x in 1..p {
                let expected = if squares.contains(&x) { 1 } else { -1 };
                assert_eq!(chi(p, x as i64), expected, "chi_{p}({x})");
            }
        }
    }

    #[test]
    fn prime_power_parsing() {
        let pp = PrimePower::new(125).unwrap();
        assert_eq!((pp.p, pp.k), (5, 3));
        assert!(matches!(PrimePower::new(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(PrimePower::new(1), Err(Error::NotPrimePower(1))));
        assert_eq!(PrimePower::new(25).unwrap().exact_sqrt(), Some(5));
        assert_eq!(PrimePower::new(5).unwrap().hasse_radius(), 4);
    }

    proptest! {
        #[test]
        fn character_is_multiplicative(idx in 1usize..168, x in -10_000i64..10_000, y in -10_000i64..10_000) {
            let p = primes_up_to(1000)[idx];
            prop_assert_eq!(chi(p, x * y), chi(p, x) * chi(p, y));
        }
    }
}
