//! Class numbers of imaginary quadratic orders.
//!
//! `h(D)` is the number of primitive reduced positive definite forms
//! `ax^2 + bxy + cy^2` with `b^2 - 4ac = D`, without unit weighting, so
//! `h(-3) = h(-4) = 1`. The Kronecker class number `H(D)` sums `h(D/l^2)`
//! over the divisors `l` of the conductor of `D`.

mod table;

pub use table::{ClassNumberTable, DEFAULT_TABLE_CAP_BYTES};

use num_integer::Integer;

use crate::arith::{factorize, Factorization};
use crate::error::{Error, Result};

/// A negative discriminant: `D < 0`, `D = 0 or 1 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_discriminant(d) {
            Ok(Self(d))
        } else {
            Err(Error::NotDiscriminant(d))
        }
    }

    pub(crate) fn new_unchecked(d: i64) -> Self {
        debug_assert!(is_discriminant(d), "{d}");
        Self(d)
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    /// `D / l^2`, if that is again a discriminant.
    pub fn divide_square(self, l: u64) -> Option<Self> {
        let l2 = (l as i64).checked_mul(l as i64)?;
        if self.0 % l2 != 0 {
            return None;
        }
        let d = self.0 / l2;
        is_discriminant(d).then_some(Self(d))
    }
}

impl std::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_discriminant(d: i64) -> bool {
    d < 0 && matches!(d.rem_euclid(4), 0 | 1)
}

/// A primitive reduced positive definite binary quadratic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let Self { a, b, c } = *self;
        a > 0 && -a < b && b <= a && a <= c && !(b < 0 && (a == c || -b == a))
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }
}

/// All primitive reduced forms of discriminant `d`, ordered by `(a, b)`.
pub fn reduced_forms(d: Discriminant) -> Vec<ReducedForm> {
    let n = d.abs() as i64;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        let mut b = -a + 1;
        // b has the parity of D
        if (b - d.get()).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a {
            let num = b * b + n;
            if num % (4 * a) == 0 {
                let form = ReducedForm { a, b, c: num / (4 * a) };
                if form.is_reduced() && form.is_primitive() {
                    debug_assert!(3 * a * a <= n);
                    forms.push(form);
                }
            }
            b += 2;
        }
        a += 1;
    }
    forms
}

/// `h(D)` by direct enumeration of reduced forms.
pub fn class_number(d: i64) -> Result<u64> {
    let d = Discriminant::new(d)?;
    Ok(reduced_forms(d).len() as u64)
}

/// `Delta = c^2 * Delta_K` with `Delta_K` fundamental.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FundamentalDecomposition {
    pub discriminant: Discriminant,
    pub fundamental: Discriminant,
    pub conductor: u64,
}

/// Factorization of the conductor of `d`, given the factorization of `|d|`.
pub(crate) fn conductor_factors(d: Discriminant, abs_factors: &Factorization) -> Factorization {
    let pairs = abs_factors
        .pairs()
        .iter()
        .map(|&(p, e)| {
            if p == 2 {
                let odd = d.abs() >> e;
                // D / 4^j stays a discriminant while 2^(e-2j) >= 4, or when the
                // remaining odd part gives -odd = 1 (mod 4).
                let j = if e % 2 == 0 && odd % 4 == 3 { e / 2 } else { e.saturating_sub(2) / 2 };
                (p, j)
            } else {
                (p, e / 2)
            }
        })
        .filter(|&(_, j)| j > 0)
        .collect();
    Factorization::from_sorted(pairs)
}

pub(crate) fn conductor_from(d: Discriminant, abs_factors: &Factorization) -> u64 {
    conductor_factors(d, abs_factors).value()
}

pub fn fundamental_decomposition(d: i64) -> Result<FundamentalDecomposition> {
    let d = Discriminant::new(d)?;
    let c = conductor_from(d, &factorize(d.abs())?);
    let fundamental = d.divide_square(c).expect("conductor divides out");
    Ok(FundamentalDecomposition { discriminant: d, fundamental, conductor: c })
}

/// A source of class numbers `h(D)` for `|D|` up to some limit.
pub trait ClassNumbers: Sync {
    /// Largest `|D|` this source answers.
    fn limit(&self) -> u64;

    fn h(&self, d: Discriminant) -> u64;

    /// Kronecker class number `H(D) = sum_{l | c} h(D / l^2)`.
    fn kronecker(&self, d: Discriminant) -> u64 {
        conductor_factors(d, &factorize(d.abs()).expect("|D| > 0"))
            .divisors()
            .into_iter()
            .map(|l| self.h(d.divide_square(l).expect("l | conductor")))
            .sum()
    }

    fn ensure_covers(&self, abs_d: u64) -> Result<()> {
        if abs_d > self.limit() {
            Err(Error::TableTooSmall { limit: self.limit(), needed: abs_d })
        } else {
            Ok(())
        }
    }
}

/// Class numbers by per-discriminant enumeration; unbounded but `O(|D|)` each.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pointwise;

impl ClassNumbers for Pointwise {
    fn limit(&self) -> u64 {
        i64::MAX as u64
    }

    fn h(&self, d: Discriminant) -> u64 {
        reduced_forms(d).len() as u64
    }
}

pub fn kronecker_class_number(d: i64) -> Result<u64> {
    Ok(Pointwise.kronecker(Discriminant::new(d)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_predicate() {
        assert!(is_discriminant(-4));
        assert!(!is_discriminant(-5));
        assert!(is_discriminant(-19));
        assert!(!is_discriminant(0));
        assert!(!is_discriminant(5));
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-19).unwrap(), 1);
        assert_eq!(class_number(-20).unwrap(), 2);
        let forms = reduced_forms(Discriminant::new(-20).unwrap());
        assert_eq!(
            forms,
            vec![ReducedForm { a: 1, b: 0, c: 5 }, ReducedForm { a: 2, b: 2, c: 3 }]
        );
        // the non-primitive 2x^2 + 2xy + 2y^2 is excluded
        assert_eq!(class_number(-12).unwrap(), 1);
        assert!(matches!(class_number(-5), Err(Error::NotDiscriminant(-5))));
    }

    #[test]
    fn known_class_numbers() {
        // Heegner discriminants and a few tabulated values
        for d in [-3, -4, -7, -8, -11, -19, -43, -67, -163] {
            assert_eq!(class_number(d).unwrap(), 1, "{d}");
        }
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(class_number(-47).unwrap(), 5);
        assert_eq!(class_number(-71).unwrap(), 7);
        assert_eq!(class_number(-56).unwrap(), 4);
    }

    #[test]
    fn decomposition_examples() {
        let fd = fundamental_decomposition(-16).unwrap();
        assert_eq!((fd.fundamental.get(), fd.conductor), (-4, 2));
        let fd = fundamental_decomposition(-19).unwrap();
        assert_eq!((fd.fundamental.get(), fd.conductor), (-19, 1));
        let fd = fundamental_decomposition(-12).unwrap();
        assert_eq!((fd.fundamental.get(), fd.conductor), (-3, 2));
        assert!(fundamental_decomposition(-7).unwrap().conductor == 1);
        let fd = fundamental_decomposition(-64).unwrap();
        assert_eq!((fd.fundamental.get(), fd.conductor), (-4, 4));
        let fd = fundamental_decomposition(-32).unwrap();
        assert_eq!((fd.fundamental.get(), fd.conductor), (-8, 2));
        assert!(fundamental_decomposition(-6).is_err());
    }

    #[test]
    fn decomposition_is_maximal_by_brute_force() {
        for n in 3..=5000i64 {
            let d = -n;
            if !is_discriminant(d) {
                continue;
            }
            let brute = (1..=n)
                .filter(|c| d % (c * c) == 0 && is_discriminant(d / (c * c)))
                .max()
                .unwrap() as u64;
            let fd = fundamental_decomposition(d).unwrap();
            assert_eq!(fd.conductor, brute, "D = {d}");
            assert_eq!(fundamental_decomposition(fd.fundamental.get()).unwrap().conductor, 1);
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_class_number(-16).unwrap(), 2);
        assert_eq!(kronecker_class_number(-20).unwrap(), 2);
        assert_eq!(kronecker_class_number(-3).unwrap(), 1);
        assert_eq!(kronecker_class_number(-12).unwrap(), 2);
    }

    #[test]
    fn kronecker_dominates_h() {
        for n in 3..=3000i64 {
            let d = -n;
            if !is_discriminant(d) {
                continue;
            }
            let h = class_number(d).unwrap();
            let big = kronecker_class_number(d).unwrap();
            let c = fundamental_decomposition(d).unwrap().conductor;
            assert!(h >= 1);
            assert!(big >= h);
            assert_eq!(big == h, c == 1, "D = {d}");
        }
    }
}
