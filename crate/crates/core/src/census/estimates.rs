//! Real-valued estimates for `F(q)`: explicit bounds, the average-order
//! constant and the exact partial sums it is compared against.

use super::formulas::count_f_with;
use crate::arith::{prime_powers_up_to, totient_table, PrimePower, SpfSieve};
use crate::error::{Error, Result};
use crate::numeric::Real;

/// Strict bracket `lower < F(q) < upper`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds<T> {
    pub lower: T,
    pub upper: T,
}

impl<T: Real> Bounds<T> {
    pub fn strictly_contains(&self, v: u64) -> bool {
        let v = T::of_u64(v);
        self.lower < v && v < self.upper
    }
}

pub fn bounds_f<T: Real>(q: PrimePower) -> Bounds<T> {
    let sqrt_q = T::of_u64(q.q).sqrt();
    let p = T::of_u64(q.p);
    let one = T::one();
    let two = one + one;
    let three = two + one;
    let five = three + two;
    let damping = one - one / p;
    let d = crate::arith::factorize(q.q - 1).map_or(1, |f| f.divisor_count());
    let upper = two * T::pi() * T::pi() / three * sqrt_q * damping + T::of_u64(d) + five;
    let lower = if q.p == 2 { two * sqrt_q + two } else { five * sqrt_q * damping - two };
    Bounds { lower, upper }
}

/// Partial sum of `(8/3) sum 1/(m^2 phi(m))` with a bound on the tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Theta<T> {
    pub terms: u64,
    pub value: T,
    /// `(8/3) sum_{m > M} 1/m^2 < 8 / (3M)`.
    pub tail_bound: T,
}

pub fn theta_constant<T: Real>(terms: u64) -> Result<Theta<T>> {
    if terms == 0 {
        return Err(Error::BelowMinimum { what: "number of terms M", min: 1, got: 0 });
    }
    let phi = totient_table(terms as usize);
    let eight_thirds = T::of_u64(8) / T::of_u64(3);
    // smallest terms first
    let mut sum = T::zero();
    for m in (1..=terms).rev() {
        let mf = T::of_u64(m);
        sum = sum + T::one() / (mf * mf * T::of_u64(phi[m as usize] as u64));
    }
    Ok(Theta {
        terms,
        value: eight_thirds * sum,
        tail_bound: eight_thirds / T::of_u64(terms),
    })
}

/// `sum_{q <= Q} F(q)` over prime powers.
pub fn sum_f_upto(q_max: u64) -> Result<u64> {
    if q_max < 2 {
        return Err(Error::BelowMinimum { what: "Q", min: 2, got: q_max });
    }
    let sieve = SpfSieve::new(q_max);
    Ok(prime_powers_up_to(q_max).iter().map(|q| count_f_with(q, &sieve)).sum())
}

/// `sum_{q <= Q} F(q)` divided by `theta * Q^{3/2} / ln Q`.
pub fn average_order_ratio<T: Real>(q_max: u64, theta: T) -> Result<(u64, T, T)> {
    let sum = sum_f_upto(q_max)?;
    let qf = T::of_u64(q_max);
    let main = theta * qf * qf.sqrt() / qf.ln();
    Ok((sum, main, T::of_u64(sum) / main))
}
