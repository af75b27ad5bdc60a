//! Closed-form counts: admissible traces, structure existence, `G(q; m, n)`,
//! isogeny class sizes `I(q; N)` and the number `F(q)` of distinct structures.

use num_integer::Integer;

use super::trace::{is_ordinary, ordinary_trace, s_t};
use super::GroupStructure;
use crate::arith::{chi, factorize, Factorizer, PrimePower, TrialDivision};
use crate::classnum::{ClassNumbers, Discriminant};
use crate::error::Result;

/// Trace `q + 1 - mn`, if it fits.
fn trace_of(q: &PrimePower, m: u64, n: u64) -> Option<i64> {
    let points = m.checked_mul(n)?;
    i64::try_from(q.q as i128 + 1 - points as i128).ok()
}

fn within_hasse(q: &PrimePower, t: i64) -> bool {
    t.unsigned_abs() <= q.hasse_radius()
}

/// `sqrt(pq)` for odd `k`.
fn sqrt_pq(q: &PrimePower) -> Option<u64> {
    (q.k % 2 == 1).then(|| q.p.pow(q.k.div_ceil(2)))
}

fn h_of(classes: &dyn ClassNumbers, d: i64) -> u64 {
    classes.h(Discriminant::new_unchecked(d))
}

/// `(p + 6 - 4 chi_p(-3) - 3 chi_p(-4)) / 12`
fn trace_two_root_q_count(p: u64) -> u64 {
    let v = p as i64 + 6 - 4 * chi(p, -3) as i64 - 3 * chi(p, -4) as i64;
    debug_assert!(v >= 0 && v % 12 == 0, "p = {p}");
    (v / 12) as u64
}

/// Whether some curve over `F_q` has `q + 1 - t` points.
pub fn admissible_trace(q: PrimePower, t: i64) -> bool {
    let (p, k) = (q.p, q.k);
    let ta = t.unsigned_abs();
    if within_hasse(&q, t) && is_ordinary(&q, t) {
        return true;
    }
    if k % 2 == 1 {
        t == 0 || (matches!(p, 2 | 3) && Some(ta) == sqrt_pq(&q))
    } else {
        let r = q.exact_sqrt().expect("k even");
        (t == 0 && p % 4 != 1) || (ta == r && p % 3 != 1) || ta == 2 * r
    }
}

/// Whether some curve over `F_q` has group `Z_m x Z_n` (`m <= n`).
pub fn structure_exists(q: PrimePower, m: u64, n: u64) -> bool {
    if m == 0 || m > n {
        return false;
    }
    let Some(t) = trace_of(&q, m, n) else {
        return false;
    };
    let (p, k) = (q.p, q.k);
    if is_ordinary(&q, t) {
        return within_hasse(&q, t) && n % m == 0 && (q.q - 1) % m == 0;
    }
    let ta = t.unsigned_abs();
    if k % 2 == 1 {
        match t {
            0 if p % 4 != 3 => m == 1,
            0 => m == 1 || m == 2,
            _ => matches!(p, 2 | 3) && Some(ta) == sqrt_pq(&q) && m == 1,
        }
    } else {
        let r = q.exact_sqrt().expect("k even");
        if t == 0 {
            p % 4 != 1 && m == 1
        } else if ta == r {
            p % 3 != 1 && m == 1
        } else if t == 2 * r as i64 {
            m == n && m == r - 1
        } else if t == -(2 * r as i64) {
            m == n && m == r + 1
        } else {
            false
        }
    }
}

/// Number of `F_q`-isomorphism classes with group `Z_m x Z_n`, for a trace
/// that is not ordinary.
pub(crate) fn supersingular_count(q: &PrimePower, classes: &dyn ClassNumbers, m: u64, n: u64) -> u64 {
    let Some(t) = trace_of(q, m, n) else { return 0 };
    let (p, k, qq) = (q.p, q.k, q.q);
    if k % 2 == 1 {
        if m == 1 && n == qq + 1 {
            return h_of(classes, -4 * p as i64);
        }
        if p % 4 == 3 && m == 2 && 2 * n == qq + 1 {
            return h_of(classes, -(p as i64));
        }
        if matches!(p, 2 | 3) && m == 1 && Some(t.unsigned_abs()) == sqrt_pq(q) {
            return 1;
        }
        0
    } else {
        let r = q.exact_sqrt().expect("k even");
        if m == 1 && n == qq + 1 {
            return (1 - chi(p, -4)) as u64;
        }
        if m == 1 && (n == qq + 1 + r || n == qq + 1 - r) {
            return (1 - chi(p, -3)) as u64;
        }
        if m == n && (m == r + 1 || m == r - 1) {
            return trace_two_root_q_count(p);
        }
        0
    }
}

/// The candidate non-ordinary `(t, m, n)` triples over `F_q` (counts may be 0).
pub(crate) fn supersingular_candidates(q: &PrimePower) -> Vec<(i64, GroupStructure)> {
    let (p, qq) = (q.p, q.q);
    let mut out = Vec::new();
    if q.k % 2 == 1 {
        out.push((0, GroupStructure::new(1, qq + 1)));
        if p % 4 == 3 {
            out.push((0, GroupStructure::new(2, (qq + 1) / 2)));
        }
        if matches!(p, 2 | 3) {
            let s = sqrt_pq(q).unwrap();
            out.push((s as i64, GroupStructure::new(1, qq + 1 - s)));
            out.push((-(s as i64), GroupStructure::new(1, qq + 1 + s)));
        }
    } else {
        let r = q.exact_sqrt().unwrap();
        out.push((0, GroupStructure::new(1, qq + 1)));
        out.push((r as i64, GroupStructure::new(1, qq + 1 - r)));
        out.push((-(r as i64), GroupStructure::new(1, qq + 1 + r)));
        out.push((2 * r as i64, GroupStructure::new(r - 1, r - 1)));
        out.push((-2 * r as i64, GroupStructure::new(r + 1, r + 1)));
    }
    out
}

/// `G(q; m, n)`, the number of `F_q`-isomorphism classes of curves with
/// `E(F_q) = Z_m x Z_n`. Zero for unrealizable pairs.
pub fn count_group_structures(q: PrimePower, m: u64, n: u64, classes: &dyn ClassNumbers) -> Result<u64> {
    if m == 0 || n == 0 {
        return Ok(0);
    }
    let Some(t) = trace_of(&q, m, n) else { return Ok(0) };
    if !within_hasse(&q, t) {
        return Ok(0);
    }
    classes.ensure_covers(4 * q.q)?;
    if !is_ordinary(&q, t) {
        return Ok(supersingular_count(&q, classes, m, n));
    }
    if n % m != 0 || (q.q - 1) % m != 0 {
        return Ok(0);
    }
    let qm1 = factorize(q.q - 1)?;
    let tr = ordinary_trace(&q, t, &qm1, &TrialDivision);
    debug_assert_eq!(tr.s_t % m, 0);
    // S_t(m) = { l | c_t : gcd(l, s_t) = m }
    Ok(tr
        .conductor
        .divisors()
        .into_iter()
        .filter(|l| l.gcd(&tr.s_t) == m)
        .map(|l| classes.h(tr.delta.divide_square(l).expect("l | c_t")))
        .sum())
}

/// `I(q; N)`, the number of `F_q`-isomorphism classes with `N` points.
pub fn isogeny_class_size(q: PrimePower, points: u64, classes: &dyn ClassNumbers) -> Result<u64> {
    let Some(t) = trace_of(&q, 1, points) else { return Ok(0) };
    if !within_hasse(&q, t) {
        return Ok(0);
    }
    classes.ensure_covers(4 * q.q)?;
    Ok(isogeny_size_in_range(&q, t, classes))
}

pub(crate) fn isogeny_size_in_range(q: &PrimePower, t: i64, classes: &dyn ClassNumbers) -> u64 {
    let (p, k) = (q.p, q.k);
    if is_ordinary(q, t) {
        return classes.kronecker(Discriminant::new_unchecked(t * t - 4 * q.q as i64));
    }
    let ta = t.unsigned_abs();
    if k % 2 == 1 {
        if t == 0 {
            classes.kronecker(Discriminant::new_unchecked(-4 * p as i64))
        } else if matches!(p, 2 | 3) && Some(ta) == sqrt_pq(q) {
            1
        } else {
            0
        }
    } else {
        let r = q.exact_sqrt().unwrap();
        if t == 0 && p % 4 != 1 {
            (1 - chi(p, -4)) as u64
        } else if ta == r && p % 3 != 1 {
            (1 - chi(p, -3)) as u64
        } else if ta == 2 * r {
            trace_two_root_q_count(p)
        } else {
            0
        }
    }
}

/// Number of distinct group structures among curves of trace `t`.
pub fn f_per_trace(q: PrimePower, t: i64) -> Result<u64> {
    super::trace::check_hasse(&q, t)?;
    let qm1 = factorize(q.q - 1)?;
    Ok(f_per_trace_with(&q, t, &qm1))
}

fn f_per_trace_with(q: &PrimePower, t: i64, qm1: &crate::arith::Factorization) -> u64 {
    let (p, k) = (q.p, q.k);
    if is_ordinary(q, t) {
        let points = (q.q as i64 + 1 - t) as u64;
        return factorize(s_t(qm1, points)).unwrap().divisor_count();
    }
    let t2 = (t as i128) * (t as i128);
    let qq = q.q as i128;
    let minus_one = chi(p, -1) as i64;
    let minus_three = chi(p, -3) as i64;
    let v = if k % 2 == 1 {
        if t == 0 {
            1 + (1 - minus_one) / 2
        } else if matches!(p, 2 | 3) && t2 == p as i128 * qq {
            1
        } else {
            0
        }
    } else if t == 0 {
        if p == 2 { 1 } else { (1 - minus_one) / 2 }
    } else if t2 == qq {
        if p == 3 { 1 } else { (1 - minus_three) / 2 }
    } else if t2 == 4 * qq {
        1
    } else {
        0
    };
    v as u64
}

/// `F(q)`: ordinary traces contribute `d(s_t)`, plus the supersingular
/// correction depending on the parity of `k` and on `p`.
pub fn count_f(q: PrimePower) -> u64 {
    count_f_with(&q, &TrialDivision)
}

pub(crate) fn count_f_with(q: &PrimePower, factorizer: &dyn Factorizer) -> u64 {
    let (p, k) = (q.p, q.k);
    let qm1 = factorizer.factor(q.q - 1);
    let r = q.hasse_radius() as i64;
    let ordinary: u64 = (-r..=r)
        .filter(|&t| is_ordinary(q, t))
        .map(|t| {
            let points = (q.q as i64 + 1 - t) as u64;
            // d(s_t) from the exponents directly
            let mut d = 1u64;
            for &(prime, e) in qm1.pairs() {
                let mut rest = points;
                let mut v = 0;
                while rest % prime == 0 && v < 2 * e {
                    rest /= prime;
                    v += 1;
                }
                d *= e.min(v / 2) as u64 + 1;
            }
            d
        })
        .sum();
    let half = (1 - chi(p, -1) as i64) / 2;
    let small = matches!(p, 2 | 3);
    let correction = match (k % 2 == 1, small) {
        (true, false) => 1 + half,
        (true, true) => 3 + half,
        (false, false) => 3 + half - chi(p, -3) as i64,
        (false, true) => 5,
    };
    ordinary + correction as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::prime_powers_up_to;
    use crate::classnum::{ClassNumberTable, Pointwise};

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    #[test]
    fn admissible_examples() {
        assert!(admissible_trace(pp(5), 0));
        assert!(!admissible_trace(pp(5), 5));
        assert!(admissible_trace(pp(4), 4));
        assert!(admissible_trace(pp(2), 2));
        assert!(!admissible_trace(pp(25), 0));
        assert!(admissible_trace(pp(49), 0));
        assert!(admissible_trace(pp(25), 5));
        assert!(!admissible_trace(pp(49), 7));
    }

    #[test]
    fn existence_examples() {
        assert!(structure_exists(pp(5), 2, 2));
        assert!(!structure_exists(pp(5), 2, 3));
        assert!(structure_exists(pp(7), 2, 4));
        assert!(!structure_exists(pp(5), 3, 2));
        assert!(structure_exists(pp(25), 4, 4));
        assert!(structure_exists(pp(25), 6, 6));
    }

    #[test]
    fn count_examples() {
        let src = Pointwise;
        assert_eq!(count_group_structures(pp(5), 2, 2, &src).unwrap(), 1);
        assert_eq!(count_group_structures(pp(5), 1, 6, &src).unwrap(), 2);
        assert_eq!(count_group_structures(pp(7), 2, 4, &src).unwrap(), 1);
        assert_eq!(count_group_structures(pp(5), 2, 3, &src).unwrap(), 0);
        assert_eq!(count_group_structures(pp(5), 1, 100, &src).unwrap(), 0);
        assert_eq!(count_group_structures(pp(5), 0, 6, &src).unwrap(), 0);
    }

    #[test]
    fn isogeny_examples() {
        let src = Pointwise;
        assert_eq!(isogeny_class_size(pp(5), 4, &src).unwrap(), 2);
        assert_eq!(isogeny_class_size(pp(5), 6, &src).unwrap(), 2);
        assert_eq!(isogeny_class_size(pp(5), 12, &src).unwrap(), 0);
    }

    #[test]
    fn small_table_is_rejected() {
        let table = ClassNumberTable::build(10).unwrap();
        assert!(count_group_structures(pp(5), 1, 6, &table).is_err());
    }

    #[test]
    fn f_per_trace_examples() {
        assert_eq!(f_per_trace(pp(5), 2).unwrap(), 2);
        assert_eq!(f_per_trace(pp(5), 0).unwrap(), 1);
        assert_eq!(f_per_trace(pp(7), 0).unwrap(), 2);
        assert!(f_per_trace(pp(5), 5).is_err());
    }

    #[test]
    fn count_f_small_fields() {
        assert_eq!(count_f(pp(5)), 11);
        assert_eq!(count_f(pp(2)), 5);
        assert_eq!(count_f(pp(3)), 8);
        // four ordinary traces with s_t = 1 plus the even-k, p = 2 correction 5
        assert_eq!(count_f(pp(4)), 9);
    }

    #[test]
    fn f_per_trace_sums_to_count_f() {
        for q in prime_powers_up_to(2000) {
            let r = q.hasse_radius() as i64;
            let total: u64 = (-r..=r).map(|t| f_per_trace(q, t).unwrap()).sum();
            assert_eq!(total, count_f(q), "q = {}", q.q);
        }
    }

    #[test]
    fn admissible_iff_some_curve() {
        let table = ClassNumberTable::build(4 * 600).unwrap();
        for q in prime_powers_up_to(600) {
            let r = q.hasse_radius() as i64;
            for t in -r - 3..=r + 3 {
                let points = q.q as i64 + 1 - t;
                let size = if points > 0 { isogeny_class_size(q, points as u64, &table).unwrap() } else { 0 };
                assert_eq!(admissible_trace(q, t), size > 0, "q = {}, t = {t}", q.q);
            }
        }
    }
}
