use std::collections::BTreeSet;

use num_integer::Integer;

use crate::arith::{Factorization, Factorizer, PrimePower};
use crate::classnum::{conductor_factors, Discriminant};
use crate::error::{Error, Result};

/// Everything attached to one trace `t` over a fixed `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceData {
    pub q: PrimePower,
    pub t: i64,
    /// `N = q + 1 - t`
    pub points: u64,
    /// `t^2 - 4q`
    pub delta: i64,
    pub ordinary: bool,
    pub c_t: Option<u64>,
    pub s_t: Option<u64>,
}

pub(crate) fn check_hasse(q: &PrimePower, t: i64) -> Result<()> {
    if t.unsigned_abs() > q.hasse_radius() {
        Err(Error::TraceOutOfRange { q: q.q, t })
    } else {
        Ok(())
    }
}

pub(crate) fn is_ordinary(q: &PrimePower, t: i64) -> bool {
    t.unsigned_abs().gcd(&q.p) == 1
}

/// `s_t`: the largest `s` with `s | q - 1` and `s^2 | N`, taken prime by prime.
pub(crate) fn s_t(q_minus_one: &Factorization, points: u64) -> u64 {
    let mut s = 1;
    for &(r, e) in q_minus_one.pairs() {
        let mut rest = points;
        let mut v = 0;
        while rest % r == 0 && v < 2 * e {
            rest /= r;
            v += 1;
        }
        s *= r.pow(e.min(v / 2));
    }
    s
}

/// Ordinary trace with its conductor factored, as used by the census.
pub(crate) struct OrdinaryTrace {
    pub points: u64,
    pub delta: Discriminant,
    pub s_t: u64,
    pub conductor: Factorization,
}

pub(crate) fn ordinary_trace(
    q: &PrimePower,
    t: i64,
    q_minus_one: &Factorization,
    factorizer: &dyn Factorizer,
) -> OrdinaryTrace {
    debug_assert!(is_ordinary(q, t));
    let points = (q.q as i64 + 1 - t) as u64;
    let delta = Discriminant::new_unchecked(t * t - 4 * q.q as i64);
    let conductor = conductor_factors(delta, &factorizer.factor(delta.abs()));
    let s_t = s_t(q_minus_one, points);
    assert!(
        conductor.value() % s_t == 0,
        "s_t = {s_t} must divide c_t = {} (q = {}, t = {t})",
        conductor.value(),
        q.q
    );
    OrdinaryTrace { points, delta, s_t, conductor }
}

pub fn trace_data(q: PrimePower, t: i64) -> Result<TraceData> {
    check_hasse(&q, t)?;
    let points = (q.q as i64 + 1 - t) as u64;
    let delta = t * t - 4 * q.q as i64;
    if !is_ordinary(&q, t) {
        return Ok(TraceData { q, t, points, delta, ordinary: false, c_t: None, s_t: None });
    }
    let qm1 = crate::arith::factorize(q.q - 1)?;
    let tr = ordinary_trace(&q, t, &qm1, &crate::arith::TrialDivision);
    Ok(TraceData {
        q,
        t,
        points,
        delta,
        ordinary: true,
        c_t: Some(tr.conductor.value()),
        s_t: Some(tr.s_t),
    })
}

/// `S_t(m)`: the multiples of `m` dividing `c_t` that are not multiples of
/// any larger `l` with `m | l | s_t`.
pub fn st_partition(q: PrimePower, t: i64, m: u64) -> Result<BTreeSet<u64>> {
    let data = trace_data(q, t)?;
    let (Some(c_t), Some(s_t)) = (data.c_t, data.s_t) else {
        return Err(Error::NotDivisorOfSt { m, s_t: 0 });
    };
    if m == 0 || s_t % m != 0 {
        return Err(Error::NotDivisorOfSt { m, s_t });
    }
    let divisors_of_c = crate::arith::factorize(c_t)?.divisors();
    let multiples_of = |l: u64| -> BTreeSet<u64> {
        divisors_of_c.iter().copied().filter(|e| e % l == 0).collect()
    };
    let mut set = multiples_of(m);
    for l in (m + 1..=s_t).filter(|l| l % m == 0 && s_t % l == 0) {
        for e in multiples_of(l) {
            set.remove(&e);
        }
    }
    Ok(set)
}
