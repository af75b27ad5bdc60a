//! Internal consistency identities that decompose `F(q)` by the first
//! structure component `m`: `F(q) = sum_{m | q-1} g(q; m)` with
//! `g(q; m) = #H_q(m) + delta_q(m)`.

use super::table::census;
use crate::arith::{chi, factorize, PrimePower};
use crate::classnum::ClassNumbers;
use crate::error::Result;

/// Per-`m` quantities for one `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureLevel {
    pub m: u64,
    /// `#H_q(m)`: Hasse-interval `N` with `gcd(N - 1, p) = 1` and `m^2 | N`.
    pub hasse_count: u64,
    pub delta: i64,
    /// `#H_q(m) + delta_q(m)`
    pub g: i64,
    /// Realized structures `Z_m x Z_n` in the census.
    pub realized: u64,
    /// Strict bracket `4 sqrt(q)/m^2 (1 - 1/p) -+ 2`, checked for `m < sqrt(q) + 1`.
    pub bracket: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub q: PrimePower,
    pub f: u64,
    pub levels: Vec<StructureLevel>,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn level(&self, m: u64) -> Option<&StructureLevel> {
        self.levels.iter().find(|l| l.m == m)
    }
}

/// `delta_q(m)`. The listed cases are summed: they overlap only at
/// `q = 4, m = 1`, where both the `p = 2` term and the `m = sqrt(q) - 1`
/// term apply.
pub(crate) fn delta(q: &PrimePower, m: u64) -> i64 {
    let (p, k) = (q.p, q.k);
    let small = matches!(p, 2 | 3);
    let half = (1 - chi(p, -1) as i64) / 2;
    let mut d = 0;
    if m == 1 {
        d += match (small, k % 2 == 1) {
            (true, _) => 3,
            (false, true) => 1,
            (false, false) => 1 + half - chi(p, -3) as i64,
        };
    }
    if k % 2 == 1 && m == 2 {
        d += half;
    }
    if let Some(r) = q.exact_sqrt() {
        if m + 1 == r || m == r + 1 {
            d += 1;
        }
    }
    d
}

pub(crate) fn hasse_count(q: &PrimePower, m: u64) -> u64 {
    let r = q.hasse_radius();
    (q.q + 1 - r..=q.q + 1 + r)
        .filter(|&n| (n - 1) % q.p != 0 && n % (m * m) == 0)
        .count() as u64
}

pub fn proof_identities(q: PrimePower, classes: &dyn ClassNumbers) -> Result<IdentityReport> {
    let table = census(q, classes)?;
    let mut failures = Vec::new();
    let sqrt_q = (q.q as f64).sqrt();
    let damping = 1.0 - 1.0 / q.p as f64;
    let mut levels = Vec::new();
    for m in factorize(q.q - 1)?.divisors() {
        let hasse_count = hasse_count(&q, m);
        let delta = delta(&q, m);
        let g = hasse_count as i64 + delta;
        let realized = table.entries.iter().filter(|e| e.structure.m == m).count() as u64;
        if g != realized as i64 {
            failures.push(format!("g({}; {m}) = {g} but {realized} structures are realized", q.q));
        }
        let bracket = ((m as f64) < sqrt_q + 1.0).then(|| {
            let centre = 4.0 * sqrt_q / (m * m) as f64 * damping;
            (centre - 2.0, centre + 2.0)
        });
        if let Some((lo, hi)) = bracket {
            let h = hasse_count as f64;
            if !(lo < h && h < hi) {
                failures.push(format!("#H_{}({m}) = {hasse_count} outside ({lo:.4}, {hi:.4})", q.q));
            }
        }
        levels.push(StructureLevel { m, hasse_count, delta, g, realized, bracket });
    }
    let total: i64 = levels.iter().map(|l| l.g).sum();
    if total != table.f as i64 {
        failures.push(format!("sum of g({}; m) is {total}, F = {}", q.q, table.f));
    }
    Ok(IdentityReport { q, f: table.f, levels, failures })
}
