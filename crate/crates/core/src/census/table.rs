use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use super::formulas::{isogeny_size_in_range, supersingular_candidates, supersingular_count};
use super::trace::{is_ordinary, ordinary_trace};
use super::GroupStructure;
use crate::arith::{Factorizer, PrimePower, TrialDivision};
use crate::classnum::ClassNumbers;
use crate::error::Result;

/// One realizable structure with its trace and class count `G(q; m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub structure: GroupStructure,
    pub t: i64,
    pub count: u64,
}

/// One nonempty isogeny class: trace, point count and `I(q; N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyClass {
    pub t: i64,
    pub points: u64,
    pub size: u64,
}

/// Every realizable structure over `F_q` with its count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub q: PrimePower,
    /// Sorted by `(n, m)`.
    pub entries: Vec<CensusEntry>,
    /// Sorted by trace.
    pub isogeny_classes: Vec<IsogenyClass>,
    /// Number of distinct structures.
    pub f: u64,
    /// `G(q)`, the largest class count of a single structure.
    pub g_max: u64,
    pub t_max: BTreeSet<i64>,
    pub m_values_at_max: BTreeSet<u64>,
}

impl CensusTable {
    pub fn count(&self, m: u64, n: u64) -> u64 {
        self.entries
            .iter()
            .find(|e| e.structure.m == m && e.structure.n == n)
            .map_or(0, |e| e.count)
    }

    /// `max_N I(q; N)`.
    pub fn max_isogeny_size(&self) -> u64 {
        self.isogeny_classes.iter().map(|c| c.size).max().unwrap_or(0)
    }

    /// Traces at which `max_N I(q; N)` is attained.
    pub fn isogeny_argmax(&self) -> BTreeSet<i64> {
        let best = self.max_isogeny_size();
        self.isogeny_classes.iter().filter(|c| c.size == best).map(|c| c.t).collect()
    }
}

/// Census of all group structures over `F_q`.
pub fn census(q: PrimePower, classes: &dyn ClassNumbers) -> Result<CensusTable> {
    census_with(q, classes, &TrialDivision)
}

/// [`census`] with an explicit factorizer for `t^2 - 4q` and `q - 1`.
pub fn census_with(
    q: PrimePower,
    classes: &dyn ClassNumbers,
    factorizer: &dyn Factorizer,
) -> Result<CensusTable> {
    classes.ensure_covers(4 * q.q)?;
    let qm1 = factorizer.factor(q.q - 1);
    let r = q.hasse_radius() as i64;
    let mut entries = Vec::new();
    let mut isogeny_classes = Vec::new();
    // (m, running sum of h) per divisor of s_t
    let mut buckets: Vec<(u64, u64)> = Vec::new();

    for t in -r..=r {
        if !is_ordinary(&q, t) {
            continue;
        }
        let tr = ordinary_trace(&q, t, &qm1, factorizer);
        buckets.clear();
        for l in tr.conductor.divisors() {
            let m = l.gcd(&tr.s_t);
            let h = classes.h(tr.delta.divide_square(l).expect("l | c_t"));
            match buckets.iter_mut().find(|b| b.0 == m) {
                Some(b) => b.1 += h,
                None => buckets.push((m, h)),
            }
        }
        for &(m, count) in &buckets {
            entries.push(CensusEntry { structure: GroupStructure::new(m, tr.points / m), t, count });
        }
        isogeny_classes.push(IsogenyClass {
            t,
            points: tr.points,
            size: isogeny_size_in_range(&q, t, classes),
        });
    }

    let mut super_traces = BTreeSet::new();
    for (t, s) in supersingular_candidates(&q) {
        let count = supersingular_count(&q, classes, s.m, s.n);
        if count > 0 {
            entries.push(CensusEntry { structure: s, t, count });
            super_traces.insert(t);
        }
    }
    for t in super_traces {
        isogeny_classes.push(IsogenyClass {
            t,
            points: (q.q as i64 + 1 - t) as u64,
            size: isogeny_size_in_range(&q, t, classes),
        });
    }

    entries.sort_unstable_by_key(|e| (e.structure.n, e.structure.m));
    isogeny_classes.sort_unstable_by_key(|c| c.t);
    let g_max = entries.iter().map(|e| e.count).max().unwrap_or(0);
    let at_max = entries.iter().filter(|e| e.count == g_max);
    let t_max = at_max.clone().map(|e| e.t).collect();
    let m_values_at_max = at_max.map(|e| e.structure.m).collect();
    Ok(CensusTable {
        q,
        f: entries.len() as u64,
        entries,
        isogeny_classes,
        g_max,
        t_max,
        m_values_at_max,
    })
}
