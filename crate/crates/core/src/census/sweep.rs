//! Sweep over primes `p`: the most frequent structure count `G(p)`, the
//! largest isogeny class `I(p)` and where both are attained.

use std::collections::{BTreeMap, VecDeque};

use num_rational::Ratio;
use rayon::prelude::*;

use super::table::census_with;
use crate::arith::{primes_up_to, PrimePower, SpfSieve};
use crate::classnum::{ClassNumberTable, ClassNumbers};
use crate::error::{Error, Result};

const CHUNK: usize = 2048;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p: u64,
    /// `G(p)`
    pub g: u64,
    /// `I(p) = max_N I(p; N)`
    pub i: u64,
    /// Exact `G(p) / I(p)` in lowest terms.
    pub ratio: Ratio<u64>,
    pub t_max: Vec<i64>,
    /// `T_max` meets the traces where `I(p)` is attained.
    pub same_t: bool,
    pub m_at_max: Vec<u64>,
    /// `G(p) / (sqrt(p) ln p)`
    pub scaled: f64,
    /// `max_N I(p; N) / d(N)`, the lower end of the `G(p)` sandwich.
    pub lower_sandwich: Ratio<u64>,
}

impl SweepRow {
    /// `T_max = -T_max`.
    pub fn symmetric(&self) -> bool {
        self.t_max.iter().all(|t| self.t_max.binary_search(&-t).is_ok())
    }
}

fn row_for(p: u64, table: &ClassNumberTable, sieve: &SpfSieve) -> SweepRow {
    let q = PrimePower { p, k: 1, q: p };
    let c = census_with(q, table, sieve).expect("table covers 4p");
    let i = c.max_isogeny_size();
    let argmax = c.isogeny_argmax();
    let same_t = c.t_max.iter().any(|t| argmax.contains(t));
    let lower_sandwich = c
        .isogeny_classes
        .iter()
        .map(|cl| Ratio::new(cl.size, crate::arith::Factorizer::factor(sieve, cl.points).divisor_count()))
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0));
    let pf = p as f64;
    SweepRow {
        p,
        g: c.g_max,
        i,
        ratio: Ratio::new(c.g_max, i),
        t_max: c.t_max.iter().copied().collect(),
        same_t,
        m_at_max: c.m_values_at_max.iter().copied().collect(),
        scaled: c.g_max as f64 / (pf.sqrt() * pf.ln()),
        lower_sandwich,
    }
}

/// Rows in ascending `p`, computed chunk by chunk in parallel.
pub struct Sweep<'a> {
    primes: Vec<u64>,
    next: usize,
    buffer: VecDeque<SweepRow>,
    table: &'a ClassNumberTable,
    sieve: SpfSieve,
}

impl Iterator for Sweep<'_> {
    type Item = SweepRow;

    fn next(&mut self) -> Option<SweepRow> {
        if self.buffer.is_empty() && self.next < self.primes.len() {
            let end = (self.next + CHUNK).min(self.primes.len());
            let (table, sieve) = (self.table, &self.sieve);
            let rows: Vec<SweepRow> =
                self.primes[self.next..end].par_iter().map(|&p| row_for(p, table, sieve)).collect();
            self.buffer.extend(rows);
            self.next = end;
        }
        self.buffer.pop_front()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.primes.len() - self.next + self.buffer.len();
        (n, Some(n))
    }
}

/// Sweep over the primes `p_min <= p <= p_max`; needs a table with limit `>= 4 p_max`.
pub fn sweep(p_min: u64, p_max: u64, table: &ClassNumberTable) -> Result<Sweep<'_>> {
    let needed = 4 * p_max;
    if table.limit() < needed {
        return Err(Error::TableTooSmall { limit: table.limit(), needed });
    }
    let primes: Vec<u64> = primes_up_to(p_max).into_iter().filter(|&p| p >= p_min).collect();
    Ok(Sweep { primes, next: 0, buffer: VecDeque::new(), table, sieve: SpfSieve::new(needed.max(8)) })
}

/// Aggregate statistics over sweep rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepSummary {
    pub rows: u64,
    /// ratio -> (rows, rows with `same_t`)
    pub ratio_buckets: BTreeMap<Ratio<u64>, (u64, u64)>,
    /// `#T_max` -> rows
    pub t_max_sizes: BTreeMap<usize, u64>,
    pub same_t: u64,
    pub different_t: u64,
    pub symmetric: u64,
    pub max_m_at_max: u64,
    pub ratio_one: Vec<u64>,
    pub min_ratio: Option<Ratio<u64>>,
}

impl SweepSummary {
    pub fn add(&mut self, row: &SweepRow) {
        self.rows += 1;
        let bucket = self.ratio_buckets.entry(row.ratio).or_default();
        bucket.0 += 1;
        if row.same_t {
            bucket.1 += 1;
            self.same_t += 1;
        } else {
            self.different_t += 1;
        }
        *self.t_max_sizes.entry(row.t_max.len()).or_default() += 1;
        if row.symmetric() {
            self.symmetric += 1;
        }
        if let Some(&m) = row.m_at_max.iter().max() {
            self.max_m_at_max = self.max_m_at_max.max(m);
        }
        if row.ratio == Ratio::from_integer(1) {
            self.ratio_one.push(row.p);
        }
        self.min_ratio = Some(self.min_ratio.map_or(row.ratio, |r| r.min(row.ratio)));
    }
}

impl<'a> FromIterator<&'a SweepRow> for SweepSummary {
    fn from_iter<I: IntoIterator<Item = &'a SweepRow>>(iter: I) -> Self {
        let mut s = Self::default();
        iter.into_iter().for_each(|r| s.add(r));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let table = ClassNumberTable::build(4 * 50).unwrap();
        let rows: Vec<SweepRow> = sweep(2, 50, &table).unwrap().collect();
        assert_eq!(rows.iter().map(|r| r.p).collect::<Vec<_>>(), primes_up_to(50));
        let r5 = rows.iter().find(|r| r.p == 5).unwrap();
        assert_eq!((r5.g, r5.i), (2, 2));
        assert_eq!(r5.t_max, vec![0]);
        assert!(r5.same_t && r5.symmetric());
        let r3 = rows.iter().find(|r| r.p == 3).unwrap();
        assert_eq!(r3.ratio, Ratio::new(1, 2));
        for r in &rows {
            assert!(r.ratio > Ratio::from_integer(0) && r.ratio <= Ratio::from_integer(1));
            assert!(r.lower_sandwich <= Ratio::from_integer(r.g));
            assert!(r.m_at_max.contains(&1));
        }
    }

    #[test]
    fn insufficient_table() {
        let table = ClassNumberTable::build(100).unwrap();
        assert!(matches!(sweep(2, 50, &table), Err(Error::TableTooSmall { .. })));
    }

    #[test]
    fn chunked_iteration_matches_direct_rows() {
        let table = ClassNumberTable::build(4 * 20_000).unwrap();
        let rows: Vec<SweepRow> = sweep(15_000, 20_000, &table).unwrap().collect();
        let sieve = SpfSieve::new(80_000);
        for r in rows.iter().step_by(37) {
            assert_eq!(r, &row_for(r.p, &table, &sieve));
        }
        assert!(rows.windows(2).all(|w| w[0].p < w[1].p));
    }
}
