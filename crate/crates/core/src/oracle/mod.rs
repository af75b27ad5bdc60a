//! Brute-force ground truth: enumerate every short Weierstrass curve over a
//! small field, count points, and tally isomorphism classes by group structure.
//! Only characteristic `p >= 5` is supported.

mod curve;
mod field;

pub use curve::{Point, ShortCurve};
pub use field::{FieldCtx, DEFAULT_ORACLE_CAP, MAX_ORACLE_Q};

use crate::arith::{prime_powers_up_to, PrimePower};
use crate::census::{count_f, count_group_structures, isogeny_class_size, GroupStructure};
use crate::classnum::ClassNumbers;
use crate::error::Result;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// `F_{p^k}` under the default oracle cap.
pub fn make_field(p: u64, k: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, k, DEFAULT_ORACLE_CAP)
}

/// One representative per `F_q`-isomorphism class, each the minimum of its
/// orbit under `(a, b) -> (u^4 a, u^6 b)`.
pub fn iso_classes(ctx: &FieldCtx) -> Vec<ShortCurve<'_>> {
    let q = ctx.q() as usize;
    let (u4, u6): (Vec<u32>, Vec<u32>) = (1..q as u32).map(|u| (ctx.pow(u, 4), ctx.pow(u, 6))).unzip();
    let mut seen = vec![false; q * q];
    let mut reps = Vec::new();
    for a in ctx.elements() {
        for b in ctx.elements() {
            if seen[a as usize * q + b as usize] {
                continue;
            }
            let Ok(curve) = ShortCurve::new(ctx, a, b) else {
                continue;
            };
            for (&s4, &s6) in u4.iter().zip(&u6) {
                seen[ctx.mul(s4, a) as usize * q + ctx.mul(s6, b) as usize] = true;
            }
            reps.push(curve);
        }
    }
    reps
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleCensus {
    pub q: u64,
    pub structures: BTreeMap<GroupStructure, u64>,
    pub by_points: BTreeMap<u64, u64>,
}

impl OracleCensus {
    pub fn classes(&self) -> u64 {
        self.by_points.values().sum()
    }

    /// Number of distinct realized structures.
    pub fn distinct(&self) -> u64 {
        self.structures.len() as u64
    }
}

pub fn oracle_census(ctx: &FieldCtx) -> OracleCensus {
    let mut out = OracleCensus { q: ctx.q(), ..Default::default() };
    for curve in iso_classes(ctx) {
        let g = curve.group_structure();
        *out.structures.entry(g).or_default() += 1;
        *out.by_points.entry(g.order()).or_default() += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Mismatch {
    Structure { m: u64, n: u64, oracle: u64, formula: u64 },
    Points { points: u64, oracle: u64, formula: u64 },
    Distinct { oracle: u64, formula: u64 },
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mismatch::Structure { m, n, oracle, formula } => {
                write!(f, "(m,n)=({m},{n}): oracle {oracle}, formula {formula}")
            }
            Mismatch::Points { points, oracle, formula } => {
                write!(f, "N={points}: oracle {oracle}, formula {formula}")
            }
            Mismatch::Distinct { oracle, formula } => {
                write!(f, "distinct structures: oracle {oracle}, formula {formula}")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum FieldReport {
    Checked { q: u64, classes: u64, structures: u64, mismatches: Vec<Mismatch> },
    Skipped { q: u64, reason: String },
}

impl FieldReport {
    pub fn q(&self) -> u64 {
        match self {
            FieldReport::Checked { q, .. } | FieldReport::Skipped { q, .. } => *q,
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            FieldReport::Checked { mismatches, .. } => mismatches.is_empty(),
            FieldReport::Skipped { .. } => true,
        }
    }
}

/// Compare the oracle against the closed formulas for one field.
///
/// Every `(m, n)` with `m | n` and `mn` in the Hasse interval is checked, as is
/// every point count in that interval and the number of distinct structures.
pub fn compare(q: PrimePower, cap: u64, classes: &dyn ClassNumbers) -> Result<FieldReport> {
    if q.p < 5 {
        return Ok(FieldReport::Skipped {
            q: q.q,
            reason: format!("characteristic {} needs general Weierstrass forms", q.p),
        });
    }
    let ctx = FieldCtx::new(q.p, q.k, cap)?;
    let oracle = oracle_census(&ctx);
    let r = q.hasse_radius();
    let (lo, hi) = ((q.q + 1).saturating_sub(r).max(1), q.q + 1 + r);
    classes.ensure_covers(4 * q.q)?;

    let mut mismatches = Vec::new();
    for points in lo..=hi {
        let formula = isogeny_class_size(q, points, classes)?;
        let got = oracle.by_points.get(&points).copied().unwrap_or(0);
        if got != formula {
            mismatches.push(Mismatch::Points { points, oracle: got, formula });
        }
        for m in (1..).take_while(|m| m * m <= points).filter(|m| points % (m * m) == 0) {
            let n = points / m;
            let formula = count_group_structures(q, m, n, classes)?;
            let got = oracle.structures.get(&GroupStructure::new(m, n)).copied().unwrap_or(0);
            if got != formula {
                mismatches.push(Mismatch::Structure { m, n, oracle: got, formula });
            }
        }
    }
    let formula = count_f(q);
    if oracle.distinct() != formula {
        mismatches.push(Mismatch::Distinct { oracle: oracle.distinct(), formula });
    }
    Ok(FieldReport::Checked {
        q: q.q,
        classes: oracle.classes(),
        structures: oracle.distinct(),
        mismatches,
    })
}

/// [`compare`] for every prime power up to `q_max`, in ascending order.
pub fn verify_up_to(q_max: u64, cap: u64, classes: &dyn ClassNumbers) -> Result<Vec<FieldReport>> {
    prime_powers_up_to(q_max)
        .into_par_iter()
        .map(|q| compare(q, cap, classes))
        .collect()
}
