use std::io::Write;

use anyhow::Result;
use ecgroups::oracle::FieldReport;
use ecgroups::{Bounds, CensusTable, SweepRow, SweepSummary, Theta};
use serde::Serialize;

use crate::Format;

#[derive(Serialize)]
struct EntryJson {
    m: u64,
    n: u64,
    t: i64,
    count: u64,
}

#[derive(Serialize)]
struct BoundsJson {
    lower: f64,
    upper: f64,
}

#[derive(Serialize)]
struct CensusJson {
    q: u64,
    p: u64,
    k: u32,
    #[serde(rename = "F")]
    f: u64,
    #[serde(rename = "G_max")]
    g_max: u64,
    t_max: Vec<i64>,
    entries: Vec<EntryJson>,
    bounds: BoundsJson,
}

pub fn census_json(out: &mut dyn Write, c: &CensusTable) -> Result<()> {
    let b: Bounds = ecgroups::census::bounds_f(c.q);
    let doc = CensusJson {
        q: c.q.q,
        p: c.q.p,
        k: c.q.k,
        f: c.f,
        g_max: c.g_max,
        t_max: c.t_max.iter().copied().collect(),
        entries: c
            .entries
            .iter()
            .map(|e| EntryJson { m: e.structure.m, n: e.structure.n, t: e.t, count: e.count })
            .collect(),
        bounds: BoundsJson { lower: b.lower, upper: b.upper },
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

pub fn census_csv(out: &mut dyn Write, c: &CensusTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["m", "n", "t", "count"])?;
    for e in &c.entries {
        w.serialize((e.structure.m, e.structure.n, e.t, e.count))?;
    }
    w.flush()?;
    Ok(())
}

pub fn verify_text(out: &mut dyn Write, reports: &[FieldReport]) -> Result<()> {
    let (mut checked, mut skipped, mut failed) = (0, 0, 0);
    for r in reports {
        match r {
            FieldReport::Skipped { q, reason } => {
                skipped += 1;
                writeln!(out, "q={q} skipped: {reason}")?;
            }
            FieldReport::Checked { q, classes, structures, mismatches } => {
                checked += 1;
                if mismatches.is_empty() {
                    writeln!(out, "q={q} ok: {classes} classes, {structures} structures")?;
                } else {
                    failed += 1;
                    writeln!(out, "q={q} MISMATCH")?;
                    for m in mismatches {
                        writeln!(out, "  {m}")?;
                    }
                }
            }
        }
    }
    writeln!(out, "checked {checked}, skipped {skipped}, mismatched {failed}")?;
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

pub fn sweep_writer(out: &mut dyn Write) -> Result<csv::Writer<&mut dyn Write>> {
    writeln!(out, "# scaled = G / (sqrt(p) * ln p)")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p", "G", "I", "ratio_num", "ratio_den", "t_max", "same_t", "m_at_max", "scaled"])?;
    Ok(w)
}

pub fn sweep_row(w: &mut csv::Writer<&mut dyn Write>, r: &SweepRow) -> Result<()> {
    w.write_record([
        r.p.to_string(),
        r.g.to_string(),
        r.i.to_string(),
        r.ratio.numer().to_string(),
        r.ratio.denom().to_string(),
        join(&r.t_max),
        u8::from(r.same_t).to_string(),
        join(&r.m_at_max),
        format!("{:.6}", r.scaled),
    ])?;
    Ok(())
}

#[derive(Serialize)]
pub struct SummaryJson {
    primes: u64,
    /// `"num/den"` -> `[primes, same_t primes]`
    ratio_buckets: Vec<(String, u64, u64)>,
    t_max_histogram: Vec<(usize, u64)>,
    same_t: u64,
    different_t: u64,
    symmetric: u64,
    max_m_at_max: u64,
    ratio_one: Vec<u64>,
    min_ratio: Option<String>,
}

impl From<&SweepSummary> for SummaryJson {
    fn from(s: &SweepSummary) -> Self {
        Self {
            primes: s.rows,
            ratio_buckets: s.ratio_buckets.iter().map(|(r, &(a, b))| (r.to_string(), a, b)).collect(),
            t_max_histogram: s.t_max_sizes.iter().map(|(&k, &v)| (k, v)).collect(),
            same_t: s.same_t,
            different_t: s.different_t,
            symmetric: s.symmetric,
            max_m_at_max: s.max_m_at_max,
            ratio_one: s.ratio_one.clone(),
            min_ratio: s.min_ratio.map(|r| r.to_string()),
        }
    }
}

pub fn summary_text(out: &mut dyn Write, s: &SweepSummary) -> Result<()> {
    writeln!(out, "primes: {}", s.rows)?;
    writeln!(out, "G/I ratio buckets (ratio: primes, same-t primes):")?;
    for (r, (all, same)) in s.ratio_buckets.iter().rev() {
        writeln!(out, "  {r}: {all}, {same}")?;
    }
    writeln!(out, "#T_max histogram:")?;
    for (size, n) in &s.t_max_sizes {
        writeln!(out, "  {size}: {n}")?;
    }
    writeln!(out, "same-t: {}", s.same_t)?;
    writeln!(out, "different-t: {}", s.different_t)?;
    writeln!(out, "symmetric T_max: {}", s.symmetric)?;
    writeln!(out, "max m at maximum: {}", s.max_m_at_max)?;
    writeln!(out, "ratio-1 primes: {}", join(&s.ratio_one).replace(';', " "))?;
    if let Some(r) = s.min_ratio {
        writeln!(out, "minimum ratio: {r}")?;
    }
    Ok(())
}

pub fn avg(out: &mut dyn Write, format: Format, q: u64, sum: u64, main: f64, ratio: f64) -> Result<()> {
    if format == Format::Json {
        serde_json::to_writer_pretty(&mut *out, &serde_json::json!({ "Q": q, "sum": sum, "main_term": main, "ratio": ratio }))?;
        writeln!(out)?;
    } else {
        writeln!(out, "Q = {q}")?;
        writeln!(out, "sum F(q) = {sum}")?;
        writeln!(out, "main term = {main:.6}")?;
        writeln!(out, "ratio = {ratio:.6}")?;
    }
    Ok(())
}

pub fn theta(out: &mut dyn Write, format: Format, th: &Theta) -> Result<()> {
    if format == Format::Json {
        serde_json::to_writer_pretty(
            &mut *out,
            &serde_json::json!({ "M": th.terms, "value": th.value, "tail_bound": th.tail_bound }),
        )?;
        writeln!(out)?;
    } else {
        writeln!(out, "theta = {:.9}", th.value)?;
        writeln!(out, "tail bound = {:.9}", th.tail_bound)?;
    }
    Ok(())
}
