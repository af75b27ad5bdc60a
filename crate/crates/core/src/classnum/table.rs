//! Batch class number table for every discriminant with `|D| <= X`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_integer::Roots;
use rayon::prelude::*;

use super::{ClassNumbers, Discriminant};
use crate::error::{Error, Result};

/// Default memory cap for a table (both arrays): 2 GiB.
pub const DEFAULT_TABLE_CAP_BYTES: u64 = 2 << 30;

const CACHE_MAGIC: &[u8; 4] = b"CNT1";

/// `h(D)` and `H(D)` for all `-X <= D < 0`, indexed by `|D|`.
///
/// Non-discriminant positions hold 0.
#[derive(Clone, Debug)]
pub struct ClassNumberTable {
    limit: u64,
    h: Vec<u32>,
    kronecker: Vec<u32>,
}

fn is_disc_index(n: usize) -> bool {
    n > 0 && matches!(n % 4, 0 | 3)
}

fn mobius_up_to(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut composite = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for j in (p..=n).step_by(p) {
            if j > p {
                composite[j] = true;
            }
            mu[j] = -mu[j];
        }
        let p2 = p * p;
        for j in (p2..=n).step_by(p2) {
            mu[j] = 0;
        }
    }
    mu
}

/// Counts every reduced form (primitive or not) with `|b^2 - 4ac| <= x`
/// and `a` in `a_range`, adding into `counts`.
fn count_reduced_forms(x: u64, a_values: impl Iterator<Item = u64>, counts: &mut [u32]) {
    for a in a_values {
        debug_assert!(3 * a * a <= x);
        let step = 4 * a as usize;
        for b in -(a as i64 - 1)..=a as i64 {
            let b2 = (b * b) as u64;
            // b < 0 forces c > a; otherwise c >= a
            let c_start = if b < 0 { a + 1 } else { a };
            let c_end = (x + b2) / (4 * a);
            if c_start > c_end {
                continue;
            }
            let mut idx = (4 * a * c_start - b2) as usize;
            for _ in c_start..=c_end {
                counts[idx] += 1;
                idx += step;
            }
        }
    }
}

impl ClassNumberTable {
    pub fn bytes_for(x: u64) -> u64 {
        (x + 1).saturating_mul(8)
    }

    /// Builds the table with the default memory cap.
    pub fn build(x: u64) -> Result<Self> {
        Self::build_with_cap(x, DEFAULT_TABLE_CAP_BYTES)
    }

    /// One pass over all reduced forms `(a, b, c)` with `|D| <= x`.
    ///
    /// The pass counts all reduced forms, i.e. `H(D)`; the primitive counts
    /// `h(D) = sum_f mu(f) H(D / f^2)` follow by Mobius inversion, which is
    /// cheaper than a gcd per form.
    pub fn build_with_cap(x: u64, cap_bytes: u64) -> Result<Self> {
        if x < 3 {
            return Err(Error::BelowMinimum { what: "table limit X", min: 3, got: x });
        }
        let bytes = Self::bytes_for(x);
        if bytes > cap_bytes || x > u32::MAX as u64 {
            return Err(Error::TableTooLarge { requested: x, bytes, cap_bytes });
        }
        let len = x as usize + 1;
        let a_max = (x / 3).sqrt();
        let threads = rayon::current_num_threads().max(1) as u64;

        let kronecker = if threads == 1 {
            let mut counts = vec![0u32; len];
            count_reduced_forms(x, 1..=a_max, &mut counts);
            counts
        } else {
            // interleave a so that each worker sees a similar mix of loop lengths
            (0..threads)
                .into_par_iter()
                .map(|w| {
                    let mut counts = vec![0u32; len];
                    let a_values = (1..=a_max).filter(move |a| a % threads == w);
                    count_reduced_forms(x, a_values, &mut counts);
                    counts
                })
                .reduce_with(|mut acc, part| {
                    acc.iter_mut().zip(&part).for_each(|(s, v)| *s += v);
                    acc
                })
                .unwrap_or_else(|| vec![0u32; len])
        };

        let mut h = kronecker.clone();
        let f_max = x.sqrt() as usize;
        let mu = mobius_up_to(f_max);
        for f in 2..=f_max {
            if mu[f] == 0 {
                continue;
            }
            let f2 = f * f;
            for i in 1..=(x as usize / f2) {
                if !is_disc_index(i) {
                    continue;
                }
                let v = kronecker[i];
                let slot = &mut h[i * f2];
                *slot = if mu[f] > 0 { slot.wrapping_add(v) } else { slot.wrapping_sub(v) };
            }
        }
        Ok(Self { limit: x, h, kronecker })
    }

    fn from_class_numbers(limit: u64, h: Vec<u32>) -> Self {
        let mut kronecker = h.clone();
        let f_max = limit.sqrt() as usize;
        for f in 2..=f_max {
            let f2 = f * f;
            for i in 1..=(limit as usize / f2) {
                if is_disc_index(i) {
                    kronecker[i * f2] += h[i];
                }
            }
        }
        Self { limit, h, kronecker }
    }

    /// `h(D)` for `|D| = n`, or `None` when `-n` is not a discriminant.
    pub fn get(&self, n: u64) -> Option<u32> {
        match self.h.get(n as usize) {
            Some(&v) if v > 0 => Some(v),
            _ => None,
        }
    }

    /// Sum of `h(D)` over all discriminants with `|D| <= n`.
    pub fn partial_sum(&self, n: u64) -> u64 {
        self.h[..=(n.min(self.limit) as usize)].iter().map(|&v| v as u64).sum()
    }

    /// Writes `CNT1`, `X` (u64 LE) and `X` u32 LE counters for `|D| = 1..=X`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        for &v in &self.h[1..] {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(Error::BadCache(format!("wrong magic {magic:?}")));
        }
        let mut buf8 = [0u8; 8];
        r.read_exact(&mut buf8)?;
        let limit = u64::from_le_bytes(buf8);
        if limit < 3 || limit > u32::MAX as u64 {
            return Err(Error::BadCache(format!("implausible limit {limit}")));
        }
        let mut raw = Vec::new();
        r.read_to_end(&mut raw)?;
        if raw.len() as u64 != limit * 4 {
            return Err(Error::BadCache(format!(
                "expected {} counter bytes, found {}",
                limit * 4,
                raw.len()
            )));
        }
        let mut h = Vec::with_capacity(limit as usize + 1);
        h.push(0);
        h.extend(raw.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())));
        for (n, &v) in h.iter().enumerate().skip(1) {
            if is_disc_index(n) != (v > 0) {
                return Err(Error::BadCache(format!("entry {n} = {v} is inconsistent")));
            }
        }
        Ok(Self::from_class_numbers(limit, h))
    }

    /// Loads the cache at `path` if it covers `x`, otherwise builds and saves.
    pub fn load_or_build(path: &Path, x: u64, cap_bytes: u64) -> Result<Self> {
        if path.exists() {
            if let Ok(table) = Self::load(path) {
                if table.limit >= x {
                    return Ok(table);
                }
            }
        }
        let table = Self::build_with_cap(x, cap_bytes)?;
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        table.save(path)?;
        Ok(table)
    }
}

impl ClassNumbers for ClassNumberTable {
    fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    fn h(&self, d: Discriminant) -> u64 {
        self.h[d.abs() as usize] as u64
    }

    #[inline]
    fn kronecker(&self, d: Discriminant) -> u64 {
        self.kronecker[d.abs() as usize] as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classnum::{class_number, kronecker_class_number};
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_table() {
        let t = ClassNumberTable::build(20).unwrap();
        let expected = [(3, 1), (4, 1), (7, 1), (8, 1), (11, 1), (12, 1), (15, 2), (16, 1), (19, 1), (20, 2)];
        for n in 1..=20u64 {
            let want = expected.iter().find(|e| e.0 == n).map(|e| e.1);
            assert_eq!(t.get(n), want, "|D| = {n}");
        }
    }

    #[test]
    fn table_matches_pointwise() {
        let t = ClassNumberTable::build(10_000).unwrap();
        for n in 3..=10_000i64 {
            if let Ok(d) = Discriminant::new(-n) {
                assert_eq!(t.h(d), class_number(-n).unwrap(), "h({})", -n);
                assert_eq!(t.kronecker(d), kronecker_class_number(-n).unwrap(), "H({})", -n);
            }
        }
    }

    #[test]
    fn random_entries_large_table() {
        let t = ClassNumberTable::build(100_000).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 500 {
            let n: i64 = rng.gen_range(3..=100_000);
            if let Ok(d) = Discriminant::new(-n) {
                assert_eq!(t.h(d), class_number(-n).unwrap());
                checked += 1;
            }
        }
    }

    #[test]
    fn growth_ratio() {
        let t = ClassNumberTable::build(40_000).unwrap();
        let ratio = t.partial_sum(40_000) as f64 / t.partial_sum(10_000) as f64;
        assert!((7.0..=9.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_oversized_and_tiny() {
        assert!(matches!(
            ClassNumberTable::build_with_cap(1_000_000, 1024),
            Err(Error::TableTooLarge { .. })
        ));
        assert!(ClassNumberTable::build(2).is_err());
    }

    #[test]
    fn cache_round_trip_and_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.cnt");
        let t = ClassNumberTable::build(1000).unwrap();
        t.save(&path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[..4], b"CNT1");
        assert_eq!(u64::from_le_bytes(bytes[4..12].try_into().unwrap()), 1000);
        assert_eq!(bytes.len(), 12 + 4 * 1000);
        // |D| = 20 is the 20th counter
        let off = 12 + 4 * 19;
        assert_eq!(u32::from_le_bytes(bytes[off..off + 4].try_into().unwrap()), 2);
        let back = ClassNumberTable::load(&path).unwrap();
        assert_eq!(back.h, t.h);
        assert_eq!(back.kronecker, t.kronecker);
    }

    #[test]
    fn corrupt_cache_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cnt");
        std::fs::write(&path, b"CNT0xxxxxxxx").unwrap();
        assert!(matches!(ClassNumberTable::load(&path), Err(Error::BadCache(_))));
        let mut bytes = b"CNT1".to_vec();
        bytes.extend(10u64.to_le_bytes());
        bytes.extend([0u8; 12]);
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(ClassNumberTable::load(&path), Err(Error::BadCache(_))));
    }

    #[test]
    fn load_or_build_reuses_larger_cache() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub").join("c.cnt");
        let big = ClassNumberTable::load_or_build(&path, 5000, DEFAULT_TABLE_CAP_BYTES).unwrap();
        let again = ClassNumberTable::load_or_build(&path, 1000, DEFAULT_TABLE_CAP_BYTES).unwrap();
        assert_eq!(again.limit(), big.limit());
    }
}
