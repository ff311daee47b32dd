use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::record::PrimeRecord;
use crate::error::{Error, Result};

/// Counts per dimension string and per (string, exact rank).
///
/// Merging is associative and commutative, so partial aggregates from a
/// checkpoint combine with the remainder of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableAggregate {
    pub p: Option<u64>,
    /// Records seen, including those carrying an error.
    pub total: u64,
    pub errors: u64,
    pub strings: BTreeMap<String, u64>,
    /// `string -> rank -> count` over records whose rank is exact.
    pub exact_ranks: BTreeMap<String, BTreeMap<u32, u64>>,
    /// `entry_ones[i-1]`: records with `h(-i) = 1`.
    pub entry_ones: Vec<u64>,
    /// Records whose lower bound is at least 2.
    pub rank_ge2: u64,
    pub degenerate: u64,
}

impl TableAggregate {
    pub fn new(p: u64) -> Self {
        TableAggregate {
            p: Some(p),
            entry_ones: vec![0; p.saturating_sub(3) as usize],
            ..Default::default()
        }
    }

    fn check_p(&mut self, p: u64) -> Result<()> {
        match self.p {
            None => {
                *self = TableAggregate {
                    total: self.total,
                    errors: self.errors,
                    ..TableAggregate::new(p)
                };
                Ok(())
            }
            Some(q) if q == p => Ok(()),
            Some(q) => Err(Error::MixedP(q, p)),
        }
    }

    pub fn add(&mut self, rec: &PrimeRecord) -> Result<()> {
        self.check_p(rec.p)?;
        self.total += 1;
        if rec.is_error() {
            self.errors += 1;
            return Ok(());
        }
        *self.strings.entry(rec.dim_string.clone()).or_default() += 1;
        if rec.rank_exact {
            *self
                .exact_ranks
                .entry(rec.dim_string.clone())
                .or_default()
                .entry(rec.rank_lower)
                .or_default() += 1;
        }
        for (k, c) in rec.dim_string.chars().enumerate() {
            if c == '1' {
                self.entry_ones[k] += 1;
            }
        }
        self.rank_ge2 += (rec.rank_lower >= 2) as u64;
        self.degenerate += rec.degenerate_flag as u64;
        Ok(())
    }

    pub fn merge(&mut self, other: &TableAggregate) -> Result<()> {
        let Some(p) = other.p else {
            return Ok(());
        };
        self.check_p(p)?;
        self.total += other.total;
        self.errors += other.errors;
        for (s, c) in &other.strings {
            *self.strings.entry(s.clone()).or_default() += c;
        }
        for (s, ranks) in &other.exact_ranks {
            let mine = self.exact_ranks.entry(s.clone()).or_default();
            for (r, c) in ranks {
                *mine.entry(*r).or_default() += c;
            }
        }
        for (a, b) in self.entry_ones.iter_mut().zip(&other.entry_ones) {
            *a += b;
        }
        self.rank_ge2 += other.rank_ge2;
        self.degenerate += other.degenerate;
        Ok(())
    }

    /// Records that produced a dimension string.
    pub fn evaluated(&self) -> u64 {
        self.total - self.errors
    }

    pub fn count(&self, dims: &str) -> u64 {
        self.strings.get(dims).copied().unwrap_or(0)
    }

    fn ratio(&self, k: u64) -> f64 {
        if self.evaluated() == 0 {
            0.0
        } else {
            k as f64 / self.evaluated() as f64
        }
    }

    pub fn fraction(&self, dims: &str) -> f64 {
        self.ratio(self.count(dims))
    }

    /// Fraction with `h(-i) = 1`.
    pub fn entry_one_fraction(&self, i: u64) -> f64 {
        self.ratio(self.entry_ones.get(i as usize - 1).copied().unwrap_or(0))
    }

    pub fn rank_ge2_fraction(&self) -> f64 {
        self.ratio(self.rank_ge2)
    }
}

pub fn aggregate<'a>(records: impl IntoIterator<Item = &'a PrimeRecord>) -> Result<TableAggregate> {
    let mut agg = TableAggregate::default();
    for r in records {
        agg.add(r)?;
    }
    Ok(agg)
}
