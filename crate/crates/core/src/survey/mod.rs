//! Resumable surveys over all primes `N ≡ 1 mod p` up to a bound.
//!
//! An output directory holds `records.csv`, `records.jsonl`,
//! `checkpoint.json` and, once a run completes, `tables.json`. Primes are
//! evaluated in ascending batches on a worker pool and written in order by a
//! single writer. Every `checkpoint_every` records both record files are
//! flushed to disk before the checkpoint is replaced atomically, so a resumed
//! run truncates the record files back to the checkpoint and continues from
//! the next prime. Output bytes do not depend on the worker count or on where
//! a run was interrupted.

mod record;
mod sieve;
mod table;

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use record::{process_prime, process_prime_with, PrimeRecord};
pub use sieve::{sieve, ProgressionSieve};
pub use table::{aggregate, TableAggregate};

use crate::error::{Error, Result};
use crate::modarith::PrimePair;
use crate::regularity::Regularity;

pub const RECORDS_CSV: &str = "records.csv";
pub const RECORDS_JSONL: &str = "records.jsonl";
pub const CHECKPOINT: &str = "checkpoint.json";
pub const TABLES: &str = "tables.json";
pub const DEFAULT_CHECKPOINT_EVERY: u64 = 10_000;
pub const CSV_COLUMNS: [&str; 11] = [
    "p",
    "N",
    "dim_string",
    "rank_lower",
    "rank_upper",
    "rank_exact",
    "mu",
    "s_labels",
    "degenerate_flag",
    "error",
    "elapsed_us",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyConfig {
    pub p: u64,
    pub max_n: u64,
    /// 0 lets the pool pick one thread per core.
    pub workers: usize,
    pub out_dir: PathBuf,
    pub resume: bool,
    pub checkpoint_every: u64,
    /// Record per-prime wall time; makes output nondeterministic.
    pub timing: bool,
    /// Return after this many records have been checkpointed, as if killed.
    pub stop_after: Option<u64>,
}

impl SurveyConfig {
    pub fn new(p: u64, max_n: u64, out_dir: impl Into<PathBuf>) -> Self {
        SurveyConfig {
            p,
            max_n,
            workers: 0,
            out_dir: out_dir.into(),
            resume: false,
            checkpoint_every: DEFAULT_CHECKPOINT_EVERY,
            timing: false,
            stop_after: None,
        }
    }

    /// Hash of the parameters that determine output bytes.
    pub fn hash(&self) -> String {
        let canonical = format!(
            "kummer-survey/1;p={};max_n={};checkpoint_every={};timing={}",
            self.p, self.max_n, self.checkpoint_every, self.timing
        );
        Sha256::digest(canonical.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config_hash: String,
    /// Largest N whose record is durably written; every smaller N is too.
    pub last_n: u64,
    pub partial_counts: TableAggregate,
}

impl Checkpoint {
    pub fn load(dir: &Path) -> Result<Option<Self>> {
        let path = dir.join(CHECKPOINT);
        if !path.exists() {
            return Ok(None);
        }
        Ok(Some(serde_json::from_slice(&fs::read(path)?)?))
    }

    fn store(&self, dir: &Path) -> Result<()> {
        let tmp = dir.join(format!("{CHECKPOINT}.tmp"));
        let mut f = File::create(&tmp)?;
        serde_json::to_writer(&mut f, self)?;
        f.write_all(b"\n")?;
        f.sync_all()?;
        fs::rename(tmp, dir.join(CHECKPOINT))?;
        Ok(())
    }
}

/// Cuts `path` after its first `lines` newline-terminated lines.
fn truncate_lines(path: &Path, lines: u64) -> Result<()> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut keep = 0u64;
    let mut buf = Vec::new();
    for _ in 0..lines {
        buf.clear();
        let read = reader.read_until(b'\n', &mut buf)?;
        if read == 0 || buf.last() != Some(&b'\n') {
            return Err(Error::Parse(format!(
                "{} is shorter than its checkpoint",
                path.display()
            )));
        }
        keep += read as u64;
    }
    OpenOptions::new().write(true).open(path)?.set_len(keep)?;
    Ok(())
}

struct Writers {
    csv: csv::Writer<File>,
    jsonl: BufWriter<File>,
}

impl Writers {
    fn open(dir: &Path, append: bool) -> Result<Self> {
        let open = |name: &str| -> Result<File> {
            let mut o = OpenOptions::new();
            if append {
                o.append(true);
            } else {
                o.write(true).create(true).truncate(true);
            }
            Ok(o.open(dir.join(name))?)
        };
        let mut csv = csv::WriterBuilder::new()
            .has_headers(false)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(open(RECORDS_CSV)?);
        if !append {
            csv.write_record(CSV_COLUMNS)?;
        }
        Ok(Writers {
            csv,
            jsonl: BufWriter::new(open(RECORDS_JSONL)?),
        })
    }

    fn write(&mut self, rec: &PrimeRecord) -> Result<()> {
        self.csv.serialize(rec)?;
        serde_json::to_writer(&mut self.jsonl, rec)?;
        self.jsonl.write_all(b"\n")?;
        Ok(())
    }

    fn sync(&mut self) -> Result<()> {
        self.csv.flush()?;
        self.csv.get_ref().sync_data()?;
        self.jsonl.flush()?;
        self.jsonl.get_ref().sync_data()?;
        Ok(())
    }
}

/// Runs (or resumes) a survey and returns the aggregate over all records.
pub fn run_survey(config: &SurveyConfig) -> Result<TableAggregate> {
    let p = config.p;
    let reg = Regularity::new(p)?;
    if config.max_n < 2 {
        return Err(Error::BadRange {
            lo: 2,
            hi: config.max_n,
        });
    }
    let every = config.checkpoint_every.max(1);
    let dir = config.out_dir.as_path();
    fs::create_dir_all(dir)?;
    let hash = config.hash();

    let mut state = Checkpoint {
        config_hash: hash.clone(),
        last_n: 1,
        partial_counts: TableAggregate::new(p),
    };
    let mut append = false;
    if config.resume {
        if let Some(cp) = Checkpoint::load(dir)? {
            if cp.config_hash != hash {
                return Err(Error::ConfigMismatch);
            }
            truncate_lines(&dir.join(RECORDS_CSV), cp.partial_counts.total + 1)?;
            truncate_lines(&dir.join(RECORDS_JSONL), cp.partial_counts.total)?;
            state = cp;
            append = true;
        }
    }
    if !append {
        let _ = fs::remove_file(dir.join(CHECKPOINT));
        let _ = fs::remove_file(dir.join(TABLES));
    }
    let mut out = Writers::open(dir, append)?;
    if !append {
        out.sync()?;
        state.store(dir)?;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Parse(e.to_string()))?;

    if state.last_n < config.max_n {
        for segment in ProgressionSieve::new(p, state.last_n + 1, config.max_n)? {
            let mut rest = &segment[..];
            while !rest.is_empty() {
                let room = (every - state.partial_counts.total % every) as usize;
                let (batch, tail) = rest.split_at(room.min(rest.len()));
                rest = tail;
                let records: Vec<PrimeRecord> = pool.install(|| {
                    batch
                        .par_iter()
                        .with_max_len(1)
                        .map(|&n| {
                            let pair = PrimePair::new(p, n).expect("sieve output is a valid pair");
                            process_prime_with(pair, &reg, config.timing)
                        })
                        .collect()
                });
                for r in &records {
                    out.write(r)?;
                    state.partial_counts.add(r)?;
                }
                state.last_n = *batch.last().unwrap();
                if state.partial_counts.total.is_multiple_of(every) {
                    out.sync()?;
                    state.store(dir)?;
                    if config
                        .stop_after
                        .is_some_and(|s| state.partial_counts.total >= s)
                    {
                        return Ok(state.partial_counts);
                    }
                }
            }
        }
    }
    state.last_n = state.last_n.max(config.max_n);
    out.sync()?;
    state.store(dir)?;
    let mut tables = serde_json::to_vec_pretty(&state.partial_counts)?;
    tables.push(b'\n');
    fs::write(dir.join(TABLES), tables)?;
    Ok(state.partial_counts)
}

/// Reads every record of a finished or partial survey.
pub fn read_records(path: &Path) -> Result<Vec<PrimeRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}
