use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::modarith::PrimePair;
use crate::regularity::Regularity;
use crate::selmer::{dimension_string, rank_estimate, PrimeContext, RankOptions};

/// One row of survey output. Field names double as CSV headers and JSONL keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub dim_string: String,
    pub rank_lower: u32,
    pub rank_upper: u32,
    #[serde(with = "flag")]
    pub rank_exact: bool,
    pub mu: u32,
    /// Labels of `S_1 .. S_{p-2}` joined with `;`.
    pub s_labels: String,
    #[serde(with = "flag")]
    pub degenerate_flag: bool,
    pub error: String,
    pub elapsed_us: u64,
}

mod flag {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(*b as u8)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            v => Err(D::Error::custom(format!("expected 0 or 1, got {v}"))),
        }
    }
}

impl PrimeRecord {
    pub fn is_error(&self) -> bool {
        !self.error.is_empty()
    }

    pub fn labels(&self) -> Vec<u32> {
        self.s_labels
            .split(';')
            .filter(|s| !s.is_empty())
            .filter_map(|s| s.parse().ok())
            .collect()
    }
}

/// Evaluates one prime. Module errors land in `error` instead of aborting.
///
/// `elapsed_us` is only filled when `timing` is set, so that default output
/// stays byte-identical between runs.
pub fn process_prime_with(pair: PrimePair, reg: &Regularity, timing: bool) -> PrimeRecord {
    let start = Instant::now();
    let ctx = PrimeContext::new(pair);
    let s_labels = ctx
        .s
        .iter()
        .map(|c| c.label.to_string())
        .collect::<Vec<_>>()
        .join(";");
    let mut rec = PrimeRecord {
        p: pair.p(),
        n: pair.n(),
        dim_string: String::new(),
        rank_lower: 0,
        rank_upper: 0,
        rank_exact: false,
        mu: 0,
        s_labels,
        degenerate_flag: false,
        error: String::new(),
        elapsed_us: 0,
    };
    match dimension_string(&ctx, reg) {
        Ok(dims) => {
            let est = rank_estimate(&dims, RankOptions::default());
            rec.dim_string = dims.render();
            rec.rank_lower = est.lower;
            rec.rank_upper = est.upper;
            rec.rank_exact = est.exact;
            rec.mu = est.mu;
            rec.degenerate_flag = dims.degenerate();
        }
        Err(e) => rec.error = e.to_string().replace(['\n', '\r'], " "),
    }
    if timing {
        rec.elapsed_us = start.elapsed().as_micros() as u64;
    }
    rec
}

pub fn process_prime(pair: PrimePair) -> Result<PrimeRecord> {
    let reg = Regularity::new(pair.p())?;
    Ok(process_prime_with(pair, &reg, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(p: u64, n: u64) -> PrimeRecord {
        process_prime(PrimePair::new(p, n).unwrap()).unwrap()
    }

    #[test]
    fn micro_case() {
        let r = rec(5, 11);
        assert_eq!(r.dim_string, "00");
        assert_eq!((r.rank_lower, r.rank_upper, r.rank_exact), (1, 1, true));
        assert_eq!(r.s_labels, "1;0;3");
        assert_eq!(r.labels(), vec![1, 0, 3]);
        assert!(!r.is_error());
    }

    #[test]
    fn counterexample_337() {
        let r = rec(7, 337);
        assert_eq!(&r.dim_string[..1], "0");
        assert_eq!(&r.dim_string[2..3], "1");
        assert_eq!(r.rank_lower, 2);
        assert_eq!(r.s_labels, "4;0;0;0;6");
    }

    #[test]
    fn csv_and_json_round_trip() {
        let r = rec(7, 337);
        let mut w = csv::WriterBuilder::new().from_writer(vec![]);
        w.serialize(&r).unwrap();
        let bytes = w.into_inner().unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with(
            "p,N,dim_string,rank_lower,rank_upper,rank_exact,mu,s_labels,degenerate_flag,error,elapsed_us\n"
        ));
        let back: PrimeRecord = csv::Reader::from_reader(&bytes[..])
            .deserialize()
            .next()
            .unwrap()
            .unwrap();
        assert_eq!(back, r);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"N\":337"));
        assert!(json.contains("\"rank_exact\":0") || json.contains("\"rank_exact\":1"));
        assert_eq!(serde_json::from_str::<PrimeRecord>(&json).unwrap(), r);
    }

    #[test]
    fn p5_never_01() {
        let reg = Regularity::new(5).unwrap();
        for n in super::super::sieve(5, 2, 20_000).unwrap() {
            let r = process_prime_with(PrimePair::new(5, n).unwrap(), &reg, false);
            assert_ne!(r.dim_string, "01", "N = {n}");
        }
    }
}
