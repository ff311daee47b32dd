use std::io;

use thiserror::Error;

/// Errors raised by the arithmetic, invariant, and survey layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    BadP(u64),
    #[error("N = {0} is not prime")]
    NotPrime(u64),
    #[error("N = {n} is not congruent to 1 mod {p}")]
    NotCongruent { p: u64, n: u64 },
    #[error("input is zero mod N")]
    ZeroInput,
    #[error("polynomial degenerates mod {0} (leading coefficient vanishes)")]
    DegenerateModulus(u64),
    #[error("polynomial degree {0} is not supported (1..=3)")]
    UnsupportedDegree(usize),
    #[error("index {index} outside [{lo}, {hi}]")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("direct oracle refuses N = {n} (bound {bound})")]
    OracleBoundExceeded { n: u64, bound: u64 },
    #[error("argument {0} outside the operation's domain")]
    OutOfDomain(i64),
    #[error("p = {p} exceeds the supported bound {bound}")]
    OutOfRange { p: u64, bound: u64 },
    #[error("exponent class {0} is even; regularity is only decided for odd classes")]
    EvenExponent(i64),
    #[error("exponent {0} is not an odd class different from -1 mod p-1")]
    BadExponent(i64),
    #[error("index {0} has the wrong parity or range for this Selmer entry")]
    BadIndex(u64),
    #[error(
        "roots of the unit polynomial for (p={p}, i={i}) disagree on pth-power status mod {n}"
    )]
    RootStatusMismatch { p: u64, i: u64, n: u64 },
    #[error("even entry {even} is One but odd partner {odd} is not")]
    InvalidDimensionString { even: u64, odd: u64 },
    #[error("empty or reversed range [{lo}, {hi}]")]
    BadRange { lo: u64, hi: u64 },
    #[error("records mix p = {0} and p = {1}")]
    MixedP(u64, u64),
    #[error("checkpoint was written for a different configuration")]
    ConfigMismatch,
    #[error("malformed record: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            match e.into_kind() {
                csv::ErrorKind::Io(io) => Error::Io(io),
                _ => unreachable!(),
            }
        } else {
            Error::Parse(e.to_string())
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Error::Io(e.into())
        } else {
            Error::Parse(e.to_string())
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
