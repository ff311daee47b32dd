//! `kummer`: per-prime queries, identity sweeps and surveys.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error, 3 I/O error.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kummer_core::selmer::{dimension_string, rank_estimate, PrimeContext, RankOptions};
use kummer_core::survey::{self, read_records, run_survey, SurveyConfig, DEFAULT_CHECKPOINT_EVERY};
use kummer_core::verify::verify_range;
use kummer_core::{Error, InvariantSet, PrimePair, Regularity};

#[derive(Parser, Debug)]
#[command(
    name = "kummer",
    version,
    about = "p-ranks of class groups of Q(N^(1/p)) from invariants mod N"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
struct PairArgs {
    /// Odd prime p
    #[arg(long)]
    p: u64,
    /// Prime N ≡ 1 mod p
    #[arg(long = "N")]
    n: u64,
}

impl PairArgs {
    fn pair(&self) -> Result<PrimePair, Error> {
        PrimePair::new(self.p, self.n)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bounds (or the exact value) of the p-rank r_K
    Rank {
        #[command(flatten)]
        pair: PairArgs,
        /// p-rank of the class group of Q(ζ_p); enables the μ bound for irregular p
        #[arg(long)]
        r_cyclotomic: Option<u32>,
    },
    /// Selmer dimension string with per-entry provenance
    Dims {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// S_i, M_i (Gamma route), A_2 and C with their classes
    Invariants {
        #[command(flatten)]
        pair: PairArgs,
        /// Also evaluate M_i by the direct double product (N <= 5000)
        #[arg(long)]
        direct: bool,
    },
    /// Identity suite over every prime N ≡ 1 mod p up to --max
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max: u64,
    },
    /// Evaluate every prime N ≡ 1 mod p up to --max into an output directory
    Survey {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max: u64,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; 0 uses every core
        #[arg(long, env = "KUMMER_THREADS", default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        resume: bool,
        #[arg(long, default_value_t = DEFAULT_CHECKPOINT_EVERY)]
        checkpoint_every: u64,
        /// Record per-prime wall time (output is then not reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Aggregate tables from a survey directory
    Tables {
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Verify,
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    match cli.command {
        Command::Rank { pair, r_cyclotomic } => {
            let pair = pair.pair()?;
            let reg = Regularity::new(pair.p())?;
            let dims = dimension_string(&PrimeContext::new(pair), &reg)?;
            let est = rank_estimate(
                &dims,
                RankOptions {
                    assumed_r_cyclotomic: r_cyclotomic,
                },
            );
            Ok(render::rank(&est, fmt))
        }
        Command::Dims { pair } => {
            let pair = pair.pair()?;
            let reg = Regularity::new(pair.p())?;
            let dims = dimension_string(&PrimeContext::new(pair), &reg)?;
            Ok(render::dims(&dims, fmt))
        }
        Command::Invariants { pair, direct } => {
            let set = InvariantSet::compute(&pair.pair()?, direct)?;
            Ok(render::invariants(&set, fmt))
        }
        Command::Verify { p, max } => {
            let report = verify_range(p, max)?;
            let out = render::verify(&report, fmt);
            if report.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verify)
            }
        }
        Command::Survey {
            p,
            max,
            out,
            workers,
            resume,
            checkpoint_every,
            timing,
        } => {
            let config = SurveyConfig {
                workers,
                resume,
                checkpoint_every,
                timing,
                ..SurveyConfig::new(p, max, out)
            };
            let agg = run_survey(&config)?;
            Ok(render::tables(&agg, fmt))
        }
        Command::Tables { out } => {
            let records = read_records(&out.join(survey::RECORDS_CSV))?;
            let agg = survey::aggregate(&records)?;
            Ok(render::tables(&agg, fmt))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!(
                "{}",
                msg.lines().next().unwrap_or("error: invalid arguments")
            );
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verify) => {
            eprintln!("error: identity suite reported failures");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Io(_)) { 3 } else { 2 })
        }
    }
}
