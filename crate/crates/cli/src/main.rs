//! `ecgroups`: censuses of elliptic-curve group structures over finite fields.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ecgroups::census::{self, sweep, SweepSummary};
use ecgroups::classnum::DEFAULT_TABLE_CAP_BYTES;
use ecgroups::oracle::{self, DEFAULT_ORACLE_CAP, MAX_ORACLE_Q};
use ecgroups::{ClassNumberTable, PrimePower};

const CACHE_FILE: &str = "class_numbers.cnt";
const AVG_LIMIT: u64 = 1_000_000;
const THETA_TERMS: u64 = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "ecgroups", version, about = "Group structures of elliptic curves over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Directory holding the class number cache
    #[arg(long, global = true, default_value = ".cache")]
    cache_dir: PathBuf,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest field the brute-force oracle will enumerate
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every realizable group structure over F_q with its class count
    Census { q: u64 },
    /// Compare the closed formulas with curve enumeration for all q <= Q_MAX
    Verify { q_max: u64 },
    /// Most frequent structure statistics over the primes p <= P_MAX
    Sweep {
        #[arg(default_value_t = 500_000)]
        p_max: u64,
    },
    /// Sum of F(q) over q <= Q against its asymptotic main term
    Avg { q: u64 },
    /// Partial sum of the average-order constant with M terms
    Theta { m: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Bad arguments; exit status 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use ecgroups::Error as E;
    if err.downcast_ref::<Usage>().is_some() {
        return 1;
    }
    match err.downcast_ref::<E>() {
        Some(E::TableTooLarge { .. } | E::Io(_) | E::BadCache(_)) => 3,
        Some(_) => 1,
        None => 3,
    }
}

fn open_out(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn class_table(cli: &Cli, limit: u64) -> Result<ClassNumberTable> {
    std::fs::create_dir_all(&cli.cache_dir)
        .with_context(|| format!("creating cache directory {}", cli.cache_dir.display()))?;
    let table = ClassNumberTable::load_or_build(&cli.cache_dir.join(CACHE_FILE), limit, DEFAULT_TABLE_CAP_BYTES)?;
    Ok(table)
}

fn prime_power(q: u64) -> Result<PrimePower> {
    PrimePower::new(q).map_err(|e| usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let mut out = open_out(cli.out.as_deref())?;
    let code = match cli.command {
        Command::Census { q } => {
            let q = prime_power(q)?;
            let table = class_table(cli, (4 * q.q).max(4))?;
            let c = census::census(q, &table)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json | Format::Text => output::census_json(&mut out, &c)?,
                Format::Csv => output::census_csv(&mut out, &c)?,
            }
            ExitCode::SUCCESS
        }
        Command::Verify { q_max } => {
            if cli.oracle_cap > MAX_ORACLE_Q {
                return Err(usage(format!("--oracle-cap is limited to {MAX_ORACLE_Q}")));
            }
            if q_max > cli.oracle_cap {
                return Err(usage(format!("q_max = {q_max} exceeds the oracle cap {}", cli.oracle_cap)));
            }
            let table = ClassNumberTable::build((4 * q_max).max(4))?;
            let reports = oracle::verify_up_to(q_max, cli.oracle_cap, &table)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &reports)?;
                    writeln!(out)?;
                }
                Format::Text | Format::Csv => output::verify_text(&mut out, &reports)?,
            }
            if reports.iter().all(|r| r.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Command::Sweep { p_max } => {
            if p_max < 2 {
                return Err(usage("p_max must be at least 2"));
            }
            let table = class_table(cli, 4 * p_max)?;
            let mut summary = SweepSummary::default();
            let mut csv = output::sweep_writer(&mut out)?;
            for row in sweep(2, p_max, &table)? {
                output::sweep_row(&mut csv, &row)?;
                summary.add(&row);
            }
            csv.flush()?;
            drop(csv);
            // the summary goes to stdout unless stdout already carries the rows
            let mut report: Box<dyn Write> =
                if cli.out.is_some() { Box::new(io::stdout().lock()) } else { Box::new(io::stderr().lock()) };
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut report, &output::SummaryJson::from(&summary))?;
                    writeln!(report)?;
                }
                Format::Text | Format::Csv => output::summary_text(&mut report, &summary)?,
            }
            ExitCode::SUCCESS
        }
        Command::Avg { q } => {
            if q == 0 {
                return Err(usage("Q must be at least 1"));
            }
            if q > AVG_LIMIT {
                return Err(usage(format!("Q is limited to {AVG_LIMIT}")));
            }
            let theta = census::theta_constant::<f64>(THETA_TERMS)?;
            let (sum, main, ratio) = census::average_order_ratio::<f64>(q, theta.value)?;
            output::avg(&mut out, cli.format.unwrap_or(Format::Text), q, sum, main, ratio)?;
            ExitCode::SUCCESS
        }
        Command::Theta { m } => {
            if m == 0 {
                return Err(usage("M must be at least 1"));
            }
            let theta = census::theta_constant::<f64>(m)?;
            output::theta(&mut out, cli.format.unwrap_or(Format::Text), &theta)?;
            ExitCode::SUCCESS
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
