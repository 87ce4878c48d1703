use std::path::{Path, PathBuf};
use std::process::ExitCode;

use carlitz_spiegel::classgroup::ClassGroupConfig;
use carlitz_spiegel::gf::Gf;
use carlitz_spiegel::harness::{run_spiegel, HarnessConfig};
use carlitz_spiegel::poly::irreducibles;
use carlitz_spiegel::report::SpiegelReport;
use carlitz_spiegel::{Error, ErrorClass};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

const EXIT_FALSIFIED: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "spiegel", version, about = "Reflection checks for Carlitz cyclotomic function fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one prime, or every prime of a degree with --all-primes.
    Verify(RunArgs),
    /// Verify every monic irreducible of the given degree.
    Scan(RunArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Size of the constant field.
    #[arg(long)]
    q: u64,
    /// The prime, written like "T^3+T+1".
    #[arg(long, conflicts_with = "degree")]
    p_poly: Option<String>,
    /// Degree of the primes to process.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    degree: Option<u32>,
    /// With --degree, process every prime of that degree.
    #[arg(long, requires = "degree")]
    all_primes: bool,
    /// Initial degree bound of the class-group factor base.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    norm_bound: Option<u64>,
    /// Maximum number of relations scanned for principalization witnesses.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    witness_bound: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Seed for the random probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for report files; defaults to $SPIEGEL_OUT.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Serialize)]
struct ScanRow {
    p_poly: String,
    status: String,
    exit_code: u8,
    failure: Option<String>,
    dims: Option<std::collections::BTreeMap<String, Vec<usize>>>,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn error_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Usage => EXIT_USAGE,
        ErrorClass::Falsified => EXIT_FALSIFIED,
        ErrorClass::Internal => EXIT_INTERNAL,
    }
}

fn report_code(r: &SpiegelReport) -> u8 {
    if r.passed() {
        0
    } else {
        EXIT_FALSIFIED
    }
}

/// Internal errors dominate falsifications, which dominate usage errors.
fn aggregate(codes: impl IntoIterator<Item = u8>) -> u8 {
    let rank = |c: u8| match c {
        EXIT_INTERNAL => 3,
        EXIT_FALSIFIED => 2,
        EXIT_USAGE => 1,
        _ => 0,
    };
    codes.into_iter().max_by_key(|&c| rank(c)).unwrap_or(0)
}

fn file_stem(q: u64, p: &str) -> String {
    let clean: String = p
        .chars()
        .map(|c| match c {
            '^' => '_',
            '+' => 'p',
            c if c.is_ascii_alphanumeric() => c,
            _ => '-',
        })
        .collect();
    format!("spiegel_q{q}_{clean}")
}

fn render(r: &SpiegelReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json() + "\n",
        Format::Md => r.to_markdown(),
    }
}

fn write_report(dir: &Path, r: &SpiegelReport, format: Format) -> std::io::Result<()> {
    let ext = if format == Format::Json { "json" } else { "md" };
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{}.{ext}", file_stem(r.q, &r.p_poly))), render(r, format))
}

fn config(args: &RunArgs) -> HarnessConfig {
    let mut cg = ClassGroupConfig::default();
    if let Some(b) = args.norm_bound {
        cg.bound = Some(b as usize);
    }
    if let Some(w) = args.witness_bound {
        cg.witness_bound = w as usize;
    }
    HarnessConfig { seed: args.seed, class_group: cg, ..HarnessConfig::default() }
}

fn primes_of_degree(q: u64, d: u32) -> Result<Vec<String>, Error> {
    if (q as u128).pow(d) == 2 {
        return Err(Error::Unsupported("q = 2, d = 1 gives L = K with trivial Δ".into()));
    }
    let k = Gf::new(q)?;
    Ok(irreducibles(&k, d as usize).iter().map(|p| p.format("T")).collect())
}

fn run_many(args: &RunArgs, primes: &[String], out: Option<&Path>) -> ExitCode {
    let cfg = config(args);
    let results: Vec<(String, Result<SpiegelReport, Error>)> =
        primes.par_iter().map(|p| (p.clone(), run_spiegel(args.q, p, &cfg))).collect();
    let mut rows = Vec::new();
    for (p, res) in &results {
        let row = match res {
            Ok(r) => {
                if let Some(dir) = out {
                    if let Err(e) = write_report(dir, r, args.format) {
                        eprintln!("error: writing report for {p}: {e}");
                        return ExitCode::from(EXIT_INTERNAL);
                    }
                }
                ScanRow {
                    p_poly: r.p_poly.clone(),
                    status: if r.passed() { "PASS".into() } else { "FAILED".into() },
                    exit_code: report_code(r),
                    failure: r.first_failure.as_ref().map(|v| v.name.clone()),
                    dims: Some(r.dims.clone()),
                }
            }
            Err(e) => {
                eprintln!("error: {p}: {e}");
                ScanRow { p_poly: p.clone(), status: "ERROR".into(), exit_code: error_code(e), failure: Some(e.to_string()), dims: None }
            }
        };
        rows.push(row);
    }
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("summary serializes")),
        Format::Md => {
            println!("| p | status | failure |\n|---|---|---|");
            for r in &rows {
                println!("| {} | {} | {} |", r.p_poly, r.status, r.failure.as_deref().unwrap_or(""));
            }
        }
    }
    ExitCode::from(aggregate(rows.iter().map(|r| r.exit_code)))
}

fn run_one(args: &RunArgs, p: &str, out: Option<&Path>) -> ExitCode {
    match run_spiegel(args.q, p, &config(args)) {
        Ok(r) => {
            match out {
                Some(dir) => {
                    if let Err(e) = write_report(dir, &r, args.format) {
                        eprintln!("error: writing report: {e}");
                        return ExitCode::from(EXIT_INTERNAL);
                    }
                }
                None => print!("{}", render(&r, args.format)),
            }
            if let Some(v) = &r.first_failure {
                eprintln!("FAILED: {} (character {:?})", v.name, v.character);
            }
            ExitCode::from(report_code(&r))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (args, scan) = match &cli.command {
        Command::Verify(a) => (a, false),
        Command::Scan(a) => (a, true),
    };
    let out = args.out.clone().or_else(|| std::env::var_os("SPIEGEL_OUT").map(PathBuf::from));
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.jobs.unwrap_or(0) as usize).build() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    pool.install(|| {
        if let Some(p) = &args.p_poly {
            if scan {
                return usage("scan takes --degree, not --p-poly");
            }
            return run_one(args, p, out.as_deref());
        }
        let Some(d) = args.degree else {
            return usage("give --p-poly, or --degree");
        };
        if !scan && !args.all_primes {
            return usage("verify with --degree needs --all-primes");
        }
        match primes_of_degree(args.q, d) {
            Ok(primes) => run_many(args, &primes, out.as_deref()),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(error_code(&e))
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregation_precedence() {
        assert_eq!(aggregate([]), 0);
        assert_eq!(aggregate([0, EXIT_USAGE, 0]), EXIT_USAGE);
        assert_eq!(aggregate([EXIT_USAGE, EXIT_FALSIFIED]), EXIT_FALSIFIED);
        assert_eq!(aggregate([EXIT_FALSIFIED, EXIT_INTERNAL, EXIT_USAGE]), EXIT_INTERNAL);
    }

    #[test]
    fn stems() {
        assert_eq!(file_stem(2, "T^2+T+1"), "spiegel_q2_T_2pTp1");
        assert_eq!(file_stem(3, "T^2+2T+2"), "spiegel_q3_T_2p2Tp2");
    }
}
