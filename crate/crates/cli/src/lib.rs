//! Command-line front end for `normsum-core`.
//!
//! Every subcommand produces a report document (canonical JSON with sorted
//! keys and a trailing newline) and a short human-readable summary. The
//! document goes to `--out` when given and to standard output under
//! `--format structured`; the summary goes to standard output otherwise.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use normsum_core::norm_form::NormFormProblem;
use normsum_core::quadratic::Scalar;
use normsum_core::recurrence::LinearRecurrence;
use normsum_core::search::to_canonical_json;
use normsum_core::sunits::SPrimeSet;
use normsum_core::{Error, VERSION};

/// Environment variable read for the worker count when `--shards` is absent.
pub const SHARDS_ENV: &str = "NORMSUM_SHARDS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

const AFTER_HELP: &str = "\
Recurrence literals have the form \"a1,...,ad;U0,...,U{d-1}\" and describe
U_n = a1*U_{n-1} + ... + ad*U_{n-d} with initial terms U0, ..., U{d-1}.
Whitespace around entries is ignored, e.g. \"2, -1; 0, 2\" is 0, 2, 4, 6, ...

Quadratic numbers are written like \"3+2sqrt2\", \"1-sqrt(3)\" or \"1/2*sqrt5\".

Exit status: 0 on success, 1 on a usage or input error, 2 when an internal
invariant fails or a fixture check disagrees unexpectedly.

The worker count comes from --shards, then NORMSUM_SHARDS, then the number of
available cores. It never changes the report document.";

const RECURRENCE_HELP: &str = "Recurrence literal \"a1,...,ad;U0,...,U{d-1}\"";

#[derive(Parser, Debug)]
#[command(
    name = "normsum",
    version,
    about = "Exact searches over solution sets of x^2 - d*y^2 = m",
    after_help = AFTER_HELP
)]
pub struct Cli {
    /// Write the report document to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// What to print on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for the searches.
    #[arg(long, global = true, value_name = "N",
          value_parser = clap::value_parser!(u32).range(1..))]
    pub shards: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable summary.
    Text,
    /// The report document itself.
    Structured,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Fundamental solutions of x^2 - d*y^2 = 1 and = -1.
    Pell(PellArgs),
    /// Solution classes of x^2 - d*y^2 = m and the small solutions.
    SolveNorm(SolveNormArgs),
    /// The coordinate set X1 (x values) or X2 (y values) up to a bound.
    Coords(CoordsArgs),
    /// Terms and degeneracy of a linear recurrence.
    Recur(RecurArgs),
    /// Exact Binet form of an order-2 recurrence.
    Binet(RecurArgs),
    /// Nondegeneracy, independence and root-of-unity audit of a recurrence.
    Hypotheses(HypothesesArgs),
    /// Pairs U_n1 + U_n2 that land in X1 or X2.
    PairsSearch(PairsSearchArgs),
    /// Sums of t S-units that land in X1 or X2.
    SunitSearch(SunitSearchArgs),
    /// Vanishing Binet subsums of U_n1 + U_n2.
    Vanishing(VanishingArgs),
    /// The bound 2^(35A^3) * D^(6A^2) for the number of partition solutions.
    Bound(BoundArgs),
    /// Pairwise dependence inside every set partition of a list of bases.
    Partitions(PartitionsArgs),
    /// Replay one of the bundled worked-example fixtures.
    VerifyRemark(VerifyRemarkArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ProblemArgs {
    /// Squarefree d > 1.
    #[arg(long)]
    pub d: u64,
    /// Nonzero right-hand side m.
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
}

impl ProblemArgs {
    fn problem(&self) -> Result<NormFormProblem, Error> {
        NormFormProblem::new(self.d, self.m)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct PellArgs {
    /// Squarefree d > 1.
    #[arg(long)]
    pub d: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct SolveNormArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub problem: ProblemArgs,
    /// List solutions with 0 <= x <= BOUND.
    #[arg(long, default_value_t = 1000)]
    pub bound: u64,
    /// Also compare the orbits with a direct scan of |x| <= BOUND.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct CoordsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub problem: ProblemArgs,
    /// 1 for X1 (x values), 2 for X2 (y values).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub coord: u8,
    /// Largest coordinate value to list.
    #[arg(long, value_parser = parse_positive)]
    #[serde(serialize_with = "big")]
    pub bound: BigInt,
    /// Include solutions with a zero coordinate.
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct RecurArgs {
    #[arg(long, allow_hyphen_values = true, help = RECURRENCE_HELP)]
    pub rec: LinearRecurrence,
    /// Last index to compute.
    #[arg(long, default_value_t = 20)]
    pub n: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct HypothesesArgs {
    #[arg(long, allow_hyphen_values = true, help = RECURRENCE_HELP)]
    pub rec: LinearRecurrence,
    /// Exponent bound for the multiplicative independence test.
    #[arg(long, default_value_t = 10)]
    pub e: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct PairsSearchArgs {
    #[arg(long, allow_hyphen_values = true, help = RECURRENCE_HELP)]
    pub rec: LinearRecurrence,
    #[command(flatten)]
    #[serde(flatten)]
    pub problem: ProblemArgs,
    /// Index bound N: pairs n1 <= n2 <= N.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Coordinate bound B.
    #[arg(long, value_parser = parse_positive)]
    #[serde(serialize_with = "big")]
    pub bound: BigInt,
    /// Exponent bound for the independence audit.
    #[arg(long, default_value_t = 10)]
    pub independence_bound: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct SunitSearchArgs {
    /// Comma-separated primes, e.g. 2,3,5.
    #[arg(long)]
    pub primes: SPrimeSet,
    /// Number of summands (1 to 4).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
    pub t: u64,
    /// Exponent bound: every exponent lies in [-E, E].
    #[arg(long)]
    pub e: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub problem: ProblemArgs,
    /// Coordinate bound B.
    #[arg(long, value_parser = parse_positive)]
    #[serde(serialize_with = "big")]
    pub bound: BigInt,
    /// Use positive S-units only.
    #[arg(long)]
    pub positive_only: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct VanishingArgs {
    #[arg(long, allow_hyphen_values = true, help = RECURRENCE_HELP)]
    pub rec: LinearRecurrence,
    /// Index bound N.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundArgs {
    /// Number of variables s.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub s: u32,
    /// Comma-separated total degrees of the polynomial coefficients.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub degrees: Vec<u32>,
    /// Degree D of the number field.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub field_degree: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct PartitionsArgs {
    /// Comma-separated bases, e.g. "1+sqrt3,1-sqrt3" (2 to 8 entries).
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub bases: Vec<Scalar>,
    /// Exponent bound for the dependence search.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub e: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyRemarkArgs {
    /// Fixture id: 2.3, 2.4 or 2.5.
    #[arg(long)]
    pub id: String,
    /// Index bound (at least 10).
    #[arg(long, value_parser = clap::value_parser!(u64).range(10..))]
    pub n: u64,
}

fn parse_positive(s: &str) -> Result<BigInt, String> {
    let v: BigInt = s
        .trim()
        .parse()
        .map_err(|_| format!("{s:?} is not an integer"))?;
    if v < BigInt::from(1) {
        return Err(format!("{s} must be at least 1"));
    }
    Ok(v)
}

fn big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Everything a single invocation produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    /// The report document, when the command got that far.
    pub document: Option<String>,
}

impl Outcome {
    fn failure(exit_code: i32, message: String) -> Self {
        Self {
            exit_code,
            stdout: String::new(),
            stderr: message,
            document: None,
        }
    }
}

/// Parses `argv` (program name first), runs the command and writes the
/// document to `--out` if requested. Nothing is printed.
pub fn invoke<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    exit_code: code,
                    stdout: text,
                    stderr: String::new(),
                    document: None,
                }
            } else {
                Outcome::failure(code, text)
            };
        }
    };
    let shards = match resolve_shards(cli.shards) {
        Ok(n) => n,
        Err(msg) => return Outcome::failure(EXIT_USAGE, format!("error: {msg}\n")),
    };

    let start = Instant::now();
    let output = match commands::execute(&cli.command, shards) {
        Ok(o) => o,
        Err(e) => return Outcome::failure(exit_code_for(&e), format!("error: {e}\n")),
    };
    let elapsed = start.elapsed();

    let config = match serde_json::to_value(&cli.command) {
        Ok(v) => v,
        Err(e) => return Outcome::failure(EXIT_INVARIANT, format!("error: {e}\n")),
    };
    let doc = json!({
        "config": config,
        "result": output.result,
        "version": format!("normsum {VERSION}"),
    });
    let document = match to_canonical_json(&doc) {
        Ok(d) => d,
        Err(e) => return Outcome::failure(EXIT_INVARIANT, format!("error: {e}\n")),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &document) {
            return Outcome::failure(
                EXIT_USAGE,
                format!("error: cannot write report to {}: {e}\n", path.display()),
            );
        }
    }

    let stdout = match cli.format {
        Format::Structured => document.clone(),
        Format::Text => {
            let mut s = output.summary.join("\n");
            s.push('\n');
            s.push_str(&format!(
                "shards: {shards}, wall time: {:.3} s\n",
                elapsed.as_secs_f64()
            ));
            if let Some(path) = &cli.out {
                s.push_str(&format!("report written to {}\n", path.display()));
            }
            s
        }
    };
    let (exit_code, stderr) = match output.inconsistency {
        None => (EXIT_OK, String::new()),
        Some(msg) => (EXIT_INVARIANT, format!("error: {msg}\n")),
    };
    Outcome {
        exit_code,
        stdout,
        stderr,
        document: Some(document),
    }
}

/// [`invoke`], printing its output. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = invoke(argv);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.exit_code
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvariantViolation(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

fn resolve_shards(flag: Option<u32>) -> Result<usize, String> {
    if let Some(n) = flag {
        return Ok(n as usize);
    }
    match std::env::var(SHARDS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!(
                "{SHARDS_ENV} must be a positive integer, got {v:?}"
            )),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parser_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn config_is_tagged_by_subcommand() {
        let cli = Cli::try_parse_from([
            "normsum", "coords", "--d", "13", "--m", "4", "--coord", "1", "--bound", "50",
        ])
        .unwrap();
        let v = serde_json::to_value(&cli.command).unwrap();
        assert_eq!(v["command"], "coords");
        assert_eq!(v["d"], 13);
        assert_eq!(v["bound"], "50");
    }

    #[test]
    fn negative_values_parse() {
        let cli = Cli::try_parse_from(["normsum", "solve-norm", "--d", "2", "--m", "-1"]).unwrap();
        match cli.command {
            Command::SolveNorm(a) => assert_eq!(a.problem.m, -1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Cli::try_parse_from(["normsum", "recur", "--rec", "-1,2;1,1"]).is_ok());
    }

    #[test]
    fn bound_must_be_positive() {
        assert!(parse_positive("0").is_err());
        assert!(parse_positive("x").is_err());
        assert_eq!(parse_positive("12").unwrap(), BigInt::from(12));
    }
}
