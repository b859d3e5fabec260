use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nrhw_cli::commands::{self, Suite};
use nrhw_cli::spec::{cyclotomic_spec, quadratic_spec};
use nrhw_cli::{FieldSpecFile, Report};

/// Exact verification reports for tensor squares of monogenic Galois number
/// rings and their reduced endomorphism algebras.
#[derive(Parser)]
#[command(name = "nrhw", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Field spec file, or `-` for standard input.
    spec: String,
    /// Override the ordering `Ω` with a permutation of `1..n`.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate Galois data.
    Field {
        #[command(subcommand)]
        action: FieldAction,
    },
    /// Prime splitting, inertia and idempotents.
    Split {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short)]
        p: u64,
    },
    /// Dimensions, radical, semisimplicity and center of the reduced algebra.
    Algebra {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short)]
        p: u64,
    },
    /// Multiplicity matrices and reciprocity.
    Bgg {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short)]
        p: u64,
    },
    /// Sweep a prime range with one of the suites.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Inclusive range `A..B`.
        #[arg(long, value_parser = parse_range)]
        primes: (u64, u64),
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Print a built-in field spec.
    Examples {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum FieldAction {
    Check {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Subcommand)]
enum Family {
    /// `Z[√d]` for squarefree `d ≡ 2, 3 mod 4`.
    Quadratic {
        #[arg(short, allow_negative_numbers = true)]
        d: i64,
    },
    /// `Z[ζ_n]` for an odd prime `n`.
    Cyclotomic {
        #[arg(short)]
        n: usize,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn load(args: &SpecArgs) -> Result<(FieldSpecFile, nrhw::tensor::TensorSquare), String> {
    let text = if args.spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("<stdin>: {e}"))?;
        s
    } else {
        std::fs::read_to_string(&args.spec).map_err(|e| format!("{}: {e}", args.spec))?
    };
    let source = if args.spec == "-" { "<stdin>" } else { &args.spec };
    let mut spec = FieldSpecFile::parse(source, &text).map_err(|e| e.to_string())?;
    if args.order.is_some() {
        spec.order = args.order.clone();
    }
    let ts = spec.build(source).map_err(|e| e.to_string())?;
    Ok((spec, ts))
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        for v in report.verdicts.iter().chain(report.primes.iter().flat_map(|p| &p.verdicts)).filter(|v| !v.pass) {
            eprintln!("FAIL {}: {}", v.name, v.detail);
        }
        ExitCode::from(1)
    }
}

fn run(cli: Cli, echo: &str) -> Result<ExitCode, String> {
    let report = match &cli.command {
        Command::Examples { family } => {
            let spec = match family {
                Family::Quadratic { d } => quadratic_spec(*d)?,
                Family::Cyclotomic { n } => cyclotomic_spec(*n)?,
            };
            println!("{}", spec.to_json());
            return Ok(ExitCode::SUCCESS);
        }
        Command::Field { action: FieldAction::Check { spec } } => {
            let (s, ts) = load(spec)?;
            commands::field_check(echo, &s, &ts)
        }
        Command::Split { spec, p } => {
            let (s, ts) = load(spec)?;
            commands::split(echo, &s, &ts, *p)
        }
        Command::Algebra { spec, p } => {
            let (s, ts) = load(spec)?;
            commands::algebra(echo, &s, &ts, *p)
        }
        Command::Bgg { spec, p } => {
            let (s, ts) = load(spec)?;
            commands::bgg(echo, &s, &ts, *p)
        }
        Command::Verify { spec, primes, suite } => {
            let (s, ts) = load(spec)?;
            commands::verify(echo, &s, &ts, primes.0, primes.1, *suite)
        }
    };
    Ok(emit(&report, cli.json))
}

fn main() -> ExitCode {
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let cli = Cli::parse();
    match run(cli, &echo) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
