//! `contactloci`: contact loci of hyperplane multi-arrangements from the
//! command line. Reports go to stdout as JSON, diagnostics to stderr.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use contactloci::generic::{GenericKind, GenericSpec};
use contactloci::{report, Budget, Error, MultiArrangement};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "contactloci", version, about = "Contact loci of hyperplane multi-arrangements")]
struct Cli {
    /// Omit timing from the report so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    golden: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection poset, Möbius values, χ, complement Betti numbers.
    Lattice { file: PathBuf },
    /// Components of the m-contact locus.
    Contact {
        file: PathBuf,
        #[arg(long)]
        m: u32,
        /// Restricted contact locus (fiber data instead of Betti numbers); needs m >= 1.
        #[arg(long)]
        restricted: bool,
    },
    /// Truncated naive motivic zeta function of a central arrangement.
    Zeta {
        file: PathBuf,
        #[arg(long = "max-m")]
        max_m: u32,
    },
    /// Closed-form Betti numbers for generic arrangements.
    Generic {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
    },
    /// Brute-force jet count over F_p next to the predicted count.
    Count {
        file: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        restricted: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Generic,
    GenericCentral,
}

impl From<KindArg> for GenericKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Generic => GenericKind::Generic,
            KindArg::GenericCentral => GenericKind::GenericCentral,
        }
    }
}

#[derive(Serialize)]
struct Report {
    command: Vec<String>,
    input_digest: Option<String>,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

struct Input {
    arrangement: MultiArrangement,
    digest: String,
}

fn read_input(path: &PathBuf) -> contactloci::Result<Input> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Input(format!("{}: not valid UTF-8", path.display())))?;
    let arrangement = MultiArrangement::from_json(&text)
        .map_err(|e| match e {
            Error::Input(msg) => Error::Input(format!("{}: {msg}", path.display())),
            other => other,
        })?;
    Ok(Input {
        arrangement,
        digest: hex::encode(Sha256::digest(&bytes)),
    })
}

fn run(cmd: &Command, budget: &Budget) -> contactloci::Result<(Option<String>, Value)> {
    let to_value = |v: report::CountReport| serde_json::to_value(v).expect("report serializes");
    Ok(match cmd {
        Command::Lattice { file } => {
            let input = read_input(file)?;
            (Some(input.digest), report::lattice_report(&input.arrangement, budget)?)
        }
        Command::Contact { file, m, restricted } => {
            if *restricted && *m == 0 {
                return Err(Error::Input("--restricted needs --m >= 1".into()));
            }
            let input = read_input(file)?;
            (
                Some(input.digest),
                report::contact_report(&input.arrangement, *m, *restricted, budget)?,
            )
        }
        Command::Zeta { file, max_m } => {
            let input = read_input(file)?;
            (Some(input.digest), report::zeta_report(&input.arrangement, *max_m, budget)?)
        }
        Command::Generic { kind, n, d, m } => {
            let spec = GenericSpec::new((*kind).into(), *n, *d)?;
            (None, report::generic_report(&spec, *m)?)
        }
        Command::Count { file, m, p, restricted } => {
            let input = read_input(file)?;
            let r = report::count_report(&input.arrangement, *m, *p, *restricted, budget)?;
            (Some(input.digest), to_value(r))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let outcome = Budget::from_env().and_then(|budget| run(&cli.command, &budget));
    match outcome {
        Ok((input_digest, result)) => {
            let report = Report {
                command: std::env::args().skip(1).filter(|a| a != "--golden").collect(),
                input_digest,
                result,
                timing_ms: (!cli.golden).then(|| started.elapsed().as_millis()),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
