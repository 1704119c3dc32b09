//! `hopfpi`: verify Hopf π-coalgebra instance files and compute their
//! invariants.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure or a
//! refused computation, 2 on an input error.

#![forbid(unsafe_code)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopfpi::format::{self, Instance};
use hopfpi::integrals::Side;
use hopfpi::pipeline::{self, Document, What};

#[derive(Parser, Debug)]
#[command(
    name = "hopfpi",
    version,
    about = "Exact verification of Hopf group-coalgebras"
)]
struct Cli {
    /// Print the machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom layer: coalgebra, Hopf, crossing, R-matrix, twist.
    Verify { file: PathBuf },
    /// Compute integrals, grouplikes, Drinfeld elements and related invariants.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Comma-separated subset of integrals,grouplike,nu,drinfeld,ell,G,h,phihat.
        #[arg(long, value_delimiter = ',')]
        what: Vec<String>,
    },
    /// Build and verify the canonical π-trace.
    Trace { file: PathBuf },
    /// Run the full pipeline and render a report.
    Report {
        file: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

/// An input problem, reported with exit code 2.
struct InputError(String);

fn load(path: &Path) -> Result<(String, Instance), InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let inst = format::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok((name, inst))
}

fn configure_threads() -> Result<(), InputError> {
    let Ok(value) = std::env::var("HOPFPI_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| {
            InputError(format!(
                "HOPFPI_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| InputError(format!("cannot configure {n} threads: {e}")))
}

fn emit(doc: &Document, json: bool) -> String {
    if json {
        let mut s = doc.to_json();
        s.push('\n');
        s
    } else {
        doc.render()
    }
}

fn run(cli: Cli) -> Result<bool, InputError> {
    configure_threads()?;
    match cli.command {
        Command::Verify { file } => {
            let (name, inst) = load(&file)?;
            let (ver, doc) = pipeline::verify_document(&name, &inst);
            print!("{}", emit(&doc, cli.json));
            if !cli.json {
                println!();
                println!("{}", pipeline::describe_failure(&ver));
            }
            Ok(ver.passed())
        }
        Command::Invariants { file, side, what } => {
            let what: Vec<What> = if what.is_empty() {
                What::ALL.to_vec()
            } else {
                what.iter()
                    .map(|w| {
                        w.trim()
                            .parse::<What>()
                            .map_err(|e| InputError(e.to_string()))
                    })
                    .collect::<Result<_, _>>()?
            };
            let (name, inst) = load(&file)?;
            let doc = pipeline::invariants(&name, &inst, side.into(), &what);
            print!("{}", emit(&doc, cli.json));
            Ok(doc.passed())
        }
        Command::Trace { file } => {
            let (name, inst) = load(&file)?;
            let doc = pipeline::trace(&name, &inst);
            print!("{}", emit(&doc, cli.json));
            Ok(doc.passed())
        }
        Command::Report { file, out } => {
            let (name, inst) = load(&file)?;
            let doc = pipeline::full_report(&name, &inst);
            let text = emit(&doc, cli.json);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| InputError(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(doc.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
