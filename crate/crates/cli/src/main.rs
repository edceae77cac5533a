//! `archiclass` command-line front end. Every command writes one JSON document.
//!
//! Exit codes: 0 success or relation holds, 1 negative verdict, 2 usage or
//! data error.

mod commands;
mod doc;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use archiclass::batch::Execution;
use archiclass::error::MatrixError;
use archiclass::field::Backend;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use commands::{LatticeOp, Relation};

#[derive(Parser)]
#[command(name = "archiclass", version, about = "Archimedean classes of matrices over Q and Q(t)")]
struct Cli {
    /// Field of the input documents; must agree with their "field" key.
    #[arg(long, global = true, value_enum)]
    field: Option<FieldArg>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0x5eed_2024)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qt", alias = "Q(t)")]
    Qt,
}

impl From<FieldArg> for Backend {
    fn from(f: FieldArg) -> Backend {
        match f {
            FieldArg::Q => Backend::Q,
            FieldArg::Qt => Backend::Qt,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide a relation between two matrices and certify it.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "succeq")]
        relation: Relation,
    },
    /// Canonical representative of the class of a matrix over Q(t).
    Canon { file: PathBuf },
    /// Meet or join of two classes.
    Lattice {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        op: LatticeOp,
    },
    /// Factor a bibounded square matrix into bibounded elementary matrices.
    Factor { file: PathBuf },
    /// Echelon shape and pivot valuations of the class.
    Shape { file: PathBuf },
    /// Positive semidefiniteness of a symmetric matrix.
    Psd { file: PathBuf },
    /// Moore–Penrose pseudo-inverse.
    Pinv { file: PathBuf },
    /// Smallest entry valuation.
    Wval { file: PathBuf },
    /// Run the randomized law suites.
    Selftest {
        /// Run one twentieth of the cases.
        #[arg(long)]
        quick: bool,
        /// Evaluate cases on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

/// A usage or data error, reported with exit code 2.
#[derive(Debug)]
pub struct Failure {
    message: String,
}

impl Failure {
    pub fn new(message: String) -> Failure {
        Failure { message }
    }

    pub fn from_matrix(e: MatrixError) -> Failure {
        Failure::new(e.to_string())
    }
}

pub struct Outcome {
    doc: Value,
    code: u8,
}

impl Outcome {
    pub fn new(doc: Value, code: u8) -> Outcome {
        Outcome { doc, code }
    }

    pub fn success(doc: Value) -> Outcome {
        Outcome::new(doc, 0)
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let field = cli.field.map(Backend::from);
    let read = |p: &PathBuf| doc::read(p, field);
    match &cli.command {
        Command::Compare { a, b, relation } => commands::compare(&read(a)?, &read(b)?, *relation),
        Command::Canon { file } => commands::canon(&read(file)?),
        Command::Lattice { a, b, op } => commands::lattice(&read(a)?, &read(b)?, *op),
        Command::Factor { file } => commands::factor_cmd(&read(file)?),
        Command::Shape { file } => commands::shape(&read(file)?),
        Command::Psd { file } => commands::psd(&read(file)?),
        Command::Pinv { file } => commands::pinv(&read(file)?),
        Command::Wval { file } => commands::wval(&read(file)?),
        Command::Selftest { quick, sequential } => {
            let exec = if *sequential {
                Execution::Sequential
            } else {
                Execution::default()
            };
            Ok(commands::selftest(cli.seed, *quick, exec))
        }
    }
}

fn emit(cli: &Cli, doc: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("JSON values serialize") + "\n";
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, &o.doc).map(|()| o.code)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("archiclass: {}", f.message);
            ExitCode::from(2)
        }
    }
}
