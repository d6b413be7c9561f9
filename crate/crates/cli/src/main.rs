use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use khoval::complex::{BuildOptions, DEFAULT_CAP};
use khoval::{Error, Label, Theory};

mod commands;
mod verify;

#[derive(Parser, Debug)]
#[command(
    name = "khoval",
    version,
    about = "Khovanov and Bar-Natan cohomology, Jones polynomials and surface-knot invariants"
)]
struct Cli {
    /// Largest crossing count for which a cube of resolutions is built.
    #[arg(long, global = true, env = "KHOVAL_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Threads used to resolve cube vertices.
    #[arg(long, global = true, env = "KHOVAL_WORKERS", default_value_t = 1)]
    workers: usize,

    /// Output format.
    #[arg(long, global = true, env = "KHOVAL_FORMAT", value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology table of a diagram given inline as PD code or as a file.
    Homology {
        diagram: String,
        #[arg(long, env = "KHOVAL_THEORY", default_value = "khovanov", value_parser = parse_theory)]
        theory: Theory,
    },
    /// Graded Euler characteristic next to the Kauffman-bracket Jones polynomial.
    Jones { diagram: String },
    /// Evaluates a movie file: BN, KJ or the Lee value, or a punctured value.
    Movie {
        file: String,
        #[arg(long, env = "KHOVAL_THEORY", default_value = "bar-natan", value_parser = parse_theory)]
        theory: Theory,
        /// Evaluate a movie with an unknot end instead of a closed one.
        #[arg(long)]
        punctured: bool,
        /// Starting label for a movie that starts at the unknot.
        #[arg(long, env = "KHOVAL_LABEL", default_value = "v-", value_parser = parse_label)]
        label: Label,
    },
    /// Prints every still of a movie with its arc and crossing ids.
    Stills { file: String },
    /// Runs the invariant suites over the built-in corpus.
    Verify,
}

fn parse_theory(s: &str) -> std::result::Result<Theory, String> {
    s.parse().map_err(|_| format!("unknown theory {s:?}; expected khovanov, bar-natan or lee"))
}

fn parse_label(s: &str) -> std::result::Result<Label, String> {
    s.parse().map_err(|_| format!("unknown label {s:?}; expected v+ or v-"))
}

/// Reads `arg` as a file if one exists with that name, `-` as stdin, and
/// otherwise takes it literally.
fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"));
    }
    Ok(arg.to_string())
}

fn read_file(path: &str) -> Result<String> {
    if path == "-" {
        return read_input(path);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

/// Exit status for each error class.
fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<io::Error>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::MalformedToken(_)
            | Error::ArcMultiplicity { .. }
            | Error::Orientation(..)
            | Error::VertexLength { .. }
            | Error::MalformedEdge(_),
        ) => 2,
        Some(Error::TheoryUnsupported) => 3,
        Some(Error::CapExceeded { .. } | Error::TooManyCircles(_)) => 4,
        Some(
            Error::InvalidMovie { .. }
            | Error::Endpoint(_)
            | Error::MovieFormat(_)
            | Error::PatternMismatch(_)
            | Error::UnimplementedVariant(_),
        ) => 5,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<bool> {
    let opts = BuildOptions { cap: cli.cap, workers: cli.workers };
    let fmt = cli.format;
    let out = match cli.command {
        Command::Homology { diagram, theory } => commands::homology(&read_input(&diagram)?, theory, opts, fmt)?,
        Command::Jones { diagram } => commands::jones(&read_input(&diagram)?, opts, fmt)?,
        Command::Movie { file, theory, punctured, label } => {
            commands::movie(&read_file(&file)?, theory, punctured.then_some(label), opts, fmt)?
        }
        Command::Stills { file } => commands::stills(&read_file(&file)?, fmt)?,
        Command::Verify => verify::run(opts, fmt),
    };
    print!("{}", out.text);
    if let Some(err) = out.error {
        return Err(err);
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// Text to print, whether the command's own checks passed, and an error to
/// report after printing (for commands that print partial output).
pub struct Output {
    pub text: String,
    pub ok: bool,
    pub error: Option<anyhow::Error>,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, ok: true, error: None }
    }
}

pub fn ensure_theory(th: Theory) -> Result<()> {
    if th == Theory::BarNatan {
        bail!(Error::TheoryUnsupported);
    }
    Ok(())
}
