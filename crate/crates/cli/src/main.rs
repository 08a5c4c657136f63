//! `contextalg`: identity checks, entailment queries, algebra inspection,
//! sentence composition and graded entailment from JSON input files.

mod commands;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use contextalg_core::entailment::Mode;

#[derive(Parser)]
#[command(name = "contextalg", version, about = "Context algebras and graded entailment")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Mc,
}

#[derive(Subcommand)]
enum Command {
    /// Check the projection identities on a universe.
    Check {
        #[arg(long)]
        universe: PathBuf,
        /// `{"pairs": [["p", "q"], ..]}`; defaults to every pair of members.
        #[arg(long)]
        pairs: Option<PathBuf>,
    },
    /// Compare `u |- v` with `P_u <= P_v`.
    Entail {
        #[arg(long)]
        universe: PathBuf,
        u: String,
        v: String,
    },
    /// Print the operator a sentence denotes.
    Compose {
        #[command(flatten)]
        model: ModelArgs,
        sentence: String,
    },
    /// Degree to which sentence `x` entails sentence `y`.
    Degree {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        dist: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, default_value_t = 50_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
        threads: u64,
        x: String,
        y: String,
    },
    /// Inspect the context algebra of a scalar language.
    Algebra {
        #[arg(long)]
        language: PathBuf,
        /// Pivot tolerance for the basis search.
        #[arg(long)]
        tol: Option<f64>,
        #[command(subcommand)]
        action: AlgebraAction,
    },
}

#[derive(Subcommand)]
pub enum AlgebraAction {
    /// String count, dimension and basis strings.
    Info,
    /// Product of two strings.
    Mul { x: String, y: String },
    /// Compare two context vectors in both directions.
    Order { x: String, y: String },
}

/// Universe, lexicon and the operator-valued language words live in.
#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    universe: PathBuf,
    #[arg(long)]
    lexicon: PathBuf,
    /// Aspect interpretation.
    #[arg(long, required_unless_present = "gamma", conflicts_with = "gamma")]
    interp: Option<PathBuf>,
    /// Sentence set with their meanings.
    #[arg(long)]
    gamma: Option<PathBuf>,
}

pub enum Source<'a> {
    Interp(&'a Path),
    Gamma(&'a Path),
}

impl ModelArgs {
    fn source(&self) -> Source<'_> {
        match (&self.interp, &self.gamma) {
            (Some(p), _) => Source::Interp(p),
            (None, Some(p)) => Source::Gamma(p),
            (None, None) => unreachable!("clap enforces one of --interp/--gamma"),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(String),
}

impl CliError {
    fn within(self, path: &Path) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            CliError::Domain(m) => CliError::Domain(format!("{}: {m}", path.display())),
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<contextalg_core::Error> for CliError {
    fn from(e: contextalg_core::Error) -> Self {
        use contextalg_core::Error as E;
        match e {
            E::ZeroDenominator(_) | E::EstimationFailed(_) => CliError::Domain(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// A finished command: what to print and whether a consistency check failed.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    pub consistent: bool,
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Check { universe, pairs } => commands::check(&universe, pairs.as_deref()),
        Command::Entail { universe, u, v } => commands::entail(&universe, &u, &v),
        Command::Compose { model, sentence } => {
            commands::compose(&model.universe, &model.lexicon, model.source(), &sentence)
        }
        Command::Degree { model, dist, mode, samples, seed, threads, x, y } => {
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Mc => Mode::Mc,
            };
            let mc = contextalg_core::McOptions {
                samples: samples as usize,
                seed,
                threads: threads as usize,
            };
            commands::degree(
                &model.universe,
                &model.lexicon,
                model.source(),
                dist.as_deref(),
                mode,
                mc,
                &x,
                &y,
            )
        }
        Command::Algebra { language, tol, action } => commands::algebra(&language, tol, &action),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CONTEXTALG_LOG", "warn"))
        .init();
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports are plain JSON")
                ),
                Format::Text => print!("{}", report.text),
            }
            if report.consistent {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: internal consistency check failed");
                ExitCode::from(4)
            }
        }
        Err(e) => {
            let (CliError::Input(msg) | CliError::Domain(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
