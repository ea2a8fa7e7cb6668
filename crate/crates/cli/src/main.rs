use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kn_frieze::FriezeError;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "frieze", version, about = "Exact (k,n)-frieze patterns and clusters of Plücker coordinates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every maximal weakly separated collection of k-subsets.
    Enumerate {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        /// Write the cluster documents here as a JSON array.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "FRIEZE_MAX_CLUSTERS", default_value_t = kn_frieze::separation::DEFAULT_CAP)]
        max_clusters: usize,
    },
    /// Build the frieze that is 1 on every member of a cluster.
    Build {
        cluster: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-evaluate every value along a randomized mutation path.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, env = "FRIEZE_MAX_CLUSTERS", default_value_t = kn_frieze::separation::DEFAULT_CAP)]
        max_clusters: usize,
    },
    /// Check a document and print a JSON report; exit 0 iff it is valid.
    Validate {
        file: PathBuf,
        /// Also check the Grassmann-Plücker relations.
        #[arg(long)]
        gp: bool,
        /// Also check generalized diamonds on every cross-section (k = 3).
        #[arg(long)]
        diamonds: bool,
    },
    /// Convert between friezes, SL_k-friezes and matrix realizations.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long)]
        out: Option<PathBuf>,
        /// First frieze column read by the matrix realization.
        #[arg(long)]
        anchor: Option<usize>,
    },
    /// Draw a frieze as staggered text or TikZ source.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        cross_section: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Slk,
    Matrix,
    Frieze,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tikz,
}

/// Failure with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    /// Exit 1 without printing anything further; the report was already shown.
    pub fn invalid() -> Self {
        Failure { code: 1, message: String::new() }
    }

    pub fn construction(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<FriezeError> for Failure {
    fn from(e: FriezeError) -> Self {
        let code = match e {
            FriezeError::Parameters(_)
            | FriezeError::Domain(_)
            | FriezeError::Missing(_)
            | FriezeError::Parse(_) => 1,
            FriezeError::CapExceeded { .. } | FriezeError::SearchExhausted { .. } => 2,
            FriezeError::MoveUnavailable(_) | FriezeError::Construction { .. } | FriezeError::Degenerate(_) => 3,
            FriezeError::Unsupported(_) => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

/// Writes to `out`, or to stdout without one.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            stdout(text);
            Ok(())
        }
    }
}

/// Prints to stdout, ignoring a closed pipe.
pub fn stdout(text: &str) {
    let mut lock = io::stdout().lock();
    let _ = lock.write_all(text.as_bytes()).and_then(|_| lock.flush());
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate { k, n, out, max_clusters } => commands::enumerate(k, n, out.as_deref(), max_clusters),
        Command::Build { cluster, out, seed, max_clusters } => {
            commands::build(&cluster, out.as_deref(), seed, max_clusters)
        }
        Command::Validate { file, gp, diamonds } => commands::validate(&file, gp, diamonds),
        Command::Convert { file, to, out, anchor } => commands::convert(&file, to, out.as_deref(), anchor),
        Command::Render { file, format, cross_section, out } => {
            commands::render(&file, format, cross_section, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("frieze: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
