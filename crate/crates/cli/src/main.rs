//! `folia` — file-based front end for the foliation workbench: validate
//! structure-constant documents, classify codimension-two foliations,
//! evaluate curvature, build the deformed-fibre family, and run the
//! verification suite.

mod commands;
mod document;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use folia_core::catalog::BergerParams;

use document::AlgebraDocument;
use report::{digest, Report};

/// Input and usage errors; everything else surfaces as a failed check in the
/// report and drives exit code 1.
#[derive(Debug)]
pub struct CliError {
    message: String,
}

impl CliError {
    pub fn input<S: Into<String>>(message: S) -> Self {
        Self {
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "folia", version, about = "Structure-constant workbench for left-invariant foliations on Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Numerical tolerance used by the checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized sweeps and suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for randomized sweeps and suites.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra document: Jacobi identity and metric signature.
    Check {
        /// Path to a JSON algebra document.
        file: PathBuf,
    },
    /// Classify the foliation generated by a vertical subalgebra span.
    Foliation {
        file: PathBuf,
        /// Comma-separated vertical basis indices (overrides the document).
        #[arg(long, value_delimiter = ',')]
        vertical: Vec<usize>,
    },
    /// Sectional curvature in an orthonormal frame for a Riemannian metric.
    Curvature {
        file: PathBuf,
        /// Restrict to one plane, e.g. --plane 0,1.
        #[arg(long)]
        plane: Option<String>,
        /// Also compute the leaf-space curvature (needs vertical indices).
        #[arg(long)]
        leaf: bool,
    },
    /// Build a member of the deformed-fibre family over su(2), or sweep it.
    Berger {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        x3: f64,
        #[arg(long, default_value_t = 0.0)]
        x4: f64,
        #[arg(long, default_value_t = 0.0)]
        x5: f64,
        #[arg(long, default_value_t = 0.0)]
        x6: f64,
        #[arg(long, default_value_t = 0.0)]
        z3: f64,
        #[arg(long, default_value_t = 0.0)]
        z4: f64,
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
        /// Write the constructed document to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Run a seeded random sweep of this many members instead.
        #[arg(long)]
        sweep: Option<usize>,
    },
    /// Run the standard checks on a named catalog preset
    /// (su2 | sl2r | berger | intro-table).
    Preset {
        name: String,
        /// Write the preset document to this path (single-algebra presets).
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run a verification suite (currently: paper).
    Verify {
        #[arg(long)]
        suite: String,
    },
}

fn read_document(path: &PathBuf) -> Result<(AlgebraDocument, String), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::input(format!("{} is not valid UTF-8", path.display())))?;
    let doc = AlgebraDocument::parse(&text)?;
    Ok((doc, digest(text.as_bytes())))
}

fn parse_plane(spec: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::input("--plane expects two indices, e.g. 0,1"));
    }
    let i = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("invalid plane index '{}'", parts[0])))?;
    let j = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("invalid plane index '{}'", parts[1])))?;
    Ok((i, j))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Check { file } => {
            let (doc, input_digest) = read_document(file)?;
            commands::check(&doc, input_digest, cli.tol)
        }
        Command::Foliation { file, vertical } => {
            let (doc, input_digest) = read_document(file)?;
            commands::foliation(&doc, vertical, input_digest, cli.tol)
        }
        Command::Curvature { file, plane, leaf } => {
            let (doc, input_digest) = read_document(file)?;
            let plane = plane.as_deref().map(parse_plane).transpose()?;
            commands::curvature(&doc, plane, *leaf, input_digest, cli.tol)
        }
        Command::Berger {
            lambda,
            x3,
            x4,
            x5,
            x6,
            z3,
            z4,
            rho,
            emit,
            sweep,
        } => {
            let params = BergerParams {
                lambda: *lambda,
                x3: *x3,
                x4: *x4,
                x5: *x5,
                x6: *x6,
                z3: *z3,
                z4: *z4,
                rho: *rho,
            };
            let sweep = sweep.map(|n| if n == 0 { cli.samples } else { n });
            commands::berger(&params, emit.as_deref(), sweep, cli.tol, cli.seed)
        }
        Command::Preset { name, emit } => commands::preset(name, emit.as_deref(), cli.tol),
        Command::Verify { suite } => commands::verify(suite, cli.samples, cli.seed, cli.tol),
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text(start.elapsed().as_secs_f64() * 1e3)),
            }
            std::process::exit(report.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
