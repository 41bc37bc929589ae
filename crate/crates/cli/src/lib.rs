//! Batch driver for `srlim-core`: parses a complex document, runs one
//! operation and renders a JSON report.

mod commands;
mod document;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use srlim_core::CoefficientDomain;

pub use document::ComplexDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed document: {0}")]
    Document(#[from] serde_json::Error),
    #[error("{0}")]
    Complex(#[from] srlim_core::Error),
    #[error("cannot start thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

fn parse_domain(s: &str) -> Result<CoefficientDomain, String> {
    s.parse().map_err(|e: srlim_core::Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "srlim",
    version,
    about = "Face rings, limits over face categories and complete-intersection models"
)]
pub struct Cli {
    /// Read the complex document from this file instead of standard input.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Coefficients: Q, Z, F2, F3 or F<p> for a prime p.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_domain)]
    pub coeffs: CoefficientDomain,
    /// Worker threads for commands that run checks in parallel.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// List all faces.
    Faces,
    /// List the minimal non-faces.
    Nonfaces,
    /// Hilbert function and series of the face ring.
    Hilbert {
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Monomial basis of the face ring in one degree.
    SrBasis {
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Limit of the degree-2j cohomology diagram.
    Lim {
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
    /// Higher limits of the degree-2j cohomology diagram.
    HigherLim {
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long, default_value_t = 5)]
        imax: usize,
    },
    /// The E2 page: higher limits for every cohomological degree.
    BkTable {
        #[arg(long, default_value_t = 5)]
        imax: usize,
        #[arg(long, default_value_t = 3)]
        jmax: u32,
    },
    /// Check that the cohomology diagrams are fat.
    FatCheck {
        #[arg(long, default_value_t = 3)]
        jmax: u32,
    },
    /// Check the retraction and square identities of the twin diagrams.
    TwinCheck {
        #[arg(long, default_value_t = 2)]
        jmax: u32,
    },
    /// Check that right Kan extension along each facet preserves higher limits.
    KanCheck {
        #[arg(long, default_value_t = 2)]
        jmax: u32,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Decide whether the complex is a complete intersection.
    Ci,
    /// Minimal model of a complete intersection.
    Model,
    /// Compare model cohomology with the face ring up to a degree.
    KoszulCheck {
        #[arg(long, default_value_t = 10)]
        cutoff: u32,
    },
    /// Generators of the automorphisms of a complete intersection.
    AutGens,
    /// Run the whole battery of checks.
    VerifyAll,
}

impl Cli {
    /// Canonical invocation: subcommand and every option that affects the
    /// result, defaults included. Input location and thread count are
    /// omitted so that they do not perturb the report.
    pub fn echo(&self) -> String {
        let coeffs = format!(" --coeffs {}", self.coeffs);
        let rest = match &self.command {
            Command::Faces => "faces".to_string(),
            Command::Nonfaces => "nonfaces".to_string(),
            Command::Hilbert { max_degree } => format!("hilbert --max-degree {max_degree}"),
            Command::SrBasis { degree } => format!("sr-basis --degree {degree}"),
            Command::Lim { degree } => format!("lim{coeffs} --degree {degree}"),
            Command::HigherLim { degree, imax } => {
                format!("higher-lim{coeffs} --degree {degree} --imax {imax}")
            }
            Command::BkTable { imax, jmax } => {
                format!("bk-table{coeffs} --imax {imax} --jmax {jmax}")
            }
            Command::FatCheck { jmax } => format!("fat-check{coeffs} --jmax {jmax}"),
            Command::TwinCheck { jmax } => format!("twin-check{coeffs} --jmax {jmax}"),
            Command::KanCheck { jmax, nmax } => {
                format!("kan-check{coeffs} --jmax {jmax} --nmax {nmax}")
            }
            Command::Ci => "ci".to_string(),
            Command::Model => "model".to_string(),
            Command::KoszulCheck { cutoff } => format!("koszul-check --cutoff {cutoff}"),
            Command::AutGens => "aut-gens".to_string(),
            Command::VerifyAll => "verify-all".to_string(),
        };
        format!("srlim {rest}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    pub version: String,
}

impl Report {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A finished run: the report and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Runs `cli` against the document text `input`.
pub fn run(cli: &Cli, input: &str) -> Result<Outcome, CliError> {
    let doc = ComplexDocument::parse(input)?.normalized()?;
    let k = doc.to_complex()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    let (result, passed) = pool.install(|| commands::execute(&cli.command, cli.coeffs, &k));
    Ok(Outcome {
        report: Report {
            command: cli.echo(),
            input_digest: doc.digest(),
            result,
            version: format!("srlim {}", env!("CARGO_PKG_VERSION")),
        },
        exit_code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}
